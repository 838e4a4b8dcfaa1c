#include "zerotherm/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "zerotherm/errors.hpp"

namespace zerotherm {

namespace {

constexpr double kE0Tolerance = 1e-6;
constexpr int kMaxBasis = 512;

std::vector<double> eigenvalues_at(const PotentialSpec& spec, double omega_b, int n) {
    const Eigen::MatrixXd h = hamiltonian_matrix(spec, omega_b, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NonConvergence("spectrum: eigensolver failed to converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

Eigen::MatrixXd hamiltonian_matrix(const PotentialSpec& spec, double omega_b, int n) {
    spec.validate();
    if (!(omega_b > 0.0)) throw std::domain_error("hamiltonian_matrix: omega_b must be positive");
    if (n < 4) throw std::domain_error("hamiltonian_matrix: need n >= 4");

    // Pad by 4 so the truncated x^2 and x^4 blocks carry exact matrix elements.
    const int pad = n + 4;
    const double s = 1.0 / (2.0 * spec.m * omega_b);  // <n|x|n+1>^2 / (n+1)

    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(pad, pad);
    for (int k = 0; k + 1 < pad; ++k) {
        const double off = std::sqrt((k + 1) * s);
        x(k, k + 1) = off;
        x(k + 1, k) = off;
    }
    const Eigen::MatrixXd x2 = x * x;
    const Eigen::MatrixXd x4 = x2 * x2;

    // p^2/2m in the same basis: diagonal omega_b (2k+1)/4, band -(omega_b/4) sqrt((k+1)(k+2))
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(pad, pad);
    for (int k = 0; k < pad; ++k) h(k, k) = omega_b * (2 * k + 1) / 4.0;
    for (int k = 0; k + 2 < pad; ++k) {
        const double off = -(omega_b / 4.0) * std::sqrt((k + 1.0) * (k + 2.0));
        h(k, k + 2) = off;
        h(k + 2, k) = off;
    }

    h += 0.5 * spec.m * spec.omega * spec.omega * x2 + 0.25 * spec.lambda * x4;
    Eigen::MatrixXd top = h.topLeftCorner(n, n);
    return 0.5 * (top + top.transpose());
}

Spectrum spectrum(const PotentialSpec& spec, int n, double omega_b) {
    spec.validate();
    if (omega_b == 0.0)
        omega_b = spec.omega > 0.0 ? spec.omega : std::cbrt(spec.lambda_rescaled());
    if (n < 8) throw std::domain_error("spectrum: need n >= 8");

    const int max_basis = std::max(kMaxBasis, n);
    std::vector<double> coarse = eigenvalues_at(spec, omega_b, n / 2);
    for (int size = n; size <= max_basis; size *= 2) {
        std::vector<double> fine = eigenvalues_at(spec, omega_b, size);
        if (std::abs(fine[0] - coarse[0]) <= kE0Tolerance || size == max_basis) {
            if (std::abs(fine[0] - coarse[0]) > kE0Tolerance)
                throw NonConvergence("spectrum: E0 not converged at maximum basis size");
            Spectrum sp;
            sp.basis_size = size;
            sp.basis_frequency = omega_b;
            sp.eigenvalues = fine;
            sp.convergence.resize(fine.size());
            for (std::size_t k = 0; k < fine.size(); ++k)
                sp.convergence[k] = k < coarse.size()
                                        ? std::abs(fine[k] - coarse[k])
                                        : std::abs(fine.back() - coarse.back());
            return sp;
        }
        coarse = std::move(fine);
    }
    throw NonConvergence("spectrum: E0 not converged at maximum basis size");
}

ExactPartition partition_exact_detail(const PotentialSpec& spec, double beta,
                                      const Spectrum& sp) {
    spec.validate();
    if (!(beta > 0.0)) throw std::domain_error("partition_exact: beta must be positive");
    const int levels = sp.certified_count();
    if (levels < 2) throw std::domain_error("partition_exact: spectrum too small");

    const double e0 = sp.eigenvalues[0];
    double scaled = 0.0;  // Z * e^{beta E0}
    for (int k = 0; k < levels; ++k) scaled += std::exp(-beta * (sp.eigenvalues[k] - e0));

    // Tail bound assuming nondecreasing gaps above the last certified level (true
    // for these convex potentials): sum < e^{-beta E_last} r/(1-r), r = e^{-beta gap}.
    const double e_last = sp.eigenvalues[levels - 1];
    const double gap = e_last - sp.eigenvalues[levels - 2];
    const double r = std::exp(-beta * gap);
    const double bound_scaled = std::exp(-beta * (e_last - e0)) * r / (1.0 - r);

    if (bound_scaled > 1e-8 * scaled)
        throw NonConvergence(
            "partition_exact: insufficient levels for this temperature (truncation bound "
            "exceeds 1e-8 of Z)");

    ExactPartition z;
    z.log_value = -beta * e0 + std::log(scaled);
    z.value = std::exp(z.log_value);
    z.truncation_bound = bound_scaled * std::exp(-beta * e0);
    return z;
}

double partition_exact(const PotentialSpec& spec, double beta, const Spectrum& sp) {
    return partition_exact_detail(spec, beta, sp).value;
}

double free_energy_oneloop(const PotentialSpec& spec, double beta) {
    spec.validate();
    if (!(beta > 0.0)) throw std::domain_error("free_energy_oneloop: beta must be positive");
    if (spec.omega == 0.0) throw std::domain_error("infrared-divergent perturbative reference");
    const double f0 = 0.5 * spec.omega + std::log1p(-std::exp(-beta * spec.omega)) / beta;
    const double prop0 = 1.0 / (2.0 * spec.omega * std::tanh(0.5 * beta * spec.omega));
    return f0 + 3.0 * spec.lambda / (4.0 * spec.m * spec.m) * prop0 * prop0;
}

}  // namespace zerotherm
