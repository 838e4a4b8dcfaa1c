#pragma once

#include <Eigen/Dense>
#include <vector>

#include "zerotherm/model.hpp"

namespace zerotherm {

// Eigenvalues of H in a harmonic basis of frequency omega_b, with per-level
// convergence estimates from the N vs N/2 comparison. Only the lowest third of
// the levels is certified for use in partition sums.
struct Spectrum {
    int basis_size = 0;
    double basis_frequency = 0.0;
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> convergence;   // |E_k(N) - E_k(N/2)| per level

    int certified_count() const { return basis_size / 3; }
};

// Matrix of p^2/2m + (1/2) m omega^2 x^2 + (lambda/4) x^4 in the harmonic basis of
// frequency omega_b: x tridiagonal by ladder algebra in a padded (N+4) space, x^4
// by squaring x^2, momentum term given in closed band form. Exactly symmetric.
Eigen::MatrixXd hamiltonian_matrix(const PotentialSpec& spec, double omega_b, int n);

// Diagonalize at basis sizes doubling from n up to 512 until E0 moves by less
// than 1e-6; omega_b = 0 selects the default basis (omega, or (lambda/m^2)^{1/3}
// when omega = 0). Throws NonConvergence if 512 is not enough.
Spectrum spectrum(const PotentialSpec& spec, int n = 128, double omega_b = 0.0);

struct ExactPartition {
    double value = 0.0;
    double log_value = 0.0;
    double truncation_bound = 0.0;  // geometric tail bound from the last certified gap
};

// Z = sum over certified levels of e^{-beta E_n}. Throws NonConvergence
// ("insufficient levels") when the truncation bound exceeds 1e-8 of Z.
double partition_exact(const PotentialSpec& spec, double beta, const Spectrum& sp);
ExactPartition partition_exact_detail(const PotentialSpec& spec, double beta,
                                      const Spectrum& sp);

// Standard first-order thermal perturbation theory:
// F = omega/2 + ln(1 - e^{-beta omega})/beta + (3 lambda/(4 m^2)) [coth(beta omega/2)/(2 omega)]^2.
// Throws std::domain_error for omega = 0 (infrared-divergent reference).
double free_energy_oneloop(const PotentialSpec& spec, double beta);

}  // namespace zerotherm
