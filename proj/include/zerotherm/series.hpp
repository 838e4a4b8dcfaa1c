#pragma once

#include <complex>
#include <vector>

namespace zerotherm {

struct PotentialSpec;

// x(tau_i) on the uniform grid tau_i = i beta/(N_grid - 1), i = 0..N_grid-1.
struct SampledPath {
    double beta = 1.0;
    std::vector<double> values;

    double x0() const { return values.front(); }
    int grid_size() const { return static_cast<int>(values.size()); }
    double tau(int i) const { return beta * i / (grid_size() - 1); }

    // Throws std::domain_error unless beta > 0 and N_grid >= 3.
    void validate() const;
};

// Odd extension on [-beta, beta], grid tau_i = -beta + i beta/(N_grid - 1),
// i = 0..2 N_grid - 2; satisfies x(-tau) - x0 = -(x(tau) - x0) exactly on the grid.
struct ExtendedPath {
    double beta = 1.0;
    std::vector<double> values;

    double tau(int i) const {
        return -beta + beta * i / ((static_cast<int>(values.size()) - 1) / 2);
    }
};

// x(tau) = x0 + sum_{n=1..N} x_n sin(hat_w_n tau), hat_w_n = n pi / beta.
// Half-integer Matsubara grid: the series meets x0 at both endpoints but carries
// an arbitrary derivative jump, so non-periodic paths are representable.
struct SineSeries {
    double beta = 1.0;
    double x0 = 0.0;
    std::vector<double> coeffs;  // x_1 .. x_N

    int order() const { return static_cast<int>(coeffs.size()); }
    double omega_hat(int n) const;  // n pi / beta
};

// Periodic expansion x(tau) = sum_{n=-N..N} c_n e^{-i w_n tau}, w_n = 2 pi n / beta;
// c_{-n} = conj(c_n) for real paths.
struct MatsubaraSeries {
    double beta = 1.0;
    std::vector<std::complex<double>> coeffs;  // index n + N

    int order() const { return (static_cast<int>(coeffs.size()) - 1) / 2; }
    std::complex<double> coeff(int n) const { return coeffs[n + order()]; }
    double omega_n(int n) const;

    // Real part of the periodic reconstruction at tau.
    double value(double tau) const;
};

ExtendedPath odd_extend(const SampledPath& path);

// x_n = (2/beta) integral of (x(tau) - x0) sin(hat_w_n tau), composite Simpson on
// the sample grid; x0 is the first sample. Throws std::domain_error("grid too
// coarse...") when n_terms > N_grid / 4 (Nyquist guard).
SineSeries sine_coefficients(const SampledPath& path, int n_terms);

// x0 + sum x_n sin(hat_w_n tau); returns x0 exactly at tau = 0 and tau = beta.
double reconstruct(const SineSeries& series, double tau);

// Partial sum sum_{n<=n_partial} x_n hat_w_n (cos(n pi) - 1), the series form of
// xdot(beta) - xdot(0). Conditionally convergent; the count is explicit on purpose.
double derivative_jump(const SineSeries& series, int n_partial);

// sum_n c_n: boundary value of the periodic reconstruction (real part).
double matsubara_zero_mode(const MatsubaraSeries& series);

// S = integral of (m/2) xdot^2 + V(x) over [0, beta] with x, xdot evaluated from
// the truncated series (composite Simpson, grid resolving the highest mode).
double action_of_series(const SineSeries& series, const PotentialSpec& spec);

}  // namespace zerotherm
