#pragma once

#include "zerotherm/model.hpp"
#include "zerotherm/quadrature.hpp"
#include "zerotherm/series.hpp"

namespace zerotherm {

// Per-x0 ingredients of the zero-mode integrand. All pieces live in the
// mass-rescaled variable u0 = sqrt(m) x0, where the action has unit mass and
// coupling lambda' = lambda/m^2.
struct EffectiveWeight {
    double x0 = 0.0;
    double omega_bar = 0.0;        // curvature frequency at x0
    double s_const = 0.0;          // beta V(x0)
    double sigma_eta = 0.0;        // Gaussian completion term, >= 0
    double log_det_prefactor = 0.0;
    double log_weight = 0.0;       // 0.5 log_det_prefactor - s_const + sigma_eta
};

// F = omega/2 + ln(1 - e^{-beta omega})/beta.
double sho_free_energy_closed(double omega, double beta);

// (2 cosh(beta omega) - 2)^{-1/2}, assembled as sqrt(det prefactor) times the
// Gaussian zero-mode integral of exp(-omega tanh(beta omega/2) x0^2).
double sho_partition_boundary(double omega, double beta);

// x_c(tau) = x0 cosh(omega(tau - beta/2))/cosh(omega beta/2); x0 for omega = 0.
double classical_path(double omega, double beta, double x0, double tau);

// Sine coefficients of the classical path in closed form:
// x_n = -4 x0 omega^2 / (n pi (hat_w_n^2 + omega^2)) for odd n, zero for even n.
SineSeries classical_path_series(double omega, double beta, double x0, int n_terms);

EffectiveWeight quadratic_weight(const PotentialSpec& spec, double beta, double x0);

struct PartitionResult {
    double value = 0.0;
    double log_value = 0.0;  // underflow-safe form used by free energies
    double error_estimate = 0.0;
    int panels = 0;
};

// Z2 = integral du0 of exp(log_weight), as 2 x the half line by evenness;
// panel extension per QuadratureConfig. Throws NonConvergence at the panel cap.
double partition_quadratic(const PotentialSpec& spec, double beta,
                           const QuadratureConfig& q = {});
PartitionResult partition_quadratic_detail(const PotentialSpec& spec, double beta,
                                           const QuadratureConfig& q = {});

// I0(theta) = -alpha integral of G(theta, .): the mean fluctuation profile.
double i0_profile(double omega_bar, double L, double alpha, double theta);

// Inner theta-integrals of the first-order correction at fixed x0 (unweighted):
// cubic = integral c3 (I0^3 + 3 I0 G), quartic = integral c4 (I0^4 + 6 I0^2 G + 3 G^2),
// with c3 = lambda' u0, c4 = lambda'/4.
struct CorrectionParts {
    double cubic = 0.0;
    double quartic = 0.0;
};
CorrectionParts correction_parts(const PotentialSpec& spec, double beta, double x0);

// -(cubic + quartic) times the quadratic weight: the x0-integrand of delta1 Z.
double correction_first_order(const PotentialSpec& spec, double beta, double x0);

// Z2 + delta1 Z. Throws ApproximationBreakdown when the sum is <= 0.
double partition_improved(const PotentialSpec& spec, double beta,
                          const QuadratureConfig& q = {});
PartitionResult partition_improved_detail(const PotentialSpec& spec, double beta,
                                          const QuadratureConfig& q = {});

// V_eff(x0) = -T [ln weight(u0) + (1/2) ln(2 pi / T)]; by construction
// Z2 = integral dx0 sqrt(m T / 2 pi) exp(-beta V_eff).
double effective_potential(const PotentialSpec& spec, double beta, double x0);

// Z_cl = sqrt(m T / 2 pi) integral dx0 exp(-beta V(x0)): momentum Gaussian done
// analytically, x0 integral by the same panel scheme as Z2.
double partition_classical(const PotentialSpec& spec, double beta,
                           const QuadratureConfig& q = {});
PartitionResult partition_classical_detail(const PotentialSpec& spec, double beta,
                                           const QuadratureConfig& q = {});

}  // namespace zerotherm
