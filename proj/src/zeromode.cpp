#include "zerotherm/zeromode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zerotherm/green.hpp"

namespace zerotherm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Width of the first half-line panel in the mass-rescaled variable: the Gaussian
// core scale when omega > 0, the quartic turnover scale when lambda > 0, whichever
// is larger. Covers omega = 0 and lambda = 0 alike.
double zero_mode_panel_width(const PotentialSpec& spec, double beta) {
    double width = 0.0;
    if (spec.omega > 0.0) width = std::max(width, 1.0 / (spec.omega * std::sqrt(beta)));
    const double lamp = spec.lambda_rescaled();
    if (lamp > 0.0) width = std::max(width, std::pow(beta * lamp, -0.25));
    return width;
}

double mass_rescaled_log_weight(const PotentialSpec& spec, double beta, double u0) {
    const double lamp = spec.lambda_rescaled();
    const double wbar = std::sqrt(spec.omega * spec.omega + 3.0 * lamp * u0 * u0);
    const double v = 0.5 * spec.omega * spec.omega * u0 * u0 + 0.25 * lamp * u0 * u0 * u0 * u0;
    const double alpha = spec.omega * spec.omega * u0 + lamp * u0 * u0 * u0;
    const DirichletKernel k{wbar, beta};
    const double sigma = 0.5 * alpha * alpha * kernel_total_integral(k);
    return 0.5 * log_det_prefactor(k) - beta * v + sigma;
}

// Inner theta-integrals of the correction, at fixed u0 (mass-rescaled).
CorrectionParts inner_parts(const PotentialSpec& spec, double beta, double u0) {
    const double lamp = spec.lambda_rescaled();
    if (lamp == 0.0) return {};
    const double wbar = std::sqrt(spec.omega * spec.omega + 3.0 * lamp * u0 * u0);
    const double alpha = spec.omega * spec.omega * u0 + lamp * u0 * u0 * u0;
    const double c3 = lamp * u0;
    const double c4 = 0.25 * lamp;
    const DirichletKernel k{wbar, beta};

    const auto cubic_f = [&](double theta) {
        const double g = green_value(k, theta, theta);
        const double i0 = -alpha * kernel_row_integral(k, theta);
        return c3 * (i0 * i0 * i0 + 3.0 * i0 * g);
    };
    const auto quartic_f = [&](double theta) {
        const double g = green_value(k, theta, theta);
        const double i0 = -alpha * kernel_row_integral(k, theta);
        const double i0sq = i0 * i0;
        return c4 * (i0sq * i0sq + 6.0 * i0sq * g + 3.0 * g * g);
    };
    CorrectionParts parts;
    parts.cubic = integrate_adaptive(cubic_f, 0.0, beta, 1e-13, 1e-9);
    parts.quartic = integrate_adaptive(quartic_f, 0.0, beta, 1e-13, 1e-9);
    return parts;
}

}  // namespace

double sho_free_energy_closed(double omega, double beta) {
    if (!(omega > 0.0) || !(beta > 0.0))
        throw std::domain_error("sho_free_energy_closed: need omega > 0 and beta > 0");
    return 0.5 * omega + std::log1p(-std::exp(-beta * omega)) / beta;
}

double sho_partition_boundary(double omega, double beta) {
    if (!(omega > 0.0) || !(beta > 0.0))
        throw std::domain_error("sho_partition_boundary: need omega > 0 and beta > 0");
    // sqrt(det prefactor) x Gaussian integral sqrt(pi / (omega tanh(beta omega / 2)))
    const DirichletKernel k{omega, beta};
    const double log_gauss =
        0.5 * (std::log(std::numbers::pi) - std::log(omega) -
               std::log(std::tanh(0.5 * beta * omega)));
    return std::exp(0.5 * log_det_prefactor(k) + log_gauss);
}

double classical_path(double omega, double beta, double x0, double tau) {
    if (!(beta > 0.0)) throw std::domain_error("classical_path: beta must be positive");
    if (tau < 0.0 || tau > beta)
        throw std::domain_error("classical_path: tau outside [0, beta]");
    if (omega == 0.0) return x0;
    // cosh(w(tau - beta/2))/cosh(w beta/2), decaying-exponential form
    const double d = std::abs(tau - 0.5 * beta);
    const double z = omega * beta;
    return x0 * std::exp(omega * d - 0.5 * z) * (1.0 + std::exp(-2.0 * omega * d)) /
           (1.0 + std::exp(-z));
}

SineSeries classical_path_series(double omega, double beta, double x0, int n_terms) {
    if (!(beta > 0.0) || n_terms < 1)
        throw std::domain_error("classical_path_series: need beta > 0 and n_terms >= 1");
    SineSeries series{beta, x0, std::vector<double>(n_terms, 0.0)};
    for (int n = 1; n <= n_terms; n += 2) {
        const double wn = n * std::numbers::pi / beta;
        series.coeffs[n - 1] =
            -4.0 * x0 * omega * omega / (n * std::numbers::pi * (wn * wn + omega * omega));
    }
    return series;
}

EffectiveWeight quadratic_weight(const PotentialSpec& spec, double beta, double x0) {
    spec.validate();
    if (!(beta > 0.0)) throw std::domain_error("quadratic_weight: beta must be positive");
    const double u0 = std::sqrt(spec.m) * x0;
    const double lamp = spec.lambda_rescaled();
    EffectiveWeight w;
    w.x0 = x0;
    w.omega_bar = effective_frequency(spec, x0);
    w.s_const = beta * potential_value(spec, x0);
    const double alpha = spec.omega * spec.omega * u0 + lamp * u0 * u0 * u0;
    const DirichletKernel k{w.omega_bar, beta};
    w.sigma_eta = 0.5 * alpha * alpha * kernel_total_integral(k);
    w.log_det_prefactor = log_det_prefactor(k);
    w.log_weight = 0.5 * w.log_det_prefactor - w.s_const + w.sigma_eta;
    return w;
}

PartitionResult partition_quadratic_detail(const PotentialSpec& spec, double beta,
                                           const QuadratureConfig& q) {
    spec.validate();
    if (!(beta > 0.0)) throw std::domain_error("partition_quadratic: beta must be positive");
    const double lw0 = mass_rescaled_log_weight(spec, beta, 0.0);  // maximum of the integrand
    const auto f = [&](double u0) {
        return std::exp(mass_rescaled_log_weight(spec, beta, u0) - lw0);
    };
    const auto half = integrate_half_line(f, zero_mode_panel_width(spec, beta), q);
    PartitionResult r;
    r.log_value = lw0 + std::log(2.0 * half.value);
    r.value = std::exp(r.log_value);
    r.error_estimate = 2.0 * std::exp(lw0) * half.error_estimate;
    r.panels = half.panels;
    return r;
}

double partition_quadratic(const PotentialSpec& spec, double beta, const QuadratureConfig& q) {
    return partition_quadratic_detail(spec, beta, q).value;
}

double i0_profile(double omega_bar, double L, double alpha, double theta) {
    return -alpha * kernel_row_integral(DirichletKernel{omega_bar, L}, theta);
}

CorrectionParts correction_parts(const PotentialSpec& spec, double beta, double x0) {
    spec.validate();
    if (!(beta > 0.0)) throw std::domain_error("correction_parts: beta must be positive");
    return inner_parts(spec, beta, std::sqrt(spec.m) * x0);
}

double correction_first_order(const PotentialSpec& spec, double beta, double x0) {
    const auto parts = correction_parts(spec, beta, x0);
    const double lw = mass_rescaled_log_weight(spec, beta, std::sqrt(spec.m) * x0);
    return -(parts.cubic + parts.quartic) * std::exp(lw);
}

PartitionResult partition_improved_detail(const PotentialSpec& spec, double beta,
                                          const QuadratureConfig& q) {
    const auto z2 = partition_quadratic_detail(spec, beta, q);
    if (spec.lambda == 0.0) return z2;

    const double lw0 = mass_rescaled_log_weight(spec, beta, 0.0);
    const auto f = [&](double u0) {
        const auto parts = inner_parts(spec, beta, u0);
        return -(parts.cubic + parts.quartic) *
               std::exp(mass_rescaled_log_weight(spec, beta, u0) - lw0);
    };
    const auto half = integrate_half_line(f, zero_mode_panel_width(spec, beta), q);

    // Everything in units of exp(lw0) so low temperatures cannot underflow the sum.
    const double scaled_sum = std::exp(z2.log_value - lw0) + 2.0 * half.value;
    if (!(scaled_sum > 0.0))
        throw ApproximationBreakdown(
            "approximation breakdown: Z2 + delta1Z <= 0 (temperature at or below the "
            "validity boundary)");
    PartitionResult r;
    r.log_value = lw0 + std::log(scaled_sum);
    r.value = std::exp(r.log_value);
    r.error_estimate = z2.error_estimate + 2.0 * std::exp(lw0) * half.error_estimate;
    r.panels = std::max(z2.panels, half.panels);
    return r;
}

double partition_improved(const PotentialSpec& spec, double beta, const QuadratureConfig& q) {
    return partition_improved_detail(spec, beta, q).value;
}

double effective_potential(const PotentialSpec& spec, double beta, double x0) {
    spec.validate();
    if (!(beta > 0.0)) throw std::domain_error("effective_potential: beta must be positive");
    const double t = 1.0 / beta;
    const double lw = mass_rescaled_log_weight(spec, beta, std::sqrt(spec.m) * x0);
    return -t * (lw + 0.5 * (std::log(two_pi) - std::log(t)));
}

PartitionResult partition_classical_detail(const PotentialSpec& spec, double beta,
                                           const QuadratureConfig& q) {
    spec.validate();
    if (!(beta > 0.0)) throw std::domain_error("partition_classical: beta must be positive");
    const auto f = [&](double x) { return std::exp(-beta * potential_value(spec, x)); };
    double width = 0.0;
    if (spec.omega > 0.0)
        width = std::max(width, 1.0 / std::sqrt(beta * spec.m * spec.omega * spec.omega));
    if (spec.lambda > 0.0) width = std::max(width, std::pow(0.25 * beta * spec.lambda, -0.25));
    const auto half = integrate_half_line(f, width, q);
    const double momentum = std::sqrt(spec.m / (two_pi * beta));
    PartitionResult r;
    r.value = momentum * 2.0 * half.value;
    r.log_value = std::log(r.value);
    r.error_estimate = momentum * 2.0 * half.error_estimate;
    r.panels = half.panels;
    return r;
}

double partition_classical(const PotentialSpec& spec, double beta, const QuadratureConfig& q) {
    return partition_classical_detail(spec, beta, q).value;
}

}  // namespace zerotherm
