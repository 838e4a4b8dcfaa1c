#pragma once

namespace zerotherm {

// V(x) = (1/2) m omega^2 x^2 + (lambda/4) x^4, natural units (hbar = k_B = 1).
struct PotentialSpec {
    double m = 1.0;
    double omega = 1.0;
    double lambda = 0.0;

    // Throws std::domain_error unless m > 0, omega >= 0, lambda >= 0 and not
    // both omega and lambda vanish.
    void validate() const;

    // lambda / m^2, the coupling of the mass-rescaled variable u = sqrt(m) x.
    double lambda_rescaled() const { return lambda / (m * m); }
};

struct ThermalState {
    double beta = 1.0;  // inverse temperature
    double temperature() const { return 1.0 / beta; }
};

// Dimensionless couple (g, Theta): g = lambda/(m^2 omega^3), Theta = omega * beta.
struct DimensionlessView {
    double g = 0.0;
    double theta = 1.0;
};

double potential_value(const PotentialSpec& spec, double x);

// Requires omega > 0; throws std::domain_error("massless-mode view undefined") otherwise.
DimensionlessView to_dimensionless(const PotentialSpec& spec, const ThermalState& state);

// Inverse of to_dimensionless at fixed anchors m, omega.
PotentialSpec from_dimensionless(const DimensionlessView& view, double m, double omega);
double beta_from_dimensionless(const DimensionlessView& view, double omega);

// omega_bar(x0) = sqrt(omega^2 + 3 lambda x0^2 / m), curvature of V/m at x0.
double effective_frequency(const PotentialSpec& spec, double x0);

// alpha(x0) = omega^2 x0 + lambda x0^3 / m = (1/m) dV/dx at x0.
double linear_source(const PotentialSpec& spec, double x0);

}  // namespace zerotherm
