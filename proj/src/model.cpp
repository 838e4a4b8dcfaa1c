#include "zerotherm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace zerotherm {

void PotentialSpec::validate() const {
    if (!(m > 0.0)) throw std::domain_error("potential spec: mass must be positive");
    if (!(omega >= 0.0)) throw std::domain_error("potential spec: omega must be non-negative");
    if (!(lambda >= 0.0)) throw std::domain_error("potential spec: lambda must be non-negative");
    if (omega == 0.0 && lambda == 0.0)
        throw std::domain_error("potential spec: omega and lambda cannot both vanish");
}

double potential_value(const PotentialSpec& spec, double x) {
    const double x2 = x * x;
    return 0.5 * spec.m * spec.omega * spec.omega * x2 + 0.25 * spec.lambda * x2 * x2;
}

DimensionlessView to_dimensionless(const PotentialSpec& spec, const ThermalState& state) {
    spec.validate();
    if (spec.omega == 0.0) throw std::domain_error("massless-mode view undefined");
    const double w3 = spec.omega * spec.omega * spec.omega;
    return {spec.lambda / (spec.m * spec.m * w3), spec.omega * state.beta};
}

PotentialSpec from_dimensionless(const DimensionlessView& view, double m, double omega) {
    const double w3 = omega * omega * omega;
    PotentialSpec spec{m, omega, view.g * m * m * w3};
    spec.validate();
    return spec;
}

double beta_from_dimensionless(const DimensionlessView& view, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("massless-mode view undefined");
    return view.theta / omega;
}

double effective_frequency(const PotentialSpec& spec, double x0) {
    return std::sqrt(spec.omega * spec.omega + 3.0 * spec.lambda * x0 * x0 / spec.m);
}

double linear_source(const PotentialSpec& spec, double x0) {
    return spec.omega * spec.omega * x0 + spec.lambda * x0 * x0 * x0 / spec.m;
}

}  // namespace zerotherm
