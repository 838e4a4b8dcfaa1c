#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zerotherm/model.hpp"
#include "zerotherm/oracle.hpp"
#include "zerotherm/quadrature.hpp"

namespace zerotherm {

enum class Method { classical, quadratic, improved, oneloop, exact };

inline constexpr std::array<Method, 5> kAllMethods = {
    Method::classical, Method::quadratic, Method::improved, Method::oneloop, Method::exact};

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);  // throws std::invalid_argument

// Row flags; both conditions are data, never just console output.
enum PointFlag : unsigned {
    kFlagNone = 0,
    kFlagBreakdown = 1u << 0,     // improved method lost positivity at or near this T
    kFlagNonConvergent = 1u << 1  // a quadrature or level budget was exhausted
};

std::string flags_to_string(unsigned flags);

struct ThermoPoint {
    double T = 0.0;
    double F = 0.0;
    double U = 0.0;
    double C = 0.0;
    double err_U = 0.0;
    double err_C = 0.0;
    unsigned flags = kFlagNone;

    bool ok() const { return flags == kFlagNone; }
    double err() const { return err_U > err_C ? err_U : err_C; }
};

// One method bound to one potential; shares the eigen-spectrum across calls for
// the exact method. Thread-safe after construction: the spectrum cache grows
// behind an internal lock, everything else is const. Copies share the cache.
class MethodEvaluator {
  public:
    MethodEvaluator(Method method, const PotentialSpec& spec, const QuadratureConfig& q = {});

    Method method() const { return method_; }
    const PotentialSpec& spec() const { return spec_; }

    // F = -T ln Z; throws ApproximationBreakdown / NonConvergence / domain errors.
    double free_energy(double T) const;

    // F plus U = d(beta F)/d beta and C = dU/dT by 5-point stencils in ln T,
    // Richardson-extrapolated once (7 evaluations); the exact method uses spectral
    // moments instead. Failures land in flags, never escape.
    ThermoPoint point(double T) const;

  private:
    struct SpectrumCache;  // basis-doubling ladder, defined in thermo.cpp

    // Partition at the largest basis that certifies beta, doubling 128 -> 512
    // before giving up; returns the spectrum actually used.
    std::pair<ExactPartition, std::shared_ptr<const Spectrum>> exact_eval(double beta) const;

    Method method_;
    PotentialSpec spec_;
    QuadratureConfig quad_;
    std::shared_ptr<SpectrumCache> cache_;  // exact method only
};

double free_energy(Method method, const PotentialSpec& spec, double T);

// Strictly increasing positive grid; per-point flags propagate without aborting.
std::vector<ThermoPoint> thermo_curve(Method method, const PotentialSpec& spec,
                                      const std::vector<double>& t_grid,
                                      const QuadratureConfig& q = {});

struct GroundState {
    double energy = 0.0;
    double t_at_max = 0.0;
};

// max over T of the quadratic-method F, golden-section refined from a log-spaced
// scan of T in [0.05, 5] max(omega, (lambda/m^2)^{1/3}); tolerance 1e-4 in T.
// For lambda = 0 the maximum is the T -> 0 limit omega/2.
GroundState ground_state_detail(const PotentialSpec& spec);
double ground_state_estimate(const PotentialSpec& spec);

struct TminPoint {
    double g = 0.0;
    double theta = 0.0;  // root of <S_I(0, eta)>(Theta) = 1
    double t_min = 0.0;  // 1/theta in units of omega
};

// Solves (3g/4) integral of G(theta,theta; omega_bar=1)^2 = 1 for Theta. The
// bracket grows geometrically from (16/3g)*4 until the crossing is enclosed
// (the printed small-g asymptote underestimates the root at large g); throws
// NoCrossing if the capped bracket never reaches 1.
TminPoint t_min_detail(double g);
double t_min(double g);

}  // namespace zerotherm
