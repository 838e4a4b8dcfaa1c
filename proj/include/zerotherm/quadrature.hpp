#pragma once

#include <functional>
#include <span>

#include "zerotherm/errors.hpp"

namespace zerotherm {

// Knobs of the zero-mode line quadrature (panel extension along x0) and of the
// adaptive interval rules used for the theta integrals.
struct QuadratureConfig {
    int nodes_per_panel = 32;    // Gauss-Legendre order on each half-line panel
    double panel_growth = 1.0;   // width multiplier applied to successive panels
    double tail_cutoff = 1e-12;  // stop once a panel adds less than this fraction of the total
    double abs_tol = 1e-13;
    double rel_tol = 1e-10;
    int max_panels = 64;

    // Throws std::domain_error on non-positive tolerances or cutoff outside (0, 1e-6].
    void validate() const;
};

struct GaussNode {
    double x;  // abscissa on [-1, 1]
    double w;  // weight
};

// Nodes and weights of the n-point Gauss-Legendre rule; cached, thread-safe.
std::span<const GaussNode> gauss_legendre(int n);

// Fixed-order rule on [a, b].
double gl_integrate(const std::function<double(double)>& f, double a, double b, int n);

// Adaptive bisection with a 16-point base rule. The local acceptance test is
// |fine - coarse| <= tol, with tol halved per split; throws NonConvergence past
// depth 60.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol);

struct HalfLineResult {
    double value = 0.0;
    double error_estimate = 0.0;  // accumulated per-panel rule disagreement + tail bound
    int panels = 0;
};

// integral_0^inf f(x) dx by consecutive panels of width first_width * growth^k,
// each integrated at q.nodes_per_panel order, until a panel contributes less than
// tail_cutoff of the accumulated value. Throws NonConvergence if max_panels is hit.
HalfLineResult integrate_half_line(const std::function<double(double)>& f, double first_width,
                                   const QuadratureConfig& q);

}  // namespace zerotherm
