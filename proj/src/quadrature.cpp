#include "zerotherm/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace zerotherm {

void QuadratureConfig::validate() const {
    if (nodes_per_panel < 2 || nodes_per_panel > 256)
        throw std::domain_error("quadrature config: nodes_per_panel out of range [2, 256]");
    if (!(panel_growth >= 1.0 && panel_growth <= 4.0))
        throw std::domain_error("quadrature config: panel_growth out of range [1, 4]");
    if (!(tail_cutoff > 0.0 && tail_cutoff <= 1e-6))
        throw std::domain_error("quadrature config: tail_cutoff outside (0, 1e-6]");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::domain_error("quadrature config: tolerances must be positive");
    if (max_panels < 2 || max_panels > 4096)
        throw std::domain_error("quadrature config: max_panels out of range [2, 4096]");
}

namespace {

// Roots of P_n by Newton iteration from the Chebyshev-like initial guess;
// converges to machine precision in a handful of steps.
std::vector<GaussNode> build_gauss_legendre(int n) {
    std::vector<GaussNode> nodes(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = {-x, w};
        nodes[n - 1 - i] = {x, w};
    }
    return nodes;
}

std::mutex g_rule_mutex;
std::map<int, std::vector<GaussNode>>& rule_cache() {
    static std::map<int, std::vector<GaussNode>> cache;
    return cache;
}

}  // namespace

std::span<const GaussNode> gauss_legendre(int n) {
    if (n < 1 || n > 1024) throw std::domain_error("gauss_legendre: order out of range");
    std::scoped_lock lock(g_rule_mutex);
    auto& cache = rule_cache();
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return {it->second.data(), it->second.size()};  // map nodes are address-stable
}

double gl_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const auto rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double sum = 0.0;
    for (const auto& node : rule) sum += node.w * f(mid + hw * node.x);
    return hw * sum;
}

namespace {

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             double tol, int depth) {
    if (depth > 60) throw NonConvergence("adaptive quadrature: recursion depth exhausted");
    const double mid = 0.5 * (a + b);
    const double left = gl_integrate(f, a, mid, 16);
    const double right = gl_integrate(f, mid, b, 16);
    const double fine = left + right;
    if (std::abs(fine - whole) <= tol) return fine;
    return adapt(f, a, mid, left, 0.5 * tol, depth + 1) +
           adapt(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol) {
    if (!(b >= a)) throw std::domain_error("integrate_adaptive: inverted interval");
    if (a == b) return 0.0;
    const double whole = gl_integrate(f, a, b, 16);
    const double tol = std::max(abs_tol, rel_tol * std::abs(whole));
    return adapt(f, a, b, whole, tol, 0);
}

HalfLineResult integrate_half_line(const std::function<double(double)>& f, double first_width,
                                   const QuadratureConfig& q) {
    q.validate();
    if (!(first_width > 0.0) || !std::isfinite(first_width))
        throw std::domain_error("integrate_half_line: panel width must be positive finite");
    HalfLineResult result;
    double left = 0.0;
    double width = first_width;
    double prev_abs = 0.0;
    const int n = q.nodes_per_panel;
    const int n_half = std::max(2, n / 2);
    for (int panel = 0; panel < q.max_panels; ++panel) {
        const double right = left + width;
        const double value = gl_integrate(f, left, right, n);
        const double coarse = gl_integrate(f, left, right, n_half);
        result.value += value;
        result.error_estimate += std::abs(value - coarse);
        result.panels = panel + 1;
        const double scale = std::max(std::abs(result.value), q.abs_tol);
        if (panel >= 1 && std::abs(value) < q.tail_cutoff * scale) {
            // Neglected mass beyond this panel, from the observed decay ratio
            // extrapolated geometrically (doubled for safety), floored at the
            // panel itself for super-geometric decay.
            const double r =
                prev_abs > 0.0 ? std::min(std::abs(value) / prev_abs, 0.95) : 0.0;
            result.error_estimate += std::abs(value) * (1.0 + 2.0 * r / (1.0 - r));
            return result;
        }
        prev_abs = std::abs(value);
        left = right;
        width *= q.panel_growth;
    }
    throw NonConvergence("half-line quadrature: panel budget exhausted before tail cutoff");
}

}  // namespace zerotherm
