#include "zerotherm/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "zerotherm/errors.hpp"
#include "zerotherm/green.hpp"
#include "zerotherm/zeromode.hpp"

namespace zerotherm {

std::string_view to_string(Method method) {
    switch (method) {
        case Method::classical: return "classical";
        case Method::quadratic: return "quadratic";
        case Method::improved: return "improved";
        case Method::oneloop: return "oneloop";
        case Method::exact: return "exact";
    }
    throw std::logic_error("to_string: unknown method");
}

Method method_from_string(std::string_view name) {
    for (const auto method : kAllMethods)
        if (name == to_string(method)) return method;
    throw std::invalid_argument("unknown method name: " + std::string(name));
}

std::string flags_to_string(unsigned flags) {
    std::string out;
    if (flags & kFlagBreakdown) out += "breakdown";
    if (flags & kFlagNonConvergent) {
        if (!out.empty()) out += "|";
        out += "nonconvergent";
    }
    return out;
}

struct MethodEvaluator::SpectrumCache {
    std::mutex mutex;
    std::shared_ptr<const Spectrum> current;
};

namespace {
// The eigenbasis starts at the spectrum() default and doubles whenever the
// thermal truncation bound rejects it; 512 caps the ladder.
constexpr int kMaxBasisSize = 512;
}  // namespace

MethodEvaluator::MethodEvaluator(Method method, const PotentialSpec& spec,
                                 const QuadratureConfig& q)
    : method_(method), spec_(spec), quad_(q) {
    spec_.validate();
    quad_.validate();
    if (method_ == Method::exact) {
        cache_ = std::make_shared<SpectrumCache>();
        cache_->current = std::make_shared<const Spectrum>(spectrum(spec_));
    }
}

std::pair<ExactPartition, std::shared_ptr<const Spectrum>> MethodEvaluator::exact_eval(
    double beta) const {
    std::shared_ptr<const Spectrum> sp;
    {
        std::scoped_lock lock(cache_->mutex);
        sp = cache_->current;
    }
    for (;;) {
        try {
            return {partition_exact_detail(spec_, beta, *sp), sp};
        } catch (const NonConvergence&) {
            if (sp->basis_size >= kMaxBasisSize) throw;
            const int next = 2 * sp->basis_size;
            std::scoped_lock lock(cache_->mutex);
            if (cache_->current->basis_size < next)
                cache_->current = std::make_shared<const Spectrum>(spectrum(spec_, next));
            sp = cache_->current;
        }
    }
}

double MethodEvaluator::free_energy(double T) const {
    if (!(T > 0.0)) throw std::domain_error("free_energy: temperature must be positive");
    const double beta = 1.0 / T;
    switch (method_) {
        case Method::classical:
            return -T * partition_classical_detail(spec_, beta, quad_).log_value;
        case Method::quadratic:
            return -T * partition_quadratic_detail(spec_, beta, quad_).log_value;
        case Method::improved:
            return -T * partition_improved_detail(spec_, beta, quad_).log_value;
        case Method::oneloop:
            return free_energy_oneloop(spec_, beta);
        case Method::exact:
            return -T * exact_eval(beta).first.log_value;
    }
    throw std::logic_error("free_energy: unknown method");
}

namespace {

// Relative step of the ln T stencils; small enough for the h^4 truncation to sit
// well below every acceptance tolerance, large enough to dominate roundoff.
constexpr double kLogStep = 0.01;

struct Derivatives {
    double d1 = 0.0, d2 = 0.0;  // dF/ds, d2F/ds2 at s = ln T
    double err1 = 0.0, err2 = 0.0;
};

// f holds F(e^s); 5-point stencils at spacings h and h/2, one Richardson step.
Derivatives log_derivatives(const std::function<double(double)>& f, double s, double h) {
    const double f0 = f(s);
    const double fp1 = f(s + h), fm1 = f(s - h);
    const double fp2 = f(s + 2.0 * h), fm2 = f(s - 2.0 * h);
    const double fph = f(s + 0.5 * h), fmh = f(s - 0.5 * h);

    const double d1_h = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    const double d1_h2 = (fm1 - 8.0 * fmh + 8.0 * fph - fp1) / (6.0 * h);
    const double d2_h = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    const double d2_h2 = (-fm1 + 16.0 * fmh - 30.0 * f0 + 16.0 * fph - fp1) / (3.0 * h * h);

    Derivatives d;
    d.d1 = (16.0 * d1_h2 - d1_h) / 15.0;
    d.d2 = (16.0 * d2_h2 - d2_h) / 15.0;
    const double roundoff = std::numeric_limits<double>::epsilon() * std::abs(f0);
    d.err1 = std::abs(d1_h2 - d1_h) / 15.0 + 8.0 * roundoff / h;
    d.err2 = std::abs(d2_h2 - d2_h) / 15.0 + 64.0 * roundoff / (h * h);
    return d;
}

}  // namespace

ThermoPoint MethodEvaluator::point(double T) const {
    ThermoPoint p;
    p.T = T;
    try {
        if (method_ == Method::exact) {
            // Spectral moments: U = <E>, C = beta^2 (<E^2> - <E>^2); truncation
            // bound is enforced inside partition_exact_detail.
            const double beta = 1.0 / T;
            const auto [z, sp] = exact_eval(beta);
            p.F = -T * z.log_value;
            const int levels = sp->certified_count();
            const double e0 = sp->eigenvalues[0];
            double norm = 0.0, first = 0.0, second = 0.0;
            for (int k = 0; k < levels; ++k) {
                const double e = sp->eigenvalues[k];
                const double w = std::exp(-beta * (e - e0));
                norm += w;
                first += w * e;
                second += w * e * e;
            }
            const double mean = first / norm;
            p.U = mean;
            p.C = beta * beta * (second / norm - mean * mean);
            const double tail = z.value > 0.0 ? z.truncation_bound / z.value : 0.0;
            const double e_last = sp->eigenvalues[levels - 1];
            p.err_U = tail * e_last;
            p.err_C = tail * beta * beta * e_last * e_last;
            return p;
        }

        const auto f = [this](double s) { return free_energy(std::exp(s)); };
        p.F = free_energy(T);
        const auto d = log_derivatives(f, std::log(T), kLogStep);
        // U = d(beta F)/d beta = F - dF/d ln T; C = dU/dT = (F_s - F_ss)/T
        p.U = p.F - d.d1;
        p.C = (d.d1 - d.d2) / T;
        p.err_U = d.err1;
        p.err_C = (d.err1 + d.err2) / T;
    } catch (const ApproximationBreakdown&) {
        p.flags |= kFlagBreakdown;
        p.F = p.U = p.C = std::numeric_limits<double>::quiet_NaN();
    } catch (const NonConvergence&) {
        p.flags |= kFlagNonConvergent;
        p.F = p.U = p.C = std::numeric_limits<double>::quiet_NaN();
    }
    return p;
}

double free_energy(Method method, const PotentialSpec& spec, double T) {
    return MethodEvaluator(method, spec).free_energy(T);
}

std::vector<ThermoPoint> thermo_curve(Method method, const PotentialSpec& spec,
                                      const std::vector<double>& t_grid,
                                      const QuadratureConfig& q) {
    if (t_grid.empty()) throw std::domain_error("thermo_curve: empty temperature grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0)) throw std::domain_error("thermo_curve: temperatures must be positive");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
            throw std::domain_error("thermo_curve: grid must be strictly increasing");
    }
    const MethodEvaluator eval(method, spec, q);
    std::vector<ThermoPoint> points;
    points.reserve(t_grid.size());
    for (const double T : t_grid) points.push_back(eval.point(T));
    return points;
}

GroundState ground_state_detail(const PotentialSpec& spec) {
    spec.validate();
    if (spec.lambda == 0.0) return {0.5 * spec.omega, 0.0};

    const MethodEvaluator eval(Method::quadratic, spec);
    const auto f = [&eval](double T) { return eval.free_energy(T); };

    const double scale = std::max(spec.omega, std::cbrt(spec.lambda_rescaled()));
    double lo = 0.05 * scale;
    double hi = 5.0 * scale;

    // Log-spaced scan localizes the interior maximum, widening if it lands on an
    // edge (it does not for the couplings in scope).
    constexpr int kScan = 48;
    int best = -1;
    std::vector<double> ts(kScan), fs(kScan);
    for (int widen = 0; widen < 4; ++widen) {
        const double ratio = std::log(hi / lo);
        best = 0;
        for (int i = 0; i < kScan; ++i) {
            ts[i] = lo * std::exp(ratio * i / (kScan - 1));
            fs[i] = f(ts[i]);
            if (fs[i] > fs[best]) best = i;
        }
        if (best == 0) {
            hi = ts[1];
            lo /= 5.0;
        } else if (best == kScan - 1) {
            lo = ts[kScan - 2];
            hi *= 5.0;
        } else {
            break;
        }
    }
    if (best <= 0 || best >= kScan - 1)
        throw NonConvergence("ground_state_estimate: maximum not bracketed by the scan");

    // Golden-section on [t_lo, t_hi] to 1e-4 absolute in T.
    double a = ts[best - 1], b = ts[best + 1];
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-4) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    const double t_star = 0.5 * (a + b);
    return {f(t_star), t_star};
}

double ground_state_estimate(const PotentialSpec& spec) {
    return ground_state_detail(spec).energy;
}

TminPoint t_min_detail(double g) {
    if (!(g > 0.0)) throw std::domain_error("t_min: coupling must be positive");
    const auto mean_action = [g](double theta) {
        return 0.75 * g * diag_square_integral(DirichletKernel{1.0, theta});
    };

    const double lo = 1e-4;
    if (mean_action(lo) >= 1.0)
        throw std::domain_error("t_min: root below the minimal bracket (coupling too large)");

    // Start from the small-g asymptote bracket and grow geometrically: at large g
    // the root sits above (16/3g)*4, so the printed bracket alone cannot hold it.
    double hi = 16.0 / (3.0 * g) * 4.0;
    const double cap = std::max(1e4, 64.0 * hi);
    while (mean_action(hi) < 1.0) {
        hi *= 2.0;
        if (hi > cap)
            throw NoCrossing("t_min: no crossing of <S_I> = 1 inside the capped bracket");
    }

    double a = lo, b = hi;
    while ((b - a) > 1e-10 * b) {
        const double mid = 0.5 * (a + b);
        (mean_action(mid) < 1.0 ? a : b) = mid;
    }
    const double theta = 0.5 * (a + b);
    return {g, theta, 1.0 / theta};
}

double t_min(double g) { return t_min_detail(g).t_min; }

}  // namespace zerotherm
