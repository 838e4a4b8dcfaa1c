#include "zerotherm/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zerotherm/model.hpp"

namespace zerotherm {

namespace {
constexpr double pi = std::numbers::pi;

// Composite Simpson weights (units of the grid step) for n_points samples;
// a 3/8 block covers the tail when the interval count is odd.
std::vector<double> simpson_weights(int n_points) {
    const int intervals = n_points - 1;
    std::vector<double> w(n_points, 0.0);
    int simpson_end = intervals;  // first index of the 3/8 block, if any
    if (intervals % 2 != 0) {
        if (intervals < 3) throw std::domain_error("simpson_weights: need at least 3 points");
        simpson_end = intervals - 3;
    }
    for (int i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += 1.0 / 3.0;
        w[i + 1] += 4.0 / 3.0;
        w[i + 2] += 1.0 / 3.0;
    }
    if (simpson_end != intervals) {
        w[simpson_end] += 3.0 / 8.0;
        w[simpson_end + 1] += 9.0 / 8.0;
        w[simpson_end + 2] += 9.0 / 8.0;
        w[simpson_end + 3] += 3.0 / 8.0;
    }
    return w;
}

}  // namespace

void SampledPath::validate() const {
    if (!(beta > 0.0)) throw std::domain_error("sampled path: beta must be positive");
    if (grid_size() < 3) throw std::domain_error("sampled path: need at least 3 samples");
}

double SineSeries::omega_hat(int n) const { return n * pi / beta; }

double MatsubaraSeries::omega_n(int n) const { return 2.0 * pi * n / beta; }

double MatsubaraSeries::value(double tau) const {
    const int N = order();
    std::complex<double> sum = 0.0;
    for (int n = -N; n <= N; ++n)
        sum += coeff(n) * std::exp(std::complex<double>(0.0, -omega_n(n) * tau));
    return sum.real();
}

ExtendedPath odd_extend(const SampledPath& path) {
    path.validate();
    const int N = path.grid_size();
    const double x0 = path.x0();
    ExtendedPath ext{path.beta, std::vector<double>(2 * N - 1)};
    for (int i = 0; i < N; ++i) {
        ext.values[N - 1 + i] = path.values[i];
        ext.values[N - 1 - i] = 2.0 * x0 - path.values[i];  // exact grid antisymmetry
    }
    return ext;
}

SineSeries sine_coefficients(const SampledPath& path, int n_terms) {
    path.validate();
    if (n_terms < 1) throw std::domain_error("sine_coefficients: need n_terms >= 1");
    const int N_grid = path.grid_size();
    if (4 * n_terms > N_grid)
        throw std::domain_error("grid too coarse for requested coefficient count");
    const double x0 = path.x0();
    const double h = path.beta / (N_grid - 1);
    const auto w = simpson_weights(N_grid);

    SineSeries series{path.beta, x0, std::vector<double>(n_terms, 0.0)};
    for (int n = 1; n <= n_terms; ++n) {
        double sum = 0.0;
        for (int i = 0; i < N_grid; ++i)
            sum += w[i] * (path.values[i] - x0) * std::sin(n * pi * i / (N_grid - 1.0));
        series.coeffs[n - 1] = 2.0 / path.beta * h * sum;
    }
    return series;
}

double reconstruct(const SineSeries& series, double tau) {
    if (tau < 0.0 || tau > series.beta)
        throw std::domain_error("reconstruct: tau outside [0, beta]");
    if (tau == 0.0 || tau == series.beta) return series.x0;  // sines vanish identically
    double sum = series.x0;
    for (int n = 1; n <= series.order(); ++n)
        sum += series.coeffs[n - 1] * std::sin(series.omega_hat(n) * tau);
    return sum;
}

double derivative_jump(const SineSeries& series, int n_partial) {
    if (n_partial > series.order())
        throw std::domain_error("derivative_jump: partial count exceeds series order");
    // cos(hat_w_n beta) - 1 = cos(n pi) - 1 = -2 for odd n, 0 for even n
    double sum = 0.0;
    for (int n = 1; n <= n_partial; n += 2)
        sum += series.coeffs[n - 1] * series.omega_hat(n) * (-2.0);
    return sum;
}

double matsubara_zero_mode(const MatsubaraSeries& series) {
    std::complex<double> sum = 0.0;
    for (const auto& c : series.coeffs) sum += c;
    return sum.real();
}

double action_of_series(const SineSeries& series, const PotentialSpec& spec) {
    spec.validate();
    const int N = series.order();
    const double beta = series.beta;
    // The integrand mixes frequencies up to 2N pi/beta (kinetic) with amplitudes
    // that decay for physical paths; 4N intervals put four grid points on the
    // shortest wavelength, plenty below the target tolerances.
    const int n_points = std::max(513, 4 * N + 1);
    const double h = beta / (n_points - 1);
    const auto w = simpson_weights(n_points);

    double action = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double u = pi * i / (n_points - 1.0);
        // sin(n u), cos(n u) by angle-addition recurrence: one trig pair per node
        const double s1 = std::sin(u), c1 = std::cos(u);
        double sn = s1, cn = c1;
        double x = series.x0;
        double xdot = 0.0;
        for (int n = 1; n <= N; ++n) {
            const double a = series.coeffs[n - 1];
            x += a * sn;
            xdot += a * (n * pi / beta) * cn;
            const double s_next = sn * c1 + cn * s1;
            cn = cn * c1 - sn * s1;
            sn = s_next;
        }
        action += w[i] * (0.5 * spec.m * xdot * xdot + potential_value(spec, x));
    }
    return action * h;
}

}  // namespace zerotherm
