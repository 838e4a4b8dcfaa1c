#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "zerotherm/errors.hpp"
#include "zerotherm/green.hpp"
#include "zerotherm/quadrature.hpp"
#include "zerotherm/zeromode.hpp"

using namespace zerotherm;

TEST_CASE("boundary-integral oscillator partition matches the closed free energy") {
    for (const double bw : {0.05, 0.31, 1.0, 7.7, 50.0}) {
        const double f = -std::log(sho_partition_boundary(1.0, bw)) / bw;
        CHECK(f == doctest::Approx(sho_free_energy_closed(1.0, bw)).epsilon(1e-13));
    }
    const double f = -std::log(sho_partition_boundary(2.7, 1.3)) / 1.3;
    CHECK(f == doctest::Approx(sho_free_energy_closed(2.7, 1.3)).epsilon(1e-13));
}

TEST_CASE("free-theory quadrature reproduces the closed oscillator result") {
    const PotentialSpec sho{1.0, 1.0, 0.0};
    for (const double beta : {0.1, 1.0, 10.0, 50.0}) {
        const auto z = partition_quadratic_detail(sho, beta);
        const double f_closed = sho_free_energy_closed(1.0, beta);
        CHECK(-z.log_value / beta == doctest::Approx(f_closed).epsilon(1e-9));
        CHECK(z.panels >= 1);
    }
}

TEST_CASE("classical path interpolates its boundary data") {
    const double omega = 1.3, beta = 2.0, x0 = 0.8;
    CHECK(classical_path(omega, beta, x0, 0.0) == doctest::Approx(x0).epsilon(1e-14));
    CHECK(classical_path(omega, beta, x0, beta) == doctest::Approx(x0).epsilon(1e-14));
    CHECK(classical_path(omega, beta, x0, 0.5 * beta) ==
          doctest::Approx(x0 / std::cosh(0.5 * beta * omega)).epsilon(1e-14));
    CHECK(classical_path(0.0, beta, x0, 0.7) == x0);
    // Symmetric about the midpoint.
    CHECK(classical_path(omega, beta, x0, 0.3) ==
          doctest::Approx(classical_path(omega, beta, x0, beta - 0.3)).epsilon(1e-14));
}

TEST_CASE("quadratic weight reproduces the pinned completion-term value") {
    // x0 chosen so the dimensionless curvature is exactly 2 at g = 0.4, theta = 1.
    const PotentialSpec spec{1.0, 1.0, 0.4};
    const EffectiveWeight w = quadratic_weight(spec, 1.0, 1.0 / std::sqrt(0.4));
    CHECK(w.omega_bar == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(w.sigma_eta == doctest::Approx(0.2980073050552939).epsilon(1e-12));
    CHECK(w.log_weight ==
          doctest::Approx(0.5 * w.log_det_prefactor - w.s_const + w.sigma_eta).epsilon(1e-14));
}

TEST_CASE("completion term is nonnegative and even") {
    for (const double lam : {0.4, 8.0})
        for (const double beta : {0.5, 2.0})
            for (const double x0 : {0.0, 0.5, 1.5, 3.0}) {
                const PotentialSpec spec{1.0, 1.0, lam};
                const EffectiveWeight w = quadratic_weight(spec, beta, x0);
                CHECK(w.sigma_eta >= 0.0);
                CHECK(quadratic_weight(spec, beta, -x0).log_weight == w.log_weight);
            }
}

TEST_CASE("fluctuation profile matches its closed form") {
    CHECK(i0_profile(1.0, 1.0, 1.0, 0.5) ==
          doctest::Approx(-(1.0 - 1.0 / std::cosh(0.5))).epsilon(1e-14));
    const auto row = [](double tp) { return green_value(DirichletKernel{1.0, 1.0}, 0.5, tp); };
    const double quad = -2.5 * (integrate_adaptive(row, 0.0, 0.5, 1e-14, 1e-12) +
                                integrate_adaptive(row, 0.5, 1.0, 1e-14, 1e-12));
    CHECK(i0_profile(1.0, 1.0, 2.5, 0.5) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("pinned free energies of the interacting oscillator") {
    const PotentialSpec spec{1.0, 1.0, 0.4};
    const double fq1 = -partition_quadratic_detail(spec, 1.0).log_value;
    const double fq2 = -partition_quadratic_detail(spec, 0.5).log_value * 2.0;
    const double fq3 = -partition_quadratic_detail(spec, 1.0 / 3.0).log_value * 3.0;
    CHECK(fq1 == doctest::Approx(0.23357404021178907).epsilon(1e-8));
    CHECK(fq2 == doctest::Approx(-0.8780705775180855).epsilon(1e-8));
    CHECK(fq3 == doctest::Approx(-2.40812798788956).epsilon(1e-8));

    const double fi1 = -partition_improved_detail(spec, 1.0).log_value;
    const double fi2 = -partition_improved_detail(spec, 0.5).log_value * 2.0;
    const double fi3 = -partition_improved_detail(spec, 1.0 / 3.0).log_value * 3.0;
    CHECK(fi1 == doctest::Approx(0.22783305767595596).epsilon(1e-7));
    CHECK(fi2 == doctest::Approx(-0.880115791818689).epsilon(1e-7));
    CHECK(fi3 == doctest::Approx(-2.4091214775593217).epsilon(1e-7));
}

TEST_CASE("first-order correction loses positivity at low temperature") {
    CHECK_THROWS_AS(partition_improved(PotentialSpec{1.0, 1.0, 8.0}, 1.0 / 0.35),
                    ApproximationBreakdown);
    CHECK_THROWS_AS(partition_improved(PotentialSpec{1.0, 1.0, 0.4}, 25.0),
                    ApproximationBreakdown);
    CHECK_NOTHROW(partition_improved(PotentialSpec{1.0, 1.0, 8.0}, 2.0));
}

TEST_CASE("correction integrand is finite and even") {
    const PotentialSpec spec{1.0, 1.0, 0.4};
    const double d = correction_first_order(spec, 1.0, 0.7);
    CHECK(std::isfinite(d));
    CHECK(correction_first_order(spec, 1.0, -0.7) == doctest::Approx(d).epsilon(1e-12));
    const CorrectionParts parts = correction_parts(spec, 1.0, 0.7);
    CHECK(std::isfinite(parts.cubic));
    CHECK(parts.quartic > 0.0);  // 3 G^2 dominates the positive quartic moment
}

TEST_CASE("effective potential reassembles the boundary integral") {
    const PotentialSpec spec{1.0, 1.0, 0.4};
    const double beta = 1.0;
    const auto direct = partition_quadratic_detail(spec, beta);
    const auto f = [&](double x0) { return std::exp(-beta * effective_potential(spec, beta, x0)); };
    const auto half = integrate_half_line(f, 1.0, QuadratureConfig{});
    const double reassembled = std::sqrt(spec.m / (2.0 * M_PI * beta)) * 2.0 * half.value;
    CHECK(reassembled == doctest::Approx(direct.value).epsilon(1e-12));
}

TEST_CASE("effective potential approaches the bare potential at high temperature") {
    const PotentialSpec spec{1.0, 1.0, 0.4};
    for (const double x0 : {0.5, 1.0, 2.0}) {
        const double v_eff = effective_potential(spec, 0.01, x0);
        const double v = potential_value(spec, x0);
        CHECK(std::abs(v_eff - v) < 0.01 * std::abs(v));
    }
}

TEST_CASE("classical partition matches its closed forms") {
    // Pure quartic: the x0 integral is a Gamma function.
    const PotentialSpec quartic{1.0, 0.0, 1.7};
    const double beta = 0.9;
    const double closed = std::sqrt(quartic.m / (2.0 * M_PI * beta)) * std::tgamma(0.25) *
                          std::pow(4.0 / (beta * quartic.lambda), 0.25) / 2.0;
    CHECK(partition_classical(quartic, beta) == doctest::Approx(closed).epsilon(1e-10));

    // Pure harmonic: Z_cl = T / omega.
    const PotentialSpec sho{1.0, 2.2, 0.0};
    CHECK(partition_classical(sho, 0.37) == doctest::Approx(1.0 / (0.37 * 2.2)).epsilon(1e-12));
}

TEST_CASE("classical and quadratic free energies merge at high temperature") {
    const PotentialSpec spec{1.0, 1.0, 0.4};
    const double beta = 0.02;
    const double fq = -partition_quadratic_detail(spec, beta).log_value / beta;
    const double fc = -partition_classical_detail(spec, beta).log_value / beta;
    CHECK(fq == doctest::Approx(-155.65617417056015).epsilon(1e-9));
    CHECK(fc == doctest::Approx(-155.66393137775756).epsilon(1e-9));
    CHECK(std::abs(fq - fc) < 0.01 * std::abs(fc));
}

TEST_CASE("series expansion of the classical path matches pointwise values") {
    const SineSeries series = classical_path_series(1.0, 1.0, 1.0, 2000);
    for (const double tau : {0.2, 0.5, 0.81})
        CHECK(std::abs(reconstruct(series, tau) - classical_path(1.0, 1.0, 1.0, tau)) < 1e-6);
}

TEST_CASE("partition results keep value and log form consistent") {
    const PotentialSpec spec{1.0, 1.0, 0.4};
    const auto z = partition_quadratic_detail(spec, 2.0);
    CHECK(std::log(z.value) == doctest::Approx(z.log_value).epsilon(1e-12));
    CHECK(z.error_estimate < 1e-8 * z.value);
}
