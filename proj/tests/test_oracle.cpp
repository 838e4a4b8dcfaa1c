#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "zerotherm/errors.hpp"
#include "zerotherm/oracle.hpp"
#include "zerotherm/zeromode.hpp"

using namespace zerotherm;

TEST_CASE("basis matrix is exactly symmetric with the pinned diagonal entry") {
    const PotentialSpec spec{1.0, 1.0, 0.4};
    const Eigen::MatrixXd h = hamiltonian_matrix(spec, 1.0, 8);
    CHECK(h == h.transpose());
    // <0|H|0> = omega/2 + (lambda/4) <0|x^4|0> = 0.5 + 0.1 * 3/4.
    CHECK(h(0, 0) == doctest::Approx(0.575).epsilon(1e-14));
}

TEST_CASE("free-theory spectrum is the harmonic ladder") {
    const Spectrum sp = spectrum(PotentialSpec{1.0, 1.0, 0.0});
    for (int n = 0; n < 10; ++n)
        CHECK(sp.eigenvalues[n] == doctest::Approx(n + 0.5).epsilon(1e-9));
    CHECK(sp.convergence[0] < 1e-6);
    CHECK(sp.certified_count() * 3 <= sp.basis_size);
}

TEST_CASE("pinned quartic ground-state energies") {
    CHECK(spectrum(PotentialSpec{1.0, 1.0, 0.4}).eigenvalues[0] ==
          doctest::Approx(0.559146327184).epsilon(1e-8));
    CHECK(spectrum(PotentialSpec{1.0, 1.0, 200.0}).eigenvalues[0] ==
          doctest::Approx(2.4997087726).epsilon(1e-7));
    CHECK(spectrum(PotentialSpec{1.0, 0.0, 0.4}).eigenvalues[0] ==
          doctest::Approx(0.310051756150).epsilon(1e-7));
}

TEST_CASE("spectral partition sum matches the closed oscillator form") {
    const PotentialSpec sho{1.0, 1.0, 0.0};
    const Spectrum sp = spectrum(sho);
    for (const double beta : {0.5, 1.0, 5.0}) {
        const double closed = 1.0 / (2.0 * std::sinh(0.5 * beta));
        CHECK(partition_exact(sho, beta, sp) == doctest::Approx(closed).epsilon(1e-8));
    }
}

TEST_CASE("spectral partition refuses temperatures beyond its truncation bound") {
    const PotentialSpec sho{1.0, 1.0, 0.0};
    const Spectrum sp = spectrum(sho);
    CHECK_THROWS_AS(partition_exact(sho, 0.001, sp), NonConvergence);
}

TEST_CASE("partition detail exposes a small truncation bound in range") {
    const PotentialSpec spec{1.0, 1.0, 0.4};
    const Spectrum sp = spectrum(spec);
    const ExactPartition z = partition_exact_detail(spec, 1.0, sp);
    CHECK(z.value > 0.0);
    CHECK(std::log(z.value) == doctest::Approx(z.log_value).epsilon(1e-12));
    CHECK(z.truncation_bound < 1e-8 * z.value);
}

TEST_CASE("first-order perturbative free energy hits the pinned value") {
    CHECK(free_energy_oneloop(PotentialSpec{1.0, 1.0, 0.4}, 1.0) ==
          doctest::Approx(0.39252693287525586).epsilon(1e-13));
    // lambda -> 0 reduces to the closed oscillator free energy.
    CHECK(free_energy_oneloop(PotentialSpec{1.0, 1.0, 0.0}, 2.0) ==
          doctest::Approx(sho_free_energy_closed(1.0, 2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(free_energy_oneloop(PotentialSpec{1.0, 0.0, 0.4}, 1.0), std::domain_error);
}

TEST_CASE("perturbative and spectral free energies agree at weak coupling") {
    const PotentialSpec weak{1.0, 1.0, 0.008};
    const Spectrum sp = spectrum(weak);
    const double f_exact = -std::log(partition_exact(weak, 1.0, sp));
    const double f_pert = free_energy_oneloop(weak, 1.0);
    const double f_harm = free_energy_oneloop(PotentialSpec{1.0, 1.0, 0.0}, 1.0);
    // The first-order result leaves an O(lambda^2) residual, well below the
    // O(lambda) gap separating the free oscillator from the exact answer.
    CHECK(std::abs(f_exact - f_pert) < 5e-4);
    CHECK(10.0 * std::abs(f_exact - f_pert) < std::abs(f_exact - f_harm));
}

TEST_CASE("massless-mode spectrum uses the quartic basis scale") {
    const Spectrum sp = spectrum(PotentialSpec{1.0, 0.0, 0.4});
    CHECK(sp.basis_frequency == doctest::Approx(std::cbrt(0.4)).epsilon(1e-14));
    CHECK(sp.eigenvalues[0] > 0.0);
}
