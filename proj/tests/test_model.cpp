#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cwmix/model.hpp"
#include "cwmix/rng.hpp"

using namespace cwmix;

// Reference values in this file were computed independently with 50-digit
// arithmetic and rounded to the nearest double.

TEST_CASE("update probabilities match extended-precision references") {
    CHECK(update_probabilities(1.0, 1.0).p_plus ==
          doctest::Approx(0.8807970779778824).epsilon(1e-14));
    CHECK(update_probabilities(1.0, 0.75).p_minus ==
          doctest::Approx(0.18242552380635635).epsilon(1e-14));
    CHECK(update_probabilities(0.0, 0.7).p_plus == 0.5);
    CHECK(update_probabilities(2.5, 0.0).p_plus == 0.5);
}

TEST_CASE("probability complement and sign symmetry are bit-exact") {
    RngStream rng(7, 0);
    for (int i = 0; i < 20000; ++i) {
        const double beta = 3.0 * rng.uniform01();
        const double s = 2.0 * rng.uniform01() - 1.0;
        const UpdateProbs fwd = update_probabilities(beta, s);
        const UpdateProbs rev = update_probabilities(beta, -s);
        CHECK(fwd.p_plus + fwd.p_minus == 1.0);
        CHECK(fwd.p_plus == rev.p_minus);
        CHECK(fwd.p_minus == rev.p_plus);
        CHECK(fwd.p_plus >= 0.0);
        CHECK(fwd.p_plus <= 1.0);
    }
}

TEST_CASE("p_plus is increasing in s and in beta*|s|") {
    double prev = -1.0;
    for (int i = -100; i <= 100; ++i) {
        const double p = update_probabilities(1.3, i / 100.0).p_plus;
        CHECK(p >= prev);
        prev = p;
    }
    CHECK(update_probabilities(0.5, 0.5).p_plus < update_probabilities(2.0, 0.5).p_plus);
}

TEST_CASE("contraction rate matches reference and limits") {
    CHECK(contraction_rate({100, 0.5}) == doctest::Approx(0.99499995833375).epsilon(1e-14));
    // beta = 0: plain coupon-collector contraction 1 - 1/n.
    CHECK(contraction_rate({50, 0.0}) == doctest::Approx(1.0 - 1.0 / 50).epsilon(1e-15));
    // rho < 1 strictly for beta < 1, including close to critical.
    CHECK(contraction_rate({1000, 0.999}) < 1.0);
    // Supercritical rates exceed the subcritical ones at the same n.
    CHECK(contraction_rate({100, 1.5}) > contraction_rate({100, 0.5}));
}

TEST_CASE("fixed point of tanh(beta s) = s") {
    CHECK(s_star(0.4) == 0.0);
    CHECK(s_star(1.0) == 0.0);
    CHECK(s_star(2.0) == doctest::Approx(0.9575040240772688).epsilon(1e-13));
    CHECK(s_star(1.5) == doctest::Approx(0.8585596366401104).epsilon(1e-13));
    for (const double beta : {1.1, 1.3, 1.5, 2.0, 3.0}) {
        const double s = s_star(beta);
        CHECK(s > 0.0);
        CHECK(s < 1.0);
        CHECK(std::fabs(std::tanh(beta * s) - s) <= 1e-12);
    }
    CHECK_THROWS_AS(s_star(-0.5), std::invalid_argument);
}

TEST_CASE("curvature scale at the metastable point") {
    CHECK(gamma_star(2.0) == doctest::Approx(0.16637208775167434).epsilon(1e-12));
    CHECK(gamma_star(1.5) == doctest::Approx(0.3943130254986025).epsilon(1e-12));
    for (const double beta : {1.05, 1.2, 2.0, 4.0}) {
        const double g = gamma_star(beta);
        CHECK(g > 0.0);
        CHECK(g < 1.0);
    }
    CHECK_THROWS_AS(gamma_star(1.0), std::domain_error);
    CHECK_THROWS_AS(gamma_star(0.5), std::domain_error);
}

TEST_CASE("free energy: references, symmetry, and stationarity at z*") {
    CHECK(free_energy(1.2, 0.2) == doctest::Approx(-0.013717121494948154).epsilon(1e-12));
    const double zs = s_star(2.0) / 2.0;
    CHECK(free_energy(2.0, zs) == doctest::Approx(-0.3265238874269239).epsilon(1e-12));
    CHECK(free_energy(0.7, 0.0) == 0.0);
    for (const double z : {0.05, 0.17, 0.31, 0.49}) {
        CHECK(free_energy(1.4, z) == free_energy(1.4, -z));
    }
    // z* is a critical point: central difference of f vanishes there.
    const double h = 1e-6;
    const double fd = (free_energy(2.0, zs + h) - free_energy(2.0, zs - h)) / (2 * h);
    CHECK(std::fabs(fd) <= 1e-8);
    CHECK_THROWS_AS(free_energy(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(free_energy(1.0, -0.62), std::domain_error);
}

TEST_CASE("cutoff center") {
    CHECK(cutoff_center({100, 0.0}) == doctest::Approx(230.25850929940458).epsilon(1e-14));
    CHECK(cutoff_center({1000, 0.5}) == doctest::Approx(6907.7552789821375).epsilon(1e-14));
    CHECK_THROWS_AS(cutoff_center({100, 1.0}), std::domain_error);
    CHECK_THROWS_AS(cutoff_center({100, 1.5}), std::domain_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((ModelParams{1, 0.5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ModelParams{0, 0.5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ModelParams{10, -0.1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ModelParams{10, std::nan("")}.validate()), std::invalid_argument);
    CHECK_NOTHROW((ModelParams{2, 0.0}.validate()));
    CHECK_NOTHROW((ModelParams{1000, 3.0}.validate()));
}

TEST_CASE("derived constants agree with their parts") {
    const ModelParams sub{200, 0.5};
    const DerivedConstants dsub = derive(sub);
    CHECK(dsub.rho == contraction_rate(sub));
    CHECK(dsub.s_star == 0.0);
    CHECK(std::isnan(dsub.gamma_star));
    CHECK(dsub.t_n == cutoff_center(sub));
    CHECK(dsub.t_crit == doctest::Approx(std::pow(200.0, 1.5)).epsilon(1e-15));

    const ModelParams super{200, 1.5};
    const DerivedConstants dsup = derive(super);
    CHECK(dsup.s_star == s_star(1.5));
    CHECK(dsup.gamma_star == gamma_star(1.5));
    CHECK(std::isnan(dsup.t_n));
}
