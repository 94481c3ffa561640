#include <cmath>
#include <map>
#include <set>
#include <random>
#include <vector>

#include "doctest.h"
#include "levelcross/billiards.hpp"
#include "levelcross/spectrum.hpp"
#include "oracles.hpp"

using namespace lcross;

TEST_CASE("rect energies") {
    CHECK(RectBilliard::energy({1, 2}, 1.0) == 5.0);
    const double mu = std::sqrt(5.0 / 3.0);
    CHECK(RectBilliard::energy({2, 2}, mu) == doctest::Approx(8.262364471909156).epsilon(1e-12));
    // degenerate partner at the same root
    CHECK(RectBilliard::energy({1, 3}, mu) ==
          doctest::Approx(RectBilliard::energy({2, 2}, mu)).epsilon(1e-14));
}

TEST_CASE("cylinder energy at half flux") {
    const Billiard c = Billiard::cylinder();
    CHECK(c.energy({0, 0}, 0.5) == doctest::Approx(1.1013211836423378).epsilon(1e-12));
    CHECK(c.energy({1, 0}, 0.5) == doctest::Approx(c.energy({0, 0}, 0.5)).epsilon(1e-14));
}

TEST_CASE("slopes") {
    const double mu = std::sqrt(5.0 / 3.0);
    CHECK(RectBilliard::slope({1, 3}, mu) == doctest::Approx(-4.4).epsilon(1e-12));
    for (int k = 1; k <= 5; ++k) CHECK(RectBilliard::slope({k, k}, 1.0) == 0.0);
    const Billiard c = Billiard::cylinder();
    CHECK(c.slope({1, 0}, 0.5) == doctest::Approx(-4.0 / (kPi * kPi)).epsilon(1e-12));
}

TEST_CASE("invalid keys and parameters") {
    CHECK_THROWS_AS(RectBilliard::energy({0, 1}, 1.0), std::domain_error);
    CHECK_THROWS_AS(RectBilliard::energy({1, 1}, 0.0), std::domain_error);
    CHECK_THROWS_AS(RectBilliard::energy({1, 1}, -2.0), std::domain_error);
    CHECK_THROWS_AS(Billiard::cylinder().energy({0, -1}, 0.3), std::domain_error);
    CHECK_THROWS_AS(Billiard::cylinder(-1.0), std::domain_error);
    // any real flux is fine for curve plotting
    CHECK_NOTHROW(Billiard::cylinder().energy({-3, 2}, 7.25));
}

TEST_CASE("frequencies and actions on the shell") {
    const ShellPoint r1 = RectBilliard::frequencies_and_actions(4.0, 0.0, 1.0);
    CHECK(r1.i2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r1.omega2 == doctest::Approx(4.0).epsilon(1e-14));
    const ShellPoint r2 = RectBilliard::frequencies_and_actions(4.0, 2.0, 1.0);
    CHECK(r2.i2 == 0.0);
    CHECK(r2.omega2 == 0.0);
    const ShellPoint c1 = Billiard::cylinder(1.0).frequencies_and_actions(5.0, 1.0, 0.0);
    CHECK(c1.i2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c1.omega2 == doctest::Approx(4.0).epsilon(1e-14));
    CHECK_THROWS_AS(RectBilliard::frequencies_and_actions(4.0, 3.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(Billiard::cylinder(1.0).frequencies_and_actions(1.0, 5.0, 0.0),
                    std::domain_error);
}

TEST_CASE("slope matches central finite differences at 1000 random points per model") {
    std::mt19937 rng(20240811u);
    std::uniform_int_distribution<int> qn(1, 40);
    std::uniform_real_distribution<double> mu_dist(0.3, 3.0);
    for (int t = 0; t < 1000; ++t) {
        const LevelKey k{qn(rng), qn(rng)};
        const double mu = mu_dist(rng);
        const double exact = RectBilliard::slope(k, mu);
        const double fd = oracle::fd_slope(Billiard::rectangle(), k, mu);
        CHECK(std::abs(exact - fd) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
    const Billiard c = Billiard::cylinder();
    std::uniform_int_distribution<int> sn(-40, 40);
    std::uniform_int_distribution<int> ln(0, 30);
    std::uniform_real_distribution<double> phi_dist(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const LevelKey k{sn(rng), ln(rng)};
        const double phi = phi_dist(rng);
        const double exact = c.slope(k, phi);
        const double fd = oracle::fd_slope(c, k, phi);
        CHECK(std::abs(exact - fd) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("rect exchange symmetry energy((a,b),mu) == energy((b,a),1/mu)") {
    for (double mu : {1.0 / 3.0, 0.5, 1.0, 2.0, 3.0}) {
        for (int a = 1; a <= 50; ++a)
            for (int b = 1; b <= 50; b += 7) {
                const double lhs = RectBilliard::energy({a, b}, mu);
                const double rhs = RectBilliard::energy({b, a}, 1.0 / mu);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
            }
    }
}

TEST_CASE("cylinder flux periodicity: spectrum multiset repeats under phi -> phi+1") {
    const Billiard c = Billiard::cylinder();
    const double eps_max = 80.0;
    const int N = 20;
    // dyadic fluxes keep phi+1 exactly representable, so the shift is bit-exact
    for (double phi : {0.375, 0.0, 0.9375}) {
        std::multiset<double> at_phi, at_phi1;
        for (int n1 = -N; n1 <= N; ++n1)
            for (int n2 = 0; n2 <= 10; ++n2) {
                const double e = c.energy({n1, n2}, phi);
                if (e <= eps_max) at_phi.insert(e);
            }
        for (int n1 = -N + 1; n1 <= N + 1; ++n1)
            for (int n2 = 0; n2 <= 10; ++n2) {
                const double e = c.energy({n1, n2}, phi + 1.0);
                if (e <= eps_max) at_phi1.insert(e);
            }
        CHECK((at_phi == at_phi1));  // bit-exact
    }
}
