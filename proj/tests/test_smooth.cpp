#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "levelcross/crossings.hpp"
#include "levelcross/quadrature.hpp"
#include "levelcross/smooth.hpp"

using namespace lcross;
using namespace lcross::smooth;

TEST_CASE("closed-form densities") {
    CHECK(rect_density(0.0, 1.0) == 0.0);
    CHECK(rect_density(3000.0, 2.0) == 375.0);
    CHECK(cyl_density(0.0, 0.7) == 0.0);
    CHECK(cyl_density(1400.0, 4.0 / (kPi * kPi)) == doctest::Approx(kPi * std::sqrt(1400.0)).epsilon(1e-13));
    CHECK_THROWS_AS(rect_density(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(cyl_density(-1.0, 1.0), std::domain_error);
}

TEST_CASE("integrated rect count") {
    CHECK(rect_integrated_count(123.0, 1.0, 1.0) == 0.0);
    CHECK(rect_integrated_count(3000.0, 1.0, 2.0) == doctest::Approx(519.8603854199590).epsilon(1e-13));
    CHECK_THROWS_AS(rect_integrated_count(1.0, 0.0, 2.0), std::domain_error);
}

TEST_CASE("sign fractions") {
    const auto [fp, fm] = cyl_sign_fractions();
    CHECK(fp + fm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fp == doctest::Approx(1.0 - kPi / 4.0).epsilon(1e-15));
    CHECK(fm == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    // consistency with the benchmark counts (22266 / 105158, 82892 / 105158)
    CHECK(std::abs(fp - 22266.0 / 105158.0) < 0.005);
    CHECK(std::abs(fm - 82892.0 / 105158.0) < 0.005);
}

TEST_CASE("rect g(v) frozen values") {
    CHECK(rect_gv(0.0) == 0.0);
    CHECK(rect_gv(1.0) == 0.0);
    // independent high-precision quadrature of the raw integral
    CHECK(rect_gv(0.25) == doctest::Approx(0.700301521166301).epsilon(1e-8));
    CHECK(rect_gv(0.5) == doctest::Approx(1.078257823749821).epsilon(1e-8));
    CHECK(rect_gv(0.75) == doctest::Approx(1.353346216165476).epsilon(1e-8));
    CHECK(rect_gv(0.9) == doctest::Approx(1.489155000770274).epsilon(1e-8));
    CHECK_THROWS_AS(rect_gv(-0.1), std::domain_error);
    CHECK_THROWS_AS(rect_gv(1.1), std::domain_error);
}

TEST_CASE("cylinder g(v) frozen values and continuity") {
    CHECK(cyl_gv(0.0).total == 0.0);
    CHECK(cyl_gv(2.0).total == 0.0);
    CHECK(cyl_gv(0.25).plus_part == doctest::Approx(0.2012549115916355).epsilon(1e-8));
    CHECK(cyl_gv(0.25).minus_part == doctest::Approx(0.0159605545019157).epsilon(1e-7));
    CHECK(cyl_gv(0.5).plus_part == doctest::Approx(0.2817146239155312).epsilon(1e-8));
    CHECK(cyl_gv(0.5).minus_part == doctest::Approx(0.0684361366676193).epsilon(1e-7));
    CHECK(cyl_gv(1.5).minus_part == doctest::Approx(0.6766731080827381).epsilon(1e-8));
    CHECK(cyl_gv(1.5).plus_part == 0.0);
    // two code paths meet at v = 1
    const double left = cyl_gv(1.0).minus_part;
    const double right = 0.25 * 1.0 *
        quad::integrate_endpoint_singular(
            [](double theta) {
                const double d = 1.0 - std::sin(theta);
                return 1.0 / std::sqrt(1.0 - d * d);
            },
            0.0, 0.5 * kPi, 1e-12);
    CHECK(std::abs(left - right) <= 1e-8);
    CHECK(left == doctest::Approx(0.5391289118749108).epsilon(1e-8));
}

TEST_CASE("normalization and component masses to 1e-6") {
    const double rect_mass = quad::integrate([](double v) { return rect_gv(v); }, 0.0, 1.0, 1e-9);
    CHECK(std::abs(rect_mass - 1.0) <= 1e-6);
    const double plus_mass =
        quad::integrate([](double v) { return cyl_gv(v).plus_part; }, 0.0, 1.0, 1e-9);
    const double minus_mass =
        quad::integrate([](double v) { return cyl_gv(v).minus_part; }, 0.0, 1.0, 1e-9) +
        quad::integrate([](double v) { return cyl_gv(v).minus_part; }, 1.0, 2.0, 1e-9);
    CHECK(std::abs(plus_mass - (1.0 - kPi / 4.0)) <= 1e-6);
    CHECK(std::abs(minus_mass - kPi / 4.0) <= 1e-6);
    CHECK(std::abs(plus_mass + minus_mass - 1.0) <= 1e-6);
}

TEST_CASE("generic DCDS factorizes through the closed forms") {
    const Billiard rect = Billiard::rectangle();
    CHECK(generic_dcds(rect, 100.0, 1.3, 0.0) == 0.0);
    CHECK(std::abs(generic_dcds(rect, 100.0, 1.3, 0.4) / rect_density(100.0, 1.3) - rect_gv(0.4)) <=
          1e-6);
    const Billiard cyl = Billiard::cylinder();
    CHECK(std::abs(generic_dcds(cyl, 200.0, 0.0, 0.7) / cyl_density(200.0, cyl.gamma()) -
                   cyl_gv(0.7).total) <= 1e-6);

    std::mt19937 rng(4242u);
    std::uniform_real_distribution<double> eps_dist(20.0, 500.0);
    std::uniform_real_distribution<double> mu_dist(0.5, 3.0);
    std::uniform_real_distribution<double> v_unit(0.02, 0.98);
    for (int t = 0; t < 100; ++t) {
        const double eps = eps_dist(rng), mu = mu_dist(rng), v = v_unit(rng);
        const double lhs = generic_dcds(rect, eps, mu, v) / rect_density(eps, mu);
        CHECK(std::abs(lhs - rect_gv(v)) <= 1e-6);
    }
    std::uniform_real_distribution<double> v_two(0.02, 1.98);
    for (int t = 0; t < 100; ++t) {
        const double eps = eps_dist(rng), v = v_two(rng);
        const double lhs = generic_dcds(cyl, eps, 0.0, v) / cyl_density(eps, cyl.gamma());
        CHECK(std::abs(lhs - cyl_gv(v).total) <= 1e-6);
    }
}

TEST_CASE("windowed exact counts track the smooth densities") {
    // rect: mean of eps/(4 mu) over eps in [2900,3100], mu in [1.45,1.55)
    CrossingWindow w{Billiard::rectangle(), 3100.0, 1.45, 1.55};
    std::size_t n = 0;
    for (const auto& c : enumerate_crossings(w, 2))
        if (c.energy >= 2900.0) ++n;
    const double pred = 3000.0 / (4.0 * 1.5) * 200.0 * 0.1;
    CHECK(std::abs(static_cast<double>(n) - pred) <= 4.0 * std::sqrt(pred));

    // cylinder: 2 sqrt(eps/gamma) per unit flux at eps ~ 900
    CrossingWindow wc{Billiard::cylinder(), 920.0, 0.0, 1.0};
    std::size_t m = 0;
    for (const auto& c : enumerate_crossings(wc, 2))
        if (c.energy >= 880.0) ++m;
    const double pred_c = 30.0 * kPi * 40.0;
    CHECK(std::abs(static_cast<double>(m) - pred_c) <= 4.0 * std::sqrt(pred_c));
}

TEST_CASE("rect g(v) matches the enumerated histogram near v=0.5") {
    CrossingWindow w{Billiard::rectangle(), 1000.0, 1.0, 2.0};
    const auto cs = enumerate_crossings(w, 2);
    std::size_t in_bin = 0;
    for (const auto& c : cs)
        if (c.v >= 0.49 && c.v < 0.51) ++in_bin;
    const double expect = rect_gv(0.5) * 0.02 * static_cast<double>(cs.size());
    CHECK(std::abs(static_cast<double>(in_bin) - expect) <= 3.0 * std::sqrt(expect));
}

TEST_CASE("gv table CDF") {
    const GvTable table(Model::rect, 2048);
    CHECK(table.cdf(0.0) == 0.0);
    CHECK(table.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(table.cdf(0.3) < table.cdf(0.6));
    const GvTable cyl_table(Model::cylinder, 2048);
    CHECK(cyl_table.total_mass() == doctest::Approx(1.0).epsilon(1e-3));
}
