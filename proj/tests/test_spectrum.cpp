#include <cmath>
#include <random>

#include "doctest.h"
#include "levelcross/spectrum.hpp"

using namespace lcross;

TEST_CASE("rect spectrum below eps=5 at mu=1") {
    const auto lv = enumerate_levels({Billiard::rectangle(), 5.0, 1.0});
    REQUIRE(lv.size() == 3);
    CHECK(lv[0].key == LevelKey{1, 1});
    CHECK(lv[0].energy == 2.0);
    CHECK(lv[1].key == LevelKey{1, 2});  // lexicographic tie-break at E=5
    CHECK(lv[1].energy == 5.0);
    CHECK(lv[2].key == LevelKey{2, 1});
    CHECK(lv[2].energy == 5.0);
}

TEST_CASE("window below the ground state is empty") {
    CHECK(enumerate_levels({Billiard::rectangle(), 2.0 - 1e-9, 1.0}).empty());
    CHECK(enumerate_levels({Billiard::rectangle(), -3.0, 1.0}).empty());
}

TEST_CASE("cylinder spectrum below 1.2 at half flux") {
    const auto lv = enumerate_levels({Billiard::cylinder(), 1.2, 0.5});
    REQUIRE(lv.size() == 2);
    CHECK(lv[0].key == LevelKey{0, 0});
    CHECK(lv[1].key == LevelKey{1, 0});
    CHECK(lv[0].energy == doctest::Approx(1.1013211836423378).epsilon(1e-12));
    CHECK(lv[0].energy == lv[1].energy);
}

TEST_CASE("cylinder spectrum matches a brute lattice scan") {
    const Billiard c = Billiard::cylinder();
    for (double phi : {0.0, 0.2, 0.5, 0.99}) {
        for (double eps_max : {1.2, 9.7, 50.0}) {
            const auto lv = enumerate_levels({c, eps_max, phi});
            std::size_t count = 0;
            for (int n1 = -10; n1 <= 10; ++n1)
                for (int n2 = 0; n2 <= 10; ++n2)
                    if (c.energy({n1, n2}, phi) <= eps_max) ++count;
            if (eps_max <= 40.0)  // brute bounds cover everything only at small eps
                CHECK(lv.size() == count);
        }
    }
}

TEST_CASE("level curves") {
    CHECK(level_curve(Billiard::rectangle(), {1, 1}, {1.0}) == std::vector<double>{2.0});
    // mu*n1^2 + n2^2/mu at (1,2): 5 at mu=1, 2 + 4/2 = 4 at mu=2
    CHECK(level_curve(Billiard::rectangle(), {1, 2}, {1.0, 2.0}) ==
          std::vector<double>{5.0, 4.0});
    const auto c = level_curve(Billiard::cylinder(), {1, 0}, {0.0, 0.5});
    CHECK(c[0] == doctest::Approx(4.0 / (kPi * kPi) + 1.0).epsilon(1e-14));
    CHECK(c[1] == doctest::Approx(1.0 / (kPi * kPi) + 1.0).epsilon(1e-14));
}

TEST_CASE("level count is nondecreasing in eps_max") {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> eps_dist(0.0, 200.0);
    for (int t = 0; t < 50; ++t) {
        double e1 = eps_dist(rng), e2 = eps_dist(rng);
        if (e2 < e1) std::swap(e1, e2);
        CHECK(enumerate_levels({Billiard::rectangle(), e1, 1.37}).size() <=
              enumerate_levels({Billiard::rectangle(), e2, 1.37}).size());
        CHECK(enumerate_levels({Billiard::cylinder(), e1, 0.21}).size() <=
              enumerate_levels({Billiard::cylinder(), e2, 0.21}).size());
    }
}

TEST_CASE("rect level count obeys the leading Weyl term at eps=1e4") {
    const auto lv = enumerate_levels({Billiard::rectangle(), 1e4, 1.0});
    const double weyl = kPi * 1e4 / 4.0;
    CHECK(std::abs(static_cast<double>(lv.size()) - weyl) <= 0.05 * weyl);
}

TEST_CASE("enumeration is deterministic") {
    const auto a = enumerate_levels({Billiard::cylinder(), 300.0, 0.77});
    const auto b = enumerate_levels({Billiard::cylinder(), 300.0, 0.77});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].key == b[i].key);
        CHECK(a[i].energy == b[i].energy);
    }
}
