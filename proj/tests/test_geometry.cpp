#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "uavho/geometry.hpp"

using namespace uavho;

TEST_CASE("generate_network rejects invalid configs") {
    const Rect region{0, 0, 10, 10};
    CHECK_THROWS_AS(generate_network(0.0, region, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_network(-1.0, region, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_network(1.0, Rect{0, 0, 0, 10}, 1), std::invalid_argument);
}

TEST_CASE("generate_network is deterministic per seed and respects the region") {
    const Rect region{-2, -3, 8, 7};
    const auto a = generate_network(2.0, region, 42);
    const auto b = generate_network(2.0, region, 42);
    REQUIRE(a.gbs_positions.size() == b.gbs_positions.size());
    for (std::size_t i = 0; i < a.gbs_positions.size(); ++i) {
        CHECK(a.gbs_positions[i].x == b.gbs_positions[i].x);
        CHECK(a.gbs_positions[i].y == b.gbs_positions[i].y);
        CHECK(region.contains(a.gbs_positions[i]));
    }
    const auto c = generate_network(2.0, region, 43);
    CHECK(c.gbs_positions.size() != a.gbs_positions.size());  // overwhelmingly likely
}

TEST_CASE("PPP mean count matches density * area") {
    // density=1 on 10x10 km: Poisson mean 100, averaged over 1000 seeds the
    // sample mean lands within [90, 110] (3 sigma is about 1).
    const Rect region{0, 0, 10, 10};
    double total = 0.0;
    const int n = 1000;
    for (int s = 0; s < n; ++s)
        total += static_cast<double>(generate_network(1.0, region, 1000 + s).gbs_positions.size());
    const double mean = total / n;
    CHECK(mean > 90.0);
    CHECK(mean < 110.0);

    // density=2 doubles the expected count: mean 200.
    double total2 = 0.0;
    for (int s = 0; s < n; ++s)
        total2 += static_cast<double>(generate_network(2.0, region, 5000 + s).gbs_positions.size());
    CHECK(total2 / n == doctest::Approx(200.0).epsilon(0.05));
}

TEST_CASE("trajectory sampling") {
    Trajectory t;
    t.speed_kmh = 60.0;
    t.duration_s = 12.0;
    t.sample_period_ms = 40.0;
    CHECK(t.sample_count() == 301);  // floor(12000/40) + 1
    CHECK(t.distance_km() == doctest::Approx(0.2));

    t.heading_rad = 0.0;
    t.start = {1.0, 2.0};
    const auto p0 = t.position(0);
    CHECK(p0.x == doctest::Approx(1.0));
    CHECK(p0.y == doctest::Approx(2.0));
    const auto pend = t.position(300);
    CHECK(pend.x == doctest::Approx(1.2));
    CHECK(pend.y == doctest::Approx(2.0));

    t.heading_rad = std::acos(-1.0) / 2.0;
    const auto pup = t.position(300);
    CHECK(pup.x == doctest::Approx(1.0));
    CHECK(pup.y == doctest::Approx(2.2));
}

TEST_CASE("link_geometry hand cases") {
    SUBCASE("equal heights give a horizontal direct path") {
        const auto g = link_geometry({0, 0}, {1, 0}, 30, 30);
        CHECK(g.theta_deg == doctest::Approx(0.0));
    }
    SUBCASE("vertical link degenerates without error") {
        const auto g = link_geometry({0, 0}, {0, 0}, 30, 100);
        CHECK(g.l_m == doctest::Approx(70.0));
        CHECK(g.reflected_len_m() == doctest::Approx(130.0));
        CHECK(g.theta_deg == doctest::Approx(90.0));
        CHECK(g.psi_deg == doctest::Approx(90.0));
    }
    SUBCASE("1 km horizontal offset") {
        const auto g = link_geometry({0, 0}, {1, 0}, 30, 100);
        CHECK(g.l_m == doctest::Approx(std::sqrt(1000.0 * 1000.0 + 70.0 * 70.0)));
        CHECK(g.reflected_len_m() ==
              doctest::Approx(std::sqrt(1000.0 * 1000.0 + 130.0 * 130.0)));
        CHECK(g.l_m == doctest::Approx(1002.45).epsilon(1e-4));
        CHECK(g.reflected_len_m() == doctest::Approx(1008.41).epsilon(1e-4));
    }
}

TEST_CASE("image-method identity and angle monotonicity") {
    const double h_gbs = 30.0, h_uav = 100.0;
    double prev_theta = 91.0, prev_psi = 91.0;
    for (double d = 0.1; d <= 5.0; d += 0.1) {
        const auto g = link_geometry({0, 0}, {d, 0}, h_gbs, h_uav);
        const double horiz_m = d * 1000.0;
        // r1 + r2 equals the distance to the image at -h_gbs.
        CHECK(g.reflected_len_m() ==
              doctest::Approx(std::hypot(horiz_m, h_uav + h_gbs)).epsilon(1e-12));
        CHECK(g.l_m == doctest::Approx(std::hypot(horiz_m, h_uav - h_gbs)).epsilon(1e-12));
        CHECK(g.reflected_len_m() >= g.l_m);
        CHECK(g.psi_deg > 0.0);
        CHECK(g.psi_deg <= 90.0);
        CHECK(g.theta_deg < prev_theta);
        CHECK(g.psi_deg < prev_psi);
        prev_theta = g.theta_deg;
        prev_psi = g.psi_deg;
    }
}

TEST_CASE("link geometry is translation invariant") {
    const auto a = link_geometry({0.3, -0.4}, {1.1, 0.9}, 30, 100);
    const auto b = link_geometry({10.3, 4.6}, {11.1, 5.9}, 30, 100);
    CHECK(a.l_m == doctest::Approx(b.l_m).epsilon(1e-12));
    CHECK(a.theta_deg == doctest::Approx(b.theta_deg).epsilon(1e-12));
    CHECK(a.psi_deg == doctest::Approx(b.psi_deg).epsilon(1e-12));
}
