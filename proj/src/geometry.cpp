#include "uavho/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace uavho {

namespace {
constexpr double kDegPerRad = 180.0 / 3.14159265358979323846;
}

std::size_t Trajectory::sample_count() const {
    return static_cast<std::size_t>(std::floor(duration_s * 1000.0 / sample_period_ms)) + 1;
}

Point2 Trajectory::position(std::size_t idx) const {
    const double t_s = static_cast<double>(idx) * sample_period_ms / 1000.0;
    const double dist_km = speed_kmh / 3600.0 * t_s;
    return {start.x + dist_km * std::cos(heading_rad),
            start.y + dist_km * std::sin(heading_rad)};
}

NetworkRealization generate_network(double density, const Rect& region, std::uint64_t seed,
                                    double h_gbs, double p_gbs_dbm) {
    if (density <= 0.0)
        throw std::invalid_argument("generate_network: density must be > 0");
    if (region.area() <= 0.0)
        throw std::invalid_argument("generate_network: region must have positive area");
    if (h_gbs <= 0.0)
        throw std::invalid_argument("generate_network: h_gbs must be > 0");

    std::mt19937_64 rng(seed);
    std::poisson_distribution<int> count_dist(density * region.area());
    std::uniform_real_distribution<double> ux(region.x_min, region.x_max);
    std::uniform_real_distribution<double> uy(region.y_min, region.y_max);

    NetworkRealization net;
    net.h_gbs = h_gbs;
    net.p_gbs_dbm = p_gbs_dbm;
    net.density = density;
    net.region = region;
    const int n = count_dist(rng);
    net.gbs_positions.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = ux(rng);
        net.gbs_positions.push_back({x, uy(rng)});
    }
    return net;
}

LinkGeometry link_geometry(const Point2& gbs, const Point2& uav, double h_gbs, double h_uav) {
    if (h_gbs <= 0.0 || h_uav <= 0.0)
        throw std::invalid_argument("link_geometry: heights must be > 0");

    LinkGeometry g;
    g.h_gbs = h_gbs;
    g.h_uav = h_uav;
    const double dx = uav.x - gbs.x;
    const double dy = uav.y - gbs.y;
    g.horiz_dist_km = std::hypot(dx, dy);
    const double horiz_m = g.horiz_dist_km * 1000.0;

    g.l_m = std::hypot(horiz_m, h_uav - h_gbs);
    g.theta_deg = std::atan2(h_uav - h_gbs, horiz_m) * kDegPerRad;
    g.psi_deg = std::atan2(h_uav + h_gbs, horiz_m) * kDegPerRad;

    // Specular point splits the ground projection proportionally to the heights.
    const double x_r = horiz_m * h_gbs / (h_gbs + h_uav);
    g.r1_m = std::hypot(x_r, h_gbs);
    g.r2_m = std::hypot(horiz_m - x_r, h_uav);
    return g;
}

}  // namespace uavho
