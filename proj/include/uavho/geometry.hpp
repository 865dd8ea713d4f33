#pragma once

#include <cstdint>
#include <vector>

namespace uavho {

/// Planar point, coordinates in km.
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned rectangle, km.
struct Rect {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    bool contains(const Point2& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
};

/// One PPP draw of the ground network.
struct NetworkRealization {
    std::vector<Point2> gbs_positions;  // km
    double h_gbs = 30.0;                // m
    double p_gbs_dbm = 46.0;
    double density = 1.0;               // GBS/km^2
    Rect region;                        // km
};

/// Linear constant-speed flight at fixed height.
struct Trajectory {
    Point2 start;             // km
    double heading_rad = 0.0;
    double speed_kmh = 0.0;
    double h_uav = 100.0;     // m
    double duration_s = 12.0;
    double sample_period_ms = 40.0;

    std::size_t sample_count() const;
    /// Position at sample index (0-based), km.
    Point2 position(std::size_t idx) const;
    /// Total covered distance, km.
    double distance_km() const { return speed_kmh * duration_s / 3600.0; }
};

/// Direct and ground-reflected path geometry for one GBS/UAV pair.
/// Path lengths in meters, angles in degrees.
struct LinkGeometry {
    double horiz_dist_km = 0.0;
    double l_m = 0.0;        // 3D direct distance
    double theta_deg = 0.0;  // elevation of the direct path at the GBS, positive up
    double r1_m = 0.0;       // GBS -> ground reflection point
    double r2_m = 0.0;       // reflection point -> UAV
    double psi_deg = 0.0;    // grazing angle at the ground
    double h_gbs = 0.0;      // m
    double h_uav = 0.0;      // m

    double reflected_len_m() const { return r1_m + r2_m; }
};

/// Draws a homogeneous PPP of GBS positions on `region`.
/// Throws std::invalid_argument for density <= 0 or a degenerate region.
NetworkRealization generate_network(double density, const Rect& region, std::uint64_t seed,
                                    double h_gbs = 30.0, double p_gbs_dbm = 46.0);

/// Image-method link geometry; horiz_dist = 0 degenerates to the vertical
/// link (theta = psi = 90 deg) without error.
LinkGeometry link_geometry(const Point2& gbs, const Point2& uav, double h_gbs, double h_uav);

}  // namespace uavho
