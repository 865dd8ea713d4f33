#include "uavho/antenna.hpp"

#include <cmath>
#include <stdexcept>

namespace uavho {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kRadPerDeg = kPi / 180.0;

void check_theta(double theta_deg) {
    if (theta_deg < -90.0 || theta_deg > 90.0)
        throw std::domain_error("antenna: theta must be within [-90, 90] deg");
}
}  // namespace

void AntennaConfig::validate() const {
    if (n_t < 1) throw std::invalid_argument("antenna: n_t must be >= 1");
    if (theta_3db_deg <= 0.0) throw std::invalid_argument("antenna: theta_3db must be > 0");
    if (g_m_db <= 0.0) throw std::invalid_argument("antenna: g_m must be > 0");
}

double element_gain_db(double theta_deg, const AntennaConfig& cfg) {
    check_theta(theta_deg);
    const double ratio = theta_deg / cfg.theta_3db_deg;
    return cfg.g_e_max_dbi - std::min(12.0 * ratio * ratio, cfg.g_m_db);
}

double array_factor_gain_db(double theta_deg, const AntennaConfig& cfg) {
    check_theta(theta_deg);
    const int n = cfg.n_t;
    if (n == 1) return 0.0;

    // Down-tilt enters the phase term with a negative sign: beam at theta = -downtilt.
    const double steer_sin = std::sin(-cfg.downtilt_deg * kRadPerDeg);
    const double u = kPi * cfg.spacing_wl * (std::sin(theta_deg * kRadPerDeg) - steer_sin);
    const double denom = std::sin(u);
    double af;  // amplitude, |af| <= sqrt(n)
    if (std::abs(denom) < 1e-12) {
        af = std::sqrt(static_cast<double>(n));
    } else {
        af = std::sin(n * u) / denom / std::sqrt(static_cast<double>(n));
    }
    return 10.0 * std::log10(af * af);
}

double total_gain_db(double theta_deg, const AntennaConfig& cfg) {
    return element_gain_db(theta_deg, cfg) + array_factor_gain_db(theta_deg, cfg);
}

double total_gain_linear(double theta_deg, const AntennaConfig& cfg) {
    return std::pow(10.0, total_gain_db(theta_deg, cfg) / 10.0);
}

}  // namespace uavho
