#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "uavho/antenna.hpp"
#include "uavho/geometry.hpp"

namespace uavho {

enum class ChannelMode { kGroundReflection, kRmaAv };
enum class ShadowingMode { kNone, kUncorrelated, kCorrelated };

struct ShadowingConfig {
    ShadowingMode mode = ShadowingMode::kNone;
    double rho = 0.82;           // per-decorrelation-distance correlation, [0, 1)
    double x_c_m = 100.0;        // decorrelation distance
    double sigma_los_db = 4.2;
    double sigma_nlos_db = 6.0;

    void validate() const;
};

struct ChannelConfig {
    ChannelMode mode = ChannelMode::kGroundReflection;
    double f_c_ghz = 1.5;
    double alpha_0 = 3.5;   // max attenuation coefficient
    double eps_r = 15.0;    // ground relative permittivity
    ShadowingConfig shadowing;

    /// Wavelength in meters.
    double wavelength_m() const { return 0.3 / f_c_ghz; }
    /// Rejects shadowing combined with the ground-reflection mode.
    void validate() const;
};

/// Height-dependent propagation coefficient; alpha in [2, alpha_0].
double prop_coefficient(double h_uav, double h_gbs, double alpha_0 = 3.5);

/// Linear gain of the ground-reflected path, piecewise in UAV height with
/// thresholds h_t = 2 h_gbs + 2 and 500 m.
double reflected_path_gain(double h_uav, double psi_deg, double h_gbs, const AntennaConfig& ant);

/// Combined cross-polarized ground reflection coefficient (R_H - R_V)/2 from
/// the Fresnel grazing-angle equations for a lossless dielectric.
std::complex<double> reflection_coefficient(double psi_deg, double eps_r);

/// Two-ray coherent sum from pre-resolved gain factors; the building block
/// the full model and the oracle tests share their contract against.
/// `direct_gain` and `refl_gain` weight the direct and reflected terms of
/// the magnitude before the exponent alpha is applied. Returns dBm.
double two_ray_rx_power_dbm(double p_gbs_dbm, double wavelength_m, double direct_gain,
                            double refl_gain, std::complex<double> refl_coeff, double l_m,
                            double refl_len_m, double alpha);

/// Received power (dBm) for one link under the ground-reflection model.
double ground_reflection_rx_power(const LinkGeometry& link, const NetworkRealization& net,
                                  const AntennaConfig& ant, const ChannelConfig& ch);

/// 3GPP RMa-AV path loss in dB; valid for h_uav in [10, 300] m.
double rma_av_pathloss(double h_uav, double d3d_m, double f_c_ghz, bool los);

/// LoS shadowing standard deviation in dB, 4.2 exp(-0.0046 h).
double shadow_sigma_los(double h_uav);

/// NLoS shadowing standard deviation, 6 dB.
inline double shadow_sigma_nlos() { return 6.0; }

/// Zero-mean shadowing offsets (dB) along a sampled track with spacing
/// `step_m`. Correlated mode realizes Gamma(i,j) = rho^(|i-j| step / X_c)
/// through its lower-triangular factor.
std::vector<double> shadowing_sequence(const ShadowingConfig& cfg, std::size_t n, double step_m,
                                       double sigma_db, std::uint64_t seed);

}  // namespace uavho
