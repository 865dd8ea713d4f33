#pragma once

namespace uavho {

/// Down-tilted uniform linear array at the GBS. Omnidirectional in azimuth;
/// elevation theta = 0 is the horizon, positive upward, and a positive
/// down-tilt places the main beam at theta = -downtilt_deg.
struct AntennaConfig {
    int n_t = 8;                 // element count
    double downtilt_deg = 6.0;   // positive = below the horizon
    double theta_3db_deg = 65.0;
    double g_e_max_dbi = 8.0;
    double g_m_db = 30.0;        // side-lobe limit
    double spacing_wl = 0.5;     // element spacing, wavelengths

    void validate() const;
};

/// Element power gain in dBi: G_e_max - min{12 (theta/theta_3dB)^2, G_m}.
/// theta outside [-90, 90] deg throws std::domain_error.
double element_gain_db(double theta_deg, const AntennaConfig& cfg);

/// Array power gain in dB. The removable singularity at the steering
/// direction (sin theta = -sin downtilt) evaluates to 10 log10(N_t).
double array_factor_gain_db(double theta_deg, const AntennaConfig& cfg);

/// Element + array gain, dB.
double total_gain_db(double theta_deg, const AntennaConfig& cfg);

/// Total gain converted to a linear power gain.
double total_gain_linear(double theta_deg, const AntennaConfig& cfg);

}  // namespace uavho
