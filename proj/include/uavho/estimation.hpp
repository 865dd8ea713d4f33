#pragma once

#include "uavho/fitting.hpp"

namespace uavho {

/// Power-law HOC model parameters plus the measurement window; speeds are
/// km/h, the covered distance d = v T / 3600 enters the power laws in km.
struct EstimatorConfig {
    PowerLawCoeffs mean_coeffs;  // a1, b1, c1
    PowerLawCoeffs var_coeffs;   // a2, b2, c2
    double lambda_gbs = 1.0;     // GBS/km^2
    double t_window_s = 12.0;

    void validate() const;
    /// v-hat = (h)^(1/c1) / k1 inverts the mean power law.
    double k1() const;
};

double model_mu(double v_kmh, const EstimatorConfig& cfg);
double model_sigma2(double v_kmh, const EstimatorConfig& cfg);

/// I(v) = (1/v^2) [ (c1 mu)^2 / sigma^2 + c2^2 / 2 ]; v = 0 is a domain error.
double fisher_information(double v_kmh, const EstimatorConfig& cfg);

/// 1 / I(v), in (km/h)^2.
double crlb_speed_variance(double v_kmh, const EstimatorConfig& cfg);
double crlb_speed_rmse(double v_kmh, const EstimatorConfig& cfg);

/// HOC-based speed estimate in km/h; h = 0 maps to 0.
double estimate_speed(int h, const EstimatorConfig& cfg);

/// Semi-analytic mean of the estimator via series over the Gaussian PMF,
/// truncated at ceil(mu + 10 sigma).
double estimator_mean(double v_kmh, const EstimatorConfig& cfg);
double estimator_variance(double v_kmh, const EstimatorConfig& cfg);

}  // namespace uavho
