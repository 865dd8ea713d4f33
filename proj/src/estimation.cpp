#include "uavho/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace uavho {

namespace {

struct Series {
    double mass;  // captured PMF mass
    double e1;    // E[h^(1/c1)]
    double e2;    // E[h^(2/c1)]
};

Series pmf_moments(const GaussianPmfParams& p, double inv_c1) {
    const double sigma = std::sqrt(p.sigma2);
    const int h_max = static_cast<int>(std::ceil(p.mu + 10.0 * sigma));
    // Neglected right-tail mass at 10 sigma.
    const double tail = 0.5 * std::erfc(10.0 / std::sqrt(2.0));
    if (tail > 1e-12)
        throw std::runtime_error("estimator series: truncated tail mass above tolerance");
    Series s{0.0, 0.0, 0.0};
    for (int h = 0; h <= h_max; ++h) {
        const double f = gaussian_pmf_eval(h, p);
        s.mass += f;
        if (h > 0) {
            const double hp = std::pow(static_cast<double>(h), inv_c1);
            s.e1 += hp * f;
            s.e2 += hp * hp * f;
        }
    }
    return s;
}

}  // namespace

void EstimatorConfig::validate() const {
    if (t_window_s <= 0.0) throw std::invalid_argument("estimator: t_window must be > 0");
    if (lambda_gbs <= 0.0) throw std::invalid_argument("estimator: lambda_gbs must be > 0");
    if (mean_coeffs.a <= 0.0 || var_coeffs.a <= 0.0)
        throw std::invalid_argument("estimator: power-law a coefficients must be > 0");
}

double EstimatorConfig::k1() const {
    return std::pow(mean_coeffs.a * std::pow(lambda_gbs, mean_coeffs.b), 1.0 / mean_coeffs.c) *
           (t_window_s / 3600.0);
}

double model_mu(double v_kmh, const EstimatorConfig& cfg) {
    if (v_kmh < 0.0) throw std::domain_error("model_mu: v must be >= 0");
    return cfg.mean_coeffs.eval(cfg.lambda_gbs, v_kmh * cfg.t_window_s / 3600.0);
}

double model_sigma2(double v_kmh, const EstimatorConfig& cfg) {
    if (v_kmh < 0.0) throw std::domain_error("model_sigma2: v must be >= 0");
    return cfg.var_coeffs.eval(cfg.lambda_gbs, v_kmh * cfg.t_window_s / 3600.0);
}

double fisher_information(double v_kmh, const EstimatorConfig& cfg) {
    if (v_kmh <= 0.0) throw std::domain_error("fisher_information: v must be > 0");
    const double mu = model_mu(v_kmh, cfg);
    const double sigma2 = model_sigma2(v_kmh, cfg);
    const double c1 = cfg.mean_coeffs.c;
    const double c2 = cfg.var_coeffs.c;
    return (c1 * mu * c1 * mu / sigma2 + 0.5 * c2 * c2) / (v_kmh * v_kmh);
}

double crlb_speed_variance(double v_kmh, const EstimatorConfig& cfg) {
    return 1.0 / fisher_information(v_kmh, cfg);
}

double crlb_speed_rmse(double v_kmh, const EstimatorConfig& cfg) {
    return std::sqrt(crlb_speed_variance(v_kmh, cfg));
}

double estimate_speed(int h, const EstimatorConfig& cfg) {
    if (h < 0) throw std::domain_error("estimate_speed: h must be >= 0");
    if (h == 0) return 0.0;
    return std::pow(static_cast<double>(h), 1.0 / cfg.mean_coeffs.c) / cfg.k1();
}

double estimator_mean(double v_kmh, const EstimatorConfig& cfg) {
    if (v_kmh <= 0.0) throw std::domain_error("estimator_mean: v must be > 0");
    const GaussianPmfParams p{model_mu(v_kmh, cfg), model_sigma2(v_kmh, cfg)};
    const auto s = pmf_moments(p, 1.0 / cfg.mean_coeffs.c);
    return s.e1 / cfg.k1();
}

double estimator_variance(double v_kmh, const EstimatorConfig& cfg) {
    if (v_kmh <= 0.0) throw std::domain_error("estimator_variance: v must be > 0");
    const double mu = model_mu(v_kmh, cfg);
    const double sigma2 = model_sigma2(v_kmh, cfg);
    if (cfg.mean_coeffs.c == 1.0) {
        // MVU case: var = sigma^2 / K2^2 = (v sigma / mu)^2.
        const double r = v_kmh * std::sqrt(sigma2) / mu;
        return r * r;
    }
    const GaussianPmfParams p{mu, sigma2};
    const auto s = pmf_moments(p, 1.0 / cfg.mean_coeffs.c);
    const double k1 = cfg.k1();
    return (s.e2 - s.e1 * s.e1) / (k1 * k1);
}

}  // namespace uavho
