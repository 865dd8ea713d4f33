#pragma once

#include <string>
#include <vector>

#include "uavho/montecarlo.hpp"

namespace uavho {

/// Gaussian model for the handover-count PMF, evaluated at non-negative
/// integers without renormalization.
struct GaussianPmfParams {
    double mu = 0.0;
    double sigma2 = 1.0;
};

/// y = a * lambda^b * d^c with d in km.
struct PowerLawCoeffs {
    double a = 1.0;
    double b = 0.0;
    double c = 1.0;

    double eval(double lambda_gbs, double d_km) const;
};

double gaussian_pmf_eval(int h, const GaussianPmfParams& params);

/// Method-of-moments start, then coordinate descent on the PMF MSE.
/// The returned parameters never do worse than the moments alone.
GaussianPmfParams fit_gaussian_pmf(const HocSamples& samples);

/// Poisson MLE (sample mean).
double fit_poisson_pmf(const HocSamples& samples);
double poisson_pmf_eval(int h, double rate);

struct SurfacePoint {
    double lambda_gbs;
    double d_km;
    double y;
};

/// Log-linear least squares for y = a lambda^b d^c; optional single
/// Gauss-Newton refinement pass in linear space.
PowerLawCoeffs fit_power_surface(const std::vector<SurfacePoint>& points,
                                 bool refine_linear = false);

/// One row of the bundled Gaussian-parameter table.
struct CoeffTableRow {
    double t_mg_ms;
    double t_ttt_ms;
    double h_uav_m;
    int n_t;
    PowerLawCoeffs mean_coeffs;  // a1, b1, c1
    PowerLawCoeffs var_coeffs;   // a2, b2, c2
};

/// Published fit coefficients shipped with the library.
const std::vector<CoeffTableRow>& bundled_coeff_table();

/// Exact-match lookup in a coefficient table; throws if absent.
const CoeffTableRow& lookup_coeffs(const std::vector<CoeffTableRow>& table, double t_mg_ms,
                                   double t_ttt_ms, double h_uav_m, int n_t);

std::vector<CoeffTableRow> read_coeff_table_csv(const std::string& path);
void write_coeff_table_csv(const std::string& path, const std::vector<CoeffTableRow>& table);

}  // namespace uavho
