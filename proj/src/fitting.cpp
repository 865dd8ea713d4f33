#include "uavho/fitting.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uavho {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// Solves a symmetric 3x3 system by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> A, std::array<double, 3> b) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < 1e-14)
            throw std::invalid_argument("fit_power_surface: rank-deficient design");
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = A[r][col] / A[col][col];
            for (int c = col; c < 3; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    return {b[0] / A[0][0], b[1] / A[1][1], b[2] / A[2][2]};
}
}  // namespace

double PowerLawCoeffs::eval(double lambda_gbs, double d_km) const {
    return a * std::pow(lambda_gbs, b) * std::pow(d_km, c);
}

double gaussian_pmf_eval(int h, const GaussianPmfParams& params) {
    if (h < 0) throw std::domain_error("gaussian_pmf_eval: h must be >= 0");
    if (params.sigma2 <= 0.0) throw std::invalid_argument("gaussian_pmf_eval: sigma2 must be > 0");
    const double d = static_cast<double>(h) - params.mu;
    return std::exp(-d * d / (2.0 * params.sigma2)) / std::sqrt(kTwoPi * params.sigma2);
}

GaussianPmfParams fit_gaussian_pmf(const HocSamples& samples) {
    if (samples.samples.size() < 2)
        throw std::invalid_argument("fit_gaussian_pmf: need at least two samples");
    GaussianPmfParams p{samples.mean(), samples.variance()};
    if (p.sigma2 <= 0.0)
        throw std::invalid_argument("fit_gaussian_pmf: zero sample variance, all samples equal");

    const auto pmf = empirical_pmf(samples);
    const std::size_t L = pmf.probabilities.size();
    auto mse_at = [&](const GaussianPmfParams& q) {
        return pmf_mse(pmf, [&](int h) { return gaussian_pmf_eval(h, q); }, L);
    };

    // Coordinate descent with step halving around the moments solution.
    double best = mse_at(p);
    double step_mu = std::max(0.5, 0.1 * std::sqrt(p.sigma2));
    double step_s2 = 0.1 * p.sigma2;
    for (int iter = 0; iter < 200; ++iter) {
        const double prev = best;
        bool improved = false;
        for (int dim = 0; dim < 2; ++dim) {
            for (double sign : {+1.0, -1.0}) {
                GaussianPmfParams q = p;
                if (dim == 0)
                    q.mu += sign * step_mu;
                else
                    q.sigma2 += sign * step_s2;
                if (q.sigma2 <= 0.0) continue;
                const double m = mse_at(q);
                if (m < best) {
                    best = m;
                    p = q;
                    improved = true;
                }
            }
        }
        if (!improved) {
            step_mu *= 0.5;
            step_s2 *= 0.5;
            if (step_mu < 1e-7 && step_s2 < 1e-7) break;
        } else if (prev - best < 1e-12) {
            break;
        }
    }
    return p;
}

double fit_poisson_pmf(const HocSamples& samples) {
    if (samples.samples.empty())
        throw std::invalid_argument("fit_poisson_pmf: need at least one sample");
    return samples.mean();
}

double poisson_pmf_eval(int h, double rate) {
    if (h < 0) throw std::domain_error("poisson_pmf_eval: h must be >= 0");
    if (rate <= 0.0) throw std::invalid_argument("poisson_pmf_eval: rate must be > 0");
    return std::exp(h * std::log(rate) - rate - std::lgamma(h + 1.0));
}

PowerLawCoeffs fit_power_surface(const std::vector<SurfacePoint>& points, bool refine_linear) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_power_surface: need at least 3 points");
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : points) {
        if (p.y <= 0.0) throw std::invalid_argument("fit_power_surface: all y must be > 0");
        if (p.lambda_gbs <= 0.0 || p.d_km <= 0.0)
            throw std::invalid_argument("fit_power_surface: lambda and d must be > 0");
        distinct.insert({p.lambda_gbs, p.d_km});
    }
    if (distinct.size() < 3)
        throw std::invalid_argument("fit_power_surface: need >= 3 distinct (lambda, d) points");

    // OLS on log y = log a + b log lambda + c log d.
    std::array<std::array<double, 3>, 3> ata{};
    std::array<double, 3> atb{};
    for (const auto& p : points) {
        const std::array<double, 3> row{1.0, std::log(p.lambda_gbs), std::log(p.d_km)};
        const double ly = std::log(p.y);
        for (int i = 0; i < 3; ++i) {
            atb[i] += row[i] * ly;
            for (int j = 0; j < 3; ++j) ata[i][j] += row[i] * row[j];
        }
    }
    const auto sol = solve3(ata, atb);
    PowerLawCoeffs coeffs{std::exp(sol[0]), sol[1], sol[2]};

    if (refine_linear) {
        // One Gauss-Newton pass on residuals in linear space.
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtr{};
        for (const auto& p : points) {
            const double f = coeffs.eval(p.lambda_gbs, p.d_km);
            const std::array<double, 3> jac{f / coeffs.a, f * std::log(p.lambda_gbs),
                                            f * std::log(p.d_km)};
            const double r = p.y - f;
            for (int i = 0; i < 3; ++i) {
                jtr[i] += jac[i] * r;
                for (int j = 0; j < 3; ++j) jtj[i][j] += jac[i] * jac[j];
            }
        }
        const auto delta = solve3(jtj, jtr);
        coeffs.a += delta[0];
        coeffs.b += delta[1];
        coeffs.c += delta[2];
    }
    return coeffs;
}

const std::vector<CoeffTableRow>& bundled_coeff_table() {
    static const std::vector<CoeffTableRow> table = {
        // t_mg, t_ttt, h_uav, n_t, (a1, b1, c1), (a2, b2, c2)
        {40, 0, 100, 8, {58.6, 0.3048, 1.0}, {425.2, 0.167, 1.55}},
        {40, 40, 100, 8, {55.2, 0.29, 1.0}, {327.7, 0.15, 1.435}},
        {40, 160, 100, 8, {32.68, 0.2221, 0.746}, {109.0, 0.032, 0.963}},
        {100, 0, 100, 8, {55.66, 0.3013, 1.0}, {315.1, 0.1212, 1.4}},
        {100, 40, 100, 8, {52.91, 0.29, 1.0}, {263.8, 0.1224, 1.41}},
        {100, 160, 100, 8, {28.66, 0.2268, 0.6913}, {81.93, 0.018, 0.8344}},
        {40, 0, 80, 8, {72.65, 0.2736, 1.0}, {593.0, 0.1, 1.539}},
        {40, 0, 120, 8, {37.09, 0.4058, 1.0}, {233.7, 0.222, 1.417}},
        {40, 0, 100, 4, {144.50, 0.28, 1.0}, {2747.0, -0.23, 1.409}},
        {40, 0, 100, 16, {23.50, 0.66, 1.0}, {163.2, 0.31, 1.50}},
    };
    return table;
}

const CoeffTableRow& lookup_coeffs(const std::vector<CoeffTableRow>& table, double t_mg_ms,
                                   double t_ttt_ms, double h_uav_m, int n_t) {
    for (const auto& row : table) {
        if (row.t_mg_ms == t_mg_ms && row.t_ttt_ms == t_ttt_ms && row.h_uav_m == h_uav_m &&
            row.n_t == n_t)
            return row;
    }
    std::ostringstream ss;
    ss << "no coefficient row for t_mg=" << t_mg_ms << " t_ttt=" << t_ttt_ms
       << " h_uav=" << h_uav_m << " n_t=" << n_t;
    throw std::invalid_argument(ss.str());
}

std::vector<CoeffTableRow> read_coeff_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient table: " + path);
    std::vector<CoeffTableRow> table;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.find("t_mg_ms") != std::string::npos) continue;
        }
        std::istringstream ss(line);
        CoeffTableRow row{};
        char comma;
        if (!(ss >> row.t_mg_ms >> comma >> row.t_ttt_ms >> comma >> row.h_uav_m >> comma >>
              row.n_t >> comma >> row.mean_coeffs.a >> comma >> row.mean_coeffs.b >> comma >>
              row.mean_coeffs.c >> comma >> row.var_coeffs.a >> comma >> row.var_coeffs.b >>
              comma >> row.var_coeffs.c))
            throw std::runtime_error("malformed coefficient row: " + line);
        table.push_back(row);
    }
    return table;
}

void write_coeff_table_csv(const std::string& path, const std::vector<CoeffTableRow>& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write coefficient table: " + path);
    out.precision(17);
    out << "t_mg_ms,t_ttt_ms,h_uav_m,n_t,a1,b1,c1,a2,b2,c2\n";
    for (const auto& r : table)
        out << r.t_mg_ms << ',' << r.t_ttt_ms << ',' << r.h_uav_m << ',' << r.n_t << ','
            << r.mean_coeffs.a << ',' << r.mean_coeffs.b << ',' << r.mean_coeffs.c << ','
            << r.var_coeffs.a << ',' << r.var_coeffs.b << ',' << r.var_coeffs.c << '\n';
}

}  // namespace uavho
