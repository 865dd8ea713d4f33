#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "uavho/fitting.hpp"

using namespace uavho;
namespace fs = std::filesystem;

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
}

TEST_CASE("gaussian pmf hand values and symmetry") {
    const GaussianPmfParams p{12.0, 35.1};
    CHECK(gaussian_pmf_eval(12, p) == doctest::Approx(1.0 / std::sqrt(kTwoPi * 35.1)));
    for (int k = 1; k <= 6; ++k)
        CHECK(gaussian_pmf_eval(12 + k, p) == doctest::Approx(gaussian_pmf_eval(12 - k, p)));

    const GaussianPmfParams q{11.7, 35.1};
    CHECK(gaussian_pmf_eval(12, q) == doctest::Approx(0.0673).epsilon(1e-3));

    CHECK_THROWS_AS(gaussian_pmf_eval(-1, p), std::domain_error);
    CHECK_THROWS_AS(gaussian_pmf_eval(1, GaussianPmfParams{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("gaussian mass deficit is bounded when mu > 3 sigma") {
    const GaussianPmfParams p{20.0, 36.0};  // mu = 20, sigma = 6 -> mu > 3 sigma
    double mass = 0.0;
    for (int h = 0; h <= 200; ++h) mass += gaussian_pmf_eval(h, p);
    CHECK(mass > 0.998);
    CHECK(mass <= 1.0 + 1e-9);
}

TEST_CASE("fit_gaussian_pmf") {
    SUBCASE("moments of a two-point sample") {
        HocSamples s;
        s.samples = {5, 7};
        const auto p = fit_gaussian_pmf(s);
        // Refinement may move the parameters, but never to a worse MSE than
        // the moments start (mu=6, sigma2=2).
        const auto pmf = empirical_pmf(s);
        const double fitted = pmf_mse(
            pmf, [&](int h) { return gaussian_pmf_eval(h, p); }, pmf.probabilities.size());
        const double moments = pmf_mse(
            pmf, [&](int h) { return gaussian_pmf_eval(h, GaussianPmfParams{6.0, 2.0}); },
            pmf.probabilities.size());
        CHECK(fitted <= moments + 1e-15);
    }
    SUBCASE("recovers a known generator") {
        std::mt19937_64 rng(4);
        std::normal_distribution<double> gauss(12.0, std::sqrt(35.0));
        HocSamples s;
        for (int i = 0; i < 20000; ++i)
            s.samples.push_back(std::max(0, static_cast<int>(std::lround(gauss(rng)))));
        const auto p = fit_gaussian_pmf(s);
        CHECK(p.mu > 11.5);
        CHECK(p.mu < 12.5);
        CHECK(p.sigma2 > 31.0);
        CHECK(p.sigma2 < 39.0);
    }
    SUBCASE("degenerate samples rejected") {
        HocSamples s;
        s.samples = {4, 4, 4};
        CHECK_THROWS_WITH_AS(fit_gaussian_pmf(s),
                             "fit_gaussian_pmf: zero sample variance, all samples equal",
                             std::invalid_argument);
        s.samples = {4};
        CHECK_THROWS_AS(fit_gaussian_pmf(s), std::invalid_argument);
    }
    SUBCASE("deterministic") {
        HocSamples s;
        s.samples = {8, 10, 11, 11, 12, 13, 15, 9, 12, 14};
        const auto p1 = fit_gaussian_pmf(s);
        const auto p2 = fit_gaussian_pmf(s);
        CHECK(p1.mu == p2.mu);
        CHECK(p1.sigma2 == p2.sigma2);
    }
}

TEST_CASE("poisson fit and pmf") {
    HocSamples s;
    s.samples = {2, 4};
    CHECK(fit_poisson_pmf(s) == doctest::Approx(3.0));

    std::mt19937_64 rng(5);
    std::poisson_distribution<int> pois(8.0);
    HocSamples big;
    for (int i = 0; i < 10000; ++i) big.samples.push_back(pois(rng));
    const double rate = fit_poisson_pmf(big);
    CHECK(rate > 7.7);
    CHECK(rate < 8.3);

    // pmf normalizes.
    double mass = 0.0;
    for (int h = 0; h <= 100; ++h) mass += poisson_pmf_eval(h, 8.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(poisson_pmf_eval(8, 8.0) ==
          doctest::Approx(std::exp(8.0 * std::log(8.0) - 8.0 - std::lgamma(9.0))));
    CHECK_THROWS_AS(poisson_pmf_eval(-1, 8.0), std::domain_error);
}

TEST_CASE("power surface recovery on noiseless synthetic data") {
    const PowerLawCoeffs truth{58.6, 0.3048, 1.0};
    std::vector<SurfacePoint> pts;
    for (double lam : {0.5, 1.0, 1.5, 2.0, 3.0})
        for (double d : {0.05, 0.1, 0.2, 0.3, 0.4})
            pts.push_back({lam, d, truth.eval(lam, d)});
    const auto fit = fit_power_surface(pts);
    CHECK(fit.a == doctest::Approx(truth.a).epsilon(1e-9));
    CHECK(fit.b == doctest::Approx(truth.b).epsilon(1e-9));
    CHECK(fit.c == doctest::Approx(truth.c).epsilon(1e-9));

    // Refinement pass is a no-op on exact data.
    const auto refined = fit_power_surface(pts, true);
    CHECK(refined.a == doctest::Approx(truth.a).epsilon(1e-6));
}

TEST_CASE("power surface degenerate and scaling properties") {
    SUBCASE("d-only points give a slope-1 line through origin in log space") {
        std::vector<SurfacePoint> pts;
        for (double d : {0.1, 0.2, 0.4})
            for (double lam : {0.5, 1.0, 2.0}) pts.push_back({lam, d, d});
        const auto fit = fit_power_surface(pts);
        CHECK(fit.a == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fit.b == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(fit.c == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("scaling y scales a only") {
        std::vector<SurfacePoint> pts, scaled;
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> noise(0.9, 1.1);
        for (double lam : {0.5, 1.0, 2.0})
            for (double d : {0.1, 0.2, 0.4}) {
                const double y = 10.0 * std::pow(lam, 0.4) * std::pow(d, 1.2) * noise(rng);
                pts.push_back({lam, d, y});
                scaled.push_back({lam, d, 3.0 * y});
            }
        const auto f1 = fit_power_surface(pts);
        const auto f2 = fit_power_surface(scaled);
        CHECK(f2.a == doctest::Approx(3.0 * f1.a).epsilon(1e-12));
        CHECK(f2.b == doctest::Approx(f1.b).epsilon(1e-12));
        CHECK(f2.c == doctest::Approx(f1.c).epsilon(1e-12));
    }
    SUBCASE("errors") {
        std::vector<SurfacePoint> pts{{1, 0.1, 1}, {1, 0.2, 2}};
        CHECK_THROWS_AS(fit_power_surface(pts), std::invalid_argument);  // too few
        pts.push_back({1, 0.3, -1});
        CHECK_THROWS_AS(fit_power_surface(pts), std::invalid_argument);  // y <= 0
        std::vector<SurfacePoint> dup{{1, 0.1, 1}, {1, 0.1, 1}, {1, 0.1, 1}};
        CHECK_THROWS_AS(fit_power_surface(dup), std::invalid_argument);  // rank deficient
    }
}

TEST_CASE("bundled coefficient table") {
    const auto& table = bundled_coeff_table();
    CHECK(table.size() == 10);
    const auto& base = lookup_coeffs(table, 40, 0, 100, 8);
    CHECK(base.mean_coeffs.a == 58.6);
    CHECK(base.mean_coeffs.b == 0.3048);
    CHECK(base.mean_coeffs.c == 1.0);
    CHECK(base.var_coeffs.a == 425.2);
    CHECK(base.var_coeffs.b == 0.167);
    CHECK(base.var_coeffs.c == 1.55);
    const auto& ttt = lookup_coeffs(table, 40, 160, 100, 8);
    CHECK(ttt.mean_coeffs.c == 0.746);
    CHECK_THROWS_AS(lookup_coeffs(table, 40, 0, 100, 5), std::invalid_argument);
}

TEST_CASE("coefficient table CSV round-trip matches the bundled data file") {
    const auto& table = bundled_coeff_table();
    const fs::path tmp = fs::temp_directory_path() / "uavho_coeffs_roundtrip.csv";
    write_coeff_table_csv(tmp.string(), table);
    const auto back = read_coeff_table_csv(tmp.string());
    REQUIRE(back.size() == table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(back[i].t_mg_ms == table[i].t_mg_ms);
        CHECK(back[i].mean_coeffs.a == table[i].mean_coeffs.a);
        CHECK(back[i].var_coeffs.c == table[i].var_coeffs.c);
    }

    // The shipped data file holds the same rows.
    const auto shipped =
        read_coeff_table_csv((fs::path(UAVHO_DATA_DIR) / "gaussian_coeffs.csv").string());
    REQUIRE(shipped.size() == table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(shipped[i].mean_coeffs.a == table[i].mean_coeffs.a);
        CHECK(shipped[i].var_coeffs.a == table[i].var_coeffs.a);
    }
}

TEST_CASE("regression fixture: stored samples reproduce stored fit") {
    // Frozen at fixture-creation time; guards the optimizer path.
    const fs::path dir = fs::path(UAVHO_DATA_DIR) / "fit_fixture";
    std::vector<HocSamples> all;
    HocSamples s;
    {
        std::ifstream in(dir / "samples.csv");
        REQUIRE(in.good());
        std::string line;
        std::getline(in, line);  // header run,h
        std::size_t run;
        int h;
        char comma;
        while (in >> run >> comma >> h) s.samples.push_back(h);
    }
    REQUIRE(!s.samples.empty());
    const auto p = fit_gaussian_pmf(s);
    double mu_ref = 0.0, sigma2_ref = 0.0;
    {
        std::ifstream in(dir / "expected.csv");
        REQUIRE(in.good());
        std::string line;
        std::getline(in, line);  // header mu,sigma2
        char comma;
        REQUIRE((in >> mu_ref >> comma >> sigma2_ref));
    }
    CHECK(p.mu == doctest::Approx(mu_ref).epsilon(1e-12));
    CHECK(p.sigma2 == doctest::Approx(sigma2_ref).epsilon(1e-12));
}
