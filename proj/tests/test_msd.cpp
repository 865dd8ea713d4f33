#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "uavho/msd.hpp"

using namespace uavho;
namespace fs = std::filesystem;

namespace {

EstimatorConfig base_config(double lambda = 1.0, double t_window = 12.0) {
    const auto& row = lookup_coeffs(bundled_coeff_table(), 40, 0, 100, 8);
    EstimatorConfig cfg;
    cfg.mean_coeffs = row.mean_coeffs;
    cfg.var_coeffs = row.var_coeffs;
    cfg.lambda_gbs = lambda;
    cfg.t_window_s = t_window;
    return cfg;
}

}  // namespace

TEST_CASE("threshold hand values") {
    const MobilityConfig mob{40.0, 80.0};
    const auto t = hoc_thresholds(mob, base_config());
    CHECK(t.h_l == 7);
    CHECK(t.h_u == 15);

    // Near-zero lower speed floors to 0; thresholds are monotone.
    const auto t0 = hoc_thresholds(MobilityConfig{1e-6, 80.0}, base_config());
    CHECK(t0.h_l == 0);
    int prev = -1;
    for (double vl = 10.0; vl <= 70.0; vl += 5.0) {
        const auto ti = hoc_thresholds(MobilityConfig{vl, 80.0}, base_config());
        CHECK(ti.h_l >= prev);
        prev = ti.h_l;
    }

    CHECK_THROWS_AS(hoc_thresholds(MobilityConfig{80.0, 40.0}, base_config()),
                    std::invalid_argument);
}

TEST_CASE("state boundaries") {
    const MobilityConfig mob{40.0, 80.0};
    CHECK(detect_state(40.0, mob) == MobilityState::kLow);
    CHECK(detect_state(40.0 + 1e-9, mob) == MobilityState::kMedium);
    CHECK(detect_state(80.0, mob) == MobilityState::kMedium);
    CHECK(detect_state(80.0 + 1e-9, mob) == MobilityState::kHigh);
    CHECK(detect_state(0.0, mob) == MobilityState::kLow);
    CHECK(state_name(MobilityState::kLow) == "LOW");
    CHECK(state_name(MobilityState::kMedium) == "MEDIUM");
    CHECK(state_name(MobilityState::kHigh) == "HIGH");
}

TEST_CASE("state probabilities partition the pmf mass") {
    const MobilityConfig mob{40.0, 80.0};
    const auto cfg = base_config();
    for (double v : {20.0, 40.0, 60.0, 80.0, 120.0}) {
        const auto p = state_probabilities(v, cfg, mob);
        CHECK(p.p_low >= 0.0);
        CHECK(p.p_medium >= 0.0);
        CHECK(p.p_high >= 0.0);
        const double total = p.p_low + p.p_medium + p.p_high;
        CHECK(total <= 1.0 + 1e-9);
        const double mu = model_mu(v, cfg);
        const double sigma = std::sqrt(model_sigma2(v, cfg));
        if (mu > 3.0 * sigma) CHECK(total == doctest::Approx(1.0).epsilon(1e-3));
    }
    // Far inside the LOW band almost all mass sits at small h.
    const auto deep = state_probabilities(8.0, cfg, mob);
    CHECK(deep.p_low > 0.9);
}

TEST_CASE("detection probability basics") {
    const MobilityConfig mob{40.0, 80.0};
    const auto cfg = base_config(3.0, 24.0);
    CHECK(detection_probability(15.0, cfg, mob) > 0.95);
    for (double v : {20.0, 40.0, 60.0, 100.0})
        CHECK(detection_probability(v, cfg, mob) + false_alarm_probability(v, cfg, mob) ==
              doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("P_D dips near both speed thresholds") {
    const MobilityConfig mob{40.0, 80.0};
    const auto cfg = base_config();
    std::vector<double> pd;
    const int v_min = 5, v_max = 160;
    for (int v = v_min; v <= v_max; ++v)
        pd.push_back(detection_probability(static_cast<double>(v), cfg, mob));
    auto local_min_near = [&](double v_thr) {
        // A local minimum within +/-10 km/h of the threshold on the 1 km/h grid.
        const int lo = std::max(static_cast<int>(v_thr) - 10 - v_min, 1);
        const int hi = std::min(static_cast<int>(v_thr) + 10 - v_min,
                                static_cast<int>(pd.size()) - 2);
        for (int i = lo; i <= hi; ++i)
            if (pd[i] <= pd[i - 1] && pd[i] <= pd[i + 1] && pd[i] < 0.7) return true;
        return false;
    };
    CHECK(local_min_near(mob.v_l_kmh));
    CHECK(local_min_near(mob.v_u_kmh));
}

TEST_CASE("denser networks sharpen the transition at v_l") {
    const MobilityConfig mob{40.0, 80.0};
    auto slope_at = [&](double lambda) {
        const auto cfg = base_config(lambda);
        return std::abs(state_probabilities(42.0, cfg, mob).p_low -
                        state_probabilities(38.0, cfg, mob).p_low) /
               4.0;
    };
    CHECK(slope_at(3.0) > slope_at(1.0));
}

TEST_CASE("average detection probability") {
    const auto cfg = base_config();
    std::vector<double> grid;
    for (double v = 10.0; v <= 160.0; v += 1.0) grid.push_back(v);

    const double base = average_detection_probability(7, 15, cfg, grid);
    CHECK(base > 0.0);
    CHECK(base < 1.0);

    // An unreachable upper threshold far beyond the grid's mean leaves the
    // average unchanged (the HIGH band gets no reachable mass either way).
    const int unreachable =
        static_cast<int>(model_mu(160.0, cfg) + 12.0 * std::sqrt(model_sigma2(160.0, cfg)));
    const double same = average_detection_probability(7, unreachable, cfg, grid);
    const double same2 = average_detection_probability(7, unreachable + 5, cfg, grid);
    CHECK(same == doctest::Approx(same2).epsilon(1e-9));

    CHECK_THROWS_AS(average_detection_probability(7, 7, cfg, grid), std::invalid_argument);
    CHECK_THROWS_AS(average_detection_probability(7, 15, cfg, {}), std::invalid_argument);
}

TEST_CASE("windowed estimation") {
    const auto cfg = base_config();
    const MobilityConfig mob{40.0, 80.0};
    SUBCASE("no events at all") {
        const auto out = windowed_estimation({}, 60.0, 12.0, WindowMode::kDiscrete, 1.0, cfg, mob);
        REQUIRE(out.size() == 5);
        for (const auto& w : out) {
            CHECK(w.v_hat_kmh == 0.0);
            CHECK(w.state == MobilityState::kLow);
        }
    }
    SUBCASE("constant event rate gives a constant estimate") {
        std::vector<double> events;
        for (double t = 0.5; t < 60.0; t += 1.0) events.push_back(t);  // 12 per window
        const auto disc =
            windowed_estimation(events, 60.0, 12.0, WindowMode::kDiscrete, 1.0, cfg, mob);
        for (const auto& w : disc) CHECK(w.v_hat_kmh == doctest::Approx(61.4).epsilon(1e-3));
        const auto slide =
            windowed_estimation(events, 60.0, 12.0, WindowMode::kSliding, 1.0, cfg, mob);
        CHECK(slide.size() > disc.size());
        for (const auto& w : slide) CHECK(w.v_hat_kmh == doctest::Approx(61.4).epsilon(1e-3));
    }
    SUBCASE("window boundary is half-open") {
        // An event exactly at t = 12 belongs to the second discrete window.
        const auto out =
            windowed_estimation({12.0}, 24.0, 12.0, WindowMode::kDiscrete, 1.0, cfg, mob);
        REQUIRE(out.size() == 2);
        CHECK(out[0].v_hat_kmh == 0.0);
        CHECK(out[1].v_hat_kmh > 0.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(windowed_estimation({}, 5.0, 12.0, WindowMode::kDiscrete, 1.0, cfg, mob),
                        std::invalid_argument);
        CHECK_THROWS_AS(windowed_estimation({}, 60.0, 12.0, WindowMode::kSliding, 0.0, cfg, mob),
                        std::invalid_argument);
    }
}

TEST_CASE("sliding windows flag a speed step no later than discrete ones") {
    const auto cfg = base_config();
    const MobilityConfig mob{40.0, 80.0};
    // Low speed for 30 s, then high: events at the model's mean rate.
    std::vector<double> events;
    const double v_lo = 20.0, v_hi = 120.0, total = 90.0, t_step = 30.0;
    double acc = 0.0;
    for (double t = 0.0; t < total; t += 0.01) {
        acc += model_mu(t < t_step ? v_lo : v_hi, cfg) / cfg.t_window_s * 0.01;
        while (acc >= 1.0) {
            events.push_back(t);
            acc -= 1.0;
        }
    }
    auto first_high = [&](const std::vector<WindowEstimate>& series) {
        for (const auto& w : series)
            if (w.state == MobilityState::kHigh) return w.t_s;
        return 1e18;
    };
    const auto disc = windowed_estimation(events, total, 12.0, WindowMode::kDiscrete, 1.0, cfg, mob);
    const auto slide = windowed_estimation(events, total, 12.0, WindowMode::kSliding, 1.0, cfg, mob);
    const double t_disc = first_high(disc);
    const double t_slide = first_high(slide);
    CHECK(t_disc < 1e18);
    CHECK(t_slide <= t_disc);
}

TEST_CASE("speed trace CSV reader") {
    const auto path = fs::path(UAVHO_DATA_DIR) / "speed_step_trace.csv";
    const auto segs = read_speed_trace_csv(path.string());
    REQUIRE(segs.size() >= 2);
    CHECK(segs.front().t_s == 0.0);
    for (std::size_t i = 1; i < segs.size(); ++i) CHECK(segs[i].t_s > segs[i - 1].t_s);
    CHECK_THROWS_AS(read_speed_trace_csv("/nonexistent/trace.csv"), std::runtime_error);
}
