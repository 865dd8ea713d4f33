#include "uavho/msd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uavho {

void MobilityConfig::validate() const {
    if (v_l_kmh <= 0.0 || v_l_kmh >= v_u_kmh)
        throw std::invalid_argument("mobility: need 0 < v_l < v_u");
}

HocThresholds hoc_thresholds(const MobilityConfig& mob, const EstimatorConfig& est) {
    mob.validate();
    HocThresholds t;
    t.h_l = static_cast<int>(std::floor(model_mu(mob.v_l_kmh, est)));
    t.h_u = static_cast<int>(std::floor(model_mu(mob.v_u_kmh, est)));
    return t;
}

MobilityState detect_state(double v_hat_kmh, const MobilityConfig& mob) {
    if (v_hat_kmh <= mob.v_l_kmh) return MobilityState::kLow;
    if (v_hat_kmh <= mob.v_u_kmh) return MobilityState::kMedium;
    return MobilityState::kHigh;
}

namespace {

StateProbabilities probabilities_for_thresholds(double v_kmh, const EstimatorConfig& est,
                                                const HocThresholds& t) {
    const GaussianPmfParams p{model_mu(v_kmh, est), model_sigma2(v_kmh, est)};
    const double sigma = std::sqrt(p.sigma2);
    const int h_max = static_cast<int>(std::ceil(p.mu + 10.0 * sigma));
    StateProbabilities out;
    for (int h = 0; h <= std::max(h_max, t.h_u + 1); ++h) {
        const double f = gaussian_pmf_eval(h, p);
        if (h <= t.h_l)
            out.p_low += f;
        else if (h <= t.h_u)
            out.p_medium += f;
        else
            out.p_high += f;
    }
    return out;
}

double pick(const StateProbabilities& p, MobilityState s) {
    switch (s) {
        case MobilityState::kLow: return p.p_low;
        case MobilityState::kMedium: return p.p_medium;
        case MobilityState::kHigh: return p.p_high;
    }
    return 0.0;
}

}  // namespace

StateProbabilities state_probabilities(double v_kmh, const EstimatorConfig& est,
                                       const MobilityConfig& mob) {
    return probabilities_for_thresholds(v_kmh, est, hoc_thresholds(mob, est));
}

double detection_probability(double v_kmh, const EstimatorConfig& est,
                             const MobilityConfig& mob) {
    const auto probs = state_probabilities(v_kmh, est, mob);
    return pick(probs, detect_state(v_kmh, mob));
}

double average_detection_probability(int h_l, int h_u, const EstimatorConfig& est,
                                     const std::vector<double>& v_grid_kmh) {
    if (h_u <= h_l) throw std::invalid_argument("average_detection_probability: need h_u > h_l");
    if (v_grid_kmh.empty())
        throw std::invalid_argument("average_detection_probability: empty speed grid");

    // Speed thresholds implied by inverting the mean power law at the counts.
    const double v_l = estimate_speed(h_l, est);
    const double v_u = estimate_speed(h_u, est);
    const HocThresholds t{h_l, h_u};

    double acc = 0.0;
    for (double v : v_grid_kmh) {
        MobilityState truth;
        if (v <= v_l)
            truth = MobilityState::kLow;
        else if (v <= v_u)
            truth = MobilityState::kMedium;
        else
            truth = MobilityState::kHigh;
        acc += pick(probabilities_for_thresholds(v, est, t), truth);
    }
    return acc / static_cast<double>(v_grid_kmh.size());
}

std::vector<WindowEstimate> windowed_estimation(const std::vector<double>& ho_event_times_s,
                                                double total_time_s, double window_s,
                                                WindowMode mode, double stride_s,
                                                const EstimatorConfig& est,
                                                const MobilityConfig& mob) {
    if (window_s > total_time_s)
        throw std::invalid_argument("windowed_estimation: window exceeds total time");
    if (mode == WindowMode::kSliding && stride_s <= 0.0)
        throw std::invalid_argument("windowed_estimation: stride must be > 0");

    std::vector<double> events = ho_event_times_s;
    std::sort(events.begin(), events.end());
    auto count_in = [&](double t0, double t1) {
        return static_cast<int>(std::upper_bound(events.begin(), events.end(), t1) -
                                std::lower_bound(events.begin(), events.end(), t0));
    };

    std::vector<WindowEstimate> out;
    const double step = mode == WindowMode::kDiscrete ? window_s : stride_s;
    for (double t0 = 0.0; t0 + window_s <= total_time_s + 1e-9; t0 += step) {
        // Half-open [t0, t0 + T); nudge the upper edge off the boundary.
        const int h = count_in(t0, t0 + window_s - 1e-9);
        const double v_hat = estimate_speed(h, est);
        out.push_back({t0 + window_s, v_hat, detect_state(v_hat, mob)});
    }
    return out;
}

std::string state_name(MobilityState s) {
    switch (s) {
        case MobilityState::kLow: return "LOW";
        case MobilityState::kMedium: return "MEDIUM";
        case MobilityState::kHigh: return "HIGH";
    }
    return "?";
}

std::vector<SpeedSegment> read_speed_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open speed trace: " + path);
    std::vector<SpeedSegment> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.find("t_s") != std::string::npos) continue;
        }
        std::istringstream ss(line);
        SpeedSegment seg{};
        char comma;
        if (!(ss >> seg.t_s >> comma >> seg.v_kmh))
            throw std::runtime_error("malformed speed trace line: " + line);
        out.push_back(seg);
    }
    return out;
}

}  // namespace uavho
