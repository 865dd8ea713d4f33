#pragma once

#include <string>
#include <vector>

#include "uavho/estimation.hpp"

namespace uavho {

enum class MobilityState { kLow, kMedium, kHigh };

struct MobilityConfig {
    double v_l_kmh = 40.0;
    double v_u_kmh = 80.0;

    void validate() const;
};

struct HocThresholds {
    int h_l = 0;
    int h_u = 0;
};

struct StateProbabilities {
    double p_low = 0.0;
    double p_medium = 0.0;
    double p_high = 0.0;
};

/// Floor of the mean power law at the speed thresholds.
HocThresholds hoc_thresholds(const MobilityConfig& mob, const EstimatorConfig& est);

/// Boundary-inclusive downward: v = v_l is LOW, v = v_u is MEDIUM.
MobilityState detect_state(double v_hat_kmh, const MobilityConfig& mob);

/// PMF mass of each state at true speed v; sums to the captured Gaussian
/// mass on the non-negative integers (slightly under 1 for small mu).
StateProbabilities state_probabilities(double v_kmh, const EstimatorConfig& est,
                                       const MobilityConfig& mob);

/// Probability the detected state matches the true state of v.
double detection_probability(double v_kmh, const EstimatorConfig& est, const MobilityConfig& mob);
inline double false_alarm_probability(double v_kmh, const EstimatorConfig& est,
                                      const MobilityConfig& mob) {
    return 1.0 - detection_probability(v_kmh, est, mob);
}

/// Mean detection probability over a speed grid, for HOC thresholds chosen
/// directly; the implied speed thresholds come from the estimator inversion.
double average_detection_probability(int h_l, int h_u, const EstimatorConfig& est,
                                     const std::vector<double>& v_grid_kmh);

enum class WindowMode { kDiscrete, kSliding };

struct WindowEstimate {
    double t_s;  // timestamp at which the estimate becomes available
    double v_hat_kmh;
    MobilityState state;
};

/// Counts handover events per window and estimates speed and state per
/// position. Discrete windows are [kT, (k+1)T); sliding windows advance by
/// `stride_s`.
std::vector<WindowEstimate> windowed_estimation(const std::vector<double>& ho_event_times_s,
                                                double total_time_s, double window_s,
                                                WindowMode mode, double stride_s,
                                                const EstimatorConfig& est,
                                                const MobilityConfig& mob);

std::string state_name(MobilityState s);

/// Piecewise-constant speed profile (CSV: t_s, v_kmh).
struct SpeedSegment {
    double t_s;
    double v_kmh;
};
std::vector<SpeedSegment> read_speed_trace_csv(const std::string& path);

}  // namespace uavho
