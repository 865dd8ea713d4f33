#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavho/channel.hpp"
#include "uavho/geometry.hpp"

namespace uavho {

struct HandoverConfig {
    double m_hyst_db = 2.0;   // handover margin (A3 hysteresis)
    double t_ttt_ms = 0.0;    // time-to-trigger
    double t_mg_ms = 40.0;    // measurement gap
    /// When true the TTT timer binds to one candidate cell (3GPP-style);
    /// default tracks the aggregate A3 condition.
    bool per_candidate_ttt = false;

    void validate() const;
};

enum class FsmEventKind { kA3Enter, kTttReset, kHandover };

struct FsmEvent {
    double time_ms = 0.0;
    FsmEventKind kind = FsmEventKind::kA3Enter;
    int from_cell = -1;
    int to_cell = -1;
};

/// A3-event handover state machine. Single-owner mutable state; feed it one
/// RSRP vector per measurement gap.
class HandoverFsm {
public:
    HandoverFsm(int serving_cell, const HandoverConfig& cfg);

    /// Picks the strongest cell, ties to the lowest id.
    static int initial_association(std::span<const double> rsrps_dbm);

    /// Advances one measurement gap taken at `time_ms`. Returns the handover
    /// event if one triggered at this sample.
    std::optional<FsmEvent> step(std::span<const double> rsrps_dbm, double time_ms);

    int serving_cell() const { return serving_; }
    int handover_count() const { return hoc_; }
    double ttt_elapsed_ms() const { return ttt_elapsed_; }
    const std::vector<FsmEvent>& events() const { return events_; }

private:
    HandoverConfig cfg_;
    int serving_;
    std::optional<int> candidate_;
    double ttt_elapsed_ = 0.0;
    int hoc_ = 0;
    std::vector<FsmEvent> events_;
};

/// Runs the FSM over a full trajectory with the ground-reflection channel
/// and returns the handover count.
int count_handovers(const Trajectory& traj, const NetworkRealization& net,
                    const AntennaConfig& ant, const ChannelConfig& ch, const HandoverConfig& cfg);

/// One measurement in a replayable RSRP trace (CSV: time_ms, cell_id, rsrp_dbm).
struct TraceSample {
    double time_ms;
    int cell_id;
    double rsrp_dbm;
};

std::vector<TraceSample> read_rsrp_trace_csv(const std::string& path);

/// Replays a trace through the FSM; the first timestamp does the initial
/// association. Returns the full decision log.
std::vector<FsmEvent> replay_trace(const std::vector<TraceSample>& trace,
                                   const HandoverConfig& cfg);

std::string event_kind_name(FsmEventKind k);
void write_event_log_csv(const std::string& path, const std::vector<FsmEvent>& events);

}  // namespace uavho
