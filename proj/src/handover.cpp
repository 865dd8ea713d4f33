#include "uavho/handover.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace uavho {

void HandoverConfig::validate() const {
    if (m_hyst_db < 0.0) throw std::invalid_argument("handover: m_hyst must be >= 0");
    if (t_ttt_ms < 0.0) throw std::invalid_argument("handover: t_ttt must be >= 0");
    if (t_mg_ms <= 0.0) throw std::invalid_argument("handover: t_mg must be > 0");
    const double ratio = t_ttt_ms / t_mg_ms;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        throw std::invalid_argument("handover: t_ttt must be an integer multiple of t_mg");
}

HandoverFsm::HandoverFsm(int serving_cell, const HandoverConfig& cfg)
    : cfg_(cfg), serving_(serving_cell) {
    cfg_.validate();
}

int HandoverFsm::initial_association(std::span<const double> rsrps_dbm) {
    if (rsrps_dbm.empty())
        throw std::invalid_argument("initial_association: empty cell set");
    int best = 0;
    for (int j = 1; j < static_cast<int>(rsrps_dbm.size()); ++j)
        if (rsrps_dbm[j] > rsrps_dbm[best]) best = j;
    return best;
}

std::optional<FsmEvent> HandoverFsm::step(std::span<const double> rsrps_dbm, double time_ms) {
    if (serving_ < 0 || serving_ >= static_cast<int>(rsrps_dbm.size()))
        throw std::invalid_argument("HandoverFsm::step: rsrps do not cover the serving cell");
    const double bar = rsrps_dbm[serving_] + cfg_.m_hyst_db;

    // Strongest cell strictly beating the serving one by the margin.
    int best = -1;
    for (int j = 0; j < static_cast<int>(rsrps_dbm.size()); ++j) {
        if (j == serving_) continue;
        if (rsrps_dbm[j] > bar && (best < 0 || rsrps_dbm[j] > rsrps_dbm[best])) best = j;
    }

    const bool was_running = candidate_.has_value();
    if (best < 0) {
        if (was_running) {
            events_.push_back({time_ms, FsmEventKind::kTttReset, serving_, *candidate_});
            candidate_.reset();
            ttt_elapsed_ = 0.0;
        }
        return std::nullopt;
    }

    if (cfg_.per_candidate_ttt && was_running && rsrps_dbm[*candidate_] <= bar) {
        // The bound candidate dropped out; restart against the new best.
        events_.push_back({time_ms, FsmEventKind::kTttReset, serving_, *candidate_});
        candidate_.reset();
        ttt_elapsed_ = 0.0;
    }

    if (!candidate_.has_value()) {
        candidate_ = best;
        events_.push_back({time_ms, FsmEventKind::kA3Enter, serving_, best});
    } else if (!cfg_.per_candidate_ttt) {
        candidate_ = best;  // timer keeps running on the aggregate condition
    }
    ttt_elapsed_ += cfg_.t_mg_ms;

    if (ttt_elapsed_ >= cfg_.t_ttt_ms) {
        const int target = cfg_.per_candidate_ttt ? *candidate_ : best;
        const FsmEvent ev{time_ms, FsmEventKind::kHandover, serving_, target};
        events_.push_back(ev);
        serving_ = target;
        candidate_.reset();
        ttt_elapsed_ = 0.0;
        ++hoc_;
        return ev;
    }
    return std::nullopt;
}

int count_handovers(const Trajectory& traj, const NetworkRealization& net,
                    const AntennaConfig& ant, const ChannelConfig& ch,
                    const HandoverConfig& cfg) {
    const std::size_t n_cells = net.gbs_positions.size();
    if (n_cells == 0) throw std::invalid_argument("count_handovers: empty network");

    std::vector<double> rsrps(n_cells);
    auto measure = [&](std::size_t sample) {
        const Point2 uav = traj.position(sample);
        for (std::size_t j = 0; j < n_cells; ++j) {
            const auto link = link_geometry(net.gbs_positions[j], uav, net.h_gbs, traj.h_uav);
            rsrps[j] = ground_reflection_rx_power(link, net, ant, ch);
        }
    };

    measure(0);
    HandoverFsm fsm(HandoverFsm::initial_association(rsrps), cfg);
    const std::size_t n = traj.sample_count();
    for (std::size_t i = 1; i < n; ++i) {
        measure(i);
        fsm.step(rsrps, static_cast<double>(i) * traj.sample_period_ms);
    }
    return fsm.handover_count();
}

std::vector<TraceSample> read_rsrp_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    std::vector<TraceSample> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {  // expect "time_ms,cell_id,rsrp_dbm"
            header = false;
            if (line.find("time_ms") != std::string::npos) continue;
        }
        std::istringstream ss(line);
        TraceSample s{};
        char comma;
        if (!(ss >> s.time_ms >> comma >> s.cell_id >> comma >> s.rsrp_dbm))
            throw std::runtime_error("malformed trace line: " + line);
        out.push_back(s);
    }
    return out;
}

std::vector<FsmEvent> replay_trace(const std::vector<TraceSample>& trace,
                                   const HandoverConfig& cfg) {
    if (trace.empty()) throw std::invalid_argument("replay_trace: empty trace");

    // Group by timestamp, keep cell order stable by id.
    std::map<double, std::map<int, double>> by_time;
    for (const auto& s : trace) by_time[s.time_ms][s.cell_id] = s.rsrp_dbm;

    const auto& first = by_time.begin()->second;
    std::vector<int> ids;
    for (const auto& [id, _] : first) ids.push_back(id);

    auto to_vec = [&](const std::map<int, double>& m) {
        std::vector<double> v;
        v.reserve(ids.size());
        for (int id : ids) {
            auto it = m.find(id);
            if (it == m.end())
                throw std::runtime_error("trace timestamp missing cell " + std::to_string(id));
            v.push_back(it->second);
        }
        return v;
    };

    auto it = by_time.begin();
    HandoverFsm fsm(HandoverFsm::initial_association(to_vec(it->second)), cfg);
    for (++it; it != by_time.end(); ++it) fsm.step(to_vec(it->second), it->first);

    // Map indices back to the trace's cell ids.
    std::vector<FsmEvent> events = fsm.events();
    for (auto& ev : events) {
        if (ev.from_cell >= 0) ev.from_cell = ids[static_cast<std::size_t>(ev.from_cell)];
        if (ev.to_cell >= 0) ev.to_cell = ids[static_cast<std::size_t>(ev.to_cell)];
    }
    return events;
}

std::string event_kind_name(FsmEventKind k) {
    switch (k) {
        case FsmEventKind::kA3Enter: return "A3_ENTER";
        case FsmEventKind::kTttReset: return "TTT_RESET";
        case FsmEventKind::kHandover: return "HANDOVER";
    }
    return "?";
}

void write_event_log_csv(const std::string& path, const std::vector<FsmEvent>& events) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write event log: " + path);
    out << "time_ms,event,from_cell,to_cell\n";
    for (const auto& ev : events)
        out << ev.time_ms << ',' << event_kind_name(ev.kind) << ',' << ev.from_cell << ','
            << ev.to_cell << '\n';
}

}  // namespace uavho
