// Batch front-end: campaigns, fits, CRLB sweeps, mobility-state analyses.
// All outputs are plain CSV with a header row, '.' decimal separator, and
// full (17 significant digit) precision.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavho/estimation.hpp"
#include "uavho/fitting.hpp"
#include "uavho/montecarlo.hpp"
#include "uavho/msd.hpp"
#include "uavho/version.hpp"

namespace fs = std::filesystem;
using namespace uavho;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value configuration with typo protection: any key outside the
// allowed set is a hard error.
class KeyValueConfig {
public:
    static KeyValueConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        KeyValueConfig cfg;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                if (b == std::string::npos) return std::string();
                const auto e = s.find_last_not_of(" \t\r");
                return s.substr(b, e - b + 1);
            };
            if (trim(line).empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  " is not key=value: " + line);
            const std::string key = trim(line.substr(0, eq));
            cfg.values_[key] = trim(line.substr(eq + 1));
        }
        return cfg;
    }

    void restrict_keys(const std::set<std::string>& allowed) const {
        for (const auto& [key, _] : values_)
            if (!allowed.count(key)) throw ConfigError("unknown config key: " + key);
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        return parse_double(key, it->second);
    }

    int get_int(const std::string& key, int fallback) const {
        return static_cast<int>(get_double(key, fallback));
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(parse_double(key, tok));
        if (out.empty()) throw ConfigError("empty list for key: " + key);
        return out;
    }

    const std::map<std::string, std::string>& raw() const { return values_; }

private:
    static double parse_double(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
            if (pos != text.size()) throw std::invalid_argument("trailing garbage");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("cannot parse value for key '" + key + "': " + text);
        }
    }

    std::map<std::string, std::string> values_;
};

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path.string());
    out.precision(17);
    return out;
}

// Shared simulation keys.
const std::set<std::string> kSimulateKeys = {
    "lambda_gbs", "v_kmh",    "t_window_s", "h_uav_m",   "h_gbs_m", "p_gbs_dbm",
    "n_t",        "downtilt_deg", "f_c_ghz", "t_mg_ms",  "t_ttt_ms", "m_hyst_db",
    "pad_km",     "runs",     "seed",       "eps_r",     "alpha_0"};

std::vector<CampaignConfig> build_grid(const KeyValueConfig& cfg) {
    const auto lambdas = cfg.get_list("lambda_gbs", {1.0});
    const auto speeds = cfg.get_list("v_kmh", {60.0});
    const auto ttts = cfg.get_list("t_ttt_ms", {0.0});
    const auto heights = cfg.get_list("h_uav_m", {100.0});

    CampaignConfig base;
    base.t_window_s = cfg.get_double("t_window_s", 12.0);
    base.h_gbs = cfg.get_double("h_gbs_m", 30.0);
    base.p_gbs_dbm = cfg.get_double("p_gbs_dbm", 46.0);
    base.antenna.n_t = cfg.get_int("n_t", 8);
    base.antenna.downtilt_deg = cfg.get_double("downtilt_deg", 6.0);
    base.channel.f_c_ghz = cfg.get_double("f_c_ghz", 1.5);
    base.channel.eps_r = cfg.get_double("eps_r", 15.0);
    base.channel.alpha_0 = cfg.get_double("alpha_0", 3.5);
    base.handover.t_mg_ms = cfg.get_double("t_mg_ms", 40.0);
    base.handover.m_hyst_db = cfg.get_double("m_hyst_db", 2.0);
    base.pad_km = cfg.get_double("pad_km", 3.0);

    std::vector<CampaignConfig> grid;
    for (double h : heights)
        for (double ttt : ttts)
            for (double lam : lambdas)
                for (double v : speeds) {
                    CampaignConfig c = base;
                    c.h_uav = h;
                    c.handover.t_ttt_ms = ttt;
                    c.density = lam;
                    c.v_kmh = v;
                    c.antenna.validate();
                    c.channel.validate();
                    c.handover.validate();
                    grid.push_back(c);
                }
    return grid;
}

void write_manifest(const fs::path& path, const KeyValueConfig& cfg, std::uint64_t seed,
                    std::size_t runs) {
    auto out = open_out(path);
    out << "tool_version=" << kVersion << '\n';
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    out << "timestamp_utc=" << now << '\n';
    out << "base_seed=" << seed << '\n';
    out << "runs_per_config=" << runs << '\n';
    for (const auto& [k, v] : cfg.raw()) out << k << '=' << v << '\n';
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_flag, std::optional<std::size_t> runs_flag,
                 unsigned threads) {
    const auto cfg = KeyValueConfig::from_file(config_path);
    cfg.restrict_keys(kSimulateKeys);
    const auto grid = build_grid(cfg);
    const auto seed =
        seed_flag.value_or(static_cast<std::uint64_t>(cfg.get_double("seed", 1234)));
    const auto runs = runs_flag.value_or(static_cast<std::size_t>(cfg.get_int("runs", 2000)));

    fs::create_directories(out_dir);
    const auto results = run_hoc_campaign(grid, runs, seed, threads);

    auto index = open_out(fs::path(out_dir) / "campaign_index.csv");
    index << "config_id,lambda_gbs,v_kmh,t_window_s,d_km,t_mg_ms,t_ttt_ms,h_uav_m,n_t\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& c = grid[i];
        index << i << ',' << c.density << ',' << c.v_kmh << ',' << c.t_window_s << ','
              << c.distance_km() << ',' << c.handover.t_mg_ms << ',' << c.handover.t_ttt_ms
              << ',' << c.h_uav << ',' << c.antenna.n_t << '\n';
        const std::string stem = "cfg_" + std::to_string(i);
        write_samples_csv((fs::path(out_dir) / (stem + "_samples.csv")).string(), results[i]);
        write_pmf_csv((fs::path(out_dir) / (stem + "_pmf.csv")).string(),
                      empirical_pmf(results[i]));
    }
    write_manifest(fs::path(out_dir) / "manifest.txt", cfg, seed, runs);
    std::cout << "simulate: " << grid.size() << " configs x " << runs << " runs -> " << out_dir
              << '\n';
    return 0;
}

struct IndexRow {
    std::size_t config_id;
    double lambda_gbs, v_kmh, t_window_s, d_km, t_mg_ms, t_ttt_ms, h_uav_m;
    int n_t;
};

std::vector<IndexRow> read_campaign_index(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open campaign index: " + path.string());
    std::vector<IndexRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        IndexRow r{};
        char c;
        if (!(ss >> r.config_id >> c >> r.lambda_gbs >> c >> r.v_kmh >> c >> r.t_window_s >>
              c >> r.d_km >> c >> r.t_mg_ms >> c >> r.t_ttt_ms >> c >> r.h_uav_m >> c >> r.n_t))
            throw std::runtime_error("malformed campaign index row: " + line);
        rows.push_back(r);
    }
    return rows;
}

HocSamples read_samples_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open samples file: " + path.string());
    HocSamples s;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::size_t run;
        int h;
        char c;
        if (!(ss >> run >> c >> h)) throw std::runtime_error("malformed samples row: " + line);
        s.samples.push_back(h);
    }
    return s;
}

int cmd_fit(const std::string& samples_dir, const std::string& out_dir) {
    const auto rows = read_campaign_index(fs::path(samples_dir) / "campaign_index.csv");
    if (rows.empty()) throw std::runtime_error("campaign index is empty: " + samples_dir);
    fs::create_directories(out_dir);

    auto fits = open_out(fs::path(out_dir) / "fits.csv");
    fits << "config_id,lambda_gbs,d_km,gauss_mu,gauss_sigma2,gauss_mse,poisson_rate,"
            "poisson_mse\n";

    // Group per handover/height/antenna context for the surface fits.
    std::map<std::tuple<double, double, double, int>,
             std::pair<std::vector<SurfacePoint>, std::vector<SurfacePoint>>>
        groups;
    for (const auto& r : rows) {
        const auto samples = read_samples_csv(fs::path(samples_dir) /
                                              ("cfg_" + std::to_string(r.config_id) +
                                               "_samples.csv"));
        const auto gauss = fit_gaussian_pmf(samples);
        const double rate = fit_poisson_pmf(samples);
        const auto pmf = empirical_pmf(samples);
        const std::size_t L = pmf.probabilities.size();
        const double gauss_mse =
            pmf_mse(pmf, [&](int h) { return gaussian_pmf_eval(h, gauss); }, L);
        const double poisson_mse =
            pmf_mse(pmf, [&](int h) { return poisson_pmf_eval(h, rate); }, L);
        fits << r.config_id << ',' << r.lambda_gbs << ',' << r.d_km << ',' << gauss.mu << ','
             << gauss.sigma2 << ',' << gauss_mse << ',' << rate << ',' << poisson_mse << '\n';

        auto& [mu_pts, var_pts] = groups[{r.t_mg_ms, r.t_ttt_ms, r.h_uav_m, r.n_t}];
        mu_pts.push_back({r.lambda_gbs, r.d_km, gauss.mu});
        var_pts.push_back({r.lambda_gbs, r.d_km, gauss.sigma2});
    }

    std::vector<CoeffTableRow> table;
    for (const auto& [key, pts] : groups) {
        const auto& [mu_pts, var_pts] = pts;
        if (mu_pts.size() < 3) continue;  // not enough grid for a surface
        CoeffTableRow row{};
        std::tie(row.t_mg_ms, row.t_ttt_ms, row.h_uav_m, row.n_t) = key;
        row.mean_coeffs = fit_power_surface(mu_pts);
        row.var_coeffs = fit_power_surface(var_pts);
        table.push_back(row);
    }
    write_coeff_table_csv((fs::path(out_dir) / "surface_coeffs.csv").string(), table);
    std::cout << "fit: " << rows.size() << " configs, " << table.size()
              << " fitted surfaces -> " << out_dir << '\n';
    return 0;
}

EstimatorConfig estimator_from_config(const KeyValueConfig& cfg, double lambda_gbs,
                                      double t_window_s) {
    EstimatorConfig est;
    est.lambda_gbs = lambda_gbs;
    est.t_window_s = t_window_s;
    if (cfg.has("a1")) {
        est.mean_coeffs = {cfg.get_double("a1", 0), cfg.get_double("b1", 0),
                           cfg.get_double("c1", 1)};
        est.var_coeffs = {cfg.get_double("a2", 0), cfg.get_double("b2", 0),
                          cfg.get_double("c2", 1)};
    } else {
        const std::string table_path = cfg.get_string("coeff_table", "");
        const std::vector<CoeffTableRow> table =
            table_path.empty() ? bundled_coeff_table() : read_coeff_table_csv(table_path);
        const auto& row =
            lookup_coeffs(table, cfg.get_double("t_mg_ms", 40.0), cfg.get_double("t_ttt_ms", 0.0),
                          cfg.get_double("h_uav_m", 100.0), cfg.get_int("n_t", 8));
        est.mean_coeffs = row.mean_coeffs;
        est.var_coeffs = row.var_coeffs;
    }
    est.validate();
    return est;
}

const std::set<std::string> kCrlbKeys = {"v_kmh",   "lambda_gbs", "t_window_s", "t_mg_ms",
                                         "t_ttt_ms", "h_uav_m",   "n_t",        "coeff_table",
                                         "a1", "b1", "c1", "a2", "b2", "c2"};

int cmd_crlb(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = KeyValueConfig::from_file(config_path);
    cfg.restrict_keys(kCrlbKeys);
    const auto speeds = cfg.get_list("v_kmh", {10, 30, 60, 90, 120});
    const auto lambdas = cfg.get_list("lambda_gbs", {1.0});
    const auto windows = cfg.get_list("t_window_s", {12.0});
    for (double v : speeds)
        if (v <= 0.0) throw ConfigError("crlb: v_kmh entries must be > 0");

    fs::create_directories(out_dir);
    auto out = open_out(fs::path(out_dir) / "crlb.csv");
    out << "v_kmh,lambda_gbs,t_window_s,rmse_kmh\n";
    for (double t : windows)
        for (double lam : lambdas) {
            const auto est = estimator_from_config(cfg, lam, t);
            for (double v : speeds)
                out << v << ',' << lam << ',' << t << ',' << crlb_speed_rmse(v, est) << '\n';
        }
    std::cout << "crlb -> " << (fs::path(out_dir) / "crlb.csv").string() << '\n';
    return 0;
}

const std::set<std::string> kEstimateKeys = {"h",       "lambda_gbs", "t_window_s", "t_mg_ms",
                                             "t_ttt_ms", "h_uav_m",   "n_t",        "coeff_table",
                                             "a1", "b1", "c1", "a2", "b2", "c2"};

int cmd_estimate(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = KeyValueConfig::from_file(config_path);
    cfg.restrict_keys(kEstimateKeys);
    const auto counts = cfg.get_list("h", {});
    if (counts.empty()) throw ConfigError("estimate: key 'h' is required");
    const auto est = estimator_from_config(cfg, cfg.get_double("lambda_gbs", 1.0),
                                           cfg.get_double("t_window_s", 12.0));
    fs::create_directories(out_dir);
    auto out = open_out(fs::path(out_dir) / "estimates.csv");
    out << "h,v_hat_kmh\n";
    for (double h : counts) {
        if (h < 0.0 || h != std::floor(h))
            throw ConfigError("estimate: h entries must be non-negative integers");
        out << static_cast<int>(h) << ',' << estimate_speed(static_cast<int>(h), est) << '\n';
    }
    std::cout << "estimate -> " << (fs::path(out_dir) / "estimates.csv").string() << '\n';
    return 0;
}

const std::set<std::string> kMsdKeys = {
    "v_l_kmh", "v_u_kmh", "lambda_gbs", "t_window_s", "t_mg_ms", "t_ttt_ms", "h_uav_m",
    "n_t",     "coeff_table", "a1", "b1", "c1", "a2", "b2", "c2",
    "v_grid_min_kmh", "v_grid_max_kmh", "v_grid_step_kmh", "window_mode", "stride_s"};

int cmd_msd(const std::string& config_path, const std::string& out_dir,
            const std::string& trace_path) {
    const auto cfg = KeyValueConfig::from_file(config_path);
    cfg.restrict_keys(kMsdKeys);
    const auto est = estimator_from_config(cfg, cfg.get_double("lambda_gbs", 1.0),
                                           cfg.get_double("t_window_s", 12.0));
    MobilityConfig mob{cfg.get_double("v_l_kmh", 40.0), cfg.get_double("v_u_kmh", 80.0)};
    mob.validate();
    fs::create_directories(out_dir);

    const auto thr = hoc_thresholds(mob, est);
    std::cout << "hoc_thresholds: h_l=" << thr.h_l << " h_u=" << thr.h_u << '\n';

    {
        auto out = open_out(fs::path(out_dir) / "state_probabilities.csv");
        out << "v_kmh,p_low,p_medium,p_high,p_d,p_fa\n";
        const double v0 = cfg.get_double("v_grid_min_kmh", 1.0);
        const double v1 = cfg.get_double("v_grid_max_kmh", 160.0);
        const double dv = cfg.get_double("v_grid_step_kmh", 1.0);
        for (double v = v0; v <= v1 + 1e-9; v += dv) {
            const auto p = state_probabilities(v, est, mob);
            const double pd = detection_probability(v, est, mob);
            out << v << ',' << p.p_low << ',' << p.p_medium << ',' << p.p_high << ',' << pd
                << ',' << 1.0 - pd << '\n';
        }
    }

    if (!trace_path.empty()) {
        const auto profile = read_speed_trace_csv(trace_path);
        if (profile.empty()) throw std::runtime_error("empty speed trace: " + trace_path);
        const double total = profile.back().t_s;

        // Handover events from the mean model: one event whenever the
        // integrated per-second rate mu(v(t))/T crosses an integer.
        std::vector<double> events;
        double acc = 0.0;
        const double dt = 0.01;
        std::size_t seg = 0;
        for (double t = 0.0; t < total; t += dt) {
            while (seg + 1 < profile.size() && profile[seg + 1].t_s <= t) ++seg;
            acc += model_mu(profile[seg].v_kmh, est) / est.t_window_s * dt;
            while (acc >= 1.0) {
                events.push_back(t);
                acc -= 1.0;
            }
        }

        const std::string mode_name = cfg.get_string("window_mode", "discrete");
        WindowMode mode;
        if (mode_name == "discrete")
            mode = WindowMode::kDiscrete;
        else if (mode_name == "sliding")
            mode = WindowMode::kSliding;
        else
            throw ConfigError("msd: window_mode must be discrete or sliding");
        const auto series = windowed_estimation(events, total, est.t_window_s, mode,
                                                cfg.get_double("stride_s", 1.0), est, mob);
        auto out = open_out(fs::path(out_dir) / "windowed_estimates.csv");
        out << "t_s,v_hat_kmh,state\n";
        for (const auto& w : series)
            out << w.t_s << ',' << w.v_hat_kmh << ',' << state_name(w.state) << '\n';
    }
    std::cout << "msd -> " << out_dir << '\n';
    return 0;
}

int cmd_trace_replay(const std::string& trace_path, const std::string& out_dir, double m_hyst,
                     double t_ttt, double t_mg, bool per_candidate) {
    HandoverConfig cfg{m_hyst, t_ttt, t_mg, per_candidate};
    cfg.validate();
    const auto trace = read_rsrp_trace_csv(trace_path);
    const auto events = replay_trace(trace, cfg);
    fs::create_directories(out_dir);
    write_event_log_csv((fs::path(out_dir) / "event_log.csv").string(), events);
    std::cout << "trace-replay: " << events.size() << " events -> " << out_dir << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cellular-connected UAV handover statistics and speed estimation toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", trace_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    unsigned threads = 0;
    double m_hyst = 2.0, t_ttt = 0.0, t_mg = 40.0;
    bool per_candidate = false;

    auto* sim = app.add_subcommand("simulate", "Run a HOC Monte Carlo campaign");
    sim->add_option("--config", config_path, "key=value config file")->required();
    sim->add_option("--out", out_dir, "output directory");
    sim->add_option("--seed", seed, "base seed (overrides config)");
    sim->add_option("--runs", runs, "runs per config (overrides config)");
    sim->add_option("--threads", threads, "worker threads (0 = hardware)");

    auto* fit = app.add_subcommand("fit", "Fit Gaussian/Poisson PMFs and power surfaces");
    std::string samples_dir;
    fit->add_option("--samples", samples_dir, "directory produced by simulate")->required();
    fit->add_option("--out", out_dir, "output directory");

    auto* crlb = app.add_subcommand("crlb", "Speed-estimation CRLB sweeps");
    crlb->add_option("--config", config_path, "key=value config file")->required();
    crlb->add_option("--out", out_dir, "output directory");

    auto* est = app.add_subcommand("estimate", "HOC-based speed estimates");
    est->add_option("--config", config_path, "key=value config file")->required();
    est->add_option("--out", out_dir, "output directory");

    auto* msd = app.add_subcommand("msd", "Mobility-state probabilities and windowed traces");
    msd->add_option("--config", config_path, "key=value config file")->required();
    msd->add_option("--out", out_dir, "output directory");
    msd->add_option("--trace", trace_path, "piecewise-constant speed trace CSV");

    auto* replay = app.add_subcommand("trace-replay", "Replay an RSRP trace through the FSM");
    replay->add_option("--trace", trace_path, "RSRP trace CSV")->required();
    replay->add_option("--out", out_dir, "output directory");
    replay->add_option("--m-hyst", m_hyst, "handover margin (dB)");
    replay->add_option("--t-ttt", t_ttt, "time-to-trigger (ms)");
    replay->add_option("--t-mg", t_mg, "measurement gap (ms)");
    replay->add_flag("--per-candidate", per_candidate, "bind TTT to one candidate cell");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, seed, runs, threads);
        if (fit->parsed()) return cmd_fit(samples_dir, out_dir);
        if (crlb->parsed()) return cmd_crlb(config_path, out_dir);
        if (est->parsed()) return cmd_estimate(config_path, out_dir);
        if (msd->parsed()) return cmd_msd(config_path, out_dir, trace_path);
        if (replay->parsed())
            return cmd_trace_replay(trace_path, out_dir, m_hyst, t_ttt, t_mg, per_candidate);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return 0;
}
