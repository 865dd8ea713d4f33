#include "uavho/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace uavho {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

std::string CampaignConfig::fingerprint() const {
    std::ostringstream ss;
    ss.precision(17);
    ss << "density=" << density << ";v=" << v_kmh << ";T=" << t_window_s
       << ";h_uav=" << h_uav << ";h_gbs=" << h_gbs << ";p_gbs=" << p_gbs_dbm
       << ";n_t=" << antenna.n_t << ";tilt=" << antenna.downtilt_deg
       << ";theta3db=" << antenna.theta_3db_deg << ";ge_max=" << antenna.g_e_max_dbi
       << ";g_m=" << antenna.g_m_db << ";f_c=" << channel.f_c_ghz
       << ";alpha0=" << channel.alpha_0 << ";eps_r=" << channel.eps_r
       << ";m_hyst=" << handover.m_hyst_db << ";t_ttt=" << handover.t_ttt_ms
       << ";t_mg=" << handover.t_mg_ms << ";pad=" << pad_km;
    return ss.str();
}

double HocSamples::mean() const {
    if (samples.empty()) return 0.0;
    return std::accumulate(samples.begin(), samples.end(), 0.0) /
           static_cast<double>(samples.size());
}

double HocSamples::variance() const {
    if (samples.size() < 2) return 0.0;
    const double m = mean();
    double acc = 0.0;
    for (int s : samples) acc += (s - m) * (s - m);
    return acc / static_cast<double>(samples.size() - 1);
}

std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& fingerprint,
                          std::size_t run_index) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, &base_seed, sizeof(base_seed));
    h = fnv1a(h, fingerprint.data(), fingerprint.size());
    const auto idx = static_cast<std::uint64_t>(run_index);
    h = fnv1a(h, &idx, sizeof(idx));
    return splitmix64(h);
}

int run_single(const CampaignConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Trajectory traj;
    traj.start = {unit(rng), unit(rng)};  // region core, padding keeps it interior
    traj.heading_rad = kTwoPi * unit(rng);
    traj.speed_kmh = cfg.v_kmh;
    traj.h_uav = cfg.h_uav;
    traj.duration_s = cfg.t_window_s;
    traj.sample_period_ms = cfg.handover.t_mg_ms;

    const Point2 end = traj.position(traj.sample_count() - 1);
    Rect region{std::min(traj.start.x, end.x) - cfg.pad_km,
                std::min(traj.start.y, end.y) - cfg.pad_km,
                std::max(traj.start.x, end.x) + cfg.pad_km,
                std::max(traj.start.y, end.y) + cfg.pad_km};

    const auto net = generate_network(cfg.density, region, rng(), cfg.h_gbs, cfg.p_gbs_dbm);
    if (net.gbs_positions.empty()) return 0;  // empty draw: nothing to hand over between
    return count_handovers(traj, net, cfg.antenna, cfg.channel, cfg.handover);
}

std::vector<HocSamples> run_hoc_campaign(const std::vector<CampaignConfig>& grid,
                                         std::size_t runs_per_config, std::uint64_t base_seed,
                                         unsigned threads) {
    if (runs_per_config < 1)
        throw std::invalid_argument("run_hoc_campaign: runs_per_config must be >= 1");
    for (const auto& cfg : grid) {
        cfg.antenna.validate();
        cfg.channel.validate();
        cfg.handover.validate();
    }

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    std::vector<HocSamples> results(grid.size());
    struct Job {
        std::size_t cfg_idx;
        std::size_t run_idx;
    };
    std::vector<Job> jobs;
    jobs.reserve(grid.size() * runs_per_config);
    for (std::size_t c = 0; c < grid.size(); ++c) {
        results[c].fingerprint = grid[c].fingerprint();
        results[c].samples.resize(runs_per_config);
        for (std::size_t r = 0; r < runs_per_config; ++r) jobs.push_back({c, r});
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            const auto [c, r] = jobs[i];
            const auto seed = derive_seed(base_seed, results[c].fingerprint, r);
            results[c].samples[r] = run_single(grid[c], seed);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

EmpiricalPmf empirical_pmf(const HocSamples& samples) {
    if (samples.samples.empty())
        throw std::invalid_argument("empirical_pmf: need at least one sample");
    const int h_max = *std::max_element(samples.samples.begin(), samples.samples.end());
    EmpiricalPmf pmf;
    pmf.sample_count = samples.samples.size();
    pmf.probabilities.assign(static_cast<std::size_t>(h_max) + 1, 0.0);
    const double w = 1.0 / static_cast<double>(pmf.sample_count);
    for (int s : samples.samples) pmf.probabilities[static_cast<std::size_t>(s)] += w;
    return pmf;
}

void write_pmf_csv(const std::string& path, const EmpiricalPmf& pmf) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pmf csv: " + path);
    out.precision(17);
    out << "h,probability\n";
    for (std::size_t h = 0; h < pmf.probabilities.size(); ++h)
        out << h << ',' << pmf.probabilities[h] << '\n';
}

void write_samples_csv(const std::string& path, const HocSamples& samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write samples csv: " + path);
    out << "run,h\n";
    for (std::size_t i = 0; i < samples.samples.size(); ++i)
        out << i << ',' << samples.samples[i] << '\n';
}

}  // namespace uavho
