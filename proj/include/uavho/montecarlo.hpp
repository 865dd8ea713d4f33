#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavho/handover.hpp"

namespace uavho {

/// Everything that determines one handover-count experiment.
struct CampaignConfig {
    double density = 1.0;      // GBS/km^2
    double v_kmh = 60.0;
    double t_window_s = 12.0;  // HOC measurement window T
    double h_uav = 100.0;
    double h_gbs = 30.0;
    double p_gbs_dbm = 46.0;
    AntennaConfig antenna;
    ChannelConfig channel;
    HandoverConfig handover;
    double pad_km = 3.0;       // PPP region margin around the trajectory

    std::string fingerprint() const;
    double distance_km() const { return v_kmh * t_window_s / 3600.0; }
};

struct HocSamples {
    std::string fingerprint;
    std::vector<int> samples;

    double mean() const;
    double variance() const;  // n-1 denominator
};

struct EmpiricalPmf {
    std::vector<double> probabilities;  // indexed by h = 0..h_max
    std::size_t sample_count = 0;
};

/// One full simulation run: fresh PPP, random start and heading.
int run_single(const CampaignConfig& cfg, std::uint64_t seed);

/// Deterministic per-run seed from (base seed, fingerprint, run index).
std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& fingerprint,
                          std::size_t run_index);

/// Runs `runs_per_config` independent simulations per config, in parallel.
/// Results are reproducible regardless of thread count.
std::vector<HocSamples> run_hoc_campaign(const std::vector<CampaignConfig>& grid,
                                         std::size_t runs_per_config, std::uint64_t base_seed,
                                         unsigned threads = 0);

EmpiricalPmf empirical_pmf(const HocSamples& samples);

/// MSE = (1/L) sum_{l=1..L} (f(l) - g(l))^2 between an empirical PMF and a
/// model PMF evaluated at h = 1..L.
template <typename ModelPmf>
double pmf_mse(const EmpiricalPmf& empirical, ModelPmf&& model, std::size_t L) {
    if (L < 1) throw std::invalid_argument("pmf_mse: L must be >= 1");
    double acc = 0.0;
    for (std::size_t l = 1; l <= L; ++l) {
        const double fe =
            l < empirical.probabilities.size() ? empirical.probabilities[l] : 0.0;
        const double d = fe - model(static_cast<int>(l));
        acc += d * d;
    }
    return acc / static_cast<double>(L);
}

void write_pmf_csv(const std::string& path, const EmpiricalPmf& pmf);
void write_samples_csv(const std::string& path, const HocSamples& samples);

}  // namespace uavho
