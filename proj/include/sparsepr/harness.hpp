#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sparsepr/recovery.hpp"
#include "sparsepr/types.hpp"

namespace sparsepr {

enum class SupportModel { bernoulli, uniform_k };

struct InstanceConfig {
    Index n = 0;
    SupportModel model = SupportModel::uniform_k;
    double s = 0.0; // expected sparsity for bernoulli
    int k = 0;      // exact sparsity for uniform_k
    bool complex_values = true;
    std::uint64_t seed = 0;
};

SparseSignal gen_instance(const InstanceConfig& cfg);

enum class NoiseMode { gaussian_scaled, explicit_ins_del };

struct NoiseConfig {
    double eta = 0.0;
    NoiseMode mode = NoiseMode::gaussian_scaled;
    double ins_magnitude = 0.0;      // explicit mode: injected lag magnitude
    std::vector<Index> ins_lags;     // explicit mode: lags to insert
    std::vector<Index> del_lags;     // explicit mode: lags to zero out
};

struct NoiseResult {
    Autocorrelation a;
    std::vector<Index> w_ins;
    std::vector<Index> w_del;
};

NoiseResult inject_noise(const Autocorrelation& a, const NoiseConfig& cfg, std::uint64_t seed);

enum class Algorithm { tspr, tspr_noisy, fienup, known_support_sdp };

std::string algorithm_name(Algorithm alg);
Algorithm algorithm_from_name(const std::string& name);

struct TrialConfig {
    Algorithm alg = Algorithm::tspr;
    NoiseConfig noise;      // eta doubles as the program slack for tspr_noisy
    bool tau_midgap = true; // tspr_noisy: place tau between noise and signal lags
    double tau = 0.0;       // used when tau_midgap is false
    int c = 2;
    int fienup_inits = 100;
    int fienup_iters = 500;
    SdpSettings sdp;
};

struct TrialResult {
    std::uint64_t seed = 0;
    Index n = 0;
    int k_realized = 0;
    Algorithm alg = Algorithm::tspr;
    bool success = false;
    double residual = 0.0; // autocorrelation residual of the recovered signal
    double wall_ms = 0.0;
};

// splitmix64-based derivation: pure function of (base, n, k, trial index).
std::uint64_t mix_seed(std::uint64_t base, Index n, int k, int trial);

// One seeded trial. Success = equivalent(recovered, truth, 1e-3) and
// autocorrelation residual <= 1e-6 * ||a||_2; algorithmic failures count as
// unsuccessful trials, they are not raised.
TrialResult run_trial(Index n, int k, std::uint64_t seed, const TrialConfig& cfg);

struct CurveCell {
    Index n = 0;
    int k = 0;
    int trials = 0;
    int successes = 0;
    double rate = 0.0;
    double mean_residual = 0.0;
    double mean_ms = 0.0;
};

// Monte Carlo farm over the (n, k) grid; trials run on `threads` workers
// (0 = hardware concurrency) and aggregate independently of schedule.
std::vector<CurveCell> run_curve(const std::vector<std::pair<Index, int>>& grid, int trials,
                                 const TrialConfig& cfg, std::uint64_t base_seed, int threads = 0);

// Writes curve.csv, curve.plot and manifest.json into out_dir; byte-stable
// given identical cells and manifest fields.
void emit_report(const std::vector<CurveCell>& cells, const std::filesystem::path& out_dir,
                 const std::string& algorithm, std::uint64_t base_seed, int trials);

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace sparsepr
