#include "sparsepr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sparsepr/core.hpp"
#include "sparsepr/io.hpp"

namespace sparsepr {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t mix_seed(std::uint64_t base, Index n, int k, int trial) {
    std::uint64_t state = base;
    splitmix64(state);
    state ^= static_cast<std::uint64_t>(n);
    splitmix64(state);
    state ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(k));
    splitmix64(state);
    state ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(trial));
    return splitmix64(state);
}

SparseSignal gen_instance(const InstanceConfig& cfg) {
    if (cfg.n < 1) throw DimensionError("gen_instance: n must be >= 1");
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<Index> support;
    if (cfg.model == SupportModel::uniform_k) {
        if (cfg.k < 1 || cfg.k > cfg.n) throw DimensionError("gen_instance: k out of range");
        std::vector<Index> all(static_cast<std::size_t>(cfg.n));
        std::iota(all.begin(), all.end(), Index{0});
        std::shuffle(all.begin(), all.end(), rng);
        support.assign(all.begin(), all.begin() + cfg.k);
        std::sort(support.begin(), support.end());
    } else {
        if (cfg.s < 1.0 || cfg.s > static_cast<double>(cfg.n))
            throw DimensionError("gen_instance: s out of range");
        const double p = cfg.s / static_cast<double>(cfg.n);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        while (support.empty())
            for (Index i = 0; i < cfg.n; ++i)
                if (unif(rng) < p) support.push_back(i);
    }

    SparseSignal x;
    x.n = cfg.n;
    for (Index i : support) {
        const cplx v = cfg.complex_values ? cplx{gauss(rng), gauss(rng)} : cplx{gauss(rng), 0.0};
        x.entries.emplace_back(i, v);
    }
    return x;
}

NoiseResult inject_noise(const Autocorrelation& a, const NoiseConfig& cfg, std::uint64_t seed) {
    if (cfg.eta < 0) throw DimensionError("inject_noise: eta must be >= 0");
    NoiseResult out;
    out.a = a;
    if (cfg.eta > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<cplx> z(a.values.size());
        double nz = 0.0;
        for (cplx& v : z) {
            v = cplx{gauss(rng), gauss(rng)};
            nz += std::norm(v);
        }
        nz = std::sqrt(nz);
        for (std::size_t i = 0; i < z.size(); ++i) out.a.values[i] += z[i] * (cfg.eta / nz);
    }
    if (cfg.mode == NoiseMode::explicit_ins_del) {
        const DistanceSet w = support_of(a, 0.0);
        for (Index lag : cfg.ins_lags) {
            if (lag < 0 || lag >= a.n) throw DimensionError("inject_noise: insertion lag out of range");
            if (!w.contains(lag)) out.w_ins.push_back(lag);
            out.a.values[static_cast<std::size_t>(lag)] = cplx{cfg.ins_magnitude, 0.0};
        }
        for (Index lag : cfg.del_lags) {
            if (lag < 0 || lag >= a.n) throw DimensionError("inject_noise: deletion lag out of range");
            if (w.contains(lag)) out.w_del.push_back(lag);
            out.a.values[static_cast<std::size_t>(lag)] = cplx{0.0, 0.0};
        }
        std::sort(out.w_ins.begin(), out.w_ins.end());
        std::sort(out.w_del.begin(), out.w_del.end());
    }
    return out;
}

std::string algorithm_name(Algorithm alg) {
    switch (alg) {
        case Algorithm::tspr: return "tspr";
        case Algorithm::tspr_noisy: return "tspr-noisy";
        case Algorithm::fienup: return "fienup";
        case Algorithm::known_support_sdp: return "known-support-sdp";
    }
    throw DimensionError("algorithm_name: unknown tag");
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "tspr") return Algorithm::tspr;
    if (name == "tspr-noisy") return Algorithm::tspr_noisy;
    if (name == "fienup") return Algorithm::fienup;
    if (name == "known-support-sdp") return Algorithm::known_support_sdp;
    throw DimensionError("unknown algorithm: " + name);
}

namespace {

double norm2(const Autocorrelation& a) {
    double acc = 0.0;
    for (const cplx& v : a.values) acc += std::norm(v);
    return std::sqrt(acc);
}

// tau halfway between the strongest off-support lag and the weakest true
// support lag of the measured autocorrelation.
double midgap_tau(const Autocorrelation& clean, const Autocorrelation& measured) {
    const DistanceSet w = support_of(clean, 0.0);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Index d = 0; d < measured.n; ++d) {
        const double mag = std::abs(measured.values[static_cast<std::size_t>(d)]);
        if (w.contains(d))
            lo = std::min(lo, mag);
        else
            hi = std::max(hi, mag);
    }
    return 0.5 * (lo + hi);
}

} // namespace

TrialResult run_trial(Index n, int k, std::uint64_t seed, const TrialConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialResult res;
    res.seed = seed;
    res.n = n;
    res.alg = cfg.alg;
    res.residual = std::numeric_limits<double>::quiet_NaN();

    InstanceConfig icfg;
    icfg.n = n;
    icfg.model = SupportModel::uniform_k;
    icfg.k = k;
    icfg.seed = seed;
    const SparseSignal truth = gen_instance(icfg);
    res.k_realized = static_cast<int>(truth.sparsity());
    const Autocorrelation clean = autocorrelation(truth);
    std::uint64_t noise_state = seed;
    const NoiseResult noisy = inject_noise(clean, cfg.noise, splitmix64(noise_state));
    const Autocorrelation& a = noisy.a;

    try {
        SparseSignal recovered;
        switch (cfg.alg) {
            case Algorithm::tspr:
                recovered = tspr(a, cfg.sdp);
                break;
            case Algorithm::tspr_noisy: {
                const double tau = cfg.tau_midgap ? midgap_tau(clean, a) : cfg.tau;
                recovered = tspr_noisy(a, tau, cfg.noise.eta, cfg.c, cfg.sdp).signal;
                break;
            }
            case Algorithm::fienup:
                recovered = sparse_fienup(a, k, cfg.fienup_inits, cfg.fienup_iters,
                                          splitmix64(noise_state));
                break;
            case Algorithm::known_support_sdp: {
                SupportSet u;
                for (const auto& [i, v] : truth.entries) u.elems.push_back(i);
                recovered = rank_one_approx(solve_sdp_equality(a, u, cfg.sdp));
                break;
            }
        }
        res.residual = autocorr_residual(recovered, a);
        res.success = res.residual <= 1e-6 * std::max(1.0, norm2(a)) &&
                      equivalent(recovered, truth, 1e-3);
    } catch (const AlgorithmError&) {
        res.success = false;
    } catch (const DimensionError&) {
        res.success = false;
    }

    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<CurveCell> run_curve(const std::vector<std::pair<Index, int>>& grid, int trials,
                                 const TrialConfig& cfg, std::uint64_t base_seed, int threads) {
    if (grid.empty() || trials < 1) throw DimensionError("run_curve: empty grid or no trials");
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    struct Task {
        std::size_t cell;
        int trial;
    };
    std::vector<Task> tasks;
    tasks.reserve(grid.size() * static_cast<std::size_t>(trials));
    for (std::size_t c = 0; c < grid.size(); ++c)
        for (int t = 0; t < trials; ++t) tasks.push_back({c, t});

    std::vector<TrialResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const auto [c, t] = tasks[i];
            const auto [n, k] = grid[c];
            results[i] = run_trial(n, k, mix_seed(base_seed, n, k, t), cfg);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();

    std::vector<CurveCell> cells(grid.size());
    std::vector<int> finite(grid.size(), 0);
    for (std::size_t c = 0; c < grid.size(); ++c) {
        cells[c].n = grid[c].first;
        cells[c].k = grid[c].second;
        cells[c].trials = trials;
    }
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        CurveCell& cell = cells[tasks[i].cell];
        const TrialResult& r = results[i];
        if (r.success) ++cell.successes;
        if (std::isfinite(r.residual)) {
            cell.mean_residual += r.residual;
            ++finite[tasks[i].cell];
        }
        cell.mean_ms += r.wall_ms;
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        cells[c].rate = static_cast<double>(cells[c].successes) / static_cast<double>(trials);
        if (finite[c] > 0) cells[c].mean_residual /= static_cast<double>(finite[c]);
        cells[c].mean_ms /= static_cast<double>(trials);
    }
    return cells;
}

void emit_report(const std::vector<CurveCell>& cells, const std::filesystem::path& out_dir,
                 const std::string& algorithm, std::uint64_t base_seed, int trials) {
    if (cells.empty()) throw DimensionError("emit_report: no cells");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    std::ostringstream csv;
    csv << "n,k,trials,successes,rate,mean_residual,mean_ms\n";
    char buf[128];
    for (const CurveCell& c : cells) {
        std::snprintf(buf, sizeof buf, "%lld,%d,%d,%d,%.6g,%.6g,%.3f\n",
                      static_cast<long long>(c.n), c.k, c.trials, c.successes, c.rate,
                      c.mean_residual, c.mean_ms);
        csv << buf;
    }
    atomic_write(out_dir / "curve.csv", csv.str());

    std::ostringstream plot;
    plot << "# success-probability curve for " << algorithm << "\n"
         << "# usage: gnuplot curve.plot\n"
         << "set datafile separator ','\n"
         << "set xlabel 'sparsity k'\n"
         << "set ylabel 'success rate'\n"
         << "set yrange [0:1.05]\n"
         << "plot 'curve.csv' skip 1 using 2:5 with linespoints title '" << algorithm << "'\n";
    atomic_write(out_dir / "curve.plot", plot.str());

    nlohmann::json manifest;
    manifest["algorithm"] = algorithm;
    manifest["base_seed"] = base_seed;
    manifest["trials"] = trials;
    manifest["tool_version"] = kToolVersion;
    nlohmann::json grid = nlohmann::json::array();
    for (const CurveCell& c : cells) grid.push_back({{"n", c.n}, {"k", c.k}});
    manifest["grid"] = grid;
    atomic_write(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

} // namespace sparsepr
