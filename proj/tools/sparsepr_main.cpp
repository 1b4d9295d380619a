#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsepr/core.hpp"
#include "sparsepr/harness.hpp"
#include "sparsepr/io.hpp"
#include "sparsepr/noisy_support.hpp"
#include "sparsepr/recovery.hpp"
#include "sparsepr/turnpike.hpp"

namespace {

using namespace sparsepr;

double auto_tau(const Autocorrelation& a) {
    std::vector<double> mags;
    mags.reserve(a.values.size());
    for (const cplx& v : a.values) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    const std::size_t m = mags.size();
    const double median = m % 2 ? mags[m / 2] : 0.5 * (mags[m / 2 - 1] + mags[m / 2]);
    return 3.0 * median / 0.6745;
}

std::vector<std::pair<Index, int>> parse_grid(const std::string& spec) {
    std::vector<std::pair<Index, int>> grid;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string cell = spec.substr(pos, comma - pos);
        long long n = 0;
        int k = 0;
        if (std::sscanf(cell.c_str(), "%lld:%d", &n, &k) != 2 || n < 1 || k < 1)
            throw CLI::ValidationError("--grid", "expected comma-separated n:k pairs");
        grid.emplace_back(static_cast<Index>(n), k);
        pos = comma + 1;
    }
    if (grid.empty()) throw CLI::ValidationError("--grid", "empty grid");
    return grid;
}

void write_sdp_report_line(const SdpReport& report) {
    nlohmann::json line;
    line["residual"] = report.residual;
    line["trace"] = report.trace;
    line["iterations"] = report.iterations;
    line["method"] = report.method;
    std::cout << line.dump() << "\n";
}

void print_set(const std::vector<Index>& elems) {
    for (Index e : elems) std::cout << e << "\n";
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Sparse phase retrieval from the autocorrelation: support recovery, lifted "
                 "SDP value recovery, baselines and benchmarks"};
    app.name("sparsepr");
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random sparse signal CSV");
    std::int64_t gen_n = 64;
    int gen_k = 5;
    double gen_s = 0.0;
    std::uint64_t gen_seed = 1;
    bool gen_real = false;
    std::string gen_out;
    gen->add_option("--n", gen_n, "Signal length")->capture_default_str();
    gen->add_option("--k", gen_k, "Exact sparsity (uniform support model)")->capture_default_str();
    gen->add_option("--bernoulli", gen_s, "Expected sparsity s for the Bernoulli support model (overrides --k)");
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_flag("--real", gen_real, "Real Gaussian values instead of complex");
    gen->add_option("--out", gen_out, "Output signal CSV path")->required();

    // autocorr
    auto* acmd = app.add_subcommand("autocorr", "Compute the autocorrelation of a signal CSV");
    std::string ac_in, ac_out;
    acmd->add_option("input", ac_in, "Input signal CSV")->required();
    acmd->add_option("--out", ac_out, "Output autocorrelation CSV path")->required();

    // turnpike
    auto* tp = app.add_subcommand("turnpike", "Recover a support set from a distance-set file");
    std::string tp_in, tp_out;
    int tp_t = 0;
    bool tp_no_verify = false;
    bool tp_oracle = false;
    tp->add_option("input", tp_in, "Distance-set file (one integer per line)")->required();
    tp->add_option("--t", tp_t, "Graph-step width (0 = auto)")->capture_default_str();
    tp->add_flag("--no-verify", tp_no_verify, "Skip the distance-set verification of the output");
    tp->add_flag("--oracle", tp_oracle, "Exhaustive backtracking search instead of the two-step algorithm");
    tp->add_option("--out", tp_out, "Output support-set file (default: standard output)");

    // recover
    auto* rec = app.add_subcommand("recover", "Recover signal values via the lifted program");
    std::string rec_in, rec_support = "auto", rec_method = "direct", rec_out;
    double rec_tol = 1e-7;
    int rec_max_iter = 50000;
    rec->add_option("input", rec_in, "Input autocorrelation CSV")->required();
    rec->add_option("--support", rec_support, "Support-set file or 'auto'")->capture_default_str();
    rec->add_option("--method", rec_method, "Solver path")
        ->check(CLI::IsMember({"splitting", "direct"}))
        ->capture_default_str();
    rec->add_option("--tol", rec_tol, "Constraint residual tolerance")->capture_default_str();
    rec->add_option("--max-iter", rec_max_iter, "Iteration cap")->capture_default_str();
    rec->add_option("--out", rec_out, "Output recovered-signal CSV path")->required();

    // recover-noisy
    auto* rnz = app.add_subcommand("recover-noisy", "Noise-robust recovery pipeline");
    std::string rnz_in, rnz_tau = "0", rnz_out, rnz_support_out;
    double rnz_eta = 0.0;
    int rnz_c = 2;
    rnz->add_option("input", rnz_in, "Input autocorrelation CSV")->required();
    rnz->add_option("--tau", rnz_tau, "Support threshold (real value or 'auto')")->capture_default_str();
    rnz->add_option("--c", rnz_c, "Robustness constant")->capture_default_str();
    rnz->add_option("--eta", rnz_eta, "Per-lag constraint slack")->capture_default_str();
    rnz->add_option("--out", rnz_out, "Output recovered-signal CSV path")->required();
    rnz->add_option("--support-out", rnz_support_out, "Output support-set file path");

    // fienup
    auto* fp = app.add_subcommand("fienup", "Sparse error-reduction baseline");
    std::string fp_in, fp_out;
    int fp_k = 0, fp_inits = 100, fp_iters = 500;
    std::uint64_t fp_seed = 1;
    fp->add_option("input", fp_in, "Input autocorrelation CSV")->required();
    fp->add_option("--k", fp_k, "Target sparsity")->required();
    fp->add_option("--inits", fp_inits, "Random initializations")->capture_default_str();
    fp->add_option("--iters", fp_iters, "Iterations per initialization")->capture_default_str();
    fp->add_option("--seed", fp_seed, "RNG seed")->capture_default_str();
    fp->add_option("--out", fp_out, "Output recovered-signal CSV path")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Monte Carlo success-probability curves");
    std::string bench_grid, bench_alg = "tspr", bench_out;
    int bench_trials = 50, bench_parallel = 0;
    std::uint64_t bench_seed = 1;
    double bench_eta = 0.0;
    bench->add_option("--grid", bench_grid, "Comma-separated n:k cells, e.g. 512:8,512:12")->required();
    bench->add_option("--trials", bench_trials, "Trials per cell")->capture_default_str();
    bench->add_option("--alg", bench_alg, "Algorithm under test")
        ->check(CLI::IsMember({"tspr", "tspr-noisy", "fienup", "known-support-sdp"}))
        ->capture_default_str();
    bench->add_option("--seed", bench_seed, "Base seed")->capture_default_str();
    bench->add_option("--eta", bench_eta, "Noise budget for tspr-noisy trials")->capture_default_str();
    bench->add_option("--out", bench_out, "Output directory")->required();
    bench->add_option("--parallel", bench_parallel,
                      "Worker threads (0 = hardware; env SPARSE_PR_THREADS overrides)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Normalize CLI11's per-error exit codes: 0 for --help/--version,
        // 1 for every usage error.
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (gen->parsed()) {
        InstanceConfig cfg;
        cfg.n = gen_n;
        cfg.seed = gen_seed;
        cfg.complex_values = !gen_real;
        if (gen_s > 0.0) {
            cfg.model = SupportModel::bernoulli;
            cfg.s = gen_s;
        } else {
            cfg.model = SupportModel::uniform_k;
            cfg.k = gen_k;
        }
        write_signal_csv(gen_out, gen_instance(cfg));
        return 0;
    }

    if (acmd->parsed()) {
        write_autocorr_csv(ac_out, autocorrelation(read_signal_csv(ac_in)));
        return 0;
    }

    if (tp->parsed()) {
        DistanceSet w{read_set_file(tp_in)};
        SupportSet u;
        if (tp_oracle) {
            const auto sols = brute_force_turnpike(w);
            if (sols.empty())
                throw VerificationFailed("turnpike: no support realizes the distance set");
            u = sols.front();
        } else {
            TurnpikeParams params;
            params.t = tp_t;
            params.verify = !tp_no_verify;
            u = recover_support(w, params);
        }
        if (tp_out.empty())
            print_set(u.elems);
        else
            write_set_file(tp_out, u.elems);
        return 0;
    }

    if (rec->parsed()) {
        const Autocorrelation a = read_autocorr_csv(rec_in);
        SdpSettings settings;
        settings.tol_feas = rec_tol;
        settings.max_iter = rec_max_iter;
        settings.method = rec_method == "direct" ? SdpMethod::direct_graph : SdpMethod::splitting;
        SdpReport report;
        SparseSignal x;
        if (rec_support == "auto") {
            x = tspr(a, settings, &report);
        } else {
            const SupportSet u{read_set_file(rec_support)};
            x = rank_one_approx(solve_sdp_equality(a, u, settings, &report));
        }
        write_signal_csv(rec_out, x);
        write_sdp_report_line(report);
        return 0;
    }

    if (rnz->parsed()) {
        const Autocorrelation a = read_autocorr_csv(rnz_in);
        double tau = 0.0;
        if (rnz_tau == "auto") {
            tau = auto_tau(a);
        } else {
            char* end = nullptr;
            tau = std::strtod(rnz_tau.c_str(), &end);
            if (end == rnz_tau.c_str() || *end != '\0' || tau < 0)
                throw CLI::ValidationError("--tau", "expected a nonnegative real or 'auto'");
        }
        SdpReport report;
        const NoisyRecovery result = tspr_noisy(a, tau, rnz_eta, rnz_c, {}, &report);
        write_signal_csv(rnz_out, result.signal);
        if (!rnz_support_out.empty()) write_set_file(rnz_support_out, result.lifted.support.elems);
        write_sdp_report_line(report);
        return 0;
    }

    if (fp->parsed()) {
        const Autocorrelation a = read_autocorr_csv(fp_in);
        write_signal_csv(fp_out, sparse_fienup(a, fp_k, fp_inits, fp_iters, fp_seed));
        return 0;
    }

    if (bench->parsed()) {
        const auto grid = parse_grid(bench_grid);
        TrialConfig cfg;
        cfg.alg = algorithm_from_name(bench_alg);
        cfg.noise.eta = bench_eta;
        int threads = bench_parallel;
        if (const char* env = std::getenv("SPARSE_PR_THREADS")) threads = std::atoi(env);
        const auto started = std::chrono::system_clock::now();
        const auto cells = run_curve(grid, bench_trials, cfg, bench_seed, threads);
        emit_report(cells, bench_out, bench_alg, bench_seed, bench_trials);

        nlohmann::json run;
        run["command"] = "bench";
        nlohmann::json flags;
        flags["grid"] = bench_grid;
        flags["trials"] = bench_trials;
        flags["alg"] = bench_alg;
        flags["eta"] = bench_eta;
        flags["parallel"] = threads;
        run["flags"] = flags;
        run["seed"] = bench_seed;
        run["tool_version"] = kToolVersion;
        run["started_at"] = static_cast<std::int64_t>(
            std::chrono::duration_cast<std::chrono::seconds>(started.time_since_epoch()).count());
        atomic_write(std::filesystem::path(bench_out) / "run.json", run.dump(2) + "\n");
        return 0;
    }

    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const sparsepr::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const sparsepr::ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const sparsepr::AlgorithmError& e) {
        std::cerr << "algorithmic failure: " << e.what() << "\n";
        return 2;
    } catch (const sparsepr::DimensionError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
