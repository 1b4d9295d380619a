#include "sparsepr/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>

#include <Eigen/Eigenvalues>

#include "sparsepr/core.hpp"
#include "sparsepr/fft.hpp"
#include "sparsepr/noisy_support.hpp"
#include "sparsepr/turnpike.hpp"

namespace sparsepr {

bool SupportGraph::has_edge(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return std::find(edges.begin(), edges.end(), std::make_pair(i, j)) != edges.end();
}

SupportGraph collision_graph(const SupportSet& u, const DistanceSet& w) {
    if (u.empty()) throw DimensionError("collision_graph: empty support");
    SupportGraph g;
    g.k = u.size();
    std::map<Index, int> counts;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) ++counts[u.elems[j] - u.elems[i]];
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            const Index d = u.elems[j] - u.elems[i];
            if (counts[d] == 1 && w.contains(d)) g.edges.emplace_back(i, j);
        }
    }
    return g;
}

LiftedMatrix entries_from_edges(const SupportSet& u, const Autocorrelation& a,
                                const SupportGraph& g) {
    const auto k = static_cast<Eigen::Index>(u.size());
    LiftedMatrix x;
    x.n = a.n;
    x.support = u;
    x.entries = Eigen::MatrixXcd::Zero(k, k);
    x.known = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(k, k, false);
    for (const auto& [i, j] : g.edges) {
        const Index d = u.elems[j] - u.elems[i];
        if (d >= a.n) throw DimensionError("entries_from_edges: lag outside measurement");
        // a_d = sum of x_p conj(x_{p+d}); a unique pair leaves X_{ij} = a_d.
        const cplx v = a.values[static_cast<std::size_t>(d)];
        const auto ei = static_cast<Eigen::Index>(i), ej = static_cast<Eigen::Index>(j);
        x.entries(ei, ej) = v;
        x.entries(ej, ei) = std::conj(v);
        x.known(ei, ej) = x.known(ej, ei) = true;
    }
    return x;
}

std::vector<double> complete_diagonal(const Eigen::MatrixXd& magnitudes,
                                      const SdpSettings& settings) {
    const auto t = magnitudes.rows();
    if (t != magnitudes.cols() || t < 2)
        throw DimensionError("complete_diagonal: need a square matrix of size >= 2");
    for (Eigen::Index i = 0; i < t; ++i)
        for (Eigen::Index j = i + 1; j < t; ++j)
            if (magnitudes(i, j) <= 0.0)
                throw CompletionInfeasible("complete_diagonal: nonpositive magnitude");

    if (t == 2) {
        // Trace R11 + R22 with R11*R22 >= m^2 is minimized on the boundary
        // at R11 = R22 = m.
        const double m = magnitudes(0, 1);
        return {m, m};
    }

    // ell_i + ell_j = log(m_ij^2); least squares in the log domain.
    std::vector<double> s(static_cast<std::size_t>(t), 0.0);
    double total = 0.0;
    for (Eigen::Index i = 0; i < t; ++i) {
        for (Eigen::Index j = i + 1; j < t; ++j) {
            const double lij = 2.0 * std::log(magnitudes(i, j));
            s[static_cast<std::size_t>(i)] += lij;
            s[static_cast<std::size_t>(j)] += lij;
            total += lij;
        }
    }
    const double tsum = total / static_cast<double>(t - 1);
    std::vector<double> ell(static_cast<std::size_t>(t));
    for (Eigen::Index i = 0; i < t; ++i)
        ell[static_cast<std::size_t>(i)] = (s[static_cast<std::size_t>(i)] - tsum) / static_cast<double>(t - 2);

    double max_res = 0.0;
    for (Eigen::Index i = 0; i < t; ++i)
        for (Eigen::Index j = i + 1; j < t; ++j)
            max_res = std::max(max_res, std::abs(ell[static_cast<std::size_t>(i)] +
                                                 ell[static_cast<std::size_t>(j)] -
                                                 2.0 * std::log(magnitudes(i, j))));
    if (max_res > 1e-6)
        throw CompletionInfeasible("complete_diagonal: magnitudes are not rank-one consistent");

    std::vector<double> r(static_cast<std::size_t>(t));
    for (Eigen::Index i = 0; i < t; ++i) r[static_cast<std::size_t>(i)] = std::exp(ell[static_cast<std::size_t>(i)]);

    // Repair pass: nudge any product below its bound back to feasibility.
    for (int pass = 0; pass < 100; ++pass) {
        bool fixed = false;
        for (Eigen::Index i = 0; i < t; ++i) {
            for (Eigen::Index j = i + 1; j < t; ++j) {
                const double need = magnitudes(i, j) * magnitudes(i, j);
                const double have = r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)];
                if (have < need * (1.0 - settings.tol_feas)) {
                    const double f = std::sqrt(need / have);
                    r[static_cast<std::size_t>(i)] *= f;
                    r[static_cast<std::size_t>(j)] *= f;
                    fixed = true;
                }
            }
        }
        if (!fixed) break;
    }
    return r;
}

namespace {

struct LagGroups {
    // Per measured lag: the p < q support pairs realizing it.
    std::vector<std::pair<Index, std::vector<std::pair<Eigen::Index, Eigen::Index>>>> groups;
};

LagGroups build_groups(const Autocorrelation& a, const SupportSet& u) {
    std::map<Index, std::vector<std::pair<Eigen::Index, Eigen::Index>>> m;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            const Index d = u.elems[j] - u.elems[i];
            if (d >= a.n) throw DimensionError("solve_sdp: support lag outside measurement");
            m[d].emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    LagGroups g;
    g.groups.assign(m.begin(), m.end());
    return g;
}

double measurement_scale(const Autocorrelation& a) {
    double acc = 0.0;
    for (const cplx& v : a.values) acc += std::norm(v);
    return std::max(1.0, std::sqrt(acc));
}

// a_d = sum_p x_p conj(x_{p+d}) equals the sum of X_{pq} over support pairs
// with u_q - u_p = d, plus the trace at d = 0.
cplx lag_sum(const Eigen::MatrixXcd& x,
             const std::vector<std::pair<Eigen::Index, Eigen::Index>>& pairs) {
    cplx s{0.0, 0.0};
    for (const auto& [p, q] : pairs) s += x(p, q);
    return s;
}

double constraint_residual(const Eigen::MatrixXcd& x, const Autocorrelation& a,
                           const LagGroups& lg, double eta) {
    double acc = 0.0;
    const cplx a0 = a.values[0];
    const double diag_gap = std::max(0.0, std::abs(a0 - cplx{x.real().trace(), 0.0}) - eta);
    acc += diag_gap * diag_gap;
    for (const auto& [d, pairs] : lg.groups) {
        const cplx target = a.values[static_cast<std::size_t>(d)];
        const double gap = std::max(0.0, std::abs(target - lag_sum(x, pairs)) - eta);
        acc += gap * gap;
    }
    return std::sqrt(acc);
}

void project_constraints(Eigen::MatrixXcd& x, const Autocorrelation& a, const LagGroups& lg,
                         double eta) {
    const auto k = x.rows();
    double tr = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) tr += x(i, i).real();
    double target0 = a.values[0].real();
    if (eta > 0.0) {
        // The trace is real; the reachable slice of the complex eta ball
        // around a_0 shrinks with the imaginary part of the noise.
        const double im = a.values[0].imag();
        const double r = std::sqrt(std::max(0.0, eta * eta - im * im));
        target0 = std::clamp(tr, target0 - r, target0 + r);
    }
    const double dshift = (target0 - tr) / static_cast<double>(k);
    for (Eigen::Index i = 0; i < k; ++i) x(i, i) = cplx{x(i, i).real() + dshift, 0.0};

    for (const auto& [d, pairs] : lg.groups) {
        const cplx target = a.values[static_cast<std::size_t>(d)];
        const cplx s = lag_sum(x, pairs);
        cplx goal = target;
        if (eta > 0.0) {
            const double gap = std::abs(target - s);
            if (gap <= eta) continue;
            goal = s + (target - s) * ((gap - eta) / gap);
        }
        const cplx shift = (goal - s) / static_cast<double>(pairs.size());
        for (const auto& [p, q] : pairs) {
            x(p, q) += shift;
            x(q, p) = std::conj(x(p, q));
        }
    }
}

void project_psd(Eigen::MatrixXcd& x) {
    Eigen::MatrixXcd h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    x = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd splitting_solve(const Autocorrelation& a, const SupportSet& u, double eta,
                                 const SdpSettings& settings, const Eigen::MatrixXcd& warm,
                                 int& iterations, double& residual) {
    const LagGroups lg = build_groups(a, u);
    // Relaxed Douglas-Rachford between the affine (or box) constraint set
    // and the PSD cone; the PSD shadow iterate is the candidate solution.
    Eigen::MatrixXcd x = warm;
    for (iterations = 0; iterations < settings.max_iter; ++iterations) {
        Eigen::MatrixXcd y = x;
        project_constraints(y, a, lg, eta);
        Eigen::MatrixXcd z = 2.0 * y - x;
        project_psd(z);
        residual = constraint_residual(z, a, lg, eta);
        if (residual <= settings.tol_feas) {
            ++iterations;
            return z;
        }
        x += settings.relaxation * (z - y);
    }
    throw NonConvergence("solve_sdp: constraint residual stayed above tolerance");
}

// Leading eigenpair as a rank-one matrix; zero when not positive.
Eigen::MatrixXcd rank_one_projection(const Eigen::MatrixXcd& x) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (x + x.adjoint()));
    const auto k = x.rows();
    const double lambda = es.eigenvalues()(k - 1);
    if (lambda <= 0.0) return Eigen::MatrixXcd::Zero(k, k);
    const Eigen::VectorXcd v = es.eigenvectors().col(k - 1);
    return lambda * (v * v.adjoint());
}

// The noiseless feasible set can be a face of the cone containing non
// rank-one points (the paper's diagonal lemma condition can fail); when it
// happens, alternate the affine projection with a rank-one projection to
// land on the rank-one feasible point if one is reachable.
Eigen::MatrixXcd refine_rank_one(Eigen::MatrixXcd z, const Autocorrelation& a,
                                 const SupportSet& u, const SdpSettings& settings) {
    const LagGroups lg = build_groups(a, u);
    if (constraint_residual(rank_one_projection(z), a, lg, 0.0) <= 10.0 * settings.tol_feas)
        return rank_one_projection(z);
    Eigen::MatrixXcd y = z;
    for (int it = 0; it < 500; ++it) {
        project_constraints(y, a, lg, 0.0);
        y = rank_one_projection(y);
        const double res = constraint_residual(y, a, lg, 0.0);
        if (res <= settings.tol_feas) return y;
    }
    return z;
}

// Noisy analogue of refine_rank_one: the truth x x* lies inside the eta
// ball, so alternating the ball projection with a rank-one projection moves
// the splitting iterate from an arbitrary feasible point onto a rank-one
// feasible one, which is the point the error bound is stated for.
Eigen::MatrixXcd refine_rank_one_noisy(Eigen::MatrixXcd z, const Autocorrelation& a,
                                       const SupportSet& u, double eta,
                                       const SdpSettings& settings) {
    const LagGroups lg = build_groups(a, u);
    Eigen::MatrixXcd y = rank_one_projection(z);
    if (constraint_residual(y, a, lg, eta) <= 10.0 * settings.tol_feas) return y;
    y = z;
    for (int it = 0; it < 500; ++it) {
        project_constraints(y, a, lg, eta);
        y = rank_one_projection(y);
        if (constraint_residual(y, a, lg, eta) <= 10.0 * settings.tol_feas) return y;
    }
    return z;
}

// Union-find style connectivity over the collision graph.
bool is_connected(const SupportGraph& g) {
    if (g.k == 0) return false;
    std::vector<std::vector<std::size_t>> adj(g.k);
    for (const auto& [i, j] : g.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<bool> seen(g.k, false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        const std::size_t v = q.front();
        q.pop();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                q.push(w);
            }
        }
    }
    return count == g.k;
}

Eigen::MatrixXcd outer_from_vector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

// Exact Appendix-D style reconstruction; returns false when the graph lacks
// the connectivity or triangle structure it needs.
bool direct_graph_solve(const Autocorrelation& a, const SupportSet& u, Eigen::MatrixXcd& out) {
    const auto k = static_cast<Eigen::Index>(u.size());
    if (k == 1) {
        out = Eigen::MatrixXcd::Constant(1, 1, cplx{a.values[0].real(), 0.0});
        return a.values[0].real() > 0.0;
    }
    DistanceSet w;
    try {
        w = support_of(a, 0.0);
    } catch (const EmptyMeasurement&) {
        return false;
    }
    const SupportGraph g = collision_graph(u, w);
    if (!is_connected(g)) return false;
    const LiftedMatrix partial = entries_from_edges(u, a, g);

    if (k == 2) {
        // Diagonal from trace a_0 and the rank-one product constraint.
        if (!partial.known(0, 1)) return false;
        const double tr = a.values[0].real();
        const double p2 = std::norm(partial.entries(0, 1));
        const double disc = tr * tr - 4.0 * p2;
        if (disc < 0.0) return false;
        const double r0 = 0.5 * (tr + std::sqrt(disc));
        const double r1 = tr - r0;
        if (r0 <= 0.0 || r1 <= 0.0) return false;
        Eigen::VectorXcd v(2);
        v(0) = cplx{std::sqrt(r0), 0.0};
        v(1) = std::conj(partial.entries(0, 1) / v(0));
        out = outer_from_vector(v);
        return true;
    }

    std::vector<std::vector<Eigen::Index>> adj(static_cast<std::size_t>(k));
    for (const auto& [i, j] : g.edges) {
        adj[i].push_back(static_cast<Eigen::Index>(j));
        adj[j].push_back(static_cast<Eigen::Index>(i));
    }

    // Diagonal via triangle ratios |x_j|^2 = X_ij X_jl / X_il.
    Eigen::VectorXd diag(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        bool found = false;
        const auto& nb = adj[static_cast<std::size_t>(j)];
        for (std::size_t ii = 0; ii < nb.size() && !found; ++ii) {
            for (std::size_t ll = ii + 1; ll < nb.size() && !found; ++ll) {
                const Eigen::Index i = nb[ii], l = nb[ll];
                if (!partial.known(i, l)) continue;
                const cplx denom = partial.entries(i, l);
                if (std::abs(denom) < 1e-14) continue;
                const cplx ratio = partial.entries(i, j) * partial.entries(j, l) / denom;
                if (ratio.real() <= 0.0) continue;
                diag(j) = ratio.real();
                found = true;
            }
        }
        if (!found) return false;
    }

    // Phase propagation along a spanning tree rooted at vertex 0.
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(k);
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    std::queue<Eigen::Index> q;
    v(0) = cplx{std::sqrt(diag(0)), 0.0};
    seen[0] = true;
    q.push(0);
    while (!q.empty()) {
        const Eigen::Index p = q.front();
        q.pop();
        for (Eigen::Index c : adj[static_cast<std::size_t>(p)]) {
            if (seen[static_cast<std::size_t>(c)]) continue;
            v(c) = std::conj(partial.entries(p, c) / v(p));
            seen[static_cast<std::size_t>(c)] = true;
            q.push(c);
        }
    }
    out = outer_from_vector(v);
    return true;
}

} // namespace

LiftedMatrix solve_sdp_equality(const Autocorrelation& a, const SupportSet& u,
                                const SdpSettings& settings, SdpReport* report) {
    if (u.empty()) throw DimensionError("solve_sdp_equality: empty support");
    if (a.n < 1 || a.values.empty()) throw DimensionError("solve_sdp_equality: empty measurement");
    const auto k = static_cast<Eigen::Index>(u.size());

    LiftedMatrix result;
    result.n = a.n;
    result.support = u;
    result.known = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(k, k, true);

    if (settings.method == SdpMethod::direct_graph) {
        Eigen::MatrixXcd direct;
        if (direct_graph_solve(a, u, direct)) {
            const LagGroups lg = build_groups(a, u);
            const double res = constraint_residual(direct, a, lg, 0.0);
            if (res <= 1e2 * settings.tol_feas * measurement_scale(a)) {
                result.entries = direct;
                if (report) *report = {res, direct.real().trace(), 0, "direct_graph"};
                return result;
            }
        }
    }

    const SupportGraph g = collision_graph(u, distance_set(u));
    Eigen::MatrixXcd warm = entries_from_edges(u, a, g).entries;
    for (Eigen::Index i = 0; i < k; ++i)
        warm(i, i) = cplx{a.values[0].real() / static_cast<double>(k), 0.0};

    int iterations = 0;
    double residual = 0.0;
    result.entries = refine_rank_one(
        splitting_solve(a, u, 0.0, settings, warm, iterations, residual), a, u, settings);
    if (report) *report = {residual, result.entries.real().trace(), iterations, "splitting"};
    return result;
}

LiftedMatrix solve_sdp_noisy(const Autocorrelation& a, const SupportSet& u, double eta,
                             const SdpSettings& settings, SdpReport* report) {
    if (eta < 0) throw DimensionError("solve_sdp_noisy: eta must be >= 0");
    if (eta == 0.0) return solve_sdp_equality(a, u, settings, report);
    if (u.empty()) throw DimensionError("solve_sdp_noisy: empty support");
    const auto k = static_cast<Eigen::Index>(u.size());

    const SupportGraph g = collision_graph(u, distance_set(u));
    Eigen::MatrixXcd warm = entries_from_edges(u, a, g).entries;
    for (Eigen::Index i = 0; i < k; ++i)
        warm(i, i) = cplx{a.values[0].real() / static_cast<double>(k), 0.0};

    LiftedMatrix result;
    result.n = a.n;
    result.support = u;
    result.known = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(k, k, true);
    int iterations = 0;
    double residual = 0.0;
    result.entries = refine_rank_one_noisy(
        splitting_solve(a, u, eta, settings, warm, iterations, residual), a, u, eta, settings);
    if (report) *report = {residual, result.entries.real().trace(), iterations, "splitting"};
    return result;
}

SparseSignal rank_one_approx(const LiftedMatrix& x) {
    const auto k = static_cast<Eigen::Index>(x.dim());
    if (k < 1) throw DimensionError("rank_one_approx: empty matrix");
    const Eigen::MatrixXcd h = 0.5 * (x.entries + x.entries.adjoint());
    const double scale = h.norm();
    if (scale == 0.0) throw DegenerateMatrix("rank_one_approx: zero matrix");

    // Shift makes the largest algebraic eigenvalue dominant in modulus.
    const Eigen::MatrixXcd shifted = h + scale * Eigen::MatrixXcd::Identity(k, k);
    Eigen::VectorXcd v(k);
    for (Eigen::Index i = 0; i < k; ++i)
        v(i) = cplx{1.0 + 0.01 * static_cast<double>(i), 0.0};
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXcd w = shifted * v;
        const double nw = w.norm();
        if (nw == 0.0) throw DegenerateMatrix("rank_one_approx: power iteration collapsed");
        w /= nw;
        lambda = (w.adjoint() * h * w)(0).real();
        if ((h * w - lambda * w).norm() <= 1e-10 * std::max(1.0, scale)) {
            v = w;
            break;
        }
        v = w;
    }
    if (lambda <= 0.0) throw DegenerateMatrix("rank_one_approx: leading eigenvalue not positive");

    SparseSignal out;
    out.n = x.n;
    const double amp = std::sqrt(lambda);
    for (Eigen::Index i = 0; i < k; ++i) {
        const cplx val = amp * v(i);
        // Components below the power-iteration tolerance are numerical zeros.
        if (std::abs(val) > 1e-9 * amp) out.entries.emplace_back(x.support.elems[static_cast<std::size_t>(i)], val);
    }
    if (out.entries.empty()) throw DegenerateMatrix("rank_one_approx: eigenvector numerically zero");
    SparseSignal canon = canonicalize(out);
    canon.n = x.n;
    return canon;
}

double autocorr_residual(const SparseSignal& x, const Autocorrelation& a) {
    if (x.n != a.n) throw DimensionError("autocorr_residual: lengths differ");
    const Autocorrelation ax = autocorrelation(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) acc += std::norm(ax.values[i] - a.values[i]);
    return std::sqrt(acc);
}

namespace {

SparseSignal value_stage(const Autocorrelation& a, const SupportSet& u,
                         const SdpSettings& settings, SdpReport* report) {
    const LiftedMatrix x = solve_sdp_equality(a, u, settings, report);
    SparseSignal sig = rank_one_approx(x);
    if (autocorr_residual(sig, a) > 1e-6 * measurement_scale(a))
        throw RecoveryFailed("tspr: recovered signal does not reproduce the measurement");
    return sig;
}

} // namespace

SparseSignal tspr(const Autocorrelation& a, const SdpSettings& settings, SdpReport* report) {
    const DistanceSet w = support_of(a, 0.0);
    try {
        return value_stage(a, recover_support(w), settings, report);
    } catch (const AlgorithmError&) {
        // Distance collisions break the combinatorial stage on short
        // signals; there the exhaustive turnpike search is cheap, so try
        // every candidate support before giving up.
        if (estimate_sparsity(w) > 14) throw;
        for (const SupportSet& u : brute_force_turnpike(w)) {
            try {
                return value_stage(a, u, settings, report);
            } catch (const AlgorithmError&) {
            }
        }
        throw RecoveryFailed("tspr: no candidate support reproduces the measurement");
    }
}

NoisyRecovery tspr_noisy(const Autocorrelation& a, double tau, double eta, int c,
                         const SdpSettings& settings, SdpReport* report) {
    const DistanceSet wd = threshold_support(a, tau);
    NoisySupportParams np;
    np.tau = tau;
    np.c = c;
    const SupportSet u = recover_support_noisy(wd, np);
    NoisyRecovery out;
    out.lifted = solve_sdp_noisy(a, u, eta, settings, report);
    out.signal = rank_one_approx(out.lifted);
    return out;
}

SparseSignal sparse_fienup(const Autocorrelation& a, int k, int inits, int iters,
                           std::uint64_t seed) {
    if (k < 1 || inits < 1 || iters < 1)
        throw DimensionError("sparse_fienup: k, inits and iters must be >= 1");
    const Index n = a.n;
    k = static_cast<int>(std::min<Index>(k, n));
    const std::size_t m = next_pow2(static_cast<std::size_t>(2 * n));

    // Measured Fourier magnitudes from the symmetrized autocorrelation.
    std::vector<cplx> spec(m, cplx{0.0, 0.0});
    spec[0] = a.values[0];
    for (Index d = 1; d < n; ++d) {
        spec[static_cast<std::size_t>(d)] += std::conj(a.values[static_cast<std::size_t>(d)]);
        spec[m - static_cast<std::size_t>(d)] += a.values[static_cast<std::size_t>(d)];
    }
    fft(spec);
    std::vector<double> mag(m);
    for (std::size_t f = 0; f < m; ++f) mag[f] = std::sqrt(std::max(0.0, spec[f].real()));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SparseSignal best;
    double best_res = std::numeric_limits<double>::infinity();
    double anorm = 0.0;
    for (const cplx& v : a.values) anorm += std::norm(v);
    anorm = std::sqrt(anorm);

    for (int init = 0; init < inits; ++init) {
        std::vector<cplx> x(m, cplx{0.0, 0.0});
        for (Index i = 0; i < n; ++i)
            x[static_cast<std::size_t>(i)] = cplx{gauss(rng), gauss(rng)};

        for (int it = 0; it < iters; ++it) {
            fft(x);
            for (std::size_t f = 0; f < m; ++f) {
                const double cur = std::abs(x[f]);
                x[f] = cur > 1e-300 ? x[f] * (mag[f] / cur) : cplx{mag[f], 0.0};
            }
            fft(x, true);
            // k-sparse time projection onto the first n samples.
            std::vector<std::size_t> idx(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::nth_element(idx.begin(), idx.begin() + (k - 1), idx.end(),
                             [&](std::size_t p, std::size_t q) { return std::norm(x[p]) > std::norm(x[q]); });
            std::vector<cplx> next(m, cplx{0.0, 0.0});
            for (int i = 0; i < k; ++i) next[idx[static_cast<std::size_t>(i)]] = x[idx[static_cast<std::size_t>(i)]];
            x = std::move(next);
        }

        SparseSignal cand = SparseSignal::from_dense(
            std::vector<cplx>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)), 0.0);
        if (cand.entries.empty()) continue;
        cand.n = n;
        const double res = autocorr_residual(cand, a);
        if (res < best_res) {
            best_res = res;
            best = cand;
        }
        // Remaining restarts cannot improve on a machine-precision fit.
        if (best_res <= 1e-9 * std::max(1.0, anorm)) break;
    }
    if (best.entries.empty()) throw RecoveryFailed("sparse_fienup: every initialization collapsed");
    SparseSignal canon = canonicalize(best);
    canon.n = n;
    return canon;
}

} // namespace sparsepr
