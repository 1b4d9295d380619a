#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sparsepr/types.hpp"

namespace sparsepr {

// Lifted variable X = x x* restricted to the k x k support pattern.
// Row/column p corresponds to signal index support.elems[p].
struct LiftedMatrix {
    Index n = 0; // ambient signal length
    SupportSet support;
    Eigen::MatrixXcd entries;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> known;

    std::size_t dim() const { return support.size(); }
};

// Collision graph H(U): edge (i, j) iff the lag u_j - u_i is realized by
// exactly one pair in U and belongs to W.
struct SupportGraph {
    std::size_t k = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // i < j

    bool has_edge(std::size_t i, std::size_t j) const;
};

enum class SdpMethod { splitting, direct_graph };

struct SdpSettings {
    double tol_feas = 1e-7;
    double tol_psd = 1e-7;
    int max_iter = 50000;
    SdpMethod method = SdpMethod::direct_graph;
    double relaxation = 1.6;
};

struct SdpReport {
    double residual = 0.0;
    double trace = 0.0;
    int iterations = 0;
    std::string method;
};

SupportGraph collision_graph(const SupportSet& u, const DistanceSet& w);

// Off-diagonal entries readable from the autocorrelation: on every edge
// (i, j), X_{ij} = a_{u_j - u_i}. Diagonal stays unknown.
LiftedMatrix entries_from_edges(const SupportSet& u, const Autocorrelation& a,
                                const SupportGraph& g);

// Trace-minimal diagonal given pairwise magnitude products |r_i||r_j| on a
// clique: log-domain least squares with a feasibility repair pass. The t=2
// program degenerates to (m, m) with m the single product.
std::vector<double> complete_diagonal(const Eigen::MatrixXd& magnitudes,
                                      const SdpSettings& settings = {});

// Trace minimization over { X PSD, support pattern, lag sums = a_i }.
// direct_graph uses the exact collision-graph path when H(U) is connected
// with a triangle at every vertex, otherwise falls back to alternating
// projections with over-relaxation.
LiftedMatrix solve_sdp_equality(const Autocorrelation& a, const SupportSet& u,
                                const SdpSettings& settings = {}, SdpReport* report = nullptr);

// Noisy variant: |a_i - lag sum| <= eta per lag. eta = 0 reduces exactly to
// solve_sdp_equality.
LiftedMatrix solve_sdp_noisy(const Autocorrelation& a, const SupportSet& u, double eta,
                             const SdpSettings& settings = {}, SdpReport* report = nullptr);

// sqrt(lambda_1) * v_1 from the leading eigenpair (shifted power iteration),
// canonicalized. Throws DegenerateMatrix when lambda_1 <= 0.
SparseSignal rank_one_approx(const LiftedMatrix& x);

// Full noiseless pipeline: support from W, values from the lifted program,
// residual-verified canonical output.
SparseSignal tspr(const Autocorrelation& a, const SdpSettings& settings = {},
                  SdpReport* report = nullptr);

struct NoisyRecovery {
    SparseSignal signal;
    LiftedMatrix lifted;
};

// Noisy pipeline: threshold, robust support recovery, program with per-lag
// slack eta, rank-one approximation.
NoisyRecovery tspr_noisy(const Autocorrelation& a, double tau, double eta, int c = 2,
                         const SdpSettings& settings = {}, SdpReport* report = nullptr);

// Error-reduction baseline: alternate measured-magnitude substitution in
// frequency with k-sparse truncation in time; best of `inits` random starts
// by autocorrelation residual.
SparseSignal sparse_fienup(const Autocorrelation& a, int k, int inits, int iters,
                           std::uint64_t seed);

// l2 distance between autocorrelation(x) and a.
double autocorr_residual(const SparseSignal& x, const Autocorrelation& a);

} // namespace sparsepr
