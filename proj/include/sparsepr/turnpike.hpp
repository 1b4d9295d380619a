#pragma once

#include <vector>

#include "sparsepr/types.hpp"

namespace sparsepr {

struct TurnpikeParams {
    int t = 0;          // graph-step width; 0 means auto from the estimated sparsity
    bool verify = true; // require distance_set(U) == W on return
};

// Sparsity estimate from |W| assuming no distance collisions
// (K = k(k-1)/2 + 1).
int estimate_sparsity(const DistanceSet& w);

// Auto rule for the graph-step width, clamped to [1, k_est - 2].
int auto_graph_width(int k_est);

// u_01 = w_{K-1} - w_{K-2}; needs |W| >= 2.
Index infer_u01(const DistanceSet& w);

// W intersected with every (W + d) for d in shifts (sorted-merge).
DistanceSet intersect(const DistanceSet& w, const std::vector<Index>& shifts);

// Builds G(Z, W) -- edge iff the pairwise difference is unique within Z and
// present in W -- and returns the smallest t+1 elements of Z adjacent to
// max(W). Throws GraphStepDeficient when fewer than t+1 neighbors exist.
std::vector<Index> graph_step(const DistanceSet& z, const DistanceSet& w, int t);

// Combinatorial support recovery from the pairwise distance set.
// Tries the single-intersection shortcut first and falls back to the
// graph-step path; verification failures are raised, never hidden.
SupportSet recover_support(const DistanceSet& w, const TurnpikeParams& params = {});

// Exhaustive backtracking oracle: every canonical set (deduplicated up to
// flip) whose distance set equals W exactly. Guarded by k_est <= cap.
std::vector<SupportSet> brute_force_turnpike(const DistanceSet& w, int cap = 14);

} // namespace sparsepr
