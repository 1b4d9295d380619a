#pragma once

#include <utility>
#include <vector>

#include "sparsepr/types.hpp"

namespace sparsepr {

struct NoisySupportParams {
    double tau = 0.0;   // threshold on |a_i|
    int c = 2;          // robustness constant (deletions tolerated per support row)
    int pair_quota = 0; // minimum same-difference pair count; 0 means ceil(sqrt(K)/4)
};

// Ordered pairs (w_i, w_j), w_i < w_j, drawn from the thresholded support.
using LagPair = std::pair<Index, Index>;

// W-dagger = { i : |a_i| >= tau }. tau == 0 falls back to the noiseless
// numeric-zero extraction so the two paths agree on clean data.
DistanceSet threshold_support(const Autocorrelation& a, double tau);

// All pairs whose difference is itself in W-dagger and is realized by at
// least `quota` pairs of W-dagger.
std::vector<LagPair> build_tsub(const DistanceSet& wd, int quota);

// Anchor distance u_{i0 j0}: the partner gap of the largest first
// coordinate appearing in T-dagger-sub.
Index infer_uij_noisy(const DistanceSet& wd, int quota);

// Steps (iii)-(v) of the noise-robust support recovery: anchored
// intersection, generalized intersections over the top support block, and
// conversion to origin-based support values. Candidates inconsistent with
// the rest of the set (more than c pairwise differences missing from
// W-dagger) are rejected.
SupportSet recover_support_noisy(const DistanceSet& wd, const NoisySupportParams& params = {});

// Effective pair quota for a thresholded support of size K.
int default_pair_quota(std::size_t bigk);

} // namespace sparsepr
