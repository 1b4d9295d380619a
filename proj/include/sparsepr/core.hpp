#pragma once

#include <vector>

#include "sparsepr/types.hpp"

namespace sparsepr {

// Relative magnitude below which a lag counts as numerically zero when
// extracting the noiseless autocorrelation support.
inline constexpr double kNumericZeroGuard = 1e-9;

// a_i = sum_j x_j * conj(x_{i+j}), evaluated by direct pair enumeration
// over the k stored entries (O(k^2); k << n in all target regimes).
Autocorrelation autocorrelation(const SparseSignal& x);

// |DFT_m(x zero-padded to m)|^2 with m >= 2n. Cross-check companion to
// autocorrelation(); throws DimensionError when m < 2n.
std::vector<double> power_spectrum(const SparseSignal& x, Index m);

// { i : |a_i| >= threshold }. With threshold 0, nonzero means
// |a_i| > kNumericZeroGuard * max_j |a_j|. Throws EmptyMeasurement on
// an all-zero autocorrelation.
DistanceSet support_of(const Autocorrelation& a, double threshold);

// Duplicate-free sorted set of all |v_i - v_j|, including 0.
DistanceSet distance_set(const SupportSet& v);

// Shift x by `amount` positions (support indices move by amount).
SparseSignal shift(const SparseSignal& x, Index amount);

// Conjugate-flip: y_i = conj(x_{n-1-i}).
SparseSignal conj_flip(const SparseSignal& x);

// Multiply every value by c.
SparseSignal scale(const SparseSignal& x, cplx c);

// Deterministic orbit representative under time-shift, conjugate-flip and
// global phase-change. First support index becomes 0, the flip orientation
// with the lexicographically smaller (support, rounded-magnitude, rounded
// value) tuple wins, and the global phase makes the largest-magnitude entry
// (earliest index on ties) real positive.
SparseSignal canonicalize(const SparseSignal& x, double tol = 1e-9);

// ||canon(x) - canon(y)||_2 <= tol * ||canon(x)||_2, same length required.
bool equivalent(const SparseSignal& x, const SparseSignal& y, double tol);

// False iff the support is uniformly spaced or has k <= 2 elements.
bool is_aperiodic_support(const SupportSet& v);

// Shift to u_0 = 0 and flip so that u_1-u_0 <= u_{k-1}-u_{k-2}.
SupportSet canonical_orientation(std::vector<Index> elems);

} // namespace sparsepr
