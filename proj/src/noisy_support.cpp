#include "sparsepr/noisy_support.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sparsepr/core.hpp"
#include "sparsepr/turnpike.hpp"

namespace sparsepr {

int default_pair_quota(std::size_t bigk) {
    const int q = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(bigk)) / 4.0 - 1e-9));
    return std::max(q, 1);
}

DistanceSet threshold_support(const Autocorrelation& a, double tau) {
    if (tau < 0) throw DimensionError("threshold_support: tau must be >= 0");
    if (tau == 0.0) return support_of(a, 0.0);
    DistanceSet w;
    for (Index i = 0; i < a.n; ++i)
        if (std::abs(a.values[static_cast<std::size_t>(i)]) >= tau) w.elems.push_back(i);
    if (w.elems.empty()) throw EmptyMeasurement("threshold_support: no lag above tau");
    return w;
}

namespace {

std::map<Index, int> pair_counts(const DistanceSet& wd) {
    std::map<Index, int> counts;
    for (std::size_t i = 0; i < wd.size(); ++i)
        for (std::size_t j = i + 1; j < wd.size(); ++j) ++counts[wd.elems[j] - wd.elems[i]];
    return counts;
}

} // namespace

std::vector<LagPair> build_tsub(const DistanceSet& wd, int quota) {
    if (quota < 1) throw DimensionError("build_tsub: quota must be >= 1");
    std::vector<LagPair> pairs;
    if (wd.size() < 2) return pairs;
    const auto counts = pair_counts(wd);
    for (std::size_t i = 0; i < wd.size(); ++i) {
        for (std::size_t j = i + 1; j < wd.size(); ++j) {
            const Index d = wd.elems[j] - wd.elems[i];
            if (!wd.contains(d)) continue;
            if (counts.at(d) >= quota) pairs.emplace_back(wd.elems[i], wd.elems[j]);
        }
    }
    return pairs;
}

Index infer_uij_noisy(const DistanceSet& wd, int quota) {
    const auto pairs = build_tsub(wd, quota);
    if (pairs.empty()) throw NoAnchorPair("infer_uij_noisy: no qualifying pair");
    Index w_min = pairs.front().first, w_max = pairs.front().second;
    for (const auto& [lo, hi] : pairs) {
        if (lo > w_min || (lo == w_min && hi > w_max)) {
            w_min = lo;
            w_max = hi;
        }
    }
    return w_max - w_min;
}

namespace {

// Differences of `v` against the rest of `s` that are absent from Wd.
template <typename Container>
int miss_count(Index v, const Container& s, const DistanceSet& wd) {
    int misses = 0;
    for (Index o : s) {
        if (o == v) continue;
        if (!wd.contains(std::abs(v - o))) ++misses;
    }
    return misses;
}

// Iteratively drops the worst offender while some element has more than c
// pairwise differences missing from Wd; protected elements stay put.
void prune_tolerant(std::vector<Index>& s, const DistanceSet& wd, int c,
                    std::initializer_list<Index> protect) {
    for (;;) {
        int worst_misses = c;
        std::size_t worst = s.size();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (std::find(protect.begin(), protect.end(), s[i]) != protect.end()) continue;
            const int m = miss_count(s[i], s, wd);
            if (m > worst_misses) {
                worst_misses = m;
                worst = i;
            }
        }
        if (worst == s.size()) return;
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(worst));
    }
}

} // namespace

SupportSet recover_support_noisy(const DistanceSet& wd, const NoisySupportParams& params) {
    if (wd.empty()) throw TooFewDistances("recover_support_noisy: empty distance set");
    if (params.c < 1) throw DimensionError("recover_support_noisy: c must be >= 1");
    const int k_est = estimate_sparsity(wd);
    if (k_est <= 2) return canonical_orientation(wd.elems);

    // On exactly clean data the noiseless algorithm both succeeds and
    // verifies; any insertion or deletion breaks its exact verification and
    // falls through to the robust path.
    try {
        return recover_support(wd, {});
    } catch (const AlgorithmError&) {
    }

    const int quota = params.pair_quota > 0 ? params.pair_quota : default_pair_quota(wd.size());
    const int c = params.c;
    const Index wmax = wd.max();
    const Index anchor = infer_uij_noisy(wd, quota);

    // Step (iii): top c+2 elements of the anchored intersection, with
    // accidental intersection members pruned by mutual consistency.
    DistanceSet inter = intersect(wd, {anchor});
    prune_tolerant(inter.elems, wd, c, {});
    if (inter.size() < 2) throw SupportIncomplete("recover_support_noisy: anchored intersection too small");
    const std::size_t blk = std::min<std::size_t>(static_cast<std::size_t>(c) + 2, inter.size());
    std::vector<Index> top(inter.elems.end() - static_cast<std::ptrdiff_t>(blk), inter.elems.end());

    // Step (iv): union of shifted generalized intersections over the top
    // block. A legitimate candidate u_{p q_{c+1}} is itself a support
    // distance and reflects through M = u_{0 q_{c+1}} into another one, so
    // everything outside Wd on either side is junk from non-anchored
    // intersection members.
    std::set<Index> u4;
    for (std::size_t i = 0; i < top.size(); ++i) {
        for (std::size_t j = i + 1; j < top.size(); ++j) {
            const Index d = top[j] - top[i];
            const Index lift = top.back() - top[j];
            for (Index x : intersect(wd, {d}).elems) {
                const Index cand = x + lift;
                if (cand <= wmax) u4.insert(cand);
            }
        }
    }
    if (u4.empty()) throw SupportIncomplete("recover_support_noisy: step (iv) union empty");
    const Index m = *u4.rbegin();
    std::vector<Index> ranked;
    for (Index v : u4)
        if (v == m || wd.contains(m - v) || wd.contains(v)) ranked.push_back(v);
    prune_tolerant(ranked, wd, c, {m});
    if (ranked.size() < 2) throw SupportIncomplete("recover_support_noisy: step (iv) selection too small");

    // Appendix E conversion: u_{0p} = u_{0 q_{c+1}} - u_{p q_{c+1}}.
    std::vector<Index> prefix;
    prefix.reserve(ranked.size());
    for (Index v : ranked) prefix.push_back(m - v);
    std::sort(prefix.begin(), prefix.end());
    prefix.erase(std::unique(prefix.begin(), prefix.end()), prefix.end());

    // Step (v): generalized intersections over the first c+2 recovered
    // points, shifted back to the origin frame; keep support distances
    // beyond the prefix.
    std::set<Index> result(prefix.begin(), prefix.end());
    const std::size_t head = std::min<std::size_t>(static_cast<std::size_t>(c) + 2, prefix.size());
    for (std::size_t i = 0; i < head; ++i) {
        for (std::size_t j = i + 1; j < head; ++j) {
            const Index d = prefix[j] - prefix[i];
            if (d <= 0) continue;
            for (Index x : intersect(wd, {d}).elems) {
                const Index cand = x + prefix[i];
                if (cand > prefix.back() && cand <= wmax &&
                    (wd.contains(cand) || wd.contains(wmax - cand)))
                    result.insert(cand);
            }
        }
    }

    // Prune elements inconsistent with the rest: more than c pairwise
    // differences missing from Wd cannot be explained by deletions alone.
    for (;;) {
        Index worst = -1;
        int worst_misses = c;
        for (Index v : result) {
            if (v == 0) continue;
            const int misses = miss_count(v, result, wd);
            if (misses > worst_misses || (misses == worst_misses && misses > c && v > worst)) {
                worst = v;
                worst_misses = misses;
            }
        }
        if (worst < 0) break;
        result.erase(worst);
        if (result.size() < 2) throw SupportIncomplete("recover_support_noisy: pruning exhausted candidates");
    }
    for (Index v : result)
        if (miss_count(v, result, wd) > c)
            throw VerificationFailed("recover_support_noisy: output differences leave Wd");

    // Lags of Wd not realized by any pair of `s`.
    const auto unexplained = [&wd](const std::set<Index>& s) {
        std::set<Index> realized{0};
        for (Index p : s)
            for (Index q : s)
                if (q > p) realized.insert(q - p);
        int count = 0;
        for (Index v : wd.elems)
            if (!realized.count(v)) ++count;
        return count;
    };

    // Minimality: an element with missing differences is only believable as
    // a deletion victim, and a deletion victim is still needed to explain
    // Wd. Tolerated elements the explanation can do without are spurious.
    for (bool removed = true; removed;) {
        removed = false;
        for (Index v : result) {
            if (v == 0 || miss_count(v, result, wd) == 0) continue;
            std::set<Index> rest = result;
            rest.erase(v);
            if (rest.size() >= 2 && unexplained(rest) <= c) {
                result = std::move(rest);
                removed = true;
                break;
            }
        }
    }

    // Completeness: lags of Wd not realized by any output pair signal a
    // truncated reconstruction (insertions account for at most c of them).
    if (unexplained(result) > c)
        throw VerificationFailed("recover_support_noisy: output fails to explain Wd");

    return canonical_orientation(std::vector<Index>(result.begin(), result.end()));
}

} // namespace sparsepr
