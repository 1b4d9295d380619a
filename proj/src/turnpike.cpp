#include "sparsepr/turnpike.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "sparsepr/core.hpp"

namespace sparsepr {

int estimate_sparsity(const DistanceSet& w) {
    const double bigk = static_cast<double>(w.size());
    return static_cast<int>(std::ceil((1.0 + std::sqrt(8.0 * bigk - 7.0)) / 2.0 - 1e-9));
}

int auto_graph_width(int k_est) {
    const double base = std::log(static_cast<double>(std::max(k_est, 3)));
    int t = static_cast<int>(std::ceil(std::cbrt(base) - 1e-9));
    t = std::max(t, 1);
    return std::clamp(t, 1, std::max(1, k_est - 2));
}

Index infer_u01(const DistanceSet& w) {
    if (w.size() < 2) throw TooFewDistances("infer_u01: need at least two distances");
    return w.elems[w.size() - 1] - w.elems[w.size() - 2];
}

DistanceSet intersect(const DistanceSet& w, const std::vector<Index>& shifts) {
    if (shifts.empty()) throw DimensionError("intersect: no shifts given");
    for (Index d : shifts)
        if (d <= 0) throw DimensionError("intersect: shifts must be positive");
    DistanceSet out;
    for (Index x : w.elems) {
        bool keep = true;
        for (Index d : shifts) {
            if (!w.contains(x - d)) {
                keep = false;
                break;
            }
        }
        if (keep) out.elems.push_back(x);
    }
    return out;
}

namespace {

std::unordered_map<Index, int> difference_counts(const std::vector<Index>& z) {
    std::unordered_map<Index, int> counts;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) ++counts[z[j] - z[i]];
    return counts;
}

} // namespace

std::vector<Index> graph_step(const DistanceSet& z, const DistanceSet& w, int t) {
    if (t < 0) throw DimensionError("graph_step: t must be >= 0");
    if (w.empty() || !z.contains(0) || !z.contains(w.max()))
        throw DimensionError("graph_step: Z must contain 0 and max(W)");
    const Index anchor = w.max();
    const auto counts = difference_counts(z.elems);
    std::vector<Index> neighbors;
    for (Index v : z.elems) {
        if (v == anchor) continue;
        const Index d = anchor - v;
        auto it = counts.find(d);
        if (it != counts.end() && it->second == 1 && w.contains(d)) neighbors.push_back(v);
    }
    if (static_cast<int>(neighbors.size()) < t + 1)
        throw GraphStepDeficient("graph_step: fewer than t+1 neighbors of max(W)");
    neighbors.resize(static_cast<std::size_t>(t + 1));
    return neighbors;
}

namespace {

int inconsistency(Index v, const std::vector<Index>& s, const DistanceSet& w) {
    int misses = 0;
    for (Index o : s)
        if (o != v && !w.contains(std::abs(v - o))) ++misses;
    return misses;
}

// Removes elements whose pairwise differences leave W; in the noiseless
// model every true support difference is present, so offenders are
// spurious. 0 and max(W) are anchors and never removed. Miss counts are
// maintained incrementally so the whole prune is O(|s|^2).
void prune_inconsistent(std::vector<Index>& s, const DistanceSet& w) {
    const std::size_t m = s.size();
    std::vector<int> misses(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (!w.contains(std::abs(s[j] - s[i]))) {
                ++misses[i];
                ++misses[j];
            }
    std::vector<bool> alive(m, true);
    for (;;) {
        int worst_misses = 0;
        std::size_t worst = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (!alive[i] || s[i] == 0 || s[i] == w.max()) continue;
            if (misses[i] > worst_misses) {
                worst_misses = misses[i];
                worst = i;
            }
        }
        if (worst == m) break;
        alive[worst] = false;
        for (std::size_t i = 0; i < m; ++i)
            if (alive[i] && !w.contains(std::abs(s[i] - s[worst]))) --misses[i];
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (alive[i]) s[out++] = s[i];
    s.resize(out);
}

// Bounded backtracking that grows a consistent candidate set until its
// distance set reproduces W. Seeded with the graph-step output, the search
// only has to place the handful of points lost to distance collisions.
bool complete_candidate(std::vector<Index>& p, const DistanceSet& w, long& budget) {
    if (--budget < 0) return false;
    std::sort(p.begin(), p.end());
    std::unordered_map<Index, int> counts;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) ++counts[p[j] - p[i]];
    Index missing = -1;
    for (auto it = w.elems.rbegin(); it != w.elems.rend(); ++it) {
        if (*it == 0) continue;
        if (counts.find(*it) == counts.end()) {
            missing = *it;
            break;
        }
    }
    if (missing < 0) return true;
    std::set<Index> cands;
    for (Index q : p) {
        for (Index s : {q + missing, q - missing}) {
            if (s < 0 || s > w.max()) continue;
            if (std::binary_search(p.begin(), p.end(), s)) continue;
            bool ok = true;
            for (Index o : p) {
                if (!w.contains(std::abs(s - o))) {
                    ok = false;
                    break;
                }
            }
            if (ok) cands.insert(s);
        }
    }
    for (Index s : cands) {
        std::vector<Index> next = p;
        next.push_back(s);
        if (complete_candidate(next, w, budget)) {
            p = std::move(next);
            return true;
        }
    }
    return false;
}

// All vertices of Z adjacent to max(W) in G(Z, W), ascending.
std::vector<Index> all_neighbors(const DistanceSet& z, const DistanceSet& w) {
    const Index anchor = w.max();
    std::unordered_map<Index, int> counts;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) ++counts[z.elems[j] - z.elems[i]];
    std::vector<Index> neighbors;
    for (Index v : z.elems) {
        if (v == anchor) continue;
        const Index d = anchor - v;
        auto it = counts.find(d);
        if (it != counts.end() && it->second == 1 && w.contains(d)) neighbors.push_back(v);
    }
    return neighbors;
}

} // namespace

SupportSet recover_support(const DistanceSet& w, const TurnpikeParams& params) {
    if (w.empty()) throw TooFewDistances("recover_support: empty distance set");
    const int k_est = estimate_sparsity(w);
    if (k_est <= 2) return canonical_orientation(w.elems);

    const Index u01 = infer_u01(w);
    std::vector<Index> zelems = intersect(w, {u01}).elems;
    if (zelems.empty() || zelems.front() != 0) zelems.insert(zelems.begin(), 0);

    // Single-intersection shortcut; sufficient for low sparsity.
    SupportSet shortcut = canonical_orientation(zelems);
    if (distance_set(shortcut).elems == w.elems) return shortcut;

    // Spurious Z elements cause difference collisions in the graph step;
    // drop the provably inconsistent ones first.
    prune_inconsistent(zelems, w);
    const DistanceSet z{zelems};

    // Graph step: neighbors of max(W), spurious candidates pruned by the
    // mutual-consistency test (true support differences are always in W).
    std::vector<Index> neighbors = all_neighbors(z, w);
    {
        std::vector<Index> with_anchor = neighbors;
        with_anchor.push_back(w.max());
        prune_inconsistent(with_anchor, w);
        with_anchor.pop_back();
        neighbors = std::move(with_anchor);
    }
    if (neighbors.empty() || neighbors.front() != 0) neighbors.insert(neighbors.begin(), 0);

    const int t_base = params.t > 0 ? params.t : auto_graph_width(k_est);
    const int t_max = std::max(1, k_est - 2);
    SupportSet u;
    std::vector<Index> best_attempt;
    bool verified = false;
    bool assembled = false;
    for (int t = std::clamp(t_base, 1, t_max); t <= t_max && !verified; ++t) {
        if (static_cast<int>(neighbors.size()) < t + 1) break;
        assembled = true;
        const std::vector<Index> shifts(neighbors.begin() + 1, neighbors.begin() + t + 1);
        const DistanceSet tail = intersect(w, shifts);
        std::vector<Index> uelems = neighbors;
        uelems.push_back(w.max());
        uelems.insert(uelems.end(), tail.elems.begin(), tail.elems.end());
        std::sort(uelems.begin(), uelems.end());
        uelems.erase(std::unique(uelems.begin(), uelems.end()), uelems.end());
        prune_inconsistent(uelems, w);
        // Wider graph steps can over-prune; keep the largest consistent
        // attempt as the completion seed.
        if (uelems.size() > best_attempt.size()) best_attempt = uelems;
        u = canonical_orientation(std::move(uelems));
        verified = distance_set(u).elems == w.elems;
        if (params.t > 0) break; // fixed width requested, no escalation
    }
    if (!assembled)
        throw GraphStepDeficient("recover_support: fewer than t+1 consistent neighbors of max(W)");
    if (!verified) {
        // Collisions can drop a few points from the graph-step output while
        // everything kept is consistent; a seeded completion search places
        // the remainder cheaply.
        std::vector<Index> seeds = best_attempt;
        // Each search node costs O(K); scale the node budget so the search
        // stays around a fixed work envelope regardless of instance size.
        const long budget_cap = 50000000 / static_cast<long>(std::max<std::size_t>(w.size(), 1));
        long budget = std::clamp<long>(budget_cap, 20000, 200000);
        if (complete_candidate(seeds, w, budget)) {
            u = canonical_orientation(std::move(seeds));
            verified = distance_set(u).elems == w.elems;
        }
    }
    if (!verified && params.verify)
        throw VerificationFailed("recover_support: recovered set does not reproduce W");
    return u;
}

namespace {

struct OracleSearch {
    const DistanceSet& w;
    std::size_t max_points;
    std::set<std::vector<Index>> solutions;

    bool all_dists_in_w(const std::vector<Index>& p, Index cand) const {
        for (Index q : p)
            if (!w.contains(std::abs(cand - q))) return false;
        return true;
    }

    Index largest_unexplained(const std::vector<Index>& p) const {
        std::vector<Index> sorted = p;
        std::sort(sorted.begin(), sorted.end());
        const auto counts = difference_counts(sorted);
        for (auto it = w.elems.rbegin(); it != w.elems.rend(); ++it) {
            if (*it == 0) continue;
            if (counts.find(*it) == counts.end()) return *it;
        }
        return -1;
    }

    void recurse(std::vector<Index>& p) {
        const Index d = largest_unexplained(p);
        if (d < 0) {
            std::vector<Index> sorted = p;
            SupportSet cand = canonical_orientation(std::move(sorted));
            if (distance_set(cand).elems == w.elems) solutions.insert(cand.elems);
            // Points whose distances are all already present extend the
            // solution without changing its distance set; enumerate them too.
            if (p.size() < max_points) {
                for (Index s : w.elems) {
                    if (std::find(p.begin(), p.end(), s) != p.end()) continue;
                    if (!all_dists_in_w(p, s)) continue;
                    p.push_back(s);
                    recurse(p);
                    p.pop_back();
                }
            }
            return;
        }
        // The pair realizing d consists of two positions, and every position
        // is itself a member of W (its distance to 0); branch over all
        // consistent placements of that pair.
        for (Index s : w.elems) {
            const Index t = s + d;
            if (t > w.max() || !w.contains(t)) continue;
            const bool need_s = std::find(p.begin(), p.end(), s) == p.end();
            const bool need_t = std::find(p.begin(), p.end(), t) == p.end();
            if (!need_s && !need_t) continue;
            if (p.size() + (need_s ? 1 : 0) + (need_t ? 1 : 0) > max_points) continue;
            if (need_s && !all_dists_in_w(p, s)) continue;
            std::size_t pushed = 0;
            if (need_s) {
                p.push_back(s);
                ++pushed;
            }
            if (need_t) {
                if (!all_dists_in_w(p, t)) {
                    if (pushed) p.pop_back();
                    continue;
                }
                p.push_back(t);
                ++pushed;
            }
            recurse(p);
            while (pushed--) p.pop_back();
        }
    }
};

} // namespace

std::vector<SupportSet> brute_force_turnpike(const DistanceSet& w, int cap) {
    if (w.empty()) throw TooFewDistances("brute_force_turnpike: empty distance set");
    const int k_est = estimate_sparsity(w);
    if (k_est > cap) throw OracleTooLarge("brute_force_turnpike: estimated sparsity exceeds cap");
    if (w.elems == std::vector<Index>{0}) return {SupportSet{{0}}};

    OracleSearch search{w, static_cast<std::size_t>(cap + 2), {}};
    std::vector<Index> p{0, w.max()};
    search.recurse(p);

    std::vector<SupportSet> out;
    out.reserve(search.solutions.size());
    for (const auto& s : search.solutions) out.push_back(SupportSet{s});
    return out;
}

} // namespace sparsepr
