#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "sparsepr/errors.hpp"

namespace sparsepr {

using cplx = std::complex<double>;
using Index = std::int64_t;

// Length-n signal stored as (index, value) pairs with strictly increasing
// indices and nonzero values. Sparsity k = entries.size().
struct SparseSignal {
    Index n = 0;
    std::vector<std::pair<Index, cplx>> entries;

    Index sparsity() const { return static_cast<Index>(entries.size()); }

    std::vector<cplx> to_dense() const {
        std::vector<cplx> d(static_cast<std::size_t>(n), cplx{0.0, 0.0});
        for (const auto& [i, v] : entries) d[static_cast<std::size_t>(i)] = v;
        return d;
    }

    // Builds from a dense vector, dropping entries with |v| <= drop_tol.
    static SparseSignal from_dense(const std::vector<cplx>& d, double drop_tol = 0.0) {
        SparseSignal s;
        s.n = static_cast<Index>(d.size());
        for (Index i = 0; i < s.n; ++i) {
            const cplx v = d[static_cast<std::size_t>(i)];
            if (std::abs(v) > drop_tol) s.entries.emplace_back(i, v);
        }
        return s;
    }

    double norm2() const {
        double acc = 0.0;
        for (const auto& [i, v] : entries) acc += std::norm(v);
        return std::sqrt(acc);
    }

    void validate() const {
        Index prev = -1;
        for (const auto& [i, v] : entries) {
            if (i <= prev || i < 0 || i >= n)
                throw DimensionError("SparseSignal: indices must be strictly increasing in [0, n)");
            if (v == cplx{0.0, 0.0})
                throw DimensionError("SparseSignal: stored values must be nonzero");
            prev = i;
        }
    }
};

// The n lag values a_0..a_{n-1}. For an exact autocorrelation a_0 is real
// and >= 0; noisy measurements may violate that, so it is not enforced here.
struct Autocorrelation {
    Index n = 0;
    std::vector<cplx> values;
};

// Sorted duplicate-free nonnegative integers (the set W; no multiplicity).
struct DistanceSet {
    std::vector<Index> elems; // ascending, unique

    bool contains(Index x) const {
        auto it = std::lower_bound(elems.begin(), elems.end(), x);
        return it != elems.end() && *it == x;
    }
    std::size_t size() const { return elems.size(); }
    bool empty() const { return elems.empty(); }
    Index max() const { return elems.back(); }
};

// Canonical integer support U: u_0 = 0 and u_1-u_0 <= u_{k-1}-u_{k-2}.
struct SupportSet {
    std::vector<Index> elems; // ascending, unique

    std::size_t size() const { return elems.size(); }
    bool empty() const { return elems.empty(); }

    friend bool operator==(const SupportSet& a, const SupportSet& b) {
        return a.elems == b.elems;
    }
    friend bool operator<(const SupportSet& a, const SupportSet& b) {
        return a.elems < b.elems;
    }
};

} // namespace sparsepr
