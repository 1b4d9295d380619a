#include "sparsepr/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sparsepr {

Autocorrelation autocorrelation(const SparseSignal& x) {
    if (x.n < 1) throw DimensionError("autocorrelation: signal length must be >= 1");
    Autocorrelation a;
    a.n = x.n;
    a.values.assign(static_cast<std::size_t>(x.n), cplx{0.0, 0.0});
    for (const auto& [i, vi] : x.entries) {
        for (const auto& [j, vj] : x.entries) {
            if (j < i) continue;
            a.values[static_cast<std::size_t>(j - i)] += vi * std::conj(vj);
        }
    }
    return a;
}

std::vector<double> power_spectrum(const SparseSignal& x, Index m) {
    if (m < 2 * x.n) throw DimensionError("power_spectrum: transform length must be >= 2n");
    std::vector<double> p(static_cast<std::size_t>(m), 0.0);
    const double w = -2.0 * std::numbers::pi / static_cast<double>(m);
    for (Index f = 0; f < m; ++f) {
        cplx acc{0.0, 0.0};
        for (const auto& [j, v] : x.entries) {
            const double ang = w * static_cast<double>(f) * static_cast<double>(j);
            acc += v * cplx{std::cos(ang), std::sin(ang)};
        }
        p[static_cast<std::size_t>(f)] = std::norm(acc);
    }
    return p;
}

DistanceSet support_of(const Autocorrelation& a, double threshold) {
    if (threshold < 0) throw DimensionError("support_of: threshold must be >= 0");
    double amax = 0.0;
    for (const cplx& v : a.values) amax = std::max(amax, std::abs(v));
    if (amax == 0.0) throw EmptyMeasurement("support_of: all-zero autocorrelation");
    const double cut = threshold > 0 ? threshold : kNumericZeroGuard * amax;
    DistanceSet w;
    for (Index i = 0; i < a.n; ++i) {
        const double mag = std::abs(a.values[static_cast<std::size_t>(i)]);
        if ((threshold > 0 && mag >= cut) || (threshold == 0 && mag > cut)) w.elems.push_back(i);
    }
    if (w.elems.empty()) throw EmptyMeasurement("support_of: no lag above threshold");
    return w;
}

DistanceSet distance_set(const SupportSet& v) {
    if (v.empty()) throw DimensionError("distance_set: empty support");
    std::vector<Index> d;
    d.reserve(v.size() * (v.size() - 1) / 2 + 1);
    d.push_back(0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            d.push_back(v.elems[j] - v.elems[i]);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return DistanceSet{std::move(d)};
}

SparseSignal shift(const SparseSignal& x, Index amount) {
    SparseSignal y;
    y.n = x.n;
    y.entries.reserve(x.entries.size());
    for (const auto& [i, v] : x.entries) {
        const Index j = i + amount;
        if (j < 0 || j >= y.n) throw DimensionError("shift: support leaves [0, n)");
        y.entries.emplace_back(j, v);
    }
    return y;
}

SparseSignal conj_flip(const SparseSignal& x) {
    SparseSignal y;
    y.n = x.n;
    y.entries.reserve(x.entries.size());
    for (auto it = x.entries.rbegin(); it != x.entries.rend(); ++it)
        y.entries.emplace_back(x.n - 1 - it->first, std::conj(it->second));
    return y;
}

SparseSignal scale(const SparseSignal& x, cplx c) {
    SparseSignal y = x;
    for (auto& [i, v] : y.entries) v *= c;
    return y;
}

namespace {

// Rotates the global phase so the largest-magnitude entry (earliest index
// on magnitude ties within tol) is real positive.
SparseSignal fix_phase(SparseSignal x, double tol) {
    if (x.entries.empty()) return x;
    std::size_t best = 0;
    double best_mag = std::abs(x.entries[0].second);
    for (std::size_t i = 1; i < x.entries.size(); ++i) {
        const double m = std::abs(x.entries[i].second);
        if (m > best_mag * (1.0 + tol)) {
            best = i;
            best_mag = m;
        }
    }
    const cplx pivot = x.entries[best].second;
    const cplx rot = std::conj(pivot) / std::abs(pivot);
    for (auto& [i, v] : x.entries) v *= rot;
    return x;
}

std::vector<Index> support_indices(const SparseSignal& x) {
    std::vector<Index> s;
    s.reserve(x.entries.size());
    for (const auto& [i, v] : x.entries) s.push_back(i);
    return s;
}

// Comparison key: (support, magnitudes rounded to tol, values rounded to tol).
// Deterministic and constant on shift/phase-normalized representatives.
bool candidate_less(const SparseSignal& a, const SparseSignal& b, double tol) {
    const auto sa = support_indices(a);
    const auto sb = support_indices(b);
    if (sa != sb) return sa < sb;
    auto q = [tol](double v) { return std::llround(v / tol); };
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto ma = q(std::abs(a.entries[i].second));
        const auto mb = q(std::abs(b.entries[i].second));
        if (ma != mb) return ma < mb;
    }
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const cplx va = a.entries[i].second;
        const cplx vb = b.entries[i].second;
        if (q(va.real()) != q(vb.real())) return q(va.real()) < q(vb.real());
        if (q(va.imag()) != q(vb.imag())) return q(va.imag()) < q(vb.imag());
    }
    return false;
}

} // namespace

SparseSignal canonicalize(const SparseSignal& x, double tol) {
    if (x.entries.empty()) throw DimensionError("canonicalize: signal has no entries");
    SparseSignal fwd = fix_phase(shift(x, -x.entries.front().first), tol);
    SparseSignal flp = conj_flip(x);
    flp = fix_phase(shift(flp, -flp.entries.front().first), tol);
    return candidate_less(flp, fwd, tol) ? flp : fwd;
}

bool equivalent(const SparseSignal& x, const SparseSignal& y, double tol) {
    if (x.n != y.n) throw DimensionError("equivalent: signal lengths differ");
    const SparseSignal cx = canonicalize(x, tol);
    const SparseSignal cy = canonicalize(y, tol);
    const auto dx = cx.to_dense();
    const auto dy = cy.to_dense();
    double diff = 0.0, ref = 0.0;
    for (Index i = 0; i < x.n; ++i) {
        diff += std::norm(dx[static_cast<std::size_t>(i)] - dy[static_cast<std::size_t>(i)]);
        ref += std::norm(dx[static_cast<std::size_t>(i)]);
    }
    return std::sqrt(diff) <= tol * std::sqrt(ref);
}

bool is_aperiodic_support(const SupportSet& v) {
    if (v.size() <= 2) return false;
    const Index gap = v.elems[1] - v.elems[0];
    for (std::size_t i = 2; i < v.size(); ++i)
        if (v.elems[i] - v.elems[i - 1] != gap) return true;
    return false;
}

SupportSet canonical_orientation(std::vector<Index> elems) {
    if (elems.empty()) throw DimensionError("canonical_orientation: empty support");
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    const Index lo = elems.front(), hi = elems.back();
    for (Index& e : elems) e -= lo;
    const std::size_t k = elems.size();
    if (k >= 3 && elems[1] - elems[0] > elems[k - 1] - elems[k - 2]) {
        std::vector<Index> flipped(k);
        for (std::size_t i = 0; i < k; ++i) flipped[i] = (hi - lo) - elems[k - 1 - i];
        elems = std::move(flipped);
    }
    return SupportSet{std::move(elems)};
}

} // namespace sparsepr
