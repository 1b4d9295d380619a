#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "sparsepr/core.hpp"
#include "sparsepr/errors.hpp"

using namespace sparsepr;

namespace {

SparseSignal make(Index n, std::vector<std::pair<Index, cplx>> entries) {
    SparseSignal x;
    x.n = n;
    x.entries = std::move(entries);
    x.validate();
    return x;
}

// Keeps indices below n - 32 so the shift tests stay inside [0, n).
SparseSignal random_signal(Index n, int k, std::mt19937_64& rng) {
    const Index span = n - 32;
    std::vector<Index> idx(static_cast<std::size_t>(span));
    for (Index i = 0; i < span; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(k));
    std::sort(idx.begin(), idx.end());
    std::normal_distribution<double> g;
    SparseSignal x;
    x.n = n;
    for (Index i : idx) x.entries.emplace_back(i, cplx{g(rng), g(rng)});
    return x;
}

// Direct quadratic-time DFT, the independent oracle for power_spectrum.
std::vector<cplx> naive_dft(const std::vector<cplx>& in) {
    const std::size_t m = in.size();
    std::vector<cplx> out(m);
    for (std::size_t f = 0; f < m; ++f) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(f * j) / static_cast<double>(m);
            acc += in[j] * cplx{std::cos(ang), std::sin(ang)};
        }
        out[f] = acc;
    }
    return out;
}

const std::vector<Index> kPaperW{0, 3, 8, 11, 13, 18, 26, 29, 31, 39, 42};

} // namespace

TEST_CASE("autocorrelation of (1,2,3)") {
    const auto a = autocorrelation(make(3, {{0, 1.0}, {1, 2.0}, {2, 3.0}}));
    REQUIRE(a.n == 3);
    CHECK(a.values[0] == cplx{14.0, 0.0});
    CHECK(a.values[1] == cplx{8.0, 0.0});
    CHECK(a.values[2] == cplx{3.0, 0.0});
}

TEST_CASE("autocorrelation of a single entry") {
    const auto a = autocorrelation(make(8, {{5, 2.0}}));
    CHECK(a.values[0] == cplx{4.0, 0.0});
    for (Index i = 1; i < 8; ++i) CHECK(a.values[static_cast<std::size_t>(i)] == cplx{0.0, 0.0});
}

TEST_CASE("autocorrelation support of the worked-example set") {
    std::mt19937_64 rng(7);
    const std::vector<Index> v{2, 5, 13, 31, 44};
    std::normal_distribution<double> g;
    SparseSignal x;
    x.n = 64;
    for (Index i : v) x.entries.emplace_back(i, cplx{g(rng), g(rng)});
    const auto w = support_of(autocorrelation(x), 0.0);
    CHECK(w.elems == kPaperW);
}

TEST_CASE("power_spectrum examples") {
    CHECK(power_spectrum(make(1, {{0, 1.0}}), 2) == std::vector<double>{1.0, 1.0});

    // Hand oracle for x = (1, 1), m = 4: |1 + e^{-i pi f / 2}|^2.
    const auto ps = power_spectrum(make(2, {{0, 1.0}, {1, 1.0}}), 4);
    REQUIRE(ps.size() == 4);
    CHECK(ps[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(ps[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ps[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ps[3] == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(power_spectrum(make(4, {{0, 1.0}}), 7), DimensionError);
}

TEST_CASE("power_spectrum equals the DFT of the symmetrized autocorrelation") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const Index n = 32 + 16 * rep;
        const SparseSignal x = random_signal(n, 6, rng);
        const auto a = autocorrelation(x);
        const Index m = 2 * n;
        std::vector<cplx> sym(static_cast<std::size_t>(m), cplx{0.0, 0.0});
        sym[0] = a.values[0];
        for (Index d = 1; d < n; ++d) {
            sym[static_cast<std::size_t>(d)] = std::conj(a.values[static_cast<std::size_t>(d)]);
            sym[static_cast<std::size_t>(m - d)] = a.values[static_cast<std::size_t>(d)];
        }
        const auto spec = naive_dft(sym);
        const auto ps = power_spectrum(x, m);
        double scale = 0.0;
        for (double v : ps) scale = std::max(scale, v);
        for (Index f = 0; f < m; ++f)
            CHECK(std::abs(ps[static_cast<std::size_t>(f)] - spec[static_cast<std::size_t>(f)].real()) <=
                  1e-10 * std::max(1.0, scale));
    }
}

TEST_CASE("support_of thresholding") {
    Autocorrelation a{4, {{5.0, 0.0}, {0.1, 0.0}, {0.0, 0.0}, {2.0, 0.0}}};
    CHECK(support_of(a, 0.5).elems == std::vector<Index>{0, 3});
    Autocorrelation b{3, {{14.0, 0.0}, {8.0, 0.0}, {3.0, 0.0}}};
    CHECK(support_of(b, 0.0).elems == std::vector<Index>{0, 1, 2});
    Autocorrelation zero{3, {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}};
    CHECK_THROWS_AS(support_of(zero, 0.0), EmptyMeasurement);
}

TEST_CASE("distance_set examples") {
    CHECK(distance_set(SupportSet{{2, 5, 13, 31, 44}}).elems == kPaperW);
    CHECK(distance_set(SupportSet{{0}}).elems == std::vector<Index>{0});
    CHECK(distance_set(SupportSet{{0, 9}}).elems == std::vector<Index>{0, 9});
}

TEST_CASE("canonicalize shifts, flips and fixes the phase") {
    const auto c = canonicalize(make(4, {{2, 1.0}, {3, 2.0}}));
    REQUIRE(c.entries.size() == 2);
    CHECK(c.entries[0].first == 0);
    CHECK(c.entries[1].first == 1);
    CHECK(std::abs(c.entries[0].second - cplx{1.0, 0.0}) <= 1e-12);
    CHECK(std::abs(c.entries[1].second - cplx{2.0, 0.0}) <= 1e-12);

    const auto fwd = canonicalize(make(3, {{0, 1.0}, {1, 2.0}, {2, 3.0}}));
    const auto rev = canonicalize(make(3, {{0, 3.0}, {1, 2.0}, {2, 1.0}}));
    REQUIRE(fwd.entries.size() == rev.entries.size());
    for (std::size_t i = 0; i < fwd.entries.size(); ++i) {
        CHECK(fwd.entries[i].first == rev.entries[i].first);
        CHECK(std::abs(fwd.entries[i].second - rev.entries[i].second) <= 1e-12);
    }
}

TEST_CASE("canonicalize is constant under global phase") {
    const SparseSignal x = make(2, {{0, cplx{0.0, 1.0}}, {1, cplx{0.0, 2.0}}});
    const auto ref = canonicalize(x);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    for (int rep = 0; rep < 20; ++rep) {
        const double phi = u(rng);
        const auto rotated = canonicalize(scale(x, cplx{std::cos(phi), std::sin(phi)}));
        REQUIRE(rotated.entries.size() == ref.entries.size());
        for (std::size_t i = 0; i < ref.entries.size(); ++i) {
            CHECK(rotated.entries[i].first == ref.entries[i].first);
            CHECK(std::abs(rotated.entries[i].second - ref.entries[i].second) <= 1e-9);
        }
    }
}

TEST_CASE("equivalent under the trivial ambiguities") {
    std::mt19937_64 rng(5);
    const SparseSignal x = random_signal(64, 5, rng);
    CHECK(equivalent(x, shift(x, 7), 1e-6));
    CHECK(equivalent(x, scale(conj_flip(x), cplx{std::cos(1.3), std::sin(1.3)}), 1e-6));
    CHECK_FALSE(equivalent(make(2, {{0, 1.0}, {1, 2.0}}), make(2, {{0, 1.0}, {1, 2.1}}), 1e-3));
    CHECK_THROWS_AS(equivalent(make(2, {{0, 1.0}}), make(3, {{0, 1.0}}), 1e-3), DimensionError);
}

TEST_CASE("is_aperiodic_support") {
    CHECK(is_aperiodic_support(SupportSet{{0, 1, 3}}));
    CHECK_FALSE(is_aperiodic_support(SupportSet{{0, 2, 4}}));
    CHECK_FALSE(is_aperiodic_support(SupportSet{{0, 1, 2, 3, 4}}));
    CHECK_FALSE(is_aperiodic_support(SupportSet{{0, 5}}));
}

TEST_CASE("autocorrelation is invariant on the equivalence orbit") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const SparseSignal x = random_signal(128, 6, rng);
        const auto a = autocorrelation(x);
        const auto variants = {shift(x, 11), conj_flip(x),
                               scale(x, cplx{std::cos(0.7), std::sin(0.7)})};
        for (const auto& y : variants) {
            const auto b = autocorrelation(y);
            for (std::size_t i = 0; i < a.values.size(); ++i)
                CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-12 * std::max(1.0, std::abs(a.values[0])));
        }
    }
}

TEST_CASE("canonicalize is idempotent and orbit-constant") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        const SparseSignal x = random_signal(96, 5, rng);
        const auto ref = canonicalize(x);
        const auto again = canonicalize(ref);
        REQUIRE(again.entries.size() == ref.entries.size());
        for (std::size_t i = 0; i < ref.entries.size(); ++i)
            CHECK(std::abs(again.entries[i].second - ref.entries[i].second) <= 1e-9);

        for (Index sh : {1, 5, 20}) {
            for (int flip = 0; flip < 2; ++flip) {
                SparseSignal y = shift(x, sh);
                if (flip) y = conj_flip(y);
                y = scale(y, cplx{std::cos(2.1), std::sin(2.1)});
                const auto c = canonicalize(y);
                REQUIRE(c.entries.size() == ref.entries.size());
                for (std::size_t i = 0; i < ref.entries.size(); ++i) {
                    CHECK(c.entries[i].first == ref.entries[i].first);
                    CHECK(std::abs(c.entries[i].second - ref.entries[i].second) <= 1e-8);
                }
            }
        }
    }
}

TEST_CASE("distance_set matches the noiseless autocorrelation support") {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 200; ++rep) {
        const SparseSignal x = random_signal(256, 6, rng);
        std::vector<Index> idx;
        for (const auto& [i, v] : x.entries) idx.push_back(i);
        const auto w = distance_set(canonical_orientation(idx));
        CHECK(support_of(autocorrelation(x), 0.0).elems == w.elems);
    }
}

TEST_CASE("a_0 equals the squared signal norm") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 50; ++rep) {
        const SparseSignal x = random_signal(200, 8, rng);
        const auto a = autocorrelation(x);
        CHECK(a.values[0].real() == doctest::Approx(x.norm2() * x.norm2()).epsilon(1e-12));
        CHECK(a.values[0].imag() == 0.0);
    }
}
