#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "sparsepr/core.hpp"
#include "sparsepr/errors.hpp"
#include "sparsepr/turnpike.hpp"

using namespace sparsepr;

namespace {

const DistanceSet kPaperW{{0, 3, 8, 11, 13, 18, 26, 29, 31, 39, 42}};
const std::vector<Index> kPaperU{0, 3, 11, 29, 42};

SupportSet random_support(Index n, int k, std::mt19937_64& rng) {
    std::vector<Index> idx(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(k));
    std::sort(idx.begin(), idx.end());
    return canonical_orientation(std::move(idx));
}

} // namespace

TEST_CASE("infer_u01") {
    CHECK(infer_u01(kPaperW) == 3);
    CHECK(infer_u01(DistanceSet{{0, 9}}) == 9);
    CHECK_THROWS_AS(infer_u01(DistanceSet{{0}}), TooFewDistances);

    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 50; ++rep) {
        const SupportSet v = random_support(1000, 6, rng);
        CHECK(infer_u01(distance_set(v)) == v.elems[1] - v.elems[0]);
    }
}

TEST_CASE("intersect worked example") {
    CHECK(intersect(kPaperW, {3}).elems == std::vector<Index>{3, 11, 29, 42});
    CHECK(intersect(DistanceSet{{0, 4}}, {4}).elems == std::vector<Index>{4});
    CHECK_THROWS_AS(intersect(kPaperW, {}), DimensionError);
    CHECK_THROWS_AS(intersect(kPaperW, {0}), DimensionError);
}

TEST_CASE("intersection step containment") {
    // {u_{0j} : p <= j <= k-1} is always contained in W intersected with
    // (W + u_{0p}).
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 1000; ++rep) {
        const SupportSet v = random_support(4096, 8, rng);
        const DistanceSet w = distance_set(v);
        for (std::size_t p = 1; p + 1 < v.size(); ++p) {
            const Index u0p = v.elems[p] - v.elems[0];
            const DistanceSet got = intersect(w, {u0p});
            for (std::size_t j = p; j < v.size(); ++j)
                CHECK(got.contains(v.elems[j] - v.elems[0]));
        }
    }
}

TEST_CASE("graph_step on the worked example") {
    const DistanceSet z{{0, 3, 8, 11, 29, 42}};
    // 42 - 11 = 31 is in W and unique within Z, so 11 is a neighbor of 42;
    // 8 is not (42 - 8 = 34 is not a distance).
    const auto neighbors = graph_step(z, kPaperW, 3);
    CHECK(neighbors == std::vector<Index>{0, 3, 11, 29});
    CHECK(std::find(neighbors.begin(), neighbors.end(), 8) == neighbors.end());

    CHECK(graph_step(DistanceSet{{0, 7}}, DistanceSet{{0, 7}}, 0) == std::vector<Index>{0});
    CHECK_THROWS_AS(graph_step(z, kPaperW, 5), GraphStepDeficient);
}

TEST_CASE("graph_step neighbors stay inside the generating support") {
    // Edge soundness: with U subset of Z subset of W, any vertex adjacent to
    // max(W) belongs to U.
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 200; ++rep) {
        const SupportSet v = random_support(2048, 7, rng);
        const DistanceSet w = distance_set(v);
        std::vector<Index> zelems = v.elems;
        for (int extra = 0; extra < 3; ++extra) {
            const Index cand = w.elems[rng() % w.size()];
            if (!std::binary_search(zelems.begin(), zelems.end(), cand)) {
                zelems.push_back(cand);
                std::sort(zelems.begin(), zelems.end());
            }
        }
        std::vector<Index> neighbors;
        try {
            neighbors = graph_step(DistanceSet{zelems}, w, 1);
        } catch (const GraphStepDeficient&) {
            continue;
        }
        for (Index nb : neighbors)
            CHECK(std::binary_search(v.elems.begin(), v.elems.end(), nb));
    }
}

TEST_CASE("recover_support worked example") {
    CHECK(recover_support(kPaperW).elems == kPaperU);
    CHECK(recover_support(DistanceSet{{0}}).elems == std::vector<Index>{0});
}

TEST_CASE("recover_support succeeds on at least 99 percent of random instances") {
    std::mt19937_64 rng(41);
    int ok = 0;
    const int trials = 500;
    for (int rep = 0; rep < trials; ++rep) {
        const SupportSet v = random_support(4096, 10, rng);
        try {
            if (recover_support(distance_set(v)).elems == v.elems) ++ok;
        } catch (const AlgorithmError&) {
        }
    }
    CHECK(ok >= trials * 99 / 100);
}

TEST_CASE("recover_support is deterministic") {
    std::mt19937_64 rng(43);
    const SupportSet v = random_support(4096, 12, rng);
    const DistanceSet w = distance_set(v);
    const auto first = recover_support(w);
    for (int rep = 0; rep < 5; ++rep) CHECK(recover_support(w).elems == first.elems);
}

TEST_CASE("brute_force_turnpike") {
    const auto sols = brute_force_turnpike(kPaperW);
    bool found = false;
    for (const auto& s : sols) found = found || s.elems == kPaperU;
    CHECK(found);

    const auto pair = brute_force_turnpike(DistanceSet{{0, 6}});
    REQUIRE(pair.size() == 1);
    CHECK(pair[0].elems == std::vector<Index>{0, 6});

    DistanceSet big;
    for (Index i = 0; i <= 200; ++i) big.elems.push_back(i);
    CHECK_THROWS_AS(brute_force_turnpike(big), OracleTooLarge);
}

TEST_CASE("brute_force_turnpike solutions are self-consistent") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 40; ++rep) {
        const SupportSet v = random_support(128, 2 + static_cast<int>(rng() % 5), rng);
        const DistanceSet w = distance_set(v);
        const auto sols = brute_force_turnpike(w);
        REQUIRE(!sols.empty());
        bool found = false;
        for (const auto& s : sols) {
            CHECK(distance_set(s).elems == w.elems);
            found = found || s.elems == v.elems;
        }
        CHECK(found);
    }
}

TEST_CASE("successful recoveries agree with the oracle") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 120; ++rep) {
        const SupportSet v = random_support(256, 3 + static_cast<int>(rng() % 6), rng);
        const DistanceSet w = distance_set(v);
        SupportSet got;
        try {
            got = recover_support(w);
        } catch (const AlgorithmError&) {
            continue;
        }
        CHECK(distance_set(got).elems == w.elems);
        const auto sols = brute_force_turnpike(w);
        bool member = false;
        for (const auto& s : sols) member = member || s.elems == got.elems;
        CHECK(member);
    }
}

TEST_CASE("auto width follows the estimated sparsity") {
    CHECK(estimate_sparsity(kPaperW) == 5);
    CHECK(estimate_sparsity(DistanceSet{{0, 4}}) == 2);
    for (int k_est : {3, 5, 10, 100}) {
        const int t = auto_graph_width(k_est);
        CHECK(t >= 1);
        CHECK(t <= std::max(1, k_est - 2));
    }
}
