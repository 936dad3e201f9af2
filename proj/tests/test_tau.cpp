#include <doctest.h>

#include <algorithm>
#include <random>

#include "sseq/dsl.hpp"
#include "sseq/periodic.hpp"
#include "sseq/tau.hpp"
#include "support/gen.hpp"
#include "support/tau_props.hpp"

using namespace sseq;

namespace {

/// Independent oracle for Ctau^k tensor (one cyclic summand): models the
/// summand as an explicit basis of tau-powers over a weight window and
/// reads coker and ker of tau^k off the one-dimensional weight slices.
/// Only weights >= generator.weight - depth are reported, far above the
/// truncation edge of the window.
BigradedDims oracle_dims(const TauSummand& s, int k, int depth) {
    BigradedDims dims;
    const std::int64_t n = s.generator.stem;
    const std::int64_t t0 = s.generator.weight;
    const int window = depth + k + 8;

    auto has_elem = [&](std::int64_t w) {
        if (w > t0 || w < t0 - window) return false;
        if (s.is_free()) return true;
        return w > t0 - s.torsion;
    };
    // tau^k applied to the basis element of weight w is the basis element
    // of weight w - k, unless torsion truncates it to zero.
    auto maps_to_nonzero = [&](std::int64_t w) {
        if (!has_elem(w)) return false;
        if (s.is_free()) return true;
        return (w - k) > t0 - s.torsion;
    };

    for (std::int64_t b = t0 - depth; b <= t0; ++b) {
        bool target = has_elem(b);
        bool source = has_elem(b + k);
        bool onto = source && maps_to_nonzero(b + k);
        if (target && !onto) ++dims[{n, b}];        // cokernel slice
        if (source && !maps_to_nonzero(b + k)) ++dims[{n + 1, b}];  // kernel slice
    }
    return dims;
}

Chart two_class_d2_chart() {
    return parse("grading adams\nclass (1,0)\nclass (0,2)\nd 2 (1,0,0) (0,2,0)\n");
}

}  // namespace

TEST_CASE("empty chart gives the empty module") {
    Chart chart;
    chart.seal();
    CHECK(chart_to_tau(chart).summands.empty());
}

TEST_CASE("one permanent class gives one free summand") {
    Chart chart(Grading::adams());
    chart.add_class({0, 0});
    chart.seal();
    TauModule m = chart_to_tau(chart);
    REQUIRE(m.summands.size() == 1);
    CHECK(m.summands[0] == TauSummand{{0, 0}, 0});
}

TEST_CASE("the d2 chart gives a single torsion summand at the target") {
    TauModule m = chart_to_tau(two_class_d2_chart());
    REQUIRE(m.summands.size() == 1);
    CHECK(m.summands[0] == TauSummand{{0, 2}, 1});

    BigradedDims dims = tensor_with_ctau(m, 1);
    BigradedDims expected{{{0, 2}, 1}, {{1, 1}, 1}};
    CHECK(dims == expected);
}

TEST_CASE("multi-generation charts are unsupported") {
    Chart chart = parse(
        "grading adams\nclass (1,0)\nclass (0,2)\nd 2 (1,0,0) (0,2,0)\n"
        "replaceclass (0,2,0) page=2\n");
    try {
        chart_to_tau(chart);
        FAIL("expected UnsupportedChart");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedChart);
    }
}

TEST_CASE("non-Adams charts are unsupported") {
    Chart chart(Grading::serre_cohomological());
    chart.add_class({0, 0});
    chart.seal();
    CHECK_THROWS_AS(chart_to_tau(chart), Error);
}

TEST_CASE("free summand tensors to a height-k tau tower") {
    TauModule m{{TauSummand{{3, 7}, 0}}, std::nullopt};
    BigradedDims one = tensor_with_ctau(m, 1);
    CHECK(one == BigradedDims{{{3, 7}, 1}});
    BigradedDims three = tensor_with_ctau(m, 3);
    CHECK(three == BigradedDims{{{3, 7}, 1}, {{3, 6}, 1}, {{3, 5}, 1}});
}

TEST_CASE("torsion summand at k=1 shows the generator and the boundary slot") {
    for (int r = 1; r <= 4; ++r) {
        TauModule m{{TauSummand{{5, 9}, r}}, std::nullopt};
        BigradedDims dims = tensor_with_ctau(m, 1);
        BigradedDims expected{{{5, 9}, 1}, {{6, 9 - r}, 1}};
        CHECK(dims == expected);
    }
}

TEST_CASE("torsion summand at k >= r has full width on both sides") {
    for (int r = 1; r <= 3; ++r) {
        for (int k = r; k <= r + 3; ++k) {
            TauModule m{{TauSummand{{0, 0}, r}}, std::nullopt};
            BigradedDims dims = tensor_with_ctau(m, k);
            int stem0 = 0, stem1 = 0;
            for (const auto& [sw, dim] : dims) {
                if (sw.stem == 0) stem0 += dim;
                if (sw.stem == 1) stem1 += dim;
            }
            CHECK(stem0 == r);
            CHECK(stem1 == r);
            CHECK(stem0 + stem1 == 2 * r);
            if (k == r) {
                CHECK(dims.count({0, 0}) == 1);
                CHECK(dims.count({1, -r}) == 1);  // both torsion generators present
            }
        }
    }
}

TEST_CASE("tensor matches the summand oracle") {
    std::mt19937_64 rng(1311);
    for (int trial = 0; trial < 200; ++trial) {
        TauSummand s{{testgen::pick(rng, -5, 8), testgen::pick(rng, -4, 12)},
                     testgen::chance(rng, 0.5) ? 0 : testgen::pick(rng, 1, 5)};
        int k = testgen::pick(rng, 1, 6);
        int depth = k + std::max(s.torsion, 1) + 3;
        BigradedDims got = tensor_with_ctau(TauModule{{s}, std::nullopt}, k);
        BigradedDims expected = oracle_dims(s, k, depth);
        // the oracle reports only weights above its window edge
        for (auto it = got.begin(); it != got.end();) {
            if (it->first.weight < s.generator.weight - depth)
                it = got.erase(it);
            else
                ++it;
        }
        CHECK(got == expected);
    }
}

TEST_CASE("tensor is additive over summands") {
    std::mt19937_64 rng(1312);
    for (int trial = 0; trial < 50; ++trial) {
        TauModule a, b;
        for (int i = testgen::pick(rng, 0, 4); i > 0; --i)
            a.summands.push_back(TauSummand{{testgen::pick(rng, -3, 6), testgen::pick(rng, 0, 9)},
                                            testgen::pick(rng, 0, 4)});
        for (int i = testgen::pick(rng, 0, 4); i > 0; --i)
            b.summands.push_back(TauSummand{{testgen::pick(rng, -3, 6), testgen::pick(rng, 0, 9)},
                                            testgen::pick(rng, 0, 4)});
        TauModule both;
        both.summands = a.summands;
        both.summands.insert(both.summands.end(), b.summands.begin(), b.summands.end());
        int k = testgen::pick(rng, 1, 5);
        BigradedDims da = tensor_with_ctau(a, k);
        BigradedDims db = tensor_with_ctau(b, k);
        BigradedDims dboth = tensor_with_ctau(both, k);
        for (const auto& [sw, dim] : db) da[sw] += dim;
        CHECK(da == dboth);
    }
}

TEST_CASE("bockstein differentials invert the dictionary on the d2 chart") {
    TauModule m = chart_to_tau(two_class_d2_chart());
    auto diffs = bockstein_differentials(m);
    REQUIRE(diffs.size() == 1);
    CHECK(diffs[0].page == 2);
    CHECK(diffs[0].source == Bidegree{1, 0});
    CHECK(diffs[0].target == Bidegree{0, 2});
}

TEST_CASE("all-free modules have no bocksteins") {
    TauModule m{{TauSummand{{0, 0}, 0}, TauSummand{{2, 5}, 0}}, std::nullopt};
    CHECK(bockstein_differentials(m).empty());
}

TEST_CASE("bocksteins are additive with one page per torsion order") {
    TauModule m{{TauSummand{{0, 2}, 1}, TauSummand{{4, 9}, 3}}, std::nullopt};
    auto diffs = bockstein_differentials(m);
    REQUIRE(diffs.size() == 2);
    CHECK(diffs[0].page == 2);
    CHECK(diffs[1].page == 4);
}

TEST_CASE("invert_tau_filtration reads free generators only") {
    TauModule single{{TauSummand{{0, 0}, 0}}, std::nullopt};
    CHECK(invert_tau_filtration(single, 0) == std::multiset<std::int64_t>{0});

    TauModule torsion_only{{TauSummand{{3, 5}, 2}}, std::nullopt};
    CHECK(invert_tau_filtration(torsion_only, 3).empty());

    TauModule mixed{{TauSummand{{7, 10}, 0}, TauSummand{{7, 12}, 0}, TauSummand{{7, 9}, 1}},
                    std::nullopt};
    CHECK(invert_tau_filtration(mixed, 7) == std::multiset<std::int64_t>{3, 5});
}

TEST_CASE("classify distinguishes sources targets and survivors") {
    Chart chart = parse(
        "grading adams\nclass (0,0)\nclass (1,0)\nclass (0,2)\nd 2 (1,0,0) (0,2,0)\n");
    TauModule m = chart_to_tau(chart);
    CHECK(classify(m, chart, ClassRef{{0, 0}, 0}) == ClassFate::PermanentCycle);
    CHECK(classify(m, chart, ClassRef{{0, 2}, 0}) == ClassFate::EventualBoundary);
    CHECK(classify(m, chart, ClassRef{{1, 0}, 0}) == ClassFate::TransientSource);
    CHECK_THROWS_AS(classify(m, chart, ClassRef{{9, 9}, 0}), Error);
}

TEST_CASE("classify never reports EventualBoundary for a free generator") {
    std::mt19937_64 rng(1313);
    for (int trial = 0; trial < 60; ++trial) {
        Chart chart = testgen::random_chart(rng);
        TauModule m = chart_to_tau(chart);
        for (const ChartClass* cls : chart.classes())
            if (cls->permanent()) {
                bool is_target = false;
                for (const Differential& d : chart.differentials())
                    if (d.target == cls->ref) is_target = true;
                if (!is_target)
                    CHECK(classify(m, chart, cls->ref) == ClassFate::PermanentCycle);
            }
    }
}

TEST_CASE("E2 recovery on random charts") {
    std::mt19937_64 rng(1314);
    for (int trial = 0; trial < 300; ++trial) {
        Chart chart = testgen::random_chart(rng);
        CHECK(testprops::e2_recovery_holds(chart));
    }
}

TEST_CASE("bockstein round trip on random charts") {
    std::mt19937_64 rng(1315);
    for (int trial = 0; trial < 300; ++trial) {
        Chart chart = testgen::random_chart(rng);
        CHECK(testprops::bockstein_roundtrip_holds(chart));
    }
}

TEST_CASE("LES rank bookkeeping holds for towers over random modules") {
    std::mt19937_64 rng(1316);
    for (int trial = 0; trial < 100; ++trial) {
        TauModule m;
        for (int i = testgen::pick(rng, 0, 6); i > 0; --i)
            m.summands.push_back(TauSummand{{testgen::pick(rng, -4, 8), testgen::pick(rng, -2, 10)},
                                            testgen::chance(rng, 0.4) ? 0 : testgen::pick(rng, 1, 4)});
        for (int k = 1; k <= 5; ++k) CHECK(testprops::les_exactness_holds(m, k));
    }
}

TEST_CASE("tower dims in the generator stem grow monotonically, then freeze") {
    // At a fixed bidegree in a summand's own stem, Ctau^k dims never
    // decrease with k and are constant once k reaches the distance below
    // the generator plus the torsion order. (The boundary classes in the
    // next stem march down in weight with k, so no such statement holds
    // there; the annihilator test above pins that side.)
    std::mt19937_64 rng(1317);
    for (int trial = 0; trial < 100; ++trial) {
        TauSummand s{{testgen::pick(rng, -3, 6), testgen::pick(rng, -2, 9)},
                     testgen::chance(rng, 0.4) ? 0 : testgen::pick(rng, 1, 4)};
        TauModule m{{s}, std::nullopt};
        const std::int64_t t0 = s.generator.weight;
        const int max_drop = 3;
        const int k_hi = max_drop + std::max(s.torsion, 1) + 3;
        for (std::int64_t w = t0 - max_drop; w <= t0; ++w) {
            std::vector<int> tower;
            for (int k = 1; k <= k_hi; ++k) {
                BigradedDims dims = tensor_with_ctau(m, k);
                auto it = dims.find({s.generator.stem, w});
                tower.push_back(it == dims.end() ? 0 : it->second);
            }
            for (std::size_t i = 1; i < tower.size(); ++i) CHECK(tower[i - 1] <= tower[i]);
            auto freeze = static_cast<std::size_t>((t0 - w) + std::max(s.torsion, 1));
            for (std::size_t i = freeze; i < tower.size(); ++i)
                CHECK(tower[i] == tower[freeze - 1]);
        }
    }
}

TEST_CASE("tau-torsion annihilator exponents equal the summand order") {
    // tau^(k-1) x != 0 and tau^k x == 0, read off the oracle's weight
    // slices: the generator column has exactly min(k, r) entries.
    for (int r = 1; r <= 5; ++r) {
        TauSummand s{{0, 0}, r};
        for (int k = 1; k <= r + 2; ++k) {
            BigradedDims dims = tensor_with_ctau(TauModule{{s}, std::nullopt}, k);
            int column = 0;
            for (const auto& [sw, dim] : dims)
                if (sw.stem == 0) column += dim;
            CHECK(column == std::min(k, r));
        }
    }
}

TEST_CASE("dump is sorted and canonical") {
    TauModule m{{TauSummand{{2, 5}, 1}, TauSummand{{0, 0}, 0}}, std::nullopt};
    CHECK(m.dump() == "free (0,0)\ntorsion 1 (2,5)\n");
}

TEST_CASE("the band dataset stems 1 mod 8 carry three filtrations in [4k-1, 4k]") {
    Chart chart = tile(c2_periodic_pattern(), Bidegree{0, 0}, 25, 60);
    TauModule module = chart_to_tau(chart);
    for (std::int64_t k = 4; k <= 7; ++k) {
        auto fils = invert_tau_filtration(module, 8 * k + 1);
        CHECK(fils == std::multiset<std::int64_t>{4 * k - 1, 4 * k, 4 * k});
    }
}
