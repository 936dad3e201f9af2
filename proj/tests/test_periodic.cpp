#include <doctest.h>

#include <set>

#include "sseq/dsl.hpp"
#include "sseq/k1.hpp"
#include "sseq/periodic.hpp"

using namespace sseq;

namespace {

const VlParams kC2Params{Rational(-3, 2), 1, 25, Rational(1, 5), 5, 3};

std::set<Bidegree> positions_of(const Chart& chart) {
    std::set<Bidegree> out;
    for (const ChartClass* cls : chart.classes()) out.insert(cls->ref.position);
    return out;
}

/// The band fragment around stems 27..33 of the smash product chart:
/// copies of a four-class flash repeating with period (1,2).
Chart y_fragment() {
    PeriodicPattern p;
    p.period_stem = 1;
    p.period_fil = 2;
    p.classes = {{0, -42, 0, {}}, {0, -45, 0, {}}, {0, -48, 0, {}}, {0, -51, 0, {}}};
    return tile(p, Bidegree{0, 0}, 27, 33);
}

}  // namespace

TEST_CASE("tiling the trivial pattern gives an empty chart") {
    PeriodicPattern p;
    p.period_stem = 8;
    p.period_fil = 4;
    Chart chart = tile(p, Bidegree{0, 0}, 0, 100);
    CHECK(chart.empty());
    CHECK(chart.sealed());
}

TEST_CASE("the period-(1,2) fragment reproduces the drawn flash classes") {
    Chart chart = y_fragment();
    std::set<Bidegree> got = positions_of(chart);
    for (Bidegree expected : {Bidegree{27, 12}, Bidegree{28, 14}, Bidegree{29, 13},
                              Bidegree{30, 12}, Bidegree{30, 15}, Bidegree{31, 14},
                              Bidegree{32, 13}, Bidegree{33, 15}})
        CHECK(got.count(expected) == 1);
    // every stem carries one class per orbit
    for (std::int64_t n = 27; n <= 33; ++n) {
        int count = 0;
        for (Bidegree pos : got)
            if (pos.stem == n) ++count;
        CHECK(count == 4);
    }
}

TEST_CASE("the band dataset has twelve classes per period in residue counts 23321001") {
    Chart chart = tile(c2_periodic_pattern(), Bidegree{0, 0}, 25, 40);
    const int expected_by_residue[8] = {2, 3, 3, 2, 1, 0, 0, 1};
    for (std::int64_t n = 25; n <= 40; ++n) {
        int count = 0;
        for (const ChartClass* cls : chart.classes())
            if (cls->ref.position.stem == n) ++count;
        CHECK(count == expected_by_residue[((n % 8) + 8) % 8]);
    }
    CHECK(chart.class_count() == 24);  // two full periods
}

TEST_CASE("the band dataset ships two 2-extensions per period plus eta lines") {
    PeriodicPattern p = c2_periodic_pattern();
    CHECK(p.classes.size() == 12);
    int two_lines = 0, eta_lines = 0, cross = 0;
    for (const auto& line : p.lines) {
        if (line.label == "2") ++two_lines;
        if (line.label == "eta") ++eta_lines;
        if (line.a.period_delta != line.b.period_delta) ++cross;
    }
    CHECK(two_lines == 2);
    CHECK(eta_lines >= 4);
    CHECK(cross == 1);

    // the 2-extensions sit exactly in the stems whose group has a Z/4
    std::set<std::int64_t> two_line_stems;
    for (const auto& line : p.lines)
        if (line.label == "2") {
            CHECK(p.classes[line.a.class_id].stem_off == p.classes[line.b.class_id].stem_off);
            two_line_stems.insert(p.classes[line.a.class_id].stem_off);
        }
    std::set<std::int64_t> z4_residues;
    auto groups = moore_groups();
    for (std::int64_t residue = 0; residue < 8; ++residue) {
        const auto& exps = groups[static_cast<std::size_t>(residue)].group.torsion_exponents;
        if (std::count(exps.begin(), exps.end(), 2) > 0) z4_residues.insert(residue);
    }
    CHECK(two_line_stems == z4_residues);
    CHECK(two_line_stems == std::set<std::int64_t>{1, 2});
}

TEST_CASE("every dataset class lies in the closed band and below the half line") {
    Chart chart = tile(c2_periodic_pattern(), Bidegree{0, 0}, 25, 97);
    for (const ChartClass* cls : chart.classes()) {
        std::int64_t n = cls->ref.position.stem;
        std::int64_t s = cls->ref.position.filtration;
        CHECK(region(kC2Params, n, s) == Region::InBand);
        CHECK(Rational(2 * s) <= Rational(n));  // s <= n/2
        CHECK(Rational(2 * s) >= Rational(n) - 3);  // s >= n/2 - 3/2
    }
}

TEST_CASE("cross-period eta lines connect in the tiled chart") {
    Chart chart = tile(c2_periodic_pattern(), Bidegree{0, 0}, 25, 40);
    bool found = false;
    for (const StructLine& line : chart.structlines()) {
        if (line.a.position.stem == 31 && line.b.position.stem == 32) found = true;
    }
    CHECK(found);
}

TEST_CASE("tile commutes with shift") {
    PeriodicPattern p = c2_periodic_pattern();
    Chart direct = tile(p, Bidegree{3, 1}, 28, 60);
    Chart moved = tile(p, Bidegree{0, 0}, 25, 57).shifted(3, 1);
    CHECK(direct == moved);
}

TEST_CASE("band census counts the surviving band classes per stem") {
    Chart chart = tile(c2_periodic_pattern(), Bidegree{0, 0}, 25, 97);
    auto census = band_census(chart, kC2Params, 25, 97);
    auto orders = moore_orders();
    for (std::int64_t n = 25; n <= 97; ++n) {
        int count = census.count(n) ? census.at(n) : 0;
        CHECK((std::uint64_t{1} << count) == orders[static_cast<std::size_t>(((n % 8) + 8) % 8)]);
    }
}

TEST_CASE("census skips stems outside the validity range") {
    Chart chart = tile(c2_periodic_pattern(), Bidegree{0, 0}, 8, 23);
    auto census = band_census(chart, kC2Params, 8, 23);
    CHECK(census.empty());  // everything is below v = 25
}

TEST_CASE("an above-band survivor is excluded from the census and flagged") {
    Chart chart(Grading::adams());
    chart.add_class({32, 18});  // above 32/2 + 1
    chart.seal();
    auto census = band_census(chart, kC2Params, 25, 40);
    CHECK(census.empty());
    auto report = verify_banded(chart, kC2Params, 32, 32, {1, 1, 1, 1, 1, 1, 1, 1});
    CHECK_FALSE(report.vanishing.passed);
}

TEST_CASE("overlay is the marked union with reassigned indices") {
    Chart base = y_fragment();
    Chart overlay = cofiber_overlay(base, 1, 1, base);
    CHECK(overlay.class_count() == 2 * base.class_count());

    // unmoved copy keeps the original positions, shifted copy moves (1,1)
    std::set<Bidegree> got = positions_of(overlay);
    for (Bidegree pos : positions_of(base)) {
        CHECK(got.count(pos) == 1);
        CHECK(got.count(pos + Bidegree{1, 1}) == 1);
    }

    // marks distinguish the two parts
    int subs = 0, quots = 0;
    for (const ChartClass* cls : overlay.classes()) {
        const auto& opts = cls->generations.front().display_options;
        auto it = opts.find("origin");
        REQUIRE(it != opts.end());
        if (it->second == "sub") ++subs;
        if (it->second == "quot") ++quots;
    }
    CHECK(subs == static_cast<int>(base.class_count()));
    CHECK(quots == static_cast<int>(base.class_count()));
}

TEST_CASE("overlay cardinality is additive at every bidegree") {
    Chart base = y_fragment();
    Chart overlay = cofiber_overlay(base, 1, 1, base);
    std::map<Bidegree, int> counts;
    for (const ChartClass* cls : overlay.classes()) ++counts[cls->ref.position];
    for (const auto& [pos, count] : counts) {
        int expected = 0;
        if (base.multiplicity(pos) > 0) expected += base.multiplicity(pos);
        Bidegree unshifted = pos - Bidegree{1, 1};
        if (base.multiplicity(unshifted) > 0) expected += base.multiplicity(unshifted);
        CHECK(count == expected);
    }
}

TEST_CASE("overlay with an empty quotient is just the shifted chart") {
    Chart base = y_fragment();
    Chart empty(Grading::adams());
    empty.seal();
    Chart overlay = cofiber_overlay(base, 1, 1, empty);
    CHECK(overlay.class_count() == base.class_count());
    CHECK(positions_of(overlay) == positions_of(base.shifted(1, 1)));
}

TEST_CASE("the flash overlays rebuild the published dot diagrams") {
    // First overlay: the smash fragment against itself shifted by (1,1);
    // black dots of the first upper-bound figure are the shifted copy,
    // white dots the unmoved one.
    Chart y = y_fragment();
    Chart y2_bound = cofiber_overlay(y, 1, 1, y);
    std::set<Bidegree> sub_positions, quot_positions;
    for (const ChartClass* cls : y2_bound.classes()) {
        if (cls->generations.front().display_options.at("origin") == "sub")
            sub_positions.insert(cls->ref.position);
        else
            quot_positions.insert(cls->ref.position);
    }
    for (Bidegree filled : {Bidegree{29, 15}, Bidegree{30, 14}, Bidegree{31, 13},
                            Bidegree{31, 16}, Bidegree{32, 15}, Bidegree{33, 14},
                            Bidegree{29, 12}, Bidegree{32, 12}, Bidegree{28, 13}})
        CHECK(sub_positions.count(filled) == 1);
    for (Bidegree open : {Bidegree{28, 14}, Bidegree{29, 13}, Bidegree{30, 12},
                          Bidegree{30, 15}, Bidegree{31, 14}, Bidegree{32, 13}})
        CHECK(quot_positions.count(open) == 1);

    // Second overlay: the first bound shifted by (1,1) over the fragment.
    Chart y3_bound = cofiber_overlay(y2_bound, 1, 1, y);
    std::set<Bidegree> dots, squares;
    for (const ChartClass* cls : y3_bound.classes()) {
        if (cls->generations.front().display_options.at("origin") == "sub")
            dots.insert(cls->ref.position);
        else
            squares.insert(cls->ref.position);
    }
    for (Bidegree square : {Bidegree{28, 14}, Bidegree{29, 13}, Bidegree{30, 12},
                            Bidegree{30, 15}, Bidegree{31, 14}, Bidegree{32, 13},
                            Bidegree{33, 15}})
        CHECK(squares.count(square) == 1);
    for (Bidegree dot : {Bidegree{30, 16}, Bidegree{31, 15}, Bidegree{32, 14},
                         Bidegree{32, 17}, Bidegree{33, 16}, Bidegree{30, 13},
                         Bidegree{29, 14}, Bidegree{31, 13}})
        CHECK(dots.count(dot) == 1);
}

TEST_CASE("pattern text form carries the period header and round trips") {
    PeriodicPattern p = c2_periodic_pattern();
    std::string text = p.to_sseq();
    CHECK(text.rfind("# period (8,4)\n", 0) == 0);
    PeriodicPattern back = PeriodicPattern::from_sseq(text);
    CHECK(back.period_stem == 8);
    CHECK(back.period_fil == 4);
    CHECK(back.classes.size() == p.classes.size());
    CHECK(back.lines.size() == p.lines.size());
    Chart a = tile(p, Bidegree{0, 0}, 24, 48);
    Chart b = tile(back, Bidegree{0, 0}, 24, 48);
    CHECK(a == b);
}

TEST_CASE("patterns with out-of-range offsets are invalid") {
    PeriodicPattern p;
    p.period_stem = 4;
    p.period_fil = 2;
    p.classes = {{5, 0, 0, {}}};
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("pattern files need the period header and foldable ghosts") {
    CHECK_THROWS_AS(PeriodicPattern::from_sseq("grading adams\nclass (0,0)\n"), Error);
    CHECK_THROWS_AS(PeriodicPattern::from_sseq("# period (x,y)\ngrading adams\n"), Error);
    // ghost at (9,4) does not fold onto any fundamental class
    CHECK_THROWS_AS(PeriodicPattern::from_sseq("# period (8,4)\n"
                                               "grading adams\nclass (0,0)\nclass (9,4)\n"
                                               "structline (0,0,0) (9,4,0)\n"),
                    Error);
}
