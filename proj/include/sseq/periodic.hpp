#ifndef SSEQ_PERIODIC_HPP
#define SSEQ_PERIODIC_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sseq/chart.hpp"
#include "sseq/vline.hpp"

namespace sseq {

/// Repeating chart fragment: fundamental classes with stem offsets in
/// [0, period_stem), structure lines within the fundamental domain or
/// reaching into the next period, and the translation period.
struct PeriodicPattern {
    struct PatternClass {
        std::int64_t stem_off = 0;
        std::int64_t fil_off = 0;
        int index = 0;
        std::map<std::string, std::string> display_options;
    };
    /// Endpoint of a pattern line: a fundamental class, possibly in the
    /// following period copy (period_delta 1).
    struct End {
        std::size_t class_id = 0;
        int period_delta = 0;
    };
    struct Line {
        End a, b;
        std::optional<std::string> label;
    };

    std::vector<PatternClass> classes;
    std::vector<Line> lines;
    std::int64_t period_stem = 1;
    std::int64_t period_fil = 0;

    void validate() const;

    /// DSL text with a "# period (dn,ds)" header. Fundamental classes sit
    /// at their offsets; next-period line endpoints appear as ghost class
    /// lines one period up, which the loader folds back.
    std::string to_sseq() const;
    static PeriodicPattern from_sseq(const std::string& text);
};

/// Built-in period-(8,4) pattern of the v1-periodic band of the mod 2
/// Moore spectrum: 12 permanent classes per period with stem-residue
/// counts (2,3,3,2,1,0,0,1), eta lines between adjacent stems and one
/// multiplication-by-2 extension in each of the stems 1 and 2 mod 8.
/// When tiled from base (0,0), period copy k covers stems 8k..8k+7 with
/// filtrations 4k + offset.
PeriodicPattern c2_periodic_pattern();

/// Translates the fundamental domain by every integer multiple of the
/// period, keeping the classes whose stems land in [stem_min, stem_max];
/// structure lines (including the cross-period ones) connect whenever both
/// endpoints survive the clipping. Returns a sealed Adams chart.
Chart tile(const PeriodicPattern& pattern, Bidegree base, std::int64_t stem_min,
           std::int64_t stem_max);

/// Exactness upper bound on the middle term of a cofiber sequence: the
/// disjoint union of chart_a shifted by (dstem, dfil), marked origin=sub,
/// and chart_c, marked origin=quot. Stacked indices are reassigned, so a
/// position clash cannot happen. Structure lines carry over within each
/// part; no differentials are introduced.
Chart cofiber_overlay(const Chart& chart_a, std::int64_t dstem, std::int64_t dfil,
                      const Chart& chart_c);

/// Stem-by-stem count of classes that survive all pages and lie in the
/// band of `p`. Stems with no such class have no entry.
std::map<std::int64_t, int> band_census(const Chart& chart, const VlParams& p,
                                        std::int64_t stem_min, std::int64_t stem_max);

}  // namespace sseq

#endif
