#ifndef SSEQ_TAU_HPP
#define SSEQ_TAU_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sseq/chart.hpp"

namespace sseq {

/// (stem, weight) coordinates for bigraded module generators. The weight
/// axis is where tau acts: tau has degree (0, -1).
struct StemWeight {
    std::int64_t stem = 0;
    std::int64_t weight = 0;

    auto operator<=>(const StemWeight&) const = default;
};

std::string to_string(StemWeight sw);

/// One cyclic summand over GF(2)[tau]. torsion == 0 means a free summand
/// occupying all weights <= the generator weight; torsion == k >= 1 means
/// a tau^k-torsion summand occupying k consecutive weights downward from
/// the generator.
struct TauSummand {
    StemWeight generator;
    int torsion = 0;

    bool is_free() const { return torsion == 0; }
    auto operator<=>(const TauSummand&) const = default;
};

/// Direct sum of cyclic GF(2)[tau]-summands; the engine's model of
/// bigraded synthetic homotopy.
struct TauModule {
    std::vector<TauSummand> summands;
    std::optional<std::string> label;

    int max_torsion() const;

    /// Canonical text: one summand per line, "free (n,t)" or
    /// "torsion k (n,t)", sorted.
    std::string dump() const;
};

using BigradedDims = std::map<StemWeight, int>;

/// Dictionary from an Adams chart to a tau-module: one free summand per
/// permanent class, one tau^r-torsion summand at the target of each
/// d_{r+1}; differential sources contribute no summand of their own.
/// Rejects non-Adams or multi-generation charts.
TauModule chart_to_tau(const Chart& chart);

/// Bigraded dimensions of Ctau^k tensor M, computed summand-wise from the
/// long exact sequence of S^{0,-k} --tau^k--> S^{0,0} -> Ctau^k.
BigradedDims tensor_with_ctau(const TauModule& module, int k);

struct BocksteinDifferential {
    int page = 2;
    Bidegree source;  // (stem, filtration)
    Bidegree target;

    auto operator<=>(const BocksteinDifferential&) const = default;
};

/// The tau-Bockstein differentials encoded by the torsion summands; the
/// inverse of chart_to_tau on its image.
std::vector<BocksteinDifferential> bockstein_differentials(const TauModule& module);

/// Adams filtrations of all free summands in the stem; torsion summands
/// die under tau-inversion and contribute nothing.
std::multiset<std::int64_t> invert_tau_filtration(const TauModule& module, std::int64_t stem);

enum class ClassFate { PermanentCycle, EventualBoundary, TransientSource };

const char* to_string(ClassFate fate);

/// How the chart class at `ref` behaves under the dictionary: supports a
/// differential (TransientSource), is hit by one (EventualBoundary, the
/// stronger classification of a liftable-but-torsion class), or is a
/// permanent cycle.
ClassFate classify(const TauModule& module, const Chart& chart, ClassRef ref);

}  // namespace sseq

#endif
