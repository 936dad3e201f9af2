#ifndef SSEQ_VLINE_HPP
#define SSEQ_VLINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sseq/chart.hpp"
#include "sseq/rational.hpp"

namespace sseq {

/// Parameter tuple (b <= d, v, m, c, r) of a v1-banded vanishing line:
/// band intercepts b <= d around slope 1/2, range of validity v, a lower
/// line of slope m (< 1/2) and intercept c, and the torsion bound r.
/// All entries are exact rationals except r, which is a positive integer.
struct VlParams {
    Rational b, d, v, m, c;
    int r = 1;

    VlParams(Rational b, Rational d, Rational v, Rational m, Rational c, int r);

    /// Canonical text form "(b<=d,v,m,c,r)" with rationals printed p/q.
    std::string str() const;

    /// Accepts the canonical form with rationals as p/q or decimals.
    static VlParams parse(const std::string& text);

    bool operator==(const VlParams&) const = default;
};

/// Transport along the bigraded suspension by (dstem, dfiltration):
/// b' = b + df - ds/2, d' likewise, c' = c + df - m*ds, v' = v + ds;
/// m and r are unchanged.
VlParams suspend(const VlParams& p, std::int64_t dstem, std::int64_t dfiltration);

/// Parameters for the middle term of a cofiber sequence A -> B -> C from
/// parameters for A and C (equal slopes required):
///   b_B = min(b_A, b_C - r_A)
///   d_B = max(d_A, d_C)
///   c_B = max(c_A + r_A, c_C)
///   v_B = max(v_A + 1, v_C, (c_B - b_B)/(1/2 - m))
///   r_B = r_A + max(r_C, floor(max(d_A, min(d_A + r_C, d_C)) - b_C - 1/2))
VlParams combine_cofiber(const VlParams& pa, const VlParams& pc);

/// p1 is at least as strong a statement as p2: b1 >= b2, d1 <= d2,
/// v1 <= v2, c1 <= c2, r1 <= r2, equal slopes.
bool dominates(const VlParams& p1, const VlParams& p2);

/// Where (n, s) sits relative to the lines of `p`. The torsion region
/// (union of Gap, InBand and AboveBand) is exposed separately as
/// in_torsion_region.
enum class Region { AboveBand, InBand, Gap, Below, OutOfValidity };

const char* to_string(Region region);

Region region(const VlParams& p, std::int64_t n, std::int64_t s);

/// Condition-(1) membership: s >= m*n + c and n >= v.
bool in_torsion_region(const VlParams& p, std::int64_t n, std::int64_t s);

/// Outcome of checking a chart against the four conditions of a v1-banded
/// vanishing line. A failed condition carries at least one witness.
struct RegionReport {
    struct Witness {
        std::int64_t stem = 0;
        std::int64_t filtration = 0;
        std::string note;
    };
    struct Condition {
        bool passed = true;
        std::vector<Witness> witnesses;
    };

    Condition torsion_bound;     // (1) differentials out of the torsion region
    Condition band_isomorphism;  // (2) no surviving class in the gap
    Condition k1_comparison;     // (3) band census matches the K(1)-local orders
    Condition vanishing;         // (4) nothing above the top band line

    bool passed() const {
        return torsion_bound.passed && band_isomorphism.passed && k1_comparison.passed &&
               vanishing.passed;
    }
    std::string str() const;
};

/// Checks the four conditions on stems in [stem_min, stem_max] with
/// n >= v. Conditions (2) and (3) are evaluated at associated-graded
/// (chart) level: survivors in the gap, and 2^(surviving band classes)
/// against k1_orders[n mod k1_orders.size()].
RegionReport verify_banded(const Chart& chart, const VlParams& p, std::int64_t stem_min,
                           std::int64_t stem_max, const std::vector<std::uint64_t>& k1_orders);

}  // namespace sseq

#endif
