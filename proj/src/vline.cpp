#include "sseq/vline.hpp"

#include <algorithm>
#include <sstream>

namespace sseq {

namespace {

// construct on demand: file-scope Rational statics in other translation
// units may run their constructors before this one
Rational half() { return Rational(1, 2); }

}  // namespace

VlParams::VlParams(Rational b_, Rational d_, Rational v_, Rational m_, Rational c_, int r_)
    : b(b_), d(d_), v(v_), m(m_), c(c_), r(r_) {
    if (d < b) throw Error(ErrorKind::InvalidParams, "band intercepts need b <= d");
    if (m < Rational(0) || !(m < half()))
        throw Error(ErrorKind::InvalidParams, "slope needs 0 <= m < 1/2");
    if (r < 1) throw Error(ErrorKind::InvalidParams, "torsion bound needs r >= 1");
}

std::string VlParams::str() const {
    std::ostringstream out;
    out << "(" << b.str() << "<=" << d.str() << "," << v.str() << "," << m.str() << ","
        << c.str() << "," << r << ")";
    return out.str();
}

VlParams VlParams::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw Error(ErrorKind::Syntax, "parameter tuple must look like (b<=d,v,m,c,r)");
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 5)
        throw Error(ErrorKind::Syntax, "parameter tuple needs 5 entries (b<=d,v,m,c,r)");
    auto le = parts[0].find("<=");
    if (le == std::string::npos)
        throw Error(ErrorKind::Syntax, "band entry must be b<=d");
    Rational b = Rational::parse(parts[0].substr(0, le));
    Rational d = Rational::parse(parts[0].substr(le + 2));
    Rational v = Rational::parse(parts[1]);
    Rational m = Rational::parse(parts[2]);
    Rational c = Rational::parse(parts[3]);
    Rational r = Rational::parse(parts[4]);
    if (!r.is_integer())
        throw Error(ErrorKind::Syntax, "torsion bound r must be an integer");
    return VlParams(b, d, v, m, c, static_cast<int>(r.num()));
}

VlParams suspend(const VlParams& p, std::int64_t dstem, std::int64_t dfiltration) {
    Rational ds{dstem}, df{dfiltration};
    return VlParams(p.b + df - ds * half(), p.d + df - ds * half(), p.v + ds, p.m,
                    p.c + df - p.m * ds, p.r);
}

VlParams combine_cofiber(const VlParams& pa, const VlParams& pc) {
    if (pa.m != pc.m)
        throw Error(ErrorKind::SlopeMismatch,
                    "cofiber combination needs equal slopes, got " + pa.m.str() + " and " +
                        pc.m.str());
    Rational ra{pa.r}, rc{pc.r};
    Rational b = min(pa.b, pc.b - ra);
    Rational d = max(pa.d, pc.d);
    Rational c = max(pa.c + ra, pc.c);
    Rational v = max(max(pa.v + Rational(1), pc.v), (c - b) / (half() - pa.m));
    Rational floored = max(pa.d, min(pa.d + rc, pc.d)) - pc.b - half();
    std::int64_t r = pa.r + std::max<std::int64_t>(pc.r, floored.floor());
    return VlParams(b, d, v, pa.m, c, static_cast<int>(r));
}

bool dominates(const VlParams& p1, const VlParams& p2) {
    return p1.m == p2.m && p1.b >= p2.b && p1.d <= p2.d && p1.v <= p2.v && p1.c <= p2.c &&
           p1.r <= p2.r;
}

const char* to_string(Region region) {
    switch (region) {
        case Region::AboveBand: return "AboveBand";
        case Region::InBand: return "InBand";
        case Region::Gap: return "Gap";
        case Region::Below: return "Below";
        case Region::OutOfValidity: return "OutOfValidity";
    }
    return "?";
}

Region region(const VlParams& p, std::int64_t n, std::int64_t s) {
    Rational nn{n}, ss{s};
    if (nn < p.v) return Region::OutOfValidity;
    Rational half_line = nn * half();
    if (ss > half_line + p.d) return Region::AboveBand;
    if (ss >= half_line + p.b) return Region::InBand;
    if (ss >= p.m * nn + p.c) return Region::Gap;
    return Region::Below;
}

bool in_torsion_region(const VlParams& p, std::int64_t n, std::int64_t s) {
    Rational nn{n}, ss{s};
    return !(nn < p.v) && ss >= p.m * nn + p.c;
}

std::string RegionReport::str() const {
    std::ostringstream out;
    auto emit = [&out](const char* name, const Condition& cond) {
        out << name << ": " << (cond.passed ? "pass" : "FAIL") << "\n";
        for (const Witness& w : cond.witnesses)
            out << "  witness (" << w.stem << "," << w.filtration << ") " << w.note << "\n";
    };
    emit("condition 1 (torsion bound)", torsion_bound);
    emit("condition 2 (band isomorphism)", band_isomorphism);
    emit("condition 3 (K(1) comparison)", k1_comparison);
    emit("condition 4 (vanishing above band)", vanishing);
    return out.str();
}

RegionReport verify_banded(const Chart& chart, const VlParams& p, std::int64_t stem_min,
                           std::int64_t stem_max, const std::vector<std::uint64_t>& k1_orders) {
    if (!chart.sealed())
        throw Error(ErrorKind::Sealed, "verify_banded requires a sealed chart");
    if (k1_orders.empty())
        throw Error(ErrorKind::InvalidParams, "verify_banded needs a nonempty order table");

    RegionReport report;
    auto fail = [](RegionReport::Condition& cond, std::int64_t n, std::int64_t s,
                   std::string note) {
        cond.passed = false;
        cond.witnesses.push_back({n, s, std::move(note)});
    };
    auto in_scope = [&](std::int64_t n) {
        return n >= stem_min && n <= stem_max && !(Rational(n) < p.v);
    };

    // (4) no class on any page above the top band line
    for (const ChartClass* cls : chart.classes()) {
        std::int64_t n = cls->ref.position.stem;
        std::int64_t s = cls->ref.position.filtration;
        if (!in_scope(n)) continue;
        if (region(p, n, s) == Region::AboveBand)
            fail(report.vanishing, n, s, "class above the top band line");
    }

    // (1) differentials with source in the torsion region must have
    // page <= r + 1 (the chart-level tau^r-torsion bound)
    for (const Differential& d : chart.differentials()) {
        std::int64_t n = d.source.position.stem;
        std::int64_t s = d.source.position.filtration;
        if (!in_scope(n)) continue;
        if (in_torsion_region(p, n, s) && d.page > p.r + 1)
            fail(report.torsion_bound, n, s,
                 "d" + std::to_string(d.page) + " exceeds torsion bound r=" + std::to_string(p.r));
    }

    // (2) no surviving class in the gap between the m-line and the band;
    // (3) per-stem count of surviving band classes against the K(1) orders.
    // Both are checked at associated-graded level; genuine filtered-group
    // isomorphisms are beyond chart data.
    std::map<std::int64_t, int> census;
    for (const ChartClass* cls : chart.classes()) {
        if (!cls->permanent()) continue;
        std::int64_t n = cls->ref.position.stem;
        std::int64_t s = cls->ref.position.filtration;
        if (!in_scope(n)) continue;
        Region where = region(p, n, s);
        if (where == Region::Gap)
            fail(report.band_isomorphism, n, s, "surviving class below the band");
        if (where == Region::InBand) ++census[n];
    }
    for (std::int64_t n = stem_min; n <= stem_max; ++n) {
        if (!in_scope(n)) continue;
        auto residue = static_cast<std::size_t>(((n % static_cast<std::int64_t>(k1_orders.size())) +
                                                 static_cast<std::int64_t>(k1_orders.size())) %
                                                static_cast<std::int64_t>(k1_orders.size()));
        std::uint64_t expected = k1_orders[residue];
        int count = census.count(n) ? census[n] : 0;
        if (count >= 64 || (std::uint64_t{1} << count) != expected)
            fail(report.k1_comparison, n, 0,
                 "2^" + std::to_string(count) + " band classes, expected order " +
                     std::to_string(expected));
    }
    return report;
}

}  // namespace sseq
