#include "sseq/periodic.hpp"

#include <algorithm>
#include <sstream>

#include "sseq/dsl.hpp"
#include "sseq/rational.hpp"

namespace sseq {

void PeriodicPattern::validate() const {
    if (period_stem < 1)
        throw Error(ErrorKind::InvalidParams, "pattern period must advance the stem");
    for (const PatternClass& cls : classes)
        if (cls.stem_off < 0 || cls.stem_off >= period_stem)
            throw Error(ErrorKind::InvalidParams,
                        "pattern class stem offset " + std::to_string(cls.stem_off) +
                            " outside [0," + std::to_string(period_stem) + ")");
    for (const Line& line : lines) {
        for (const End& end : {line.a, line.b}) {
            if (end.class_id >= classes.size())
                throw Error(ErrorKind::UnknownClass, "pattern line endpoint out of range");
            if (end.period_delta != 0 && end.period_delta != 1)
                throw Error(ErrorKind::InvalidParams, "pattern lines may reach one period ahead");
        }
    }
}

PeriodicPattern c2_periodic_pattern() {
    PeriodicPattern p;
    p.period_stem = 8;
    p.period_fil = 4;
    // Offsets are relative to (8k, 4k); the band slots of
    // (-3/2 <= 0) allow filtrations {floor(n/2) - 1, floor(n/2)} per stem.
    // Class count per stem residue is log2 of the K(1)-local Moore orders.
    auto cls = [&p](std::int64_t n, std::int64_t s, int index) {
        p.classes.push_back({n, s, index, {}});
        return p.classes.size() - 1;
    };
    std::size_t c0_bot = cls(0, -1, 0);   // image-of-j family class on the bottom cell
    std::size_t c0_top = cls(0, 0, 0);    // top-cell copy of the tower top one stem back
    std::size_t c1_low = cls(1, -1, 0);   // Z/4 generator (top-cell copy)
    std::size_t c1_mid = cls(1, 0, 0);    // 2 times the Z/4 generator
    std::size_t c1_eta = cls(1, 0, 1);    // eta multiple of the stem-0 bottom class
    std::size_t c2_low = cls(2, 0, 0);    // Z/4 generator
    std::size_t c2_mid = cls(2, 1, 0);    // 2 times the Z/4 generator
    std::size_t c2_eta = cls(2, 1, 1);    // eta^2 multiple
    cls(3, 0, 0);  // second Z/2 in the stem-3 pair; carries no line
    std::size_t c3_top = cls(3, 1, 0);
    std::size_t c4 = cls(4, 2, 0);
    std::size_t c7 = cls(7, 3, 0);

    auto line = [&p](std::size_t a, std::size_t b, const char* label, int delta_b = 0) {
        p.lines.push_back({{a, 0}, {b, delta_b}, std::string(label)});
    };
    line(c1_low, c1_mid, "2");  // the two 2-extensions, one per Z/4
    line(c2_low, c2_mid, "2");
    line(c0_bot, c1_eta, "eta");
    line(c1_eta, c2_eta, "eta");
    line(c1_low, c2_low, "eta");
    line(c2_low, c3_top, "eta");
    line(c3_top, c4, "eta");
    line(c7, c0_top, "eta", 1);  // reaches into the next period
    p.validate();
    return p;
}

Chart tile(const PeriodicPattern& pattern, Bidegree base, std::int64_t stem_min,
           std::int64_t stem_max) {
    pattern.validate();
    if (stem_max < stem_min) throw Error(ErrorKind::EmptyRange, "empty stem range");
    Chart chart(Grading::adams());

    // Period copies that can reach [stem_min, stem_max].
    std::int64_t k_min = (stem_min - base.stem - (pattern.period_stem - 1));
    k_min = k_min >= 0 ? k_min / pattern.period_stem
                       : -((-k_min + pattern.period_stem - 1) / pattern.period_stem);
    std::int64_t k_max = (stem_max - base.stem) / pattern.period_stem + 1;

    std::map<std::pair<std::int64_t, std::size_t>, ClassRef> placed;  // (period, class id)
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        for (std::size_t id = 0; id < pattern.classes.size(); ++id) {
            const auto& pc = pattern.classes[id];
            Bidegree pos{base.stem + pc.stem_off + k * pattern.period_stem,
                         base.filtration + pc.fil_off + k * pattern.period_fil};
            if (pos.stem < stem_min || pos.stem > stem_max) continue;
            ClassOptions opts;
            opts.display_options = pc.display_options;
            placed[{k, id}] = chart.add_class(pos, std::move(opts));
        }
    }
    for (std::int64_t k = k_min; k <= k_max; ++k) {
        for (const PeriodicPattern::Line& line : pattern.lines) {
            auto a = placed.find({k + line.a.period_delta, line.a.class_id});
            auto b = placed.find({k + line.b.period_delta, line.b.class_id});
            if (a == placed.end() || b == placed.end()) continue;
            chart.add_structline(a->second, b->second, line.label);
        }
    }
    chart.seal();
    return chart;
}

Chart cofiber_overlay(const Chart& chart_a, std::int64_t dstem, std::int64_t dfil,
                      const Chart& chart_c) {
    if (chart_a.grading() != chart_c.grading())
        throw Error(ErrorKind::UnsupportedChart, "overlay needs equal gradings");
    Chart shifted_a = chart_a.shifted(dstem, dfil);
    Chart out(chart_c.grading(), chart_c.strict_degree() && chart_a.strict_degree());

    auto copy_part = [&out](const Chart& part, const char* origin) {
        std::map<ClassRef, ClassRef> remap;
        for (const ChartClass* cls : part.classes()) {
            ClassOptions opts;
            opts.name = cls->name;
            opts.tag = cls->tag;
            opts.display_options = cls->generations.front().display_options;
            opts.display_options["origin"] = origin;
            remap[cls->ref] = out.add_class(cls->ref.position, std::move(opts));
        }
        for (const StructLine& line : part.structlines())
            out.add_structline(remap.at(line.a), remap.at(line.b), line.label,
                               line.born_page);
        return remap;
    };
    copy_part(chart_c, "quot");
    copy_part(shifted_a, "sub");
    out.seal();
    return out;
}

std::map<std::int64_t, int> band_census(const Chart& chart, const VlParams& p,
                                        std::int64_t stem_min, std::int64_t stem_max) {
    if (!chart.sealed()) throw Error(ErrorKind::Sealed, "band_census requires a sealed chart");
    std::map<std::int64_t, int> census;
    for (const ChartClass* cls : chart.classes()) {
        if (!cls->permanent()) continue;
        std::int64_t n = cls->ref.position.stem;
        if (n < stem_min || n > stem_max) continue;
        if (region(p, n, cls->ref.position.filtration) == Region::InBand) ++census[n];
    }
    return census;
}

std::string PeriodicPattern::to_sseq() const {
    validate();
    std::ostringstream out;
    out << "# period (" << period_stem << "," << period_fil << ")\n";
    Chart chart(Grading::adams());
    std::vector<ClassRef> refs;
    std::vector<std::optional<ClassRef>> ghosts(classes.size());
    for (const PatternClass& pc : classes) {
        ClassOptions opts;
        opts.display_options = pc.display_options;
        refs.push_back(chart.add_class({pc.stem_off, pc.fil_off}, std::move(opts)));
    }
    auto ghost_of = [&](std::size_t id) {
        if (!ghosts[id])
            ghosts[id] = chart.add_class({classes[id].stem_off + period_stem,
                                          classes[id].fil_off + period_fil});
        return *ghosts[id];
    };
    for (const Line& line : lines) {
        ClassRef a = line.a.period_delta ? ghost_of(line.a.class_id) : refs[line.a.class_id];
        ClassRef b = line.b.period_delta ? ghost_of(line.b.class_id) : refs[line.b.class_id];
        chart.add_structline(a, b, line.label);
    }
    chart.seal();
    out << serialize(chart);
    return out.str();
}

PeriodicPattern PeriodicPattern::from_sseq(const std::string& text) {
    // Header comment first, then a plain chart whose classes at stems
    // >= period_stem are ghosts standing for next-period line endpoints.
    auto eol = text.find('\n');
    std::string header = eol == std::string::npos ? text : text.substr(0, eol);
    PeriodicPattern pattern;
    std::string squeezed;
    for (char c : header)
        if (c != ' ' && c != '\t') squeezed.push_back(c);
    bool ok = false;
    if (squeezed.rfind("#period(", 0) == 0 && squeezed.back() == ')') {
        std::string body = squeezed.substr(8, squeezed.size() - 9);
        auto comma = body.find(',');
        if (comma != std::string::npos) {
            try {
                pattern.period_stem = Rational::parse(body.substr(0, comma)).num();
                pattern.period_fil = Rational::parse(body.substr(comma + 1)).num();
                ok = true;
            } catch (const Error&) {
            }
        }
    }
    if (!ok)
        throw Error(ErrorKind::Syntax, "pattern file needs a '# period (dn,ds)' header",
                    SourceSpan{1, 1, static_cast<int>(header.size())});
    Chart chart = parse(text);

    std::map<ClassRef, std::pair<std::size_t, int>> ends;  // ref -> (class id, delta)
    for (const ChartClass* cls : chart.classes()) {
        if (cls->ref.position.stem < pattern.period_stem) {
            ends[cls->ref] = {pattern.classes.size(), 0};
            pattern.classes.push_back({cls->ref.position.stem, cls->ref.position.filtration,
                                       cls->ref.index,
                                       cls->generations.front().display_options});
        }
    }
    for (const ChartClass* cls : chart.classes()) {
        if (cls->ref.position.stem < pattern.period_stem) continue;
        Bidegree folded{cls->ref.position.stem - pattern.period_stem,
                        cls->ref.position.filtration - pattern.period_fil};
        auto it = ends.find(ClassRef{folded, cls->ref.index});
        if (it == ends.end())
            throw Error(ErrorKind::UnknownClass,
                        "ghost class " + to_string(cls->ref) +
                            " does not fold onto a fundamental class");
        ends[cls->ref] = {it->second.first, 1};
    }
    for (const StructLine& line : chart.structlines()) {
        auto a = ends.find(line.a);
        auto b = ends.find(line.b);
        if (a == ends.end() || b == ends.end())
            throw Error(ErrorKind::UnknownClass, "pattern line endpoint outside the pattern");
        pattern.lines.push_back({{a->second.first, a->second.second},
                                 {b->second.first, b->second.second},
                                 line.label});
    }
    pattern.validate();
    return pattern;
}

}  // namespace sseq
