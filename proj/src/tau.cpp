#include "sseq/tau.hpp"

#include <algorithm>
#include <sstream>

namespace sseq {

std::string to_string(StemWeight sw) {
    return "(" + std::to_string(sw.stem) + "," + std::to_string(sw.weight) + ")";
}

int TauModule::max_torsion() const {
    int out = 0;
    for (const TauSummand& s : summands) out = std::max(out, s.torsion);
    return out;
}

std::string TauModule::dump() const {
    std::vector<TauSummand> sorted = summands;
    std::sort(sorted.begin(), sorted.end());
    std::ostringstream out;
    for (const TauSummand& s : sorted) {
        if (s.is_free())
            out << "free " << to_string(s.generator) << "\n";
        else
            out << "torsion " << s.torsion << " " << to_string(s.generator) << "\n";
    }
    return out.str();
}

TauModule chart_to_tau(const Chart& chart) {
    if (!chart.sealed())
        throw Error(ErrorKind::Sealed, "chart_to_tau requires a sealed chart");
    if (chart.grading().kind != GradingKind::Adams)
        throw Error(ErrorKind::UnsupportedChart, "tau dictionary requires Adams grading");

    TauModule module;
    std::set<ClassRef> sources, targets;
    for (const Differential& d : chart.differentials()) {
        // The dictionary places the source from the torsion data alone, so
        // each stored differential must sit in Adams position even when the
        // chart was built in lax mode.
        Bidegree expected = chart.grading().displacement(d.page);
        if (d.target.position - d.source.position != expected)
            throw Error(ErrorKind::UnsupportedChart,
                        "differential " + to_string(d.source) + " -> " + to_string(d.target) +
                            " is not in Adams position");
        sources.insert(d.source);
        targets.insert(d.target);
    }

    for (const ChartClass* cls : chart.classes()) {
        if (cls->generations.size() != 1)
            throw Error(ErrorKind::UnsupportedChart,
                        "multi-generation class at " + to_string(cls->ref));
        if (cls->permanent()) {
            module.summands.push_back(
                TauSummand{{cls->ref.position.stem, cls->ref.position.weight()}, 0});
        }
    }
    for (const Differential& d : chart.differentials()) {
        // d_{r+1} target carries a tau^r-torsion summand; r = page - 1.
        module.summands.push_back(
            TauSummand{{d.target.position.stem, d.target.position.weight()}, d.page - 1});
    }
    std::sort(module.summands.begin(), module.summands.end());
    return module;
}

BigradedDims tensor_with_ctau(const TauModule& module, int k) {
    if (k < 1) throw Error(ErrorKind::InvalidParams, "Ctau^k needs k >= 1");
    BigradedDims dims;
    auto bump = [&dims](std::int64_t stem, std::int64_t weight) { ++dims[{stem, weight}]; };
    for (const TauSummand& s : module.summands) {
        std::int64_t n = s.generator.stem;
        std::int64_t t0 = s.generator.weight;
        if (s.is_free()) {
            // coker(tau^k) is one class per weight t0-k+1..t0; tau acts
            // injectively, so no boundary term.
            for (int j = 0; j < k; ++j) bump(n, t0 - j);
        } else {
            int r = s.torsion;
            int width = std::min(k, r);
            for (int j = 0; j < width; ++j) bump(n, t0 - j);
            // ker(tau^k) on the weight-(b+k) slice lands in stem n+1 at
            // weight b: elements tau^i x with i + k >= r.
            for (int i = std::max(0, r - k); i < r; ++i) bump(n + 1, t0 - i - k);
        }
    }
    return dims;
}

std::vector<BocksteinDifferential> bockstein_differentials(const TauModule& module) {
    std::vector<BocksteinDifferential> out;
    for (const TauSummand& s : module.summands) {
        if (s.is_free()) continue;
        int r = s.torsion;
        std::int64_t n = s.generator.stem;
        std::int64_t t0 = s.generator.weight;
        BocksteinDifferential d;
        d.page = r + 1;
        d.target = Bidegree{n, t0 - n};
        d.source = Bidegree{n + 1, (t0 - r) - (n + 1)};
        out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::multiset<std::int64_t> invert_tau_filtration(const TauModule& module, std::int64_t stem) {
    std::multiset<std::int64_t> out;
    for (const TauSummand& s : module.summands)
        if (s.is_free() && s.generator.stem == stem) out.insert(s.generator.weight - stem);
    return out;
}

const char* to_string(ClassFate fate) {
    switch (fate) {
        case ClassFate::PermanentCycle: return "PermanentCycle";
        case ClassFate::EventualBoundary: return "EventualBoundary";
        case ClassFate::TransientSource: return "TransientSource";
    }
    return "?";
}

ClassFate classify(const TauModule& module, const Chart& chart, ClassRef ref) {
    const ChartClass& cls = chart.at(ref);
    for (const Differential& d : chart.differentials()) {
        if (d.source == ref) return ClassFate::TransientSource;
        // Targets lift but the lift is tau-power torsion; report the
        // stronger classification.
        if (d.target == ref) return ClassFate::EventualBoundary;
    }
    StemWeight sw{ref.position.stem, cls.ref.position.weight()};
    bool lifted = std::any_of(module.summands.begin(), module.summands.end(), [&](const TauSummand& s) {
        return s.is_free() && s.generator == sw;
    });
    if (!lifted)
        throw Error(ErrorKind::UnsupportedChart,
                    "module has no free generator for permanent class " + to_string(ref));
    return ClassFate::PermanentCycle;
}

}  // namespace sseq
