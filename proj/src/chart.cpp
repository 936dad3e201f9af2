#include "sseq/chart.hpp"

#include <algorithm>

namespace sseq {

std::string to_string(Bidegree b) {
    return "(" + std::to_string(b.stem) + "," + std::to_string(b.filtration) + ")";
}

std::string to_string(ClassRef ref) {
    return "(" + std::to_string(ref.position.stem) + "," +
           std::to_string(ref.position.filtration) + "," + std::to_string(ref.index) + ")";
}

Bidegree Grading::displacement(int page) const {
    std::int64_t r = page;
    switch (kind) {
        case GradingKind::Adams: return {-1, r};
        case GradingKind::SerreCohomological: return {r, 1 - r};
        case GradingKind::SerreHomological: return {-r, r - 1};
        case GradingKind::Custom: return {a * r + b, c * r + d};
    }
    return {0, 0};
}

const Generation* ChartClass::generation_on(int page) const {
    for (const Generation& g : generations)
        if (g.visible_on(page)) return &g;
    return nullptr;
}

void Chart::require_mutable() const {
    if (sealed_) throw Error(ErrorKind::Sealed, "chart is sealed");
}

void Chart::set_lax() {
    require_mutable();
    strict_ = false;
}

ClassRef Chart::add_class(Bidegree position, ClassOptions options) {
    require_mutable();
    auto& stack = classes_[key(position)];
    ClassRef ref{position, static_cast<int>(stack.size())};
    ChartClass cls;
    cls.ref = ref;
    cls.name = std::move(options.name);
    cls.tag = std::move(options.tag);
    Generation g;
    g.display_options = std::move(options.display_options);
    cls.generations.push_back(std::move(g));
    stack.push_back(std::move(cls));
    ++class_count_;
    return ref;
}

const ChartClass* Chart::find(ClassRef ref) const {
    auto it = classes_.find(key(ref.position));
    if (it == classes_.end()) return nullptr;
    if (ref.index < 0 || ref.index >= static_cast<int>(it->second.size())) return nullptr;
    return &it->second[ref.index];
}

const ChartClass& Chart::at(ClassRef ref) const {
    const ChartClass* cls = find(ref);
    if (!cls) throw Error(ErrorKind::UnknownClass, "no class at " + to_string(ref));
    return *cls;
}

ChartClass& Chart::mutable_at(ClassRef ref) {
    return const_cast<ChartClass&>(at(ref));
}

int Chart::multiplicity(Bidegree position) const {
    auto it = classes_.find(key(position));
    return it == classes_.end() ? 0 : static_cast<int>(it->second.size());
}

Differential Chart::add_differential(int page, ClassRef source, ClassRef target) {
    require_mutable();
    if (page < 2) throw Error(ErrorKind::InvalidParams, "differential page must be >= 2");
    if (source == target)
        throw Error(ErrorKind::InvalidParams, "differential source equals target");

    // The degree check needs positions only, so it runs before resolution.
    if (strict_) {
        Bidegree expected = grading_.displacement(page);
        Bidegree actual = target.position - source.position;
        if (actual != expected)
            throw Error(ErrorKind::DegreeMismatch,
                        "d" + std::to_string(page) + " displacement " + to_string(actual) +
                            " does not match grading displacement " + to_string(expected));
    }

    ChartClass& src = mutable_at(source);
    ChartClass& tgt = mutable_at(target);

    for (const Differential& d : differentials_) {
        if (d.page != page) continue;
        if (d.source == source)
            throw Error(ErrorKind::DuplicateKill,
                        to_string(source) + " already supports a d" + std::to_string(page));
        if (d.target == target)
            throw Error(ErrorKind::DuplicateKill,
                        to_string(target) + " already receives a d" + std::to_string(page));
    }

    // Validate both endpoints before mutating either. A generation that
    // is already scheduled to die on another page cannot be killed again:
    // that would orphan the differential recorded there.
    auto check = [page](const ChartClass& cls, const char* role) {
        const Generation* g = cls.generation_on(page);
        if (!g)
            throw Error(ErrorKind::DeadClass, std::string(role) + " " + to_string(cls.ref) +
                                                  " is not alive on page " + std::to_string(page));
        if (g->died_page != kNeverPage && g->died_page != page)
            throw Error(ErrorKind::DuplicateKill,
                        std::string(role) + " " + to_string(cls.ref) + " is already killed on page " +
                            std::to_string(g->died_page));
    };
    check(src, "source");
    check(tgt, "target");
    auto kill = [page](ChartClass& cls) {
        for (Generation& g : cls.generations) {
            if (g.visible_on(page)) {
                g.died_page = page;
                return;
            }
        }
    };
    kill(src);
    kill(tgt);

    Differential d{page, source, target};
    differentials_.push_back(d);
    return d;
}

void Chart::replace_class(ClassRef ref, int page) {
    require_mutable();
    ChartClass& cls = mutable_at(ref);
    Generation& last = cls.generations.back();
    if (last.alive())
        throw Error(ErrorKind::NotDead, to_string(ref) + " is still alive");
    if (last.died_page != page)
        throw Error(ErrorKind::NotDead, to_string(ref) + " died on page " +
                                            std::to_string(last.died_page) + ", not " +
                                            std::to_string(page));
    Generation g;
    g.born_page = page + 1;
    cls.generations.push_back(g);
}

StructLine Chart::add_structline(ClassRef a, ClassRef b, std::optional<std::string> label,
                                 std::optional<int> born_page) {
    require_mutable();
    const ChartClass& ca = at(a);
    const ChartClass& cb = at(b);
    StructLine line;
    if (b < a) std::swap(a, b);
    line.a = a;
    line.b = b;
    line.label = std::move(label);
    // Default: first page on which the current generations of both
    // endpoints are present.
    line.born_page = born_page ? *born_page
                               : std::max(ca.generations.back().born_page,
                                          cb.generations.back().born_page);
    if (line.born_page < 2)
        throw Error(ErrorKind::InvalidParams, "structline page must be >= 2");
    structlines_.push_back(line);
    return line;
}

std::vector<std::pair<ClassRef, Generation>> Chart::visible_classes(int page) const {
    std::vector<std::pair<ClassRef, Generation>> out;
    for (const auto& [pos, stack] : classes_) {
        for (const ChartClass& cls : stack) {
            if (const Generation* g = cls.generation_on(page)) out.emplace_back(cls.ref, *g);
        }
    }
    return out;
}

Chart::VisibleEdges Chart::visible_edges(int page, std::optional<int> page_max) const {
    int hi = page_max.value_or(page);
    if (hi < page) throw Error(ErrorKind::InvalidParams, "page_max below page");
    VisibleEdges out;
    for (const Differential& d : differentials_)
        if (d.page >= page && d.page <= hi) out.differentials.push_back(d);
    for (const StructLine& line : structlines_) {
        if (page < line.born_page) continue;
        const ChartClass* ca = find(line.a);
        const ChartClass* cb = find(line.b);
        if (ca && cb && ca->generation_on(page) && cb->generation_on(page))
            out.structlines.push_back(line);
    }
    return out;
}

Chart Chart::shifted(std::int64_t dstem, std::int64_t dfiltration) const {
    Bidegree delta{dstem, dfiltration};
    Chart out(grading_, strict_);
    for (const auto& [pos, stack] : classes_) {
        for (const ChartClass& cls : stack) {
            ChartClass moved = cls;
            moved.ref.position = cls.ref.position + delta;
            out.classes_[key(moved.ref.position)].push_back(std::move(moved));
            ++out.class_count_;
        }
    }
    for (const Differential& d : differentials_) {
        Differential moved = d;
        moved.source.position = d.source.position + delta;
        moved.target.position = d.target.position + delta;
        out.differentials_.push_back(moved);
    }
    for (const StructLine& line : structlines_) {
        StructLine moved = line;
        moved.a.position = line.a.position + delta;
        moved.b.position = line.b.position + delta;
        out.structlines_.push_back(moved);
    }
    out.sealed_ = sealed_;
    return out;
}

std::vector<const ChartClass*> Chart::classes() const {
    std::vector<const ChartClass*> out;
    out.reserve(class_count_);
    for (const auto& [pos, stack] : classes_)
        for (const ChartClass& cls : stack) out.push_back(&cls);
    return out;
}

std::pair<std::int64_t, std::int64_t> Chart::stem_extent() const {
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    for (const auto& [pos, stack] : classes_) {
        if (stack.empty()) continue;
        if (first) {
            lo = hi = pos.first;
            first = false;
        } else {
            lo = std::min(lo, pos.first);
            hi = std::max(hi, pos.first);
        }
    }
    return {lo, hi};
}

std::pair<std::int64_t, std::int64_t> Chart::filtration_extent() const {
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    for (const auto& [pos, stack] : classes_) {
        if (stack.empty()) continue;
        if (first) {
            lo = hi = pos.second;
            first = false;
        } else {
            lo = std::min(lo, pos.second);
            hi = std::max(hi, pos.second);
        }
    }
    return {lo, hi};
}

bool Chart::operator==(const Chart& other) const {
    if (grading_ != other.grading_ || strict_ != other.strict_) return false;
    if (classes_ != other.classes_) return false;
    auto sorted = [](std::vector<Differential> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto sorted_lines = [](std::vector<StructLine> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    return sorted(differentials_) == sorted(other.differentials_) &&
           sorted_lines(structlines_) == sorted_lines(other.structlines_);
}

}  // namespace sseq
