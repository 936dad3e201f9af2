#ifndef SSEQ_CHART_HPP
#define SSEQ_CHART_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sseq/errors.hpp"

namespace sseq {

/// (stem, filtration) chart coordinates; the weight t = stem + filtration
/// is always derived, never stored.
struct Bidegree {
    std::int64_t stem = 0;
    std::int64_t filtration = 0;

    std::int64_t weight() const { return stem + filtration; }

    friend Bidegree operator+(Bidegree a, Bidegree b) {
        return {a.stem + b.stem, a.filtration + b.filtration};
    }
    friend Bidegree operator-(Bidegree a, Bidegree b) {
        return {a.stem - b.stem, a.filtration - b.filtration};
    }
    auto operator<=>(const Bidegree&) const = default;
};

std::string to_string(Bidegree b);

enum class GradingKind { Adams, SerreCohomological, SerreHomological, Custom };

/// Differential displacement per page. The named conventions are fixed
/// constants; Custom is the affine pair r -> (a*r + b, c*r + d).
struct Grading {
    GradingKind kind = GradingKind::Adams;
    std::int64_t a = 0, b = 0, c = 0, d = 0;

    Bidegree displacement(int page) const;

    static Grading adams() { return {GradingKind::Adams}; }
    static Grading serre_cohomological() { return {GradingKind::SerreCohomological}; }
    static Grading serre_homological() { return {GradingKind::SerreHomological}; }
    static Grading custom(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        return {GradingKind::Custom, a, b, c, d};
    }

    auto operator<=>(const Grading&) const = default;
};

/// Sentinel for a generation that is never killed.
inline constexpr int kNeverPage = std::numeric_limits<int>::max();

/// One life of a chart class: visible on pages born_page..died_page
/// inclusive. display_options are passed through untouched to the renderer.
struct Generation {
    int born_page = 2;
    int died_page = kNeverPage;
    std::map<std::string, std::string> display_options;

    bool visible_on(int page) const { return born_page <= page && page <= died_page; }
    bool alive() const { return died_page == kNeverPage; }

    auto operator<=>(const Generation&) const = default;
};

/// Position plus index; the index disambiguates stacked classes.
struct ClassRef {
    Bidegree position;
    int index = 0;

    auto operator<=>(const ClassRef&) const = default;
};

std::string to_string(ClassRef ref);

struct ChartClass {
    ClassRef ref;
    std::vector<Generation> generations;  // disjoint, in page order
    std::optional<std::string> name;
    std::optional<std::string> tag;

    const Generation* generation_on(int page) const;
    const Generation& latest() const { return generations.back(); }
    /// True when the last generation is never killed.
    bool permanent() const { return generations.back().alive(); }

    bool operator==(const ChartClass&) const = default;
};

struct Differential {
    int page = 2;
    ClassRef source;
    ClassRef target;

    auto operator<=>(const Differential&) const = default;
};

/// Undirected multiplication line. Endpoints are normalized so a <= b.
/// Visible on page p iff both endpoints are visible at p and p >= born_page.
struct StructLine {
    ClassRef a;
    ClassRef b;
    std::optional<std::string> label;
    int born_page = 2;

    auto operator<=>(const StructLine&) const = default;
};

struct ClassOptions {
    std::optional<std::string> name;
    std::optional<std::string> tag;
    std::map<std::string, std::string> display_options;
};

/// A multi-page bigraded chart. Built single-threaded, then sealed;
/// a sealed chart is immutable and safe for concurrent reads.
class Chart {
public:
    explicit Chart(Grading grading = Grading::adams(), bool strict_degree = true)
        : grading_(grading), strict_(strict_degree) {}

    const Grading& grading() const { return grading_; }
    bool strict_degree() const { return strict_; }
    void set_lax();

    ClassRef add_class(Bidegree position, ClassOptions options = {});
    Differential add_differential(int page, ClassRef source, ClassRef target);
    void replace_class(ClassRef ref, int page);
    StructLine add_structline(ClassRef a, ClassRef b,
                              std::optional<std::string> label = std::nullopt,
                              std::optional<int> born_page = std::nullopt);

    void seal() { sealed_ = true; }
    bool sealed() const { return sealed_; }

    const ChartClass* find(ClassRef ref) const;
    const ChartClass& at(ClassRef ref) const;  // throws UnknownClass
    int multiplicity(Bidegree position) const;

    std::vector<std::pair<ClassRef, Generation>> visible_classes(int page) const;

    struct VisibleEdges {
        std::vector<Differential> differentials;
        std::vector<StructLine> structlines;
    };
    VisibleEdges visible_edges(int page, std::optional<int> page_max = std::nullopt) const;

    /// Chart with every position translated; pages and edges preserved.
    Chart shifted(std::int64_t dstem, std::int64_t dfiltration) const;

    /// Classes in canonical (stem, filtration, index) order.
    std::vector<const ChartClass*> classes() const;
    const std::vector<Differential>& differentials() const { return differentials_; }
    const std::vector<StructLine>& structlines() const { return structlines_; }
    std::size_t class_count() const { return class_count_; }
    bool empty() const { return class_count_ == 0; }

    /// Smallest and largest stem carrying a class; meaningless when empty.
    std::pair<std::int64_t, std::int64_t> stem_extent() const;
    std::pair<std::int64_t, std::int64_t> filtration_extent() const;

    bool operator==(const Chart& other) const;

private:
    using PositionKey = std::pair<std::int64_t, std::int64_t>;
    static PositionKey key(Bidegree b) { return {b.stem, b.filtration}; }

    void require_mutable() const;
    ChartClass& mutable_at(ClassRef ref);

    Grading grading_;
    bool strict_ = true;
    bool sealed_ = false;
    std::map<PositionKey, std::vector<ChartClass>> classes_;
    std::vector<Differential> differentials_;
    std::vector<StructLine> structlines_;
    std::size_t class_count_ = 0;
};

}  // namespace sseq

#endif
