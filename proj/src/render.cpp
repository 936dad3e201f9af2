#include "sseq/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace sseq {

namespace {

constexpr double kMargin = 1.0;  // chart units around the data window
constexpr std::size_t kMaxStack = 6;
constexpr double kStackSpacing = 0.22;
constexpr double kDotRadius = 0.09;

struct Mapper {
    double x0, y1, scale;
    double width, height;

    double x(double stem) const { return (stem - x0 + kMargin) * scale; }
    double y(double fil) const { return (y1 - fil + kMargin) * scale; }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    // avoid "-0.00"
    if (std::string(buf) == "-0.00") return "0.00";
    return buf;
}

void line_element(std::ostream& out, const Mapper& mp, double x1, double y1, double x2, double y2,
                  const std::string& cls, const std::string& extra) {
    out << "<line class=\"" << cls << "\" x1=\"" << fmt(mp.x(x1)) << "\" y1=\"" << fmt(mp.y(y1))
        << "\" x2=\"" << fmt(mp.x(x2)) << "\" y2=\"" << fmt(mp.y(y2)) << "\"" << extra << "/>\n";
}

/// Clips the segment of s = m*n + c over [x_min, x_max] to the y-window.
/// Returns false when the line misses the window entirely.
bool clip_guide(double m, double c, double x_lo, double x_hi, double y_lo, double y_hi,
                double& ax, double& ay, double& bx, double& by) {
    ax = x_lo;
    bx = x_hi;
    ay = m * ax + c;
    by = m * bx + c;
    auto inside = [&](double y) { return y >= y_lo && y <= y_hi; };
    if (m == 0.0) return inside(ay);
    auto x_at = [&](double y) { return (y - c) / m; };
    if (!inside(ay)) {
        double y_clamped = std::clamp(ay, y_lo, y_hi);
        double x = x_at(y_clamped);
        if (x < x_lo || x > x_hi) return false;
        ax = x;
        ay = y_clamped;
    }
    if (!inside(by)) {
        double y_clamped = std::clamp(by, y_lo, y_hi);
        double x = x_at(y_clamped);
        if (x < x_lo || x > x_hi) return false;
        bx = x;
        by = y_clamped;
    }
    return true;
}

}  // namespace

std::string render_svg(const Chart& chart, const RenderOptions& options) {
    if (!chart.sealed()) throw Error(ErrorKind::Sealed, "render requires a sealed chart");
    if (options.page < 2) throw Error(ErrorKind::InvalidParams, "page must be >= 2");
    if (options.x_max < options.x_min || options.y_max < options.y_min)
        throw Error(ErrorKind::EmptyRange, "empty render range");
    if (options.scale <= 0) throw Error(ErrorKind::EmptyRange, "scale must be positive");

    const double x_lo = static_cast<double>(options.x_min);
    const double x_hi = static_cast<double>(options.x_max);
    const double y_lo = static_cast<double>(options.y_min);
    const double y_hi = static_cast<double>(options.y_max);

    Mapper mp{x_lo, y_hi, options.scale, (x_hi - x_lo + 2 * kMargin) * options.scale,
              (y_hi - y_lo + 2 * kMargin) * options.scale};

    auto in_range = [&](Bidegree pos) {
        return pos.stem >= options.x_min && pos.stem <= options.x_max &&
               pos.filtration >= options.y_min && pos.filtration <= options.y_max;
    };

    auto visible = chart.visible_classes(options.page);
    // Horizontal spread for stacked classes: slot i of m gets offset
    // (i - (m-1)/2) * spacing.
    std::map<Bidegree, std::vector<int>> stacks;  // position -> visible indices
    for (const auto& [ref, gen] : visible)
        if (in_range(ref.position)) stacks[ref.position].push_back(ref.index);
    for (const auto& [pos, indices] : stacks)
        if (indices.size() > kMaxStack)
            throw Error(ErrorKind::TooManyStacked,
                        std::to_string(indices.size()) + " classes stacked at " + to_string(pos));
    auto dot_center = [&](ClassRef ref) {
        double dx = 0.0;
        auto it = stacks.find(ref.position);
        if (it != stacks.end()) {
            const auto& indices = it->second;
            auto slot = std::find(indices.begin(), indices.end(), ref.index);
            if (slot != indices.end())
                dx = (static_cast<double>(slot - indices.begin()) - (indices.size() - 1) / 2.0) *
                     kStackSpacing;
        }
        return std::pair<double, double>(static_cast<double>(ref.position.stem) + dx,
                                         static_cast<double>(ref.position.filtration));
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(mp.width) << "\" height=\""
        << fmt(mp.height) << "\" viewBox=\"0 0 " << fmt(mp.width) << " " << fmt(mp.height)
        << "\">\n";
    out << "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" "
           "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#c03030\"/></marker></defs>\n";

    // axes with ticks; labels are the one element type allowed to poke out
    int tick_step = (options.x_max - options.x_min > 40 || options.y_max - options.y_min > 40) ? 5 : 1;
    line_element(out, mp, x_lo - 0.5, y_lo - 0.5, x_hi + 0.5, y_lo - 0.5, "axis",
                 " stroke=\"#000000\" stroke-width=\"1\"");
    line_element(out, mp, x_lo - 0.5, y_lo - 0.5, x_lo - 0.5, y_hi + 0.5, "axis",
                 " stroke=\"#000000\" stroke-width=\"1\"");
    for (std::int64_t n = options.x_min; n <= options.x_max; n += tick_step)
        out << "<text class=\"axis-label\" x=\"" << fmt(mp.x(static_cast<double>(n)))
            << "\" y=\"" << fmt(mp.y(y_lo - 0.8)) << "\" font-size=\"" << fmt(options.scale * 0.3)
            << "\" text-anchor=\"middle\">" << n << "</text>\n";
    for (std::int64_t s = options.y_min; s <= options.y_max; s += tick_step)
        out << "<text class=\"axis-label\" x=\"" << fmt(mp.x(x_lo - 0.8)) << "\" y=\""
            << fmt(mp.y(static_cast<double>(s))) << "\" font-size=\"" << fmt(options.scale * 0.3)
            << "\" text-anchor=\"middle\">" << s << "</text>\n";

    for (const GuideLine& guide : options.guides) {
        double m = static_cast<double>(guide.slope.num()) / static_cast<double>(guide.slope.den());
        double c =
            static_cast<double>(guide.intercept.num()) / static_cast<double>(guide.intercept.den());
        double ax, ay, bx, by;
        if (!clip_guide(m, c, x_lo, x_hi, y_lo, y_hi, ax, ay, bx, by)) continue;
        std::string extra = " stroke=\"#808080\" stroke-width=\"1\"";
        if (guide.style == "dotted") extra += " stroke-dasharray=\"2,3\"";
        if (guide.style == "dashed") extra += " stroke-dasharray=\"6,4\"";
        line_element(out, mp, ax, ay, bx, by, "guide", extra);
    }

    auto edges = chart.visible_edges(options.page, options.page_max);
    for (const StructLine& line : edges.structlines) {
        if (!in_range(line.a.position) || !in_range(line.b.position)) continue;
        auto [ax, ay] = dot_center(line.a);
        auto [bx, by] = dot_center(line.b);
        std::string extra = " stroke=\"#303030\" stroke-width=\"1\"";
        if (line.label && *line.label == "2") extra += " stroke-dasharray=\"2,3\"";
        line_element(out, mp, ax, ay, bx, by, "structline", extra);
    }
    for (const Differential& d : edges.differentials) {
        if (!in_range(d.source.position) || !in_range(d.target.position)) continue;
        auto [ax, ay] = dot_center(d.source);
        auto [bx, by] = dot_center(d.target);
        line_element(out, mp, ax, ay, bx, by, "differential",
                     " stroke=\"#c03030\" stroke-width=\"1.2\" marker-end=\"url(#arrow)\"");
    }

    for (const auto& [ref, gen] : visible) {
        if (!in_range(ref.position)) continue;
        auto [cx, cy] = dot_center(ref);
        const ChartClass& cls = chart.at(ref);
        std::string fill = "#000000";
        auto it = gen.display_options.find("fill");
        if (it != gen.display_options.end()) fill = it->second;
        out << "<circle class=\"class-dot\" cx=\"" << fmt(mp.x(cx)) << "\" cy=\"" << fmt(mp.y(cy))
            << "\" r=\"" << fmt(options.scale * kDotRadius) << "\" fill=\"" << fill << "\"/>\n";
        if (options.show_names && cls.name)
            out << "<text class=\"class-name\" x=\"" << fmt(mp.x(cx + 0.12)) << "\" y=\""
                << fmt(mp.y(cy + 0.12)) << "\" font-size=\"" << fmt(options.scale * 0.25) << "\">"
                << *cls.name << "</text>\n";
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace sseq
