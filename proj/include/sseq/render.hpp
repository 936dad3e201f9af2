#ifndef SSEQ_RENDER_HPP
#define SSEQ_RENDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sseq/chart.hpp"
#include "sseq/rational.hpp"

namespace sseq {

/// Reference line s = slope * n + intercept, clipped to the plot range.
/// style is one of "solid", "dashed", "dotted".
struct GuideLine {
    Rational slope;
    Rational intercept;
    std::string style = "solid";
};

struct RenderOptions {
    int page = 2;
    std::optional<int> page_max;
    std::int64_t x_min = 0, x_max = 10;
    std::int64_t y_min = 0, y_max = 10;
    double scale = 40.0;
    std::vector<GuideLine> guides;
    bool show_names = false;
};

/// Deterministic SVG 1.1 for one page of a sealed chart: a circle per
/// visible class (stacked classes spread horizontally, at most 6 per
/// bidegree), an arrowed line per visible differential, a plain line per
/// visible structure line (lines labeled "2" draw dotted), guide lines,
/// axes and ticks. Byte-identical output for identical inputs.
std::string render_svg(const Chart& chart, const RenderOptions& options);

}  // namespace sseq

#endif
