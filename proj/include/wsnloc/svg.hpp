#pragma once

#include <cstdint>
#include <string>

#include "wsnloc/trace_io.hpp"

namespace wsnloc {

struct RenderStyle {
  double anchor_glyph_radius = 6.0;  // px
  double tag_glyph_scale = 50.0;     // px per meter of uncertainty
  bool show_links = true;
  bool show_territories = true;
  double canvas_scale = 50.0;        // px per meter
};

/// Snapshot of one recorded step: arena border, dashed territories, links
/// recomputed from the recorded true positions, fixed-size anchor circles and
/// tag circles whose radius is tag_glyph_scale * uncertainty.
/// Throws Error(OutOfRange) when the step is not in the table.
std::string render_step_svg(const TraceTable& table, std::int64_t step, const RenderStyle& style = {});

}  // namespace wsnloc
