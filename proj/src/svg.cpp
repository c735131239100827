#include "wsnloc/svg.hpp"

#include <map>
#include <sstream>

#include "wsnloc/error.hpp"
#include "wsnloc/radio.hpp"

namespace wsnloc {

namespace {

constexpr double kMargin = 20.0;  // px around the arena

class Canvas {
 public:
  Canvas(const Arena& arena, double scale) : height_(arena.height), scale_(scale) {}
  double x(double meters) const { return kMargin + meters * scale_; }
  double y(double meters) const { return kMargin + (height_ - meters) * scale_; }
  double len(double meters) const { return meters * scale_; }

 private:
  double height_;
  double scale_;
};

}  // namespace

std::string render_step_svg(const TraceTable& table, std::int64_t step, const RenderStyle& style) {
  const auto rows = table.rows_at(step);
  if (rows.empty())
    throw Error(ErrorKind::OutOfRange, "step " + std::to_string(step) + " not in trace (0.." +
                                           std::to_string(table.step_count() - 1) + ")");

  const Scenario& sc = table.scenario;
  const Canvas c(sc.arena, style.canvas_scale);
  const auto n = format_number;
  const double w = 2 * kMargin + c.len(sc.arena.width);
  const double h = 2 * kMargin + c.len(sc.arena.height);

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << n(w) << "\" height=\"" << n(h)
    << "\" viewBox=\"0 0 " << n(w) << ' ' << n(h) << "\">\n";
  o << "<title>step " << step << " (tag links " << (sc.tag_links_enabled ? "on" : "off")
    << ")</title>\n";
  o << "<rect class=\"arena\" x=\"" << n(c.x(0)) << "\" y=\"" << n(c.y(sc.arena.height))
    << "\" width=\"" << n(c.len(sc.arena.width)) << "\" height=\"" << n(c.len(sc.arena.height))
    << "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";

  if (style.show_territories) {
    for (const auto& t : sc.tags) {
      const Rect& r = t.territory;
      o << "<rect class=\"territory\" data-tag=\"" << t.id << "\" x=\"" << n(c.x(r.xmin))
        << "\" y=\"" << n(c.y(r.ymax)) << "\" width=\"" << n(c.len(r.width())) << "\" height=\""
        << n(c.len(r.height()))
        << "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
    }
  }

  if (style.show_links) {
    std::map<std::string, Point> positions;
    std::map<std::string, Role> roles;
    for (const auto& r : rows) {
      positions[r.sensor_id] = r.true_position;
      roles[r.sensor_id] = r.role;
    }
    const LinkSet links = neighbor_graph(positions, sc.radio, roles, sc.tag_links_enabled);
    for (const auto& [a, nbrs] : links.adjacency()) {
      for (const auto& b : nbrs) {
        if (!(a < b) || (roles[a] == Role::Anchor && roles[b] == Role::Anchor)) continue;
        const Point pa = positions[a], pb = positions[b];
        o << "<line class=\"link\" x1=\"" << n(c.x(pa.x)) << "\" y1=\"" << n(c.y(pa.y))
          << "\" x2=\"" << n(c.x(pb.x)) << "\" y2=\"" << n(c.y(pb.y))
          << "\" stroke=\"lightblue\" stroke-width=\"1\"/>\n";
      }
    }
  }

  for (const auto& r : rows) {
    if (r.role != Role::Anchor) continue;
    o << "<circle class=\"anchor\" data-id=\"" << r.sensor_id << "\" cx=\"" << n(c.x(r.true_position.x))
      << "\" cy=\"" << n(c.y(r.true_position.y)) << "\" r=\"" << n(style.anchor_glyph_radius)
      << "\" fill=\"black\"/>\n";
  }
  for (const auto& r : rows) {
    if (r.role != Role::Tag) continue;
    o << "<circle class=\"tag\" data-id=\"" << r.sensor_id << "\" cx=\"" << n(c.x(r.true_position.x))
      << "\" cy=\"" << n(c.y(r.true_position.y)) << "\" r=\"" << n(style.tag_glyph_scale * r.uncertainty)
      << "\" fill=\"orange\" fill-opacity=\"0.5\" stroke=\"darkorange\"/>\n";
    o << "<path class=\"estimate\" data-id=\"" << r.sensor_id << "\" d=\"M " << n(c.x(r.estimated_position.x) - 4)
      << ' ' << n(c.y(r.estimated_position.y)) << " h 8 M " << n(c.x(r.estimated_position.x)) << ' '
      << n(c.y(r.estimated_position.y) - 4) << " v 8\" stroke=\"red\"/>\n";
    o << "<text class=\"label\" x=\"" << n(c.x(r.true_position.x) + 6) << "\" y=\""
      << n(c.y(r.true_position.y) - 6) << "\" font-size=\"12\">" << r.sensor_id << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace wsnloc
