#include "wsnloc/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "wsnloc/error.hpp"

namespace wsnloc {

std::string_view to_string(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::Trilaterate:
      return "trilaterate";
    case EstimatorMethod::WeightedCentroid:
      return "weighted_centroid";
  }
  return "trilaterate";
}

Scenario default_scenario() {
  Scenario s;
  s.anchors = {
      {"a1", {1, 1}}, {"a2", {4, 1}}, {"a3", {1, 4}},
      {"a4", {4, 4}}, {"a5", {2, 7}}, {"a6", {7, 2}},
  };
  s.tags = {
      {"A", {2.5, 2.5}, {0.5, 0.5, 4.5, 4.5}, 1.0},
      {"B", {6.75, 2.75}, {4.0, 0.5, 9.5, 5.0}, 1.0},
      {"C", {8.25, 8.25}, {7.0, 7.0, 9.5, 9.5}, 1.0},
  };
  return s;
}

namespace {

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;
  auto need = [&](bool ok, std::string path, std::string reason) {
    if (!ok) out.push_back({std::move(path), std::move(reason)});
  };

  need(s.arena.width > 0, "arena.width", "width > 0 required");
  need(s.arena.height > 0, "arena.height", "height > 0 required");

  const auto& d = s.dynamics;
  const Rect bounds = s.arena.bounds();

  need(!s.anchors.empty(), "anchors", "at least 1 anchor required");
  need(!s.tags.empty(), "tags", "at least 1 tag required");

  std::set<std::string> seen;
  auto check_id = [&](const std::string& path, const std::string& id) {
    need(valid_id(id), path + ".id", "id must be a non-empty token of letters, digits, '_', '-' or '.'");
    need(seen.insert(id).second, path + ".id", "duplicate id \"" + id + "\"");
  };

  for (std::size_t i = 0; i < s.anchors.size(); ++i) {
    const auto& a = s.anchors[i];
    const std::string path = "anchor[" + std::to_string(i) + "]";
    check_id(path, a.id);
    need(bounds.contains(a.position), path + ".position",
         "anchor \"" + a.id + "\" must lie inside the arena");
  }
  for (std::size_t i = 0; i < s.tags.size(); ++i) {
    const auto& t = s.tags[i];
    const std::string path = "tag[" + std::to_string(i) + "]";
    check_id(path, t.id);
    need(t.territory.xmin <= t.territory.xmax && t.territory.ymin <= t.territory.ymax,
         path + ".territory", "tag \"" + t.id + "\" territory must have xmin <= xmax and ymin <= ymax");
    need(bounds.contains(t.territory), path + ".territory",
         "tag \"" + t.id + "\" territory must lie inside the arena");
    need(t.territory.contains(t.initial_position), path + ".initial_position",
         "tag \"" + t.id + "\" initial_position must lie inside its territory");
    need(t.initial_uncertainty >= d.u_min && t.initial_uncertainty <= d.u_max,
         path + ".initial_uncertainty",
         "tag \"" + t.id + "\" initial_uncertainty must be in [u_min, u_max]");
  }

  const auto& r = s.radio;
  need(r.range > 0, "radio.range", "range > 0 required");
  need(r.path_loss_exponent > 0, "radio.path_loss_exponent", "path_loss_exponent > 0 required");
  need(r.reference_distance > 0, "radio.reference_distance", "reference_distance > 0 required");
  need(std::isfinite(r.reference_power), "radio.reference_power", "reference_power must be finite");
  need(r.shadowing_sigma >= 0, "radio.shadowing_sigma", "shadowing_sigma >= 0 required");

  need(d.growth_factor_three > 1, "dynamics.growth_factor_three", "growth_factor_three > 1 required");
  need(d.growth_factor_three < d.growth_factor_low, "dynamics.growth_factor_low",
       "growth_factor_three < growth_factor_low required");
  need(d.decay_alpha > 0, "dynamics.decay_alpha", "decay_alpha > 0 required");
  need(d.u_min > 0, "dynamics.u_min", "u_min > 0 required");
  need(d.u_min < d.u_max, "dynamics.u_min", "u_min < u_max required");
  need(d.speed >= 0, "dynamics.speed", "speed >= 0 required");
  need(d.heading_sigma >= 0, "dynamics.heading_sigma", "heading_sigma >= 0 required");

  const auto& e = s.estimator;
  need(e.centroid_degree_g > 0, "estimator.centroid_degree_g", "centroid_degree_g > 0 required");
  need(e.refine_iterations >= 0, "estimator.refine_iterations", "refine_iterations >= 0 required");
  need(e.collinearity_epsilon > 0, "estimator.collinearity_epsilon",
       "collinearity_epsilon > 0 required");
  need(e.tag_trust_max_uncertainty > 0 && e.tag_trust_max_uncertainty <= d.u_max,
       "estimator.tag_trust_max_uncertainty", "tag_trust_max_uncertainty must be in (0, u_max]");
  return out;
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Scenario parse() {
    Scenario s = default_scenario();
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      auto nl = text_.find('\n', pos);
      if (nl == std::string_view::npos) nl = text_.size();
      ++line_;
      handle_line(s, text_.substr(pos, nl - pos));
      pos = nl + 1;
    }
    finish_block(s);
    if (saw_anchor_block_) s.anchors = std::move(anchors_);
    if (saw_tag_block_) s.tags = std::move(tags_);

    std::set<std::string> ids;
    for (const auto& a : s.anchors)
      if (!ids.insert(a.id).second) throw Error(ErrorKind::Config, "duplicate id \"" + a.id + "\"");
    for (const auto& t : s.tags)
      if (!ids.insert(t.id).second) throw Error(ErrorKind::Config, "duplicate id \"" + t.id + "\"");
    return s;
  }

 private:
  enum class Block { None, Section, Anchor, Tag };

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Config, "line " + std::to_string(line_) + ": " + msg);
  }

  void handle_line(Scenario& s, std::string_view raw) {
    auto hash = raw.find('#');
    std::string_view line = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) return;

    if (line.front() == '[') {
      finish_block(s);
      keys_.clear();
      if (line.starts_with("[[")) {
        if (!line.ends_with("]]")) fail("unterminated block header");
        auto name = trim(line.substr(2, line.size() - 4));
        if (name == "anchor") {
          block_ = Block::Anchor;
          saw_anchor_block_ = true;
        } else if (name == "tag") {
          block_ = Block::Tag;
          saw_tag_block_ = true;
        } else {
          fail("unknown block [[" + std::string(name) + "]]");
        }
        block_line_ = line_;
        return;
      }
      if (!line.ends_with("]")) fail("unterminated section header");
      auto name = trim(line.substr(1, line.size() - 2));
      if (name != "arena" && name != "radio" && name != "dynamics" && name != "estimator")
        fail("unknown section [" + std::string(name) + "]");
      block_ = Block::Section;
      section_ = std::string(name);
      return;
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail("missing key");
    if (value.empty()) fail("missing value for '" + key + "'");
    if (!keys_.insert(key).second) fail("duplicate key '" + key + "'");

    switch (block_) {
      case Block::Anchor:
        anchor_key(key, value);
        return;
      case Block::Tag:
        tag_key(key, value);
        return;
      case Block::Section:
        if (key.find('.') == std::string::npos) key = section_ + "." + key;
        break;
      case Block::None:
        break;
    }
    global_key(s, key, value);
  }

  void finish_block(Scenario&) {
    if (block_ == Block::Anchor) {
      if (!cur_id_) fail_block("[[anchor]] block missing 'id'");
      if (!cur_point_) fail_block("[[anchor]] block missing 'position'");
      anchors_.push_back({*cur_id_, *cur_point_});
    } else if (block_ == Block::Tag) {
      if (!cur_id_) fail_block("[[tag]] block missing 'id'");
      if (!cur_point_) fail_block("[[tag]] block missing 'initial_position'");
      if (!cur_rect_) fail_block("[[tag]] block missing 'territory'");
      tags_.push_back({*cur_id_, *cur_point_, *cur_rect_, cur_uncertainty_.value_or(1.0)});
    }
    cur_id_.reset();
    cur_point_.reset();
    cur_rect_.reset();
    cur_uncertainty_.reset();
    block_ = Block::None;
  }

  [[noreturn]] void fail_block(const std::string& msg) const {
    throw Error(ErrorKind::Config, "line " + std::to_string(block_line_) + ": " + msg);
  }

  void anchor_key(const std::string& key, std::string_view v) {
    if (key == "id")
      cur_id_ = to_id(v);
    else if (key == "position")
      cur_point_ = to_point(key, v);
    else
      fail("unknown key '" + key + "' in [[anchor]]");
  }

  void tag_key(const std::string& key, std::string_view v) {
    if (key == "id")
      cur_id_ = to_id(v);
    else if (key == "initial_position")
      cur_point_ = to_point(key, v);
    else if (key == "territory")
      cur_rect_ = to_rect(key, v);
    else if (key == "initial_uncertainty")
      cur_uncertainty_ = to_number(key, v);
    else
      fail("unknown key '" + key + "' in [[tag]]");
  }

  void global_key(Scenario& s, const std::string& key, std::string_view v) {
    const std::map<std::string, double*> numbers = {
        {"arena.width", &s.arena.width},
        {"arena.height", &s.arena.height},
        {"radio.range", &s.radio.range},
        {"radio.path_loss_exponent", &s.radio.path_loss_exponent},
        {"radio.reference_distance", &s.radio.reference_distance},
        {"radio.reference_power", &s.radio.reference_power},
        {"radio.shadowing_sigma", &s.radio.shadowing_sigma},
        {"dynamics.growth_factor_low", &s.dynamics.growth_factor_low},
        {"dynamics.growth_factor_three", &s.dynamics.growth_factor_three},
        {"dynamics.decay_alpha", &s.dynamics.decay_alpha},
        {"dynamics.u_min", &s.dynamics.u_min},
        {"dynamics.u_max", &s.dynamics.u_max},
        {"dynamics.speed", &s.dynamics.speed},
        {"dynamics.heading_sigma", &s.dynamics.heading_sigma},
        {"estimator.centroid_degree_g", &s.estimator.centroid_degree_g},
        {"estimator.collinearity_epsilon", &s.estimator.collinearity_epsilon},
        {"estimator.tag_trust_max_uncertainty", &s.estimator.tag_trust_max_uncertainty},
    };
    if (auto it = numbers.find(key); it != numbers.end()) {
      *it->second = to_number(key, v);
    } else if (key == "estimator.refine_iterations") {
      s.estimator.refine_iterations = to_int(key, v);
    } else if (key == "estimator.method") {
      if (v == "trilaterate")
        s.estimator.method = EstimatorMethod::Trilaterate;
      else if (v == "weighted_centroid")
        s.estimator.method = EstimatorMethod::WeightedCentroid;
      else
        fail("type mismatch for 'estimator.method': expected trilaterate or weighted_centroid, got '" +
             std::string(v) + "'");
    } else if (key == "tag_links_enabled") {
      if (v == "true")
        s.tag_links_enabled = true;
      else if (v == "false")
        s.tag_links_enabled = false;
      else
        fail("type mismatch for 'tag_links_enabled': expected true or false, got '" +
             std::string(v) + "'");
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  std::string to_id(std::string_view v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    std::string id(v);
    if (!valid_id(id)) fail("invalid id '" + id + "'");
    return id;
  }

  double to_number(const std::string& key, std::string_view v) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
      fail("type mismatch for '" + key + "': expected a number, got '" + std::string(v) + "'");
    return out;
  }

  int to_int(const std::string& key, std::string_view v) {
    int out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
      fail("type mismatch for '" + key + "': expected an integer, got '" + std::string(v) + "'");
    return out;
  }

  std::vector<double> to_list(const std::string& key, std::string_view v, std::size_t n,
                              const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
      auto comma = v.find(',', pos);
      auto item = trim(v.substr(pos, comma == std::string_view::npos ? v.npos : comma - pos));
      double d = 0.0;
      auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
      if (item.empty() || ec != std::errc() || p != item.data() + item.size()) break;
      out.push_back(d);
      if (comma == std::string_view::npos) {
        if (out.size() == n) return out;
        break;
      }
      pos = comma + 1;
    }
    fail("type mismatch for '" + key + "': expected " + what + ", got '" + std::string(v) + "'");
  }

  Point to_point(const std::string& key, std::string_view v) {
    auto xs = to_list(key, v, 2, "a point 'x, y'");
    return {xs[0], xs[1]};
  }

  Rect to_rect(const std::string& key, std::string_view v) {
    auto xs = to_list(key, v, 4, "a rectangle 'xmin, ymin, xmax, ymax'");
    return {xs[0], xs[1], xs[2], xs[3]};
  }

  std::string_view text_;
  int line_ = 0;
  int block_line_ = 0;
  Block block_ = Block::None;
  std::string section_;
  std::set<std::string> keys_;
  bool saw_anchor_block_ = false;
  bool saw_tag_block_ = false;
  std::vector<AnchorSpec> anchors_;
  std::vector<TagSpec> tags_;
  std::optional<std::string> cur_id_;
  std::optional<Point> cur_point_;
  std::optional<Rect> cur_rect_;
  std::optional<double> cur_uncertainty_;
};

}  // namespace

Scenario parse_scenario(std::string_view text) { return Parser(text).parse(); }

std::string render_scenario(const Scenario& s) {
  std::ostringstream o;
  o << "tag_links_enabled = " << (s.tag_links_enabled ? "true" : "false") << "\n";
  o << "\n[arena]\n"
    << "width = " << fmt(s.arena.width) << "\n"
    << "height = " << fmt(s.arena.height) << "\n";
  o << "\n[radio]\n"
    << "range = " << fmt(s.radio.range) << "\n"
    << "path_loss_exponent = " << fmt(s.radio.path_loss_exponent) << "\n"
    << "reference_distance = " << fmt(s.radio.reference_distance) << "\n"
    << "reference_power = " << fmt(s.radio.reference_power) << "\n"
    << "shadowing_sigma = " << fmt(s.radio.shadowing_sigma) << "\n";
  const auto& d = s.dynamics;
  o << "\n[dynamics]\n"
    << "growth_factor_low = " << fmt(d.growth_factor_low) << "\n"
    << "growth_factor_three = " << fmt(d.growth_factor_three) << "\n"
    << "decay_alpha = " << fmt(d.decay_alpha) << "\n"
    << "u_min = " << fmt(d.u_min) << "\n"
    << "u_max = " << fmt(d.u_max) << "\n"
    << "speed = " << fmt(d.speed) << "\n"
    << "heading_sigma = " << fmt(d.heading_sigma) << "\n";
  const auto& e = s.estimator;
  o << "\n[estimator]\n"
    << "method = " << to_string(e.method) << "\n"
    << "centroid_degree_g = " << fmt(e.centroid_degree_g) << "\n"
    << "refine_iterations = " << e.refine_iterations << "\n"
    << "collinearity_epsilon = " << fmt(e.collinearity_epsilon) << "\n"
    << "tag_trust_max_uncertainty = " << fmt(e.tag_trust_max_uncertainty) << "\n";
  for (const auto& a : s.anchors) {
    o << "\n[[anchor]]\n"
      << "id = " << a.id << "\n"
      << "position = " << fmt(a.position.x) << ", " << fmt(a.position.y) << "\n";
  }
  for (const auto& t : s.tags) {
    o << "\n[[tag]]\n"
      << "id = " << t.id << "\n"
      << "initial_position = " << fmt(t.initial_position.x) << ", " << fmt(t.initial_position.y)
      << "\n"
      << "territory = " << fmt(t.territory.xmin) << ", " << fmt(t.territory.ymin) << ", "
      << fmt(t.territory.xmax) << ", " << fmt(t.territory.ymax) << "\n"
      << "initial_uncertainty = " << fmt(t.initial_uncertainty) << "\n";
  }
  return o.str();
}

Scenario load_scenario(const std::string& path_or_default) {
  if (path_or_default == "default") return default_scenario();
  std::ifstream in(path_or_default, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot open scenario file '" + path_or_default + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path_or_default + ": " + e.what());
  }
}

}  // namespace wsnloc
