#include "wsnloc/wsnloc.h"

#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "wsnloc/engine.hpp"
#include "wsnloc/error.hpp"
#include "wsnloc/scenario.hpp"
#include "wsnloc/svg.hpp"
#include "wsnloc/trace_io.hpp"

struct wsnloc_scenario {
  wsnloc::Scenario value;
};

struct wsnloc_trace {
  wsnloc::Trace value;
  std::vector<wsnloc::DivergenceVerdict> verdicts;
};

struct wsnloc_comparison {
  wsnloc::ComparisonReport value;
};

namespace {

thread_local std::string g_last_error;

wsnloc_status fail(wsnloc_status code, std::string msg) {
  g_last_error = std::move(msg);
  return code;
}

wsnloc_status from_kind(wsnloc::ErrorKind kind) {
  using wsnloc::ErrorKind;
  switch (kind) {
    case ErrorKind::Config:
      return WSNLOC_ERROR_CONFIG;
    case ErrorKind::Io:
      return WSNLOC_ERROR_IO;
    case ErrorKind::Trace:
      return WSNLOC_ERROR_TRACE;
    case ErrorKind::OutOfRange:
      return WSNLOC_ERROR_OUT_OF_RANGE;
    case ErrorKind::NoFixes:
    case ErrorKind::InsufficientFixes:
    case ErrorKind::DegenerateGeometry:
      return WSNLOC_ERROR_INVALID_ARG;
  }
  return WSNLOC_ERROR_INTERNAL;
}

template <class F>
wsnloc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const wsnloc::Error& e) {
    return fail(from_kind(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WSNLOC_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WSNLOC_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(WSNLOC_ERROR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  s.copy(out, s.size());
  out[s.size()] = '\0';
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw wsnloc::Error(wsnloc::ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << contents;
  out.close();
  if (!out) throw wsnloc::Error(wsnloc::ErrorKind::Io, "failed writing '" + path + "'");
}

wsnloc::TraceTable read_table(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wsnloc::Error(wsnloc::ErrorKind::Io, std::string("cannot open trace '") + path + "'");
  try {
    return wsnloc::read_trace_csv(in);
  } catch (const wsnloc::Error& e) {
    throw wsnloc::Error(e.kind(), std::string(path) + ": " + e.what());
  }
}

wsnloc::RenderStyle to_style(const wsnloc_render_style* style) {
  wsnloc::RenderStyle out;
  if (style) {
    out.anchor_glyph_radius = style->anchor_glyph_radius;
    out.tag_glyph_scale = style->tag_glyph_scale;
    out.show_links = style->show_links != 0;
    out.show_territories = style->show_territories != 0;
    out.canvas_scale = style->canvas_scale;
  }
  if (!(out.anchor_glyph_radius > 0 && out.tag_glyph_scale > 0 && out.canvas_scale > 0))
    throw wsnloc::Error(wsnloc::ErrorKind::Config, "render style sizes must be positive");
  return out;
}

void render_one(const wsnloc::TraceTable& table, std::int64_t step, const char* out_dir,
                const wsnloc::RenderStyle& style) {
  const std::string svg = wsnloc::render_step_svg(table, step, style);
  const auto path = std::filesystem::path(out_dir) / ("step_" + std::to_string(step) + ".svg");
  write_file(path.string(), svg);
}

#define WSNLOC_REQUIRE(cond, what) \
  if (!(cond)) return fail(WSNLOC_ERROR_INVALID_ARG, what)

}  // namespace

extern "C" {

const char* wsnloc_version(void) { return "1.0.0"; }

const char* wsnloc_last_error(void) { return g_last_error.c_str(); }

void wsnloc_string_free(char* s) { delete[] s; }

wsnloc_status wsnloc_scenario_default(wsnloc_scenario** out) {
  WSNLOC_REQUIRE(out, "null output pointer");
  return guarded([&] {
    *out = new wsnloc_scenario{wsnloc::default_scenario()};
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_scenario_parse(const char* text, wsnloc_scenario** out) {
  WSNLOC_REQUIRE(text && out, "null argument");
  return guarded([&] {
    *out = new wsnloc_scenario{wsnloc::parse_scenario(text)};
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_scenario_load(const char* path, wsnloc_scenario** out) {
  WSNLOC_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new wsnloc_scenario{wsnloc::load_scenario(path)};
    return WSNLOC_OK;
  });
}

void wsnloc_scenario_free(wsnloc_scenario* s) { delete s; }

wsnloc_status wsnloc_scenario_render(const wsnloc_scenario* s, char** text) {
  WSNLOC_REQUIRE(s && text, "null argument");
  return guarded([&] {
    *text = dup_string(wsnloc::render_scenario(s->value));
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_scenario_validate(const wsnloc_scenario* s, size_t* count, char** messages) {
  WSNLOC_REQUIRE(s && count, "null argument");
  return guarded([&] {
    const auto v = wsnloc::validate_scenario(s->value);
    *count = v.size();
    if (messages) {
      std::string joined;
      for (const auto& item : v) joined += item.path + ": " + item.reason + "\n";
      *messages = dup_string(joined);
    }
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_scenario_set_tag_links(wsnloc_scenario* s, int enabled) {
  WSNLOC_REQUIRE(s, "null scenario");
  s->value.tag_links_enabled = enabled != 0;
  return WSNLOC_OK;
}

wsnloc_status wsnloc_scenario_counts(const wsnloc_scenario* s, size_t* anchors, size_t* tags) {
  WSNLOC_REQUIRE(s, "null scenario");
  if (anchors) *anchors = s->value.anchors.size();
  if (tags) *tags = s->value.tags.size();
  return WSNLOC_OK;
}

wsnloc_status wsnloc_run(const wsnloc_scenario* s, int64_t steps, uint64_t seed, wsnloc_trace** out) {
  WSNLOC_REQUIRE(s && out, "null argument");
  WSNLOC_REQUIRE(steps >= 1, "steps must be >= 1");
  return guarded([&] {
    auto* t = new wsnloc_trace{wsnloc::run(s->value, steps, seed), {}};
    t->verdicts = wsnloc::detect_divergence(t->value);
    *out = t;
    return WSNLOC_OK;
  });
}

void wsnloc_trace_free(wsnloc_trace* t) { delete t; }

wsnloc_status wsnloc_trace_step_count(const wsnloc_trace* t, int64_t* steps) {
  WSNLOC_REQUIRE(t && steps, "null argument");
  *steps = static_cast<int64_t>(t->value.steps.size());
  return WSNLOC_OK;
}

wsnloc_status wsnloc_trace_tag_count(const wsnloc_trace* t, size_t* tags) {
  WSNLOC_REQUIRE(t && tags, "null argument");
  *tags = t->value.scenario.tags.size();
  return WSNLOC_OK;
}

wsnloc_status wsnloc_trace_tag_uncertainty(const wsnloc_trace* t, size_t tag_index, int64_t step,
                                           double* uncertainty) {
  WSNLOC_REQUIRE(t && uncertainty, "null argument");
  WSNLOC_REQUIRE(tag_index < t->value.scenario.tags.size(), "tag index out of range");
  if (step < 0 || step >= static_cast<int64_t>(t->value.steps.size()))
    return fail(WSNLOC_ERROR_OUT_OF_RANGE, "step " + std::to_string(step) + " not in trace");
  const auto& id = t->value.scenario.tags[tag_index].id;
  *uncertainty = t->value.steps[static_cast<size_t>(step)].find(id)->uncertainty;
  return WSNLOC_OK;
}

wsnloc_status wsnloc_trace_tag_diverged(const wsnloc_trace* t, size_t tag_index, int* diverged) {
  WSNLOC_REQUIRE(t && diverged, "null argument");
  WSNLOC_REQUIRE(tag_index < t->value.scenario.tags.size(), "tag index out of range");
  const auto& id = t->value.scenario.tags[tag_index].id;
  for (const auto& v : t->verdicts) {
    if (v.tag_id == id) {
      *diverged = v.diverged ? 1 : 0;
      return WSNLOC_OK;
    }
  }
  return fail(WSNLOC_ERROR_INTERNAL, "no verdict for tag " + id);
}

wsnloc_status wsnloc_trace_write_csv(const wsnloc_trace* t, const char* path) {
  WSNLOC_REQUIRE(t && path, "null argument");
  return guarded([&] {
    std::ostringstream o;
    wsnloc::write_trace_csv(o, t->value);
    write_file(path, o.str());
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_trace_write_summary(const wsnloc_trace* t, const char* path) {
  WSNLOC_REQUIRE(t && path, "null argument");
  return guarded([&] {
    write_file(path, wsnloc::summary_text(t->value, false));
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_trace_summary(const wsnloc_trace* t, int color, char** text) {
  WSNLOC_REQUIRE(t && text, "null argument");
  return guarded([&] {
    *text = dup_string(wsnloc::summary_text(t->value, color != 0));
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_compare(const wsnloc_scenario* s, int64_t steps, uint64_t seed,
                             wsnloc_comparison** out) {
  WSNLOC_REQUIRE(s && out, "null argument");
  WSNLOC_REQUIRE(steps >= 1, "steps must be >= 1");
  return guarded([&] {
    *out = new wsnloc_comparison{wsnloc::compare_runs(s->value, steps, seed)};
    return WSNLOC_OK;
  });
}

void wsnloc_comparison_free(wsnloc_comparison* c) { delete c; }

wsnloc_status wsnloc_comparison_diverged_counts(const wsnloc_comparison* c, int* links_off,
                                                int* links_on) {
  WSNLOC_REQUIRE(c, "null comparison");
  if (links_off) *links_off = c->value.diverged_count_off();
  if (links_on) *links_on = c->value.diverged_count_on();
  return WSNLOC_OK;
}

wsnloc_status wsnloc_comparison_write_csv(const wsnloc_comparison* c, const char* path) {
  WSNLOC_REQUIRE(c && path, "null argument");
  return guarded([&] {
    std::ostringstream o;
    wsnloc::write_compare_csv(o, c->value);
    write_file(path, o.str());
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_comparison_write_report(const wsnloc_comparison* c, const char* path) {
  WSNLOC_REQUIRE(c && path, "null argument");
  return guarded([&] {
    write_file(path, wsnloc::report_text(c->value, false));
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_comparison_report(const wsnloc_comparison* c, int color, char** text) {
  WSNLOC_REQUIRE(c && text, "null argument");
  return guarded([&] {
    *text = dup_string(wsnloc::report_text(c->value, color != 0));
    return WSNLOC_OK;
  });
}

void wsnloc_render_style_default(wsnloc_render_style* style) {
  if (!style) return;
  const wsnloc::RenderStyle d;
  style->anchor_glyph_radius = d.anchor_glyph_radius;
  style->tag_glyph_scale = d.tag_glyph_scale;
  style->show_links = d.show_links ? 1 : 0;
  style->show_territories = d.show_territories ? 1 : 0;
  style->canvas_scale = d.canvas_scale;
}

wsnloc_status wsnloc_trace_file_step_count(const char* trace_path, int64_t* steps) {
  WSNLOC_REQUIRE(trace_path && steps, "null argument");
  return guarded([&] {
    *steps = read_table(trace_path).step_count();
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_render_svg(const char* trace_path, int64_t step, const char* out_dir,
                                const wsnloc_render_style* style) {
  WSNLOC_REQUIRE(trace_path && out_dir, "null argument");
  return guarded([&] {
    const auto s = to_style(style);
    render_one(read_table(trace_path), step, out_dir, s);
    return WSNLOC_OK;
  });
}

wsnloc_status wsnloc_render_svg_every(const char* trace_path, int64_t every, const char* out_dir,
                                      const wsnloc_render_style* style, int64_t* written) {
  WSNLOC_REQUIRE(trace_path && out_dir, "null argument");
  WSNLOC_REQUIRE(every >= 1, "--steps-every must be >= 1");
  return guarded([&] {
    const auto s = to_style(style);
    const auto table = read_table(trace_path);
    const std::int64_t n = table.step_count();
    if (n == 0) throw wsnloc::Error(wsnloc::ErrorKind::Trace, "trace has no data rows");
    std::int64_t count = 0;
    for (std::int64_t step = 0; step < n; step += every, ++count) render_one(table, step, out_dir, s);
    if (written) *written = count;
    return WSNLOC_OK;
  });
}

}  // extern "C"
