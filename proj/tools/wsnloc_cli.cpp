// wsnloc command-line front end. Talks to the simulator only through the C API.
//
//   wsnloc simulate --scenario default --steps 2000 --seed 42 --tag-links off --out out/
//   wsnloc compare  --scenario default --steps 2000 --seed 42 --out out/
//   wsnloc render   --trace out/trace.csv --step 0
//
// Exit codes: 0 success, 1 user or config error, 2 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <system_error>

#include "wsnloc/wsnloc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitIo = 2;

int exit_code(wsnloc_status st) {
  switch (st) {
    case WSNLOC_OK:
      return kExitOk;
    case WSNLOC_ERROR_IO:
      return kExitIo;
    default:
      return kExitUser;
  }
}

int report(wsnloc_status st) {
  if (st != WSNLOC_OK) std::cerr << "wsnloc: " << wsnloc_last_error() << "\n";
  return exit_code(st);
}

bool use_color() { return std::getenv("WSNLOC_NO_COLOR") == nullptr; }

struct ScenarioDeleter {
  void operator()(wsnloc_scenario* s) const { wsnloc_scenario_free(s); }
};
struct TraceDeleter {
  void operator()(wsnloc_trace* t) const { wsnloc_trace_free(t); }
};
struct ComparisonDeleter {
  void operator()(wsnloc_comparison* c) const { wsnloc_comparison_free(c); }
};
struct StringDeleter {
  void operator()(char* s) const { wsnloc_string_free(s); }
};

using ScenarioPtr = std::unique_ptr<wsnloc_scenario, ScenarioDeleter>;
using TracePtr = std::unique_ptr<wsnloc_trace, TraceDeleter>;
using ComparisonPtr = std::unique_ptr<wsnloc_comparison, ComparisonDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct RunArgs {
  std::string scenario = "default";
  std::int64_t steps = 2000;
  std::uint64_t seed = 42;
  std::string tag_links = "off";
  std::string out = "out";
};

struct RenderArgs {
  std::string trace;
  std::optional<std::int64_t> step;
  std::optional<std::int64_t> every;
  std::string out;
};

int load(const std::string& path, ScenarioPtr& out) {
  wsnloc_scenario* raw = nullptr;
  const auto st = wsnloc_scenario_load(path.c_str(), &raw);
  out.reset(raw);
  if (st != WSNLOC_OK) return report(st);

  std::size_t count = 0;
  char* msgs = nullptr;
  if (auto vst = wsnloc_scenario_validate(raw, &count, &msgs); vst != WSNLOC_OK) return report(vst);
  StringPtr holder(msgs);
  if (count > 0) {
    std::cerr << "wsnloc: invalid scenario '" << path << "':\n" << msgs;
    return kExitUser;
  }
  return kExitOk;
}

int make_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "wsnloc: cannot create output directory '" << dir << "': " << ec.message() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

std::string join(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

int cmd_simulate(const RunArgs& a) {
  ScenarioPtr scenario;
  if (int rc = load(a.scenario, scenario); rc != kExitOk) return rc;
  wsnloc_scenario_set_tag_links(scenario.get(), a.tag_links == "on" ? 1 : 0);

  wsnloc_trace* raw = nullptr;
  auto st = wsnloc_run(scenario.get(), a.steps, a.seed, &raw);
  TracePtr trace(raw);
  if (st != WSNLOC_OK) return report(st);

  if (int rc = make_out_dir(a.out); rc != kExitOk) return rc;
  if ((st = wsnloc_trace_write_csv(trace.get(), join(a.out, "trace.csv").c_str())) != WSNLOC_OK)
    return report(st);
  if ((st = wsnloc_trace_write_summary(trace.get(), join(a.out, "summary.txt").c_str())) != WSNLOC_OK)
    return report(st);

  char* text = nullptr;
  if ((st = wsnloc_trace_summary(trace.get(), use_color() ? 1 : 0, &text)) != WSNLOC_OK) return report(st);
  StringPtr holder(text);
  std::cout << text;
  return kExitOk;
}

int cmd_compare(const RunArgs& a) {
  ScenarioPtr scenario;
  if (int rc = load(a.scenario, scenario); rc != kExitOk) return rc;

  wsnloc_comparison* raw = nullptr;
  auto st = wsnloc_compare(scenario.get(), a.steps, a.seed, &raw);
  ComparisonPtr cmp(raw);
  if (st != WSNLOC_OK) return report(st);

  if (int rc = make_out_dir(a.out); rc != kExitOk) return rc;
  if ((st = wsnloc_comparison_write_csv(cmp.get(), join(a.out, "compare.csv").c_str())) != WSNLOC_OK)
    return report(st);
  if ((st = wsnloc_comparison_write_report(cmp.get(), join(a.out, "report.txt").c_str())) != WSNLOC_OK)
    return report(st);

  char* text = nullptr;
  if ((st = wsnloc_comparison_report(cmp.get(), use_color() ? 1 : 0, &text)) != WSNLOC_OK)
    return report(st);
  StringPtr holder(text);
  std::cout << text;
  return kExitOk;
}

int cmd_render(const RenderArgs& a) {
  std::string out = a.out;
  if (out.empty()) {
    out = std::filesystem::path(a.trace).parent_path().string();
    if (out.empty()) out = ".";
  }
  if (int rc = make_out_dir(out); rc != kExitOk) return rc;

  wsnloc_render_style style;
  wsnloc_render_style_default(&style);

  if (a.every) {
    std::int64_t written = 0;
    const auto st = wsnloc_render_svg_every(a.trace.c_str(), *a.every, out.c_str(), &style, &written);
    if (st != WSNLOC_OK) return report(st);
    std::cout << "wrote " << written << " snapshot(s) to " << out << "\n";
    return kExitOk;
  }
  const std::int64_t step = a.step.value_or(0);
  const auto st = wsnloc_render_svg(a.trace.c_str(), step, out.c_str(), &style);
  if (st != WSNLOC_OK) return report(st);
  std::cout << "wrote " << join(out, ("step_" + std::to_string(step) + ".svg").c_str()) << "\n";
  return kExitOk;
}

void add_run_options(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--scenario", a.scenario, "Scenario config file, or 'default'")->capture_default_str();
  cmd->add_option("--steps", a.steps, "Number of simulation steps")
      ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()))
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", a.out, "Output directory (created; files overwritten)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobile WSN localization simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wsnloc_version()));

  RunArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation and write trace.csv + summary.txt");
  add_run_options(simulate, sim_args);
  simulate->add_option("--tag-links", sim_args.tag_links, "Tag-to-tag links")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();

  RunArgs cmp_args;
  auto* compare = app.add_subcommand("compare", "Run links-off and links-on with one seed; write compare.csv + report.txt");
  add_run_options(compare, cmp_args);

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "Write SVG snapshots from a trace.csv");
  render->add_option("--trace", render_args.trace, "trace.csv written by simulate")->required();
  auto* step_opt = render->add_option("--step", render_args.step, "Step index to render (default 0)")
                       ->check(CLI::NonNegativeNumber);
  auto* every_opt = render->add_option("--steps-every", render_args.every, "Render every k-th step")
                        ->check(CLI::PositiveNumber);
  step_opt->excludes(every_opt);
  render->add_option("--out", render_args.out, "Output directory (default: the trace's directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUser;
  }

  try {
    if (*simulate) return cmd_simulate(sim_args);
    if (*compare) return cmd_compare(cmp_args);
    if (*render) return cmd_render(render_args);
  } catch (const std::exception& e) {
    std::cerr << "wsnloc: " << e.what() << "\n";
    return kExitUser;
  }
  return kExitUser;
}
