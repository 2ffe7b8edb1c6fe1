#include "vorospace/run.hpp"

#include "vorospace/pipeline.hpp"
#include "vorospace/scan_voronoi.hpp"
#include "vorospace/tradeoff.hpp"

#include <json.hpp>

#include <chrono>

namespace vw {

RunMode parse_run_mode(const std::string& text) {
  if (text == "nvd") return RunMode::Nvd;
  if (text == "fvd") return RunMode::Fvd;
  if (text == "order") return RunMode::Order;
  throw ConfigError("unknown mode '" + text + "'");
}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Nvd: return "nvd";
    case RunMode::Fvd: return "fvd";
    case RunMode::Order: return "order";
  }
  return "?";
}

RunReport execute_run(const std::vector<Site>& sites, const RunOptions& options,
                      const std::function<void(const HalfEdge&)>& out) {
  RunReport report;
  report.n = sites.size();
  report.mode = options.mode;
  report.K = options.mode == RunMode::Order ? options.max_k : 1;
  const auto ledger_mode = options.enforce ? WorkLedger::Mode::Enforcing : WorkLedger::Mode::Observing;

  std::size_t s = 1;
  if (options.mode == RunMode::Order) {
    s = options.workspace.value_or(static_cast<std::size_t>(options.max_k) * static_cast<std::size_t>(options.max_k));
    report.s = s;
  } else if (options.workspace) {
    s = *options.workspace;
    if (s == 0) throw ConfigError("workspace must be positive");
    report.s = s;
  }
  // Validates before any work is charged.
  std::optional<PipelineConfig> config;
  if (options.mode == RunMode::Order) config = PipelineConfig::make(options.max_k, s, options.seed);

  ReadOnlyArena arena(sites);
  WorkLedger ledger = WorkLedger::for_workspace(static_cast<std::int64_t>(s), ledger_mode);
  OutputSink sink(out);
  const auto start = std::chrono::steady_clock::now();
  switch (options.mode) {
    case RunMode::Nvd:
    case RunMode::Fvd: {
      const DiagramMode dm = options.mode == RunMode::Nvd ? DiagramMode::Nearest : DiagramMode::Farthest;
      auto emit = [&](const HalfEdge& e) { sink.emit(e); };
      if (options.workspace) run_tradeoff(arena, dm, s, ledger, emit);
      else enumerate_diagram(arena, dm, ledger, emit);
      break;
    }
    case RunMode::Order:
      pipeline_run(arena, *config, ledger, sink);
      break;
  }
  sink.close();
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.reads = arena.read_count();
  report.peak_words = ledger.peak();
  report.budget_words = ledger.budget();
  report.emitted_per_order = sink.emitted_per_order();
  return report;
}

std::string report_json(const RunReport& report, bool with_time) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["mode"] = to_string(report.mode);
  j["K"] = report.K;
  if (report.s) j["s"] = *report.s;
  else j["s"] = nullptr;
  j["reads"] = report.reads;
  j["peak_words"] = report.peak_words;
  j["budget_words"] = report.budget_words;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (std::size_t k = 1; k < report.emitted_per_order.size(); ++k) {
    if (report.emitted_per_order[k]) per[std::to_string(k)] = report.emitted_per_order[k];
  }
  j["emitted"] = per;
  if (with_time) j["wall_seconds"] = report.wall_seconds;
  return j.dump();
}

}  // namespace vw
