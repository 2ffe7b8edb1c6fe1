#pragma once

#include "vorospace/halfedge.hpp"
#include "vorospace/geometry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vw {

enum class RunMode { Nvd, Fvd, Order };

RunMode parse_run_mode(const std::string& text);
std::string to_string(RunMode mode);

struct RunOptions {
  RunMode mode = RunMode::Nvd;
  int max_k = 1;
  /// Absent: constant-workspace path for nvd/fvd, K^2 for order.
  std::optional<std::size_t> workspace;
  bool enforce = false;
  std::uint64_t seed = 0;
};

struct RunReport {
  std::size_t n = 0;
  RunMode mode = RunMode::Nvd;
  int K = 1;
  std::optional<std::size_t> s;
  std::uint64_t reads = 0;
  std::int64_t peak_words = 0;
  std::int64_t budget_words = 0;
  /// Index k; entry 0 unused.
  std::vector<std::uint64_t> emitted_per_order;
  double wall_seconds = 0;
};

/// Runs one construction over a fresh arena and ledger. Records go to out in
/// emission order. Throws ModelViolation, ConfigError or DegenerateError.
RunReport execute_run(const std::vector<Site>& sites, const RunOptions& options,
                      const std::function<void(const HalfEdge&)>& out);

/// One-line JSON. Wall time is left out unless asked for, so reports of
/// identical runs are identical.
std::string report_json(const RunReport& report, bool with_time);

}  // namespace vw
