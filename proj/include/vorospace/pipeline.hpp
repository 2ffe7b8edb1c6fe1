#pragma once

#include "vorospace/order_k.hpp"

#include <cstdint>
#include <stdexcept>

namespace vw {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  int K = 1;
  std::size_t s = 1;
  /// max(1, floor(s / K^2)): slots per order.
  std::size_t s_prime = 1;
  std::uint64_t seed = 0;

  /// Throws ConfigError when K < 1 or K^2 > s.
  static PipelineConfig make(int K, std::size_t s, std::uint64_t seed = 0);
};

/// Orders 1..K, each produced by re-running the order below. Order 1 comes
/// from the trade-off algorithm with s' slots and is reported as undirected
/// records; higher orders are reported as half-edges. Only the first run of
/// each order reports to the sink, so records arrive grouped by k.
class Pipeline {
 public:
  Pipeline(const SiteSource& src, PipelineConfig config, WorkLedger& ledger, OutputSink& sink);

  /// One full run of order k, pushing every k-half-edge to out.
  void produce(int k, const HalfEdgeVisitor& out);
  void run();

  /// Number of runs started per order (index k).
  const std::vector<int>& runs() const { return runs_; }

 private:
  const SiteSource& src_;
  PipelineConfig config_;
  WorkLedger& ledger_;
  OutputSink& sink_;
  std::vector<int> runs_;
};

/// Throws ConfigError when K >= n.
void pipeline_run(const SiteSource& src, const PipelineConfig& config, WorkLedger& ledger, OutputSink& sink);

}  // namespace vw
