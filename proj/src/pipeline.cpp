#include "vorospace/pipeline.hpp"

#include "vorospace/tradeoff.hpp"

namespace vw {

PipelineConfig PipelineConfig::make(int K, std::size_t s, std::uint64_t seed) {
  if (K < 1) throw ConfigError("max order must be at least 1");
  const auto square = static_cast<std::size_t>(K) * static_cast<std::size_t>(K);
  if (square > s) {
    throw ConfigError("max order " + std::to_string(K) + " needs workspace at least " + std::to_string(square) +
                      ", got " + std::to_string(s));
  }
  PipelineConfig c;
  c.K = K;
  c.s = s;
  c.s_prime = std::max<std::size_t>(1, s / square);
  c.seed = seed;
  return c;
}

Pipeline::Pipeline(const SiteSource& src, PipelineConfig config, WorkLedger& ledger, OutputSink& sink)
    : src_(src), config_(config), ledger_(ledger), sink_(sink), runs_(static_cast<std::size_t>(config.K) + 1, 0) {}

void Pipeline::produce(int k, const HalfEdgeVisitor& out) {
  const bool first = runs_[static_cast<std::size_t>(k)]++ == 0;
  if (k == 1) {
    run_tradeoff(src_, DiagramMode::Nearest, config_.s_prime, ledger_, [&](const HalfEdge& e) {
      if (first) sink_.emit(e);
      out(e);
      out(e.twin());
    });
    return;
  }
  lift_order(
      src_, k - 1, config_.s_prime, [&](const HalfEdgeVisitor& below) { produce(k - 1, below); }, ledger_,
      [&](const HalfEdge& f) {
        if (first) sink_.emit(f);
        out(f);
      });
}

void Pipeline::run() {
  produce(config_.K, [](const HalfEdge&) {});
}

void pipeline_run(const SiteSource& src, const PipelineConfig& config, WorkLedger& ledger, OutputSink& sink) {
  if (static_cast<std::size_t>(config.K) >= src.size()) {
    throw ConfigError("max order " + std::to_string(config.K) + " must be below the number of sites");
  }
  Pipeline(src, config, ledger, sink).run();
}

}  // namespace vw
