#include "vorospace/memory.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace vw {

Site WorkspaceSites::fetch(int index) const {
  for (const Site& s : sites_) {
    if (s.index == index) return s;
  }
  throw std::out_of_range("no site with index " + std::to_string(index) + " in workspace");
}

ReadOnlyArena::ReadOnlyArena(std::vector<Site> sites) : sites_(std::move(sites)) {}

Site ReadOnlyArena::read(std::size_t i) const {
  if (i >= sites_.size()) {
    throw std::out_of_range("arena read " + std::to_string(i) + " of " +
                            std::to_string(sites_.size()));
  }
  ++reads_;
  return sites_[i];
}

std::int64_t budget_constant() {
  const char* env = std::getenv("VW_BUDGET_CONST");
  if (env == nullptr) return kDefaultBudgetConstant;
  std::int64_t c = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, c);
  if (ec != std::errc{} || ptr != end || c <= 0) return kDefaultBudgetConstant;
  return c;
}

WorkLedger::WorkLedger(std::int64_t budget_words, Mode mode) : budget_(budget_words), mode_(mode) {
  if (budget_words <= 0) throw std::invalid_argument("ledger budget must be positive");
}

WorkLedger WorkLedger::for_workspace(std::int64_t s, Mode mode) {
  return WorkLedger(budget_constant() * s, mode);
}

void WorkLedger::charge(std::int64_t words) {
  if (words < 0) throw std::invalid_argument("negative charge");
  if (mode_ == Mode::Enforcing && live_ + words > budget_) {
    throw ModelViolation("workspace budget exceeded: " + std::to_string(live_ + words) + " > " +
                         std::to_string(budget_) + " words");
  }
  live_ += words;
  if (live_ > peak_) peak_ = live_;
}

void WorkLedger::release(std::int64_t words) {
  if (words < 0 || words > live_) throw std::logic_error("ledger release mismatch");
  live_ -= words;
}

Reservation::Reservation(WorkLedger& ledger, std::int64_t words) : ledger_(ledger) {
  ledger_.charge(words);
  words_ = words;
}

Reservation::~Reservation() { ledger_.release(words_); }

void Reservation::resize(std::int64_t words) {
  if (words > words_) {
    ledger_.charge(words - words_);
  } else {
    ledger_.release(words_ - words);
  }
  words_ = words;
}

void OutputSink::emit(const HalfEdge& record) {
  if (closed_) throw ModelViolation("emit on a closed sink");
  if (record.k < last_k_) {
    throw ModelViolation("order regression: k=" + std::to_string(record.k) + " after k=" +
                         std::to_string(last_k_));
  }
  last_k_ = record.k;
  if (per_order_.size() <= static_cast<std::size_t>(record.k)) per_order_.resize(record.k + 1, 0);
  ++per_order_[record.k];
  ++emitted_;
  if (consumer_) consumer_(record);
}

}  // namespace vw
