#pragma once

#include "vorospace/geometry.hpp"
#include "vorospace/halfedge.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vw {

/// Raised when a run breaks the workspace model: an enforcing ledger going
/// over budget, an order regression on the sink, or a write after close.
class ModelViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random access to a set of sites. Algorithms only ever see sites through
/// this interface, so the same code runs on the instrumented input and on
/// small site sets held in workspace.
class SiteSource {
 public:
  virtual ~SiteSource() = default;
  virtual std::size_t size() const = 0;
  virtual Site read(std::size_t i) const = 0;
  /// The site with the given index. On the input, index and position agree.
  virtual Site fetch(int index) const { return read(static_cast<std::size_t>(index)); }
};

/// The read-only input. Every read is counted; nothing is cached.
class ReadOnlyArena final : public SiteSource {
 public:
  explicit ReadOnlyArena(std::vector<Site> sites);

  std::size_t size() const override { return sites_.size(); }
  Site read(std::size_t i) const override;
  std::uint64_t read_count() const { return reads_; }

 private:
  std::vector<Site> sites_;
  mutable std::uint64_t reads_ = 0;
};

/// Sites copied into workspace. Reads are free; the copy itself is what the
/// ledger pays for.
class WorkspaceSites final : public SiteSource {
 public:
  WorkspaceSites() = default;
  explicit WorkspaceSites(std::vector<Site> sites) : sites_(std::move(sites)) {}

  std::size_t size() const override { return sites_.size(); }
  Site read(std::size_t i) const override { return sites_.at(i); }
  Site fetch(int index) const override;
  const std::vector<Site>& sites() const { return sites_; }

 private:
  std::vector<Site> sites_;
};

/// Word costs used by every charge. A word is a site index, one coordinate or
/// one table field. Endpoint coordinates of stored edges are derivable from
/// their defining sites and are not charged separately.
namespace words {
inline constexpr std::int64_t kSite = 3;
inline constexpr std::int64_t kPoint = 2;
inline constexpr std::int64_t kRay = 4;
/// Carrier pair, two bound parameters and the two bounding site indices.
inline constexpr std::int64_t kPiece = 6;
inline constexpr std::int64_t kPredicate = 4;
inline std::int64_t half_edge(int k) { return k + 3; }
inline std::int64_t cog_key(int) { return 2; }
}  // namespace words

/// Default budget constant c in budget = c * s.
inline constexpr std::int64_t kDefaultBudgetConstant = 64;

/// c from VW_BUDGET_CONST, or the default when unset or unparsable.
std::int64_t budget_constant();

class WorkLedger {
 public:
  enum class Mode { Enforcing, Observing };

  WorkLedger(std::int64_t budget_words, Mode mode);
  /// Budget c * s with c from budget_constant().
  static WorkLedger for_workspace(std::int64_t s, Mode mode);

  void charge(std::int64_t words);
  void release(std::int64_t words);

  std::int64_t budget() const { return budget_; }
  std::int64_t live() const { return live_; }
  std::int64_t peak() const { return peak_; }
  Mode mode() const { return mode_; }

 private:
  std::int64_t budget_;
  std::int64_t live_ = 0;
  std::int64_t peak_ = 0;
  Mode mode_;
};

/// Holds a charge for its lifetime. Can be resized while alive, which is how
/// growing tables and buffers are tracked.
class Reservation {
 public:
  Reservation(WorkLedger& ledger, std::int64_t words);
  ~Reservation();
  Reservation(const Reservation&) = delete;
  Reservation& operator=(const Reservation&) = delete;

  void resize(std::int64_t words);
  std::int64_t words() const { return words_; }

 private:
  WorkLedger& ledger_;
  std::int64_t words_ = 0;
};

template <class Body>
decltype(auto) ledger_scope(WorkLedger& ledger, std::int64_t words, Body&& body) {
  Reservation r(ledger, words);
  return std::forward<Body>(body)();
}

/// Write-once output. Records go straight to the consumer; the sink keeps
/// only counters, so nothing emitted can be read back.
class OutputSink {
 public:
  using Consumer = std::function<void(const HalfEdge&)>;

  explicit OutputSink(Consumer consumer) : consumer_(std::move(consumer)) {}

  void emit(const HalfEdge& record);
  void close() { closed_ = true; }

  std::uint64_t emitted() const { return emitted_; }
  /// Records per order, indexed by k (entry 0 unused).
  const std::vector<std::uint64_t>& emitted_per_order() const { return per_order_; }

 private:
  Consumer consumer_;
  std::uint64_t emitted_ = 0;
  std::vector<std::uint64_t> per_order_;
  int last_k_ = 0;
  bool closed_ = false;
};

}  // namespace vw
