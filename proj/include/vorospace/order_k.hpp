#pragma once

#include "vorospace/geometry.hpp"
#include "vorospace/halfedge.hpp"
#include "vorospace/memory.hpp"

#include <deque>
#include <functional>
#include <optional>
#include <vector>

namespace vw {

enum class VertexClass { Old, New };

/// Old iff the head's extra site is among the closest sites. Throws
/// RecordError for an unbounded head.
VertexClass classify_head(const HalfEdge& e);

/// Bounded head that is a new vertex, so it sits on the boundary of the
/// (k+1)-cell containing e.
bool is_relevant(const HalfEdge& e);

/// Relevant, or heading off to infinity inside its (k+1)-cell. These are the
/// k-half-edges that own an interval of the (k+1)-cell boundary.
bool owns_interval(const HalfEdge& e);

/// Sum of the coordinates of a cell's defining sites (the centroid with the
/// common denominator cleared). Distinct cells of one order have distinct keys.
struct CogKey {
  Rational x;
  Rational y;

  bool operator==(const CogKey& o) const { return x == o.x && y == o.y; }
  bool operator<(const CogKey& o) const { return x < o.x || (x == o.x && y < o.y); }
};

CogKey cog_key(const SiteSource& src, const std::vector<int>& cell);

struct BigCell {
  CogKey key;
  std::vector<int> members;
};

/// Big cells of one order, sorted by key.
struct BigCellTableK {
  std::vector<BigCell> cells;

  bool contains(const CogKey& key) const;
  /// Ignores cells already present.
  void insert(BigCell cell);
};

/// A (k+1)-half-edge named by its closest set and its pair: the part of
/// bisector(x, y) where exactly `closest` is nearer than x and y.
struct EdgeLabel {
  int k = 1;
  std::vector<int> closest;
  Site x;
  Site y;
};

/// Trims the whole bisector of a label against the sites it absorbs.
struct OrderClip {
  EdgeLabel label;
  EdgePiece piece;
  bool alive = true;

  explicit OrderClip(EdgeLabel l);
  void absorb(const Site& z);
  HalfEdge result() const;
};

/// Walk along one interval of a (k+1)-cell boundary, counterclockwise from
/// the head of the k-half-edge that owns it.
struct IntervalWalk {
  enum class Stage { AtInfinity, Clip, Done };

  HalfEdge origin;
  /// Sorted defining sites of the (k+1)-cell.
  std::vector<int> cell;
  Stage stage = Stage::Clip;
  /// AtInfinity: the boundary is followed counterclockwise from this
  /// direction at infinity.
  Point from_dir;
  std::optional<EdgeLabel> next;
  /// Tail the next edge must have; nullopt when it comes in from infinity.
  std::optional<Point> expect_tail;
  int produced = 0;

  bool done() const { return stage == Stage::Done; }
};

std::int64_t walk_words(int k);

/// Walk for a k-half-edge that owns an interval. The first edge of a finite
/// head is decided locally from the three sites at the head.
IntervalWalk start_walk(const SiteSource& src, const HalfEdge& e);

/// One step for every unfinished walk: at most two passes over src in
/// batches. visitor receives each (k+1)-half-edge as it is found.
void successor_step(const SiteSource& src, std::vector<IntervalWalk>& walks, std::size_t batch,
                    WorkLedger& ledger, const std::function<void(IntervalWalk&, const HalfEdge&)>& visitor);

/// Pending k-half-edges waiting for a walk slot. Filled up to the low-water
/// mark s' before the consumer runs; never holds more than 3s'.
class EdgeBuffer {
 public:
  EdgeBuffer(WorkLedger& ledger, int k, std::size_t s_prime);

  void push(const HalfEdge& e);
  HalfEdge pop();
  std::size_t size() const { return queue_.size(); }
  bool empty() const { return queue_.empty(); }
  std::size_t low_water() const { return low_water_; }
  std::size_t capacity() const { return 3 * low_water_; }

 private:
  std::deque<HalfEdge> queue_;
  std::size_t low_water_;
  int k_;
  Reservation hold_;
};

using HalfEdgeVisitor = std::function<void(const HalfEdge&)>;
/// Runs one fresh pass of an order-k producer, pushing every k-half-edge.
using OrderStream = std::function<void(const HalfEdgeVisitor&)>;

/// Order-m diagram of sites held in workspace, as directed half-edges, lifted
/// order by order from the nearest diagram. Charged per stored half-edge.
std::vector<HalfEdge> batch_order_diagram(const std::vector<Site>& sites, int m, WorkLedger& ledger,
                                          Reservation& storage);

/// Phase 1: walks every interval with s' slots and keeps the cells whose
/// walks are still open at the end.
BigCellTableK lift_phase1(const SiteSource& src, int k, std::size_t s_prime, const OrderStream& order_k,
                            WorkLedger& ledger);

/// Phase 2: every (k+1)-half-edge with a small cell on its left, and the twin
/// of those with a big cell on their right.
void lift_phase2(const SiteSource& src, int k, std::size_t s_prime, const OrderStream& order_k,
                   const BigCellTableK& table, WorkLedger& ledger, const HalfEdgeVisitor& out);

/// Phase 3: edges between two big cells, both directions.
void lift_phase3(const SiteSource& src, int k, std::size_t s_prime, const BigCellTableK& table,
                   WorkLedger& ledger, const HalfEdgeVisitor& out);

/// All (k+1)-half-edges, each once, from two fresh runs of order_k.
void lift_order(const SiteSource& src, int k, std::size_t s_prime, const OrderStream& order_k,
                       WorkLedger& ledger, const HalfEdgeVisitor& out);

}  // namespace vw
