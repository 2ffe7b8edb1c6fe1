#pragma once

#include "vorospace/scan_voronoi.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace vw {

/// Sites are consumed in consecutive input-order batches of at most s; the
/// last batch may be shorter.
struct Batch {
  std::size_t start = 0;
  std::size_t length = 0;
};

/// Calls fn(site) for every site of src, reading one batch of s sites into
/// workspace at a time.
void for_each_batched(const SiteSource& src, std::size_t s, WorkLedger& ledger,
                      const std::function<void(const Site&)>& fn);

/// A cell being walked in lock step with others. Each round moves it by one
/// edge; it starts from a ray and then follows the vertices of its cell.
struct TrackedSite {
  enum class Stage { NeedRay, NeedProbe, Forward, Backward, Done };

  Site site;
  Stage stage = Stage::NeedRay;
  Ray current_ray;
  std::optional<FoundEdge> first_edge;
  /// Rival of the edge to compute next.
  Site next_rival;
  int edges_found = 0;

  explicit TrackedSite(const Site& s) : site(s) {}
  bool done() const { return stage == Stage::Done; }
};

/// Words charged per tracked site.
std::int64_t tracked_words();

/// For each (site, ray), the edge of the site's cell crossed by the ray: one
/// pass choosing the bisector, one pass trimming it.
std::vector<FoundEdge> find_edges_batched(const SiteSource& src, const std::vector<std::pair<Site, Ray>>& rays,
                                          DiagramMode mode, std::size_t s, WorkLedger& ledger);

/// One round: every unfinished tracked site gets its next edge, reported to
/// visitor(site, edge).
void advance_round(const SiteSource& src, std::vector<TrackedSite>& tracked, DiagramMode mode, std::size_t s,
                   WorkLedger& ledger, const std::function<void(const TrackedSite&, const FoundEdge&)>& visitor);

/// Clockwise hull vertices, produced a chunk at a time. Each chunk costs one
/// pass and keeps a chain of at most s hull vertices of the sites read so far.
class HullStream {
 public:
  HullStream(const SiteSource& src, std::size_t s, WorkLedger& ledger);
  std::optional<Site> next();

 private:
  void refill();

  const SiteSource& src_;
  std::size_t cap_;
  WorkLedger& ledger_;
  Reservation hold_;
  std::optional<Site> origin_;
  std::optional<Site> from_;
  std::vector<Site> pending_;
  std::size_t pending_pos_ = 0;
  bool finished_ = false;
};

void hull_chunked(const SiteSource& src, std::size_t s, WorkLedger& ledger,
                  const std::function<void(const Site&)>& visitor);

/// Edge of an in-workspace diagram.
struct BatchEdge {
  Site a;
  Site b;
  EdgePiece piece;
};

/// Nearest or farthest diagram of sites held in workspace, built by walking
/// every cell. Charged per stored edge.
std::vector<BatchEdge> batch_diagram(const std::vector<Site>& sites, DiagramMode mode, WorkLedger& ledger,
                                     Reservation& storage);

/// Sorted indices of the cells left unfinished by the first phase.
struct BigCellTable1 {
  std::vector<int> sites;
  bool contains(int index) const;
};

BigCellTable1 phase1_find_big(const SiteSource& src, DiagramMode mode, std::size_t s, WorkLedger& ledger);

using RecordVisitor = std::function<void(const HalfEdge&)>;

void phase2_report_small(const SiteSource& src, DiagramMode mode, std::size_t s, const BigCellTable1& table,
                         WorkLedger& ledger, const RecordVisitor& visitor);

void phase3_report_bigbig(const SiteSource& src, DiagramMode mode, std::size_t s, const BigCellTable1& table,
                          WorkLedger& ledger, const RecordVisitor& visitor);

/// All three phases.
void run_tradeoff(const SiteSource& src, DiagramMode mode, std::size_t s, WorkLedger& ledger,
                  const RecordVisitor& visitor);

}  // namespace vw
