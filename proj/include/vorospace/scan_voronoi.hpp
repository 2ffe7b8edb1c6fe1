#pragma once

#include "vorospace/geometry.hpp"
#include "vorospace/halfedge.hpp"
#include "vorospace/memory.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace vw {

enum class DiagramMode { Nearest, Farthest };

class FarthestCellEmpty : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoIntersection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HullStatus {
  bool inside = true;
  /// Hull neighbours of the queried site when it is on the hull: the next
  /// vertex clockwise and the next one counterclockwise.
  Site cw;
  Site ccw;
};

/// Angular cone of the sites seen so far around p, absorbed one site at a
/// time. Becomes `inside` once the cone would reach a half-turn.
struct HullCone {
  Site p;
  std::optional<Site> left;
  std::optional<Site> right;
  bool inside = false;

  void absorb(const Site& z);
  HullStatus status() const;
};

/// One pass of gift wrapping around p. Grows the cone spanned by the sites
/// as seen from p and gives up as soon as it would reach a half-turn.
HullStatus locate_on_hull(const SiteSource& src, const Site& p);

/// A ray from p that meets the boundary of p's cell. Nearest: towards the
/// lowest-position site other than p. Farthest: towards the circumcenter of
/// p and its two hull neighbours; throws FarthestCellEmpty for inner sites.
Ray start_ray(const SiteSource& src, const Site& p, DiagramMode mode);

Keep keep_for(DiagramMode mode);

/// First scan of edge finding: the bisector of p first (Nearest) or last
/// (Farthest) crossed by the ray. Keeps both bisectors on a tie, which only
/// happens when the ray passes through a cell vertex.
struct RayProbe {
  Site p;
  Ray ray;
  DiagramMode mode = DiagramMode::Nearest;
  std::optional<Rational> best;
  std::vector<Site> tied;

  void absorb(const Site& z);
};

/// Second scan: the part of bisector(p, rival) on the boundary of p's cell.
struct CellClip {
  Site p;
  Site rival;
  DiagramMode mode = DiagramMode::Nearest;
  EdgePiece piece;
  /// Sites that produced the current bounds.
  Site lo_by;
  Site hi_by;
  bool alive = true;

  CellClip() = default;
  CellClip(const Site& p, const Site& rival, DiagramMode mode);
  void absorb(const Site& z);
};

struct FoundEdge {
  EdgePiece piece;
  Site rival;
  Site lo_by;
  Site hi_by;
};

/// Among clipped candidates from a tied probe, keeps the edge lying
/// counterclockwise of the ray.
std::optional<FoundEdge> pick_after_tie(const Ray& ray, const std::vector<CellClip>& clips);

/// Edge of p's cell crossed by ray: two passes over src.
FoundEdge find_edge(const SiteSource& src, const Site& p, const Ray& ray, DiagramMode mode,
                    WorkLedger& ledger);

/// Edge of p's cell on bisector(p, rival), or nullopt when the two cells do
/// not touch: one pass over src.
std::optional<FoundEdge> edge_on(const SiteSource& src, const Site& p, const Site& rival,
                                 DiagramMode mode, WorkLedger& ledger);

/// Site defining the end reached next when walking the cell counterclockwise
/// (forward) or clockwise (backward); nullopt when that end is unbounded.
std::optional<Site> forward_site(const FoundEdge& e, DiagramMode mode);
std::optional<Site> backward_site(const FoundEdge& e, DiagramMode mode);

/// Walks p's cell: counterclockwise from the first edge until the walk
/// closes or runs off to infinity, then clockwise from the first edge.
void enumerate_cell(const SiteSource& src, const Site& p, DiagramMode mode, WorkLedger& ledger,
                    const std::function<void(const FoundEdge&)>& visitor);

/// Undirected edge record of a nearest (k = 1) or farthest (k = n - 1)
/// diagram for the edge between p and q, with left < right.
HalfEdge diagram_record(const FoundEdge& e, const Site& owner, DiagramMode mode, std::size_t n);

/// All edges of the diagram, each reported once by its lower-index site.
void enumerate_diagram(const SiteSource& src, DiagramMode mode, WorkLedger& ledger,
                       const std::function<void(const HalfEdge&)>& visitor);

}  // namespace vw
