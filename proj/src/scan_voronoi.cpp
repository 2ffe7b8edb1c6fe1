#include "vorospace/scan_voronoi.hpp"

namespace vw {

namespace {

// Stored edge and its rival. Bounding sites are kept by index in the piece.
constexpr std::int64_t kEdgeWords = words::kPiece + words::kSite;

}  // namespace

// The cone runs counterclockwise from `right` to `left` and stays below a
// half-turn while p can still be a hull vertex.
void HullCone::absorb(const Site& z) {
  if (inside || z.index == p.index) return;
  if (!left) {
    left = right = z;
    return;
  }
  const int ol = orient(p, *left, z);
  const int or_ = orient(p, *right, z);
  if (or_ >= 0 && ol <= 0) return;
  if (ol > 0 && or_ > 0) {
    left = z;
  } else if (ol < 0 && or_ < 0) {
    right = z;
  } else {
    inside = true;
  }
}

HullStatus HullCone::status() const {
  if (inside || !left) return HullStatus{};
  return HullStatus{false, *left, *right};
}

HullStatus locate_on_hull(const SiteSource& src, const Site& p) {
  HullCone cone{p, {}, {}, false};
  const std::size_t n = src.size();
  for (std::size_t i = 0; i < n && !cone.inside; ++i) cone.absorb(src.read(i));
  return cone.status();
}

Ray start_ray(const SiteSource& src, const Site& p, DiagramMode mode) {
  if (mode == DiagramMode::Nearest) {
    Site ref = src.read(0);
    if (ref.index == p.index) ref = src.read(1);
    return Ray{p.at, ref.at - p.at};
  }
  HullStatus hull = locate_on_hull(src, p);
  if (hull.inside) throw FarthestCellEmpty("site " + std::to_string(p.index) + " is not on the hull");
  return Ray{p.at, circumcenter(p, hull.cw, hull.ccw) - p.at};
}

Keep keep_for(DiagramMode mode) { return mode == DiagramMode::Nearest ? Keep::Nearer : Keep::Farther; }

void RayProbe::absorb(const Site& z) {
  if (z.index == p.index) return;
  auto t = ray_hit(ray, bisector(p, z));
  if (!t) return;
  if (!best) {
    best = t;
    tied = {z};
    return;
  }
  const int c = cmp(*t, *best);
  if (c == 0) {
    tied.push_back(z);
  } else if ((mode == DiagramMode::Nearest) == (c < 0)) {
    best = t;
    tied = {z};
  }
}

CellClip::CellClip(const Site& p_, const Site& rival_, DiagramMode mode_)
    : p(p_), rival(rival_), mode(mode_), piece(EdgePiece::whole(bisector(p_, rival_))) {}

void CellClip::absorb(const Site& z) {
  if (!alive || z.index == p.index || z.index == rival.index) return;
  const int lo_before = piece.lo_site;
  const int hi_before = piece.hi_site;
  alive = clip_in_place(piece, p, z, keep_for(mode));
  if (piece.lo_site != lo_before) lo_by = z;
  if (piece.hi_site != hi_before) hi_by = z;
}

std::optional<FoundEdge> pick_after_tie(const Ray& ray, const std::vector<CellClip>& clips) {
  std::optional<FoundEdge> fallback;
  for (const CellClip& c : clips) {
    if (!c.alive) continue;
    FoundEdge found{c.piece, c.rival, c.lo_by, c.hi_by};
    if (orient(ray.origin, ray.origin + ray.direction, c.piece.sample_point()) > 0) return found;
    if (!fallback) fallback = found;
  }
  return fallback;
}

FoundEdge find_edge(const SiteSource& src, const Site& p, const Ray& ray, DiagramMode mode,
                    WorkLedger& ledger) {
  Reservation hold(ledger, words::kRay + 3 * words::kSite + 1 + words::kPredicate);
  RayProbe probe{p, ray, mode, {}, {}};
  const std::size_t n = src.size();
  for (std::size_t i = 0; i < n; ++i) probe.absorb(src.read(i));
  if (!probe.best) throw NoIntersection("ray from site " + std::to_string(p.index) + " meets no bisector");

  hold.resize(words::kRay + words::kSite + words::kPredicate + 2 * kEdgeWords);
  std::vector<CellClip> clips;
  for (const Site& q : probe.tied) clips.emplace_back(p, q, mode);
  for (std::size_t i = 0; i < n; ++i) {
    Site z = src.read(i);
    for (CellClip& c : clips) c.absorb(z);
  }
  auto picked = pick_after_tie(ray, clips);
  if (!picked) throw NoIntersection("crossed bisector of site " + std::to_string(p.index) + " is not a cell edge");
  return *picked;
}

std::optional<FoundEdge> edge_on(const SiteSource& src, const Site& p, const Site& rival,
                                 DiagramMode mode, WorkLedger& ledger) {
  Reservation hold(ledger, kEdgeWords + words::kSite + words::kPredicate);
  CellClip clip(p, rival, mode);
  const std::size_t n = src.size();
  for (std::size_t i = 0; i < n; ++i) clip.absorb(src.read(i));
  if (!clip.alive) return std::nullopt;
  return FoundEdge{clip.piece, clip.rival, clip.lo_by, clip.hi_by};
}

// p lies left of its bisectors, so the nearest cell is walked counterclockwise
// along the carrier direction and the farthest cell against it.
std::optional<Site> forward_site(const FoundEdge& e, DiagramMode mode) {
  if (mode == DiagramMode::Nearest) return e.piece.hi ? std::optional<Site>(e.hi_by) : std::nullopt;
  return e.piece.lo ? std::optional<Site>(e.lo_by) : std::nullopt;
}

std::optional<Site> backward_site(const FoundEdge& e, DiagramMode mode) {
  return forward_site(e, mode == DiagramMode::Nearest ? DiagramMode::Farthest : DiagramMode::Nearest);
}

void enumerate_cell(const SiteSource& src, const Site& p, DiagramMode mode, WorkLedger& ledger,
                    const std::function<void(const FoundEdge&)>& visitor) {
  Reservation hold(ledger, words::kSite + 2 * kEdgeWords);
  const Ray ray = start_ray(src, p, mode);
  const FoundEdge first = find_edge(src, p, ray, mode, ledger);
  visitor(first);

  FoundEdge cur = first;
  while (auto next = forward_site(cur, mode)) {
    if (next->index == first.rival.index) return;
    auto e = edge_on(src, p, *next, mode, ledger);
    if (!e) throw DegenerateError("cell walk lost the boundary at site " + std::to_string(p.index));
    cur = *e;
    visitor(cur);
  }
  cur = first;
  while (auto next = backward_site(cur, mode)) {
    auto e = edge_on(src, p, *next, mode, ledger);
    if (!e) throw DegenerateError("cell walk lost the boundary at site " + std::to_string(p.index));
    cur = *e;
    visitor(cur);
  }
}

HalfEdge diagram_record(const FoundEdge& e, const Site& owner, DiagramMode mode, std::size_t n) {
  std::vector<int> closest;
  int k = 1;
  if (mode == DiagramMode::Farthest) {
    k = static_cast<int>(n) - 1;
    for (int i = 0; i < static_cast<int>(n); ++i) {
      if (i != owner.index && i != e.rival.index) closest.push_back(i);
    }
  }
  return halfedge_from_piece(e.piece, k, std::move(closest)).undirected();
}

void enumerate_diagram(const SiteSource& src, DiagramMode mode, WorkLedger& ledger,
                       const std::function<void(const HalfEdge&)>& visitor) {
  Reservation hold(ledger, words::kSite + 2);
  const std::size_t n = src.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Site p = src.read(i);
    if (mode == DiagramMode::Farthest && locate_on_hull(src, p).inside) continue;
    enumerate_cell(src, p, mode, ledger, [&](const FoundEdge& e) {
      if (p.index < e.rival.index) visitor(diagram_record(e, p, mode, n));
    });
  }
}

}  // namespace vw
