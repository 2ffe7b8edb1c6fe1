#include "vorospace/tradeoff.hpp"

#include <algorithm>

namespace vw {

namespace {

constexpr std::int64_t kEdgeWords = words::kPiece + words::kSite;
// Per tracked site while a round runs: two candidate clips or a probe.
constexpr std::int64_t kRoundWords = 2 * kEdgeWords + words::kPredicate;

struct OwnedClip {
  std::size_t owner;
  CellClip clip;
};

void clip_pass(const SiteSource& src, std::vector<OwnedClip>& clips, std::size_t s, WorkLedger& ledger) {
  for_each_batched(src, s, ledger, [&](const Site& z) {
    for (OwnedClip& c : clips) c.clip.absorb(z);
  });
}

DegenerateError lost_boundary(const Site& p) {
  return DegenerateError("cell walk lost the boundary at site " + std::to_string(p.index));
}

void start_backward(TrackedSite& t, DiagramMode mode) {
  if (auto back = backward_site(*t.first_edge, mode)) {
    t.stage = TrackedSite::Stage::Backward;
    t.next_rival = *back;
  } else {
    t.stage = TrackedSite::Stage::Done;
  }
}

// Mirrors the walk order of enumerate_cell.
void after_edge(TrackedSite& t, const FoundEdge& e, DiagramMode mode) {
  ++t.edges_found;
  if (t.stage == TrackedSite::Stage::Backward) {
    if (auto back = backward_site(e, mode)) {
      t.next_rival = *back;
    } else {
      t.stage = TrackedSite::Stage::Done;
    }
    return;
  }
  auto fwd = forward_site(e, mode);
  if (!fwd) {
    start_backward(t, mode);
  } else if (fwd->index == t.first_edge->rival.index) {
    t.stage = TrackedSite::Stage::Done;
  } else {
    t.stage = TrackedSite::Stage::Forward;
    t.next_rival = *fwd;
  }
}

// Sites of the walk in the order the phases take them.
class SiteStream {
 public:
  SiteStream(const SiteSource& src, DiagramMode mode, std::size_t s, WorkLedger& ledger) : src_(src) {
    if (mode == DiagramMode::Farthest) hull_.emplace(src, s, ledger);
  }

  std::optional<Site> next() {
    if (hull_) return hull_->next();
    if (pos_ >= src_.size()) return std::nullopt;
    return src_.read(pos_++);
  }

 private:
  const SiteSource& src_;
  std::optional<HullStream> hull_;
  std::size_t pos_ = 0;
};

}  // namespace

std::int64_t tracked_words() { return words::kSite + words::kRay + kEdgeWords + words::kSite + 2; }

void for_each_batched(const SiteSource& src, std::size_t s, WorkLedger& ledger,
                      const std::function<void(const Site&)>& fn) {
  const std::size_t n = src.size();
  const std::size_t step = std::max<std::size_t>(1, s);
  Reservation hold(ledger, static_cast<std::int64_t>(std::min(step, n)) * words::kSite);
  std::vector<Site> batch;
  for (Batch b{0, 0}; b.start < n; b.start += b.length) {
    b.length = std::min(step, n - b.start);
    batch.clear();
    for (std::size_t i = 0; i < b.length; ++i) batch.push_back(src.read(b.start + i));
    for (const Site& z : batch) fn(z);
  }
}

std::vector<FoundEdge> find_edges_batched(const SiteSource& src, const std::vector<std::pair<Site, Ray>>& rays,
                                          DiagramMode mode, std::size_t s, WorkLedger& ledger) {
  Reservation hold(ledger, static_cast<std::int64_t>(rays.size()) * (words::kSite + words::kRay + kRoundWords));
  std::vector<RayProbe> probes;
  for (const auto& [p, ray] : rays) probes.push_back(RayProbe{p, ray, mode, {}, {}});
  for_each_batched(src, s, ledger, [&](const Site& z) {
    for (RayProbe& probe : probes) probe.absorb(z);
  });

  std::vector<OwnedClip> clips;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!probes[i].best) throw NoIntersection("ray from site " + std::to_string(probes[i].p.index) + " meets no bisector");
    for (const Site& q : probes[i].tied) clips.push_back(OwnedClip{i, CellClip(probes[i].p, q, mode)});
  }
  clip_pass(src, clips, s, ledger);

  std::vector<FoundEdge> out;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    std::vector<CellClip> mine;
    for (const OwnedClip& c : clips) {
      if (c.owner == i) mine.push_back(c.clip);
    }
    auto picked = pick_after_tie(rays[i].second, mine);
    if (!picked) throw NoIntersection("crossed bisector of site " + std::to_string(rays[i].first.index) + " is not a cell edge");
    out.push_back(*picked);
  }
  return out;
}

void advance_round(const SiteSource& src, std::vector<TrackedSite>& tracked, DiagramMode mode, std::size_t s,
                   WorkLedger& ledger, const std::function<void(const TrackedSite&, const FoundEdge&)>& visitor) {
  using Stage = TrackedSite::Stage;
  Reservation hold(ledger, static_cast<std::int64_t>(tracked.size()) * kRoundWords);

  std::vector<HullCone> cones;
  std::vector<std::size_t> cone_owner;
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    TrackedSite& t = tracked[i];
    if (t.stage != Stage::NeedRay) continue;
    if (mode == DiagramMode::Nearest) {
      t.current_ray = start_ray(src, t.site, mode);
      t.stage = Stage::NeedProbe;
    } else {
      cones.push_back(HullCone{t.site, {}, {}, false});
      cone_owner.push_back(i);
    }
  }
  if (!cones.empty()) {
    for_each_batched(src, s, ledger, [&](const Site& z) {
      for (HullCone& c : cones) c.absorb(z);
    });
    for (std::size_t j = 0; j < cones.size(); ++j) {
      TrackedSite& t = tracked[cone_owner[j]];
      HullStatus h = cones[j].status();
      if (h.inside) throw FarthestCellEmpty("site " + std::to_string(t.site.index) + " is not on the hull");
      t.current_ray = Ray{t.site.at, circumcenter(t.site, h.cw, h.ccw) - t.site.at};
      t.stage = Stage::NeedProbe;
    }
  }

  std::vector<RayProbe> probes;
  std::vector<std::size_t> probe_owner;
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    if (tracked[i].stage != Stage::NeedProbe) continue;
    probes.push_back(RayProbe{tracked[i].site, tracked[i].current_ray, mode, {}, {}});
    probe_owner.push_back(i);
  }
  if (!probes.empty()) {
    for_each_batched(src, s, ledger, [&](const Site& z) {
      for (RayProbe& probe : probes) probe.absorb(z);
    });
  }

  std::vector<OwnedClip> clips;
  for (std::size_t j = 0; j < probes.size(); ++j) {
    if (!probes[j].best) throw NoIntersection("ray from site " + std::to_string(probes[j].p.index) + " meets no bisector");
    for (const Site& q : probes[j].tied) clips.push_back(OwnedClip{probe_owner[j], CellClip(probes[j].p, q, mode)});
  }
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    const TrackedSite& t = tracked[i];
    if (t.stage == Stage::Forward || t.stage == Stage::Backward) {
      clips.push_back(OwnedClip{i, CellClip(t.site, t.next_rival, mode)});
    }
  }
  if (clips.empty()) return;
  clip_pass(src, clips, s, ledger);

  std::size_t c = 0;
  while (c < clips.size()) {
    const std::size_t owner = clips[c].owner;
    std::vector<CellClip> mine;
    for (; c < clips.size() && clips[c].owner == owner; ++c) mine.push_back(clips[c].clip);
    TrackedSite& t = tracked[owner];
    FoundEdge e;
    if (t.stage == Stage::NeedProbe) {
      auto picked = pick_after_tie(t.current_ray, mine);
      if (!picked) throw NoIntersection("crossed bisector of site " + std::to_string(t.site.index) + " is not a cell edge");
      e = *picked;
      t.first_edge = e;
    } else {
      if (!mine.front().alive) throw lost_boundary(t.site);
      const CellClip& k = mine.front();
      e = FoundEdge{k.piece, k.rival, k.lo_by, k.hi_by};
    }
    visitor(t, e);
    after_edge(t, e, mode);
  }
}

HullStream::HullStream(const SiteSource& src, std::size_t s, WorkLedger& ledger)
    : src_(src), cap_(std::max<std::size_t>(2, s)), ledger_(ledger),
      hold_(ledger, static_cast<std::int64_t>(cap_ + 2) * words::kSite + words::kPredicate) {}

std::optional<Site> HullStream::next() {
  while (pending_pos_ >= pending_.size()) {
    if (finished_) return std::nullopt;
    refill();
  }
  return pending_[pending_pos_++];
}

// One pass: the clockwise chain of hull vertices of the sites read so far,
// starting at from_ and cut to cap_ vertices. `closed` says the chain is the
// whole hull so far; otherwise only its prefix is known.
void HullStream::refill() {
  pending_.clear();
  pending_pos_ = 0;
  const std::size_t n = src_.size();
  if (!origin_) {
    if (n == 0) {
      finished_ = true;
      return;
    }
    Site low = src_.read(0);
    for (std::size_t i = 1; i < n; ++i) {
      Site z = src_.read(i);
      if (z.at < low.at) low = z;
    }
    origin_ = from_ = low;
    pending_.push_back(low);
    if (n == 1) finished_ = true;
    return;
  }

  std::vector<Site> chain{*from_};
  bool closed = false;
  for (std::size_t i = 0; i < n; ++i) {
    Site x = src_.read(i);
    if (x.index == from_->index) continue;
    if (chain.size() == 1) {
      chain.push_back(x);
      closed = true;
      continue;
    }
    const std::size_t m = chain.size() - 1;
    const std::size_t edges = closed ? m + 1 : m;
    std::optional<std::size_t> lo, hi;
    for (std::size_t e = 0; e < edges; ++e) {
      const Site& a = chain[e];
      const Site& b = chain[(e + 1) % chain.size()];
      if (orient(a, b, x) > 0) {
        if (!lo) lo = e;
        hi = e;
      }
    }
    if (!lo) continue;
    std::vector<Site> grown(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(*lo) + 1);
    grown.push_back(x);
    if (*hi < m) {
      if (*hi + 1 < m || closed) grown.insert(grown.end(), chain.begin() + static_cast<std::ptrdiff_t>(*hi) + 1, chain.end());
      else closed = false;
    }
    chain = std::move(grown);
    if (chain.size() > cap_) {
      chain.resize(cap_);
      closed = false;
    }
  }

  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (chain[i].index == origin_->index) {
      finished_ = true;
      return;
    }
    pending_.push_back(chain[i]);
  }
  if (closed || chain.size() == 1) finished_ = true;
  else from_ = chain.back();
}

void hull_chunked(const SiteSource& src, std::size_t s, WorkLedger& ledger,
                  const std::function<void(const Site&)>& visitor) {
  HullStream stream(src, s, ledger);
  while (auto v = stream.next()) visitor(*v);
}

std::vector<BatchEdge> batch_diagram(const std::vector<Site>& sites, DiagramMode mode, WorkLedger& ledger,
                                     Reservation& storage) {
  std::vector<BatchEdge> out;
  if (sites.size() < 2) return out;
  if (sites.size() == 2) {
    storage.resize(storage.words() + kEdgeWords);
    out.push_back(BatchEdge{sites[0], sites[1], EdgePiece::whole(bisector(sites[0], sites[1]))});
    return out;
  }
  WorkspaceSites view(sites);
  for (const Site& p : sites) {
    if (mode == DiagramMode::Farthest && locate_on_hull(view, p).inside) continue;
    enumerate_cell(view, p, mode, ledger, [&](const FoundEdge& e) {
      if (p.index > e.rival.index) return;
      storage.resize(storage.words() + kEdgeWords);
      out.push_back(BatchEdge{p, e.rival, e.piece});
    });
  }
  return out;
}

bool BigCellTable1::contains(int index) const { return std::binary_search(sites.begin(), sites.end(), index); }

// Stops once every site has been loaded and fewer than s walks are left,
// unless all sites fit in the first load.
BigCellTable1 phase1_find_big(const SiteSource& src, DiagramMode mode, std::size_t s, WorkLedger& ledger) {
  SiteStream stream(src, mode, s, ledger);
  Reservation hold(ledger, static_cast<std::int64_t>(s) * tracked_words());
  std::vector<TrackedSite> tracked;
  bool exhausted = false;
  bool fits = false;
  bool first_load = true;
  while (true) {
    std::erase_if(tracked, [](const TrackedSite& t) { return t.done(); });
    while (!exhausted && tracked.size() < s) {
      auto next = stream.next();
      if (!next) {
        exhausted = true;
        fits = first_load;
      } else {
        tracked.emplace_back(*next);
      }
    }
    first_load = false;
    if (tracked.empty() || (exhausted && !fits && tracked.size() < s)) break;
    advance_round(src, tracked, mode, s, ledger, [](const TrackedSite&, const FoundEdge&) {});
  }
  BigCellTable1 table;
  for (const TrackedSite& t : tracked) table.sites.push_back(t.site.index);
  std::sort(table.sites.begin(), table.sites.end());
  return table;
}

void phase2_report_small(const SiteSource& src, DiagramMode mode, std::size_t s, const BigCellTable1& table,
                         WorkLedger& ledger, const RecordVisitor& visitor) {
  const std::size_t n = src.size();
  SiteStream stream(src, mode, s, ledger);
  Reservation hold(ledger, static_cast<std::int64_t>(s) * tracked_words());
  std::vector<TrackedSite> tracked;
  bool exhausted = false;
  auto report = [&](const TrackedSite& t, const FoundEdge& e) {
    const int r = e.rival.index;
    if (table.contains(r) || t.site.index < r) visitor(diagram_record(e, t.site, mode, n));
  };
  while (true) {
    std::erase_if(tracked, [](const TrackedSite& t) { return t.done(); });
    while (!exhausted && tracked.size() < s) {
      auto next = stream.next();
      if (!next) {
        exhausted = true;
      } else if (!table.contains(next->index)) {
        tracked.emplace_back(*next);
      }
    }
    if (tracked.empty()) break;
    advance_round(src, tracked, mode, s, ledger, report);
  }
}

void phase3_report_bigbig(const SiteSource& src, DiagramMode mode, std::size_t s, const BigCellTable1& table,
                          WorkLedger& ledger, const RecordVisitor& visitor) {
  if (table.sites.size() < 2) return;
  const std::size_t n = src.size();
  Reservation storage(ledger, static_cast<std::int64_t>(table.sites.size()) * words::kSite);
  std::vector<Site> big;
  for (int i : table.sites) big.push_back(src.read(static_cast<std::size_t>(i)));
  std::vector<BatchEdge> candidates = batch_diagram(big, mode, ledger, storage);

  // Each candidate pair is re-clipped from its whole bisector against all of P.
  std::vector<OwnedClip> clips;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    clips.push_back(OwnedClip{i, CellClip(candidates[i].a, candidates[i].b, mode)});
  }
  candidates.clear();
  clip_pass(src, clips, s, ledger);
  for (const OwnedClip& c : clips) {
    if (!c.clip.alive) continue;
    FoundEdge e{c.clip.piece, c.clip.rival, c.clip.lo_by, c.clip.hi_by};
    visitor(diagram_record(e, c.clip.p, mode, n));
  }
}

void run_tradeoff(const SiteSource& src, DiagramMode mode, std::size_t s, WorkLedger& ledger,
                  const RecordVisitor& visitor) {
  s = std::max<std::size_t>(1, s);
  Reservation hold(ledger, 2);
  BigCellTable1 table = phase1_find_big(src, mode, s, ledger);
  Reservation table_words(ledger, static_cast<std::int64_t>(table.sites.size()));
  phase2_report_small(src, mode, s, table, ledger, visitor);
  phase3_report_bigbig(src, mode, s, table, ledger, visitor);
}

}  // namespace vw
