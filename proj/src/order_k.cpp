#include "vorospace/order_k.hpp"

#include "vorospace/tradeoff.hpp"

#include <algorithm>

namespace vw {

namespace {

std::vector<int> with(std::vector<int> set, int extra) {
  set.insert(std::upper_bound(set.begin(), set.end(), extra), extra);
  return set;
}

std::vector<int> without(std::vector<int> set, int gone) {
  set.erase(std::remove(set.begin(), set.end(), gone), set.end());
  return set;
}

// Exits of a (k+1)-cell at infinity: turning counterclockwise, the cell stops
// being the k+1 sites furthest along the direction when some member x falls
// behind an outsider z, at direction rot90(x - z).
struct InfinityScan {
  std::size_t owner = 0;
  std::vector<Site> cell;
  Point from;
  std::optional<Point> best;
  Site x;
  Site z;

  void absorb(const Site& s) {
    for (const Site& c : cell) {
      if (c.index == s.index) return;
    }
    for (const Site& c : cell) {
      Point u = rot90(c.at - s.at);
      if (best ? ccw_before(from, u, *best) : ccw_before(from, u, from)) {
        best = u;
        x = c;
        z = s;
      }
    }
  }
};

// A k-edge of the cell reaches infinity at u when its pair are the two
// members least far along u.
bool k_edge_at(const std::vector<Site>& cell, std::size_t a, std::size_t b, const Point& u) {
  const Rational level = dot(u, cell[a].at);
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (i != a && i != b && dot(u, cell[i].at) <= level) return false;
  }
  return true;
}

bool k_edge_between(const std::vector<Site>& cell, const Point& from, const Point& until) {
  for (std::size_t a = 0; a < cell.size(); ++a) {
    for (std::size_t b = a + 1; b < cell.size(); ++b) {
      const Point u = rot90(cell[b].at - cell[a].at);
      for (const Point& d : {u, Point{-u.x, -u.y}}) {
        if (ccw_before(from, d, until) && k_edge_at(cell, a, b, d)) return true;
      }
    }
  }
  return false;
}

DegenerateError lost(const IntervalWalk& w) {
  return DegenerateError("interval walk from a k-half-edge of pair " + std::to_string(w.origin.left) + "," +
                         std::to_string(w.origin.right) + " left its cell boundary");
}

std::int64_t cell_words(int k) { return words::cog_key(k + 1) + (k + 1); }

std::size_t pass_batch(int k, std::size_t s_prime) { return s_prime * static_cast<std::size_t>(std::max(1, k)); }

// Walk slots fed from an EdgeBuffer: the consumer runs whenever s' edges are
// pending.
class WalkPool {
 public:
  WalkPool(const SiteSource& src, int k, std::size_t s_prime, WorkLedger& ledger,
           std::function<void(IntervalWalk&, const HalfEdge&)> visitor)
      : src_(src), k_(k), s_prime_(s_prime), ledger_(ledger), buffer_(ledger, k, s_prime),
        slots_(ledger, static_cast<std::int64_t>(s_prime) * walk_words(k)), visitor_(std::move(visitor)) {}

  void offer(const HalfEdge& e) {
    buffer_.push(e);
    while (buffer_.size() >= buffer_.low_water()) {
      pumped_ = true;
      round();
    }
  }

  bool fill() {
    while (walks_.size() < s_prime_ && !buffer_.empty()) walks_.push_back(start_walk(src_, buffer_.pop()));
    return !walks_.empty();
  }

  void round() {
    fill();
    successor_step(src_, walks_, pass_batch(k_, s_prime_), ledger_, visitor_);
    std::erase_if(walks_, [](const IntervalWalk& w) { return w.done(); });
  }

  void drain() {
    while (fill()) round();
  }

  bool pumped() const { return pumped_; }
  bool buffer_empty() const { return buffer_.empty(); }
  const std::vector<IntervalWalk>& walks() const { return walks_; }

 private:
  const SiteSource& src_;
  int k_;
  std::size_t s_prime_;
  WorkLedger& ledger_;
  EdgeBuffer buffer_;
  Reservation slots_;
  std::vector<IntervalWalk> walks_;
  std::function<void(IntervalWalk&, const HalfEdge&)> visitor_;
  bool pumped_ = false;
};

}  // namespace

VertexClass classify_head(const HalfEdge& e) {
  if (!e.head) throw RecordError("classify_head: unbounded head");
  return e.in_closest(e.head_extra) ? VertexClass::Old : VertexClass::New;
}

bool is_relevant(const HalfEdge& e) { return e.head && classify_head(e) == VertexClass::New; }

bool owns_interval(const HalfEdge& e) { return !e.head || is_relevant(e); }

CogKey cog_key(const SiteSource& src, const std::vector<int>& cell) {
  CogKey key{Rational(0), Rational(0)};
  for (int i : cell) {
    const Site s = src.fetch(i);
    key.x += s.at.x;
    key.y += s.at.y;
  }
  return key;
}

bool BigCellTableK::contains(const CogKey& key) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), key,
                             [](const BigCell& c, const CogKey& k) { return c.key < k; });
  return it != cells.end() && it->key == key;
}

void BigCellTableK::insert(BigCell cell) {
  auto it = std::lower_bound(cells.begin(), cells.end(), cell.key,
                             [](const BigCell& c, const CogKey& k) { return c.key < k; });
  if (it != cells.end() && it->key == cell.key) return;
  cells.insert(it, std::move(cell));
}

OrderClip::OrderClip(EdgeLabel l) : label(std::move(l)), piece(EdgePiece::whole(bisector(label.x, label.y))) {}

void OrderClip::absorb(const Site& z) {
  if (!alive || z.index == label.x.index || z.index == label.y.index) return;
  const bool near = std::binary_search(label.closest.begin(), label.closest.end(), z.index);
  alive = clip_in_place(piece, label.x, z, near ? Keep::Farther : Keep::Nearer);
}

HalfEdge OrderClip::result() const { return halfedge_from_piece(piece, label.k, label.closest); }

EdgeBuffer::EdgeBuffer(WorkLedger& ledger, int k, std::size_t s_prime)
    : low_water_(std::max<std::size_t>(1, s_prime)), k_(k), hold_(ledger, 0) {}

void EdgeBuffer::push(const HalfEdge& e) {
  if (queue_.size() >= capacity()) throw ModelViolation("edge buffer over capacity");
  queue_.push_back(e);
  hold_.resize(static_cast<std::int64_t>(queue_.size()) * words::half_edge(k_));
}

HalfEdge EdgeBuffer::pop() {
  HalfEdge e = std::move(queue_.front());
  queue_.pop_front();
  hold_.resize(static_cast<std::int64_t>(queue_.size()) * words::half_edge(k_));
  return e;
}

std::int64_t walk_words(int k) { return words::half_edge(k) + words::half_edge(k + 1) + 2 * words::kPoint + 2; }

IntervalWalk start_walk(const SiteSource& src, const HalfEdge& e) {
  IntervalWalk w;
  w.origin = e;
  w.cell = e.enclosing_set();
  if (!e.head) {
    w.stage = IntervalWalk::Stage::AtInfinity;
    w.from_dir = e.dir;
    return w;
  }
  const Site l = src.fetch(e.left);
  const Site r = src.fetch(e.right);
  const Site h = src.fetch(e.head_extra);
  // Of the two cell edges at the head, the one leaving it with the cell on
  // its left.
  EdgeLabel label;
  label.k = e.k + 1;
  if (orient(l, r, h) > 0) {
    label.closest = with(e.closest, l.index);
    label.x = r;
  } else {
    label.closest = with(e.closest, r.index);
    label.x = l;
  }
  label.y = h;
  w.next = std::move(label);
  w.expect_tail = e.head;
  return w;
}

void successor_step(const SiteSource& src, std::vector<IntervalWalk>& walks, std::size_t batch,
                    WorkLedger& ledger, const std::function<void(IntervalWalk&, const HalfEdge&)>& visitor) {
  using Stage = IntervalWalk::Stage;
  std::int64_t transient = 0;
  for (const IntervalWalk& w : walks) {
    transient += static_cast<std::int64_t>(w.cell.size()) * words::kSite + words::kPiece + words::kPredicate;
  }
  Reservation hold(ledger, transient);

  std::vector<InfinityScan> scans;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    if (walks[i].stage != Stage::AtInfinity) continue;
    InfinityScan scan;
    scan.owner = i;
    scan.from = walks[i].from_dir;
    for (int c : walks[i].cell) scan.cell.push_back(src.fetch(c));
    scans.push_back(std::move(scan));
  }
  if (!scans.empty()) {
    for_each_batched(src, batch, ledger, [&](const Site& z) {
      for (InfinityScan& scan : scans) scan.absorb(z);
    });
    for (const InfinityScan& scan : scans) {
      IntervalWalk& w = walks[scan.owner];
      if (!scan.best || k_edge_between(scan.cell, scan.from, *scan.best)) {
        w.stage = Stage::Done;
        continue;
      }
      EdgeLabel label;
      label.k = w.origin.k + 1;
      label.closest = without(w.cell, scan.x.index);
      label.x = scan.x;
      label.y = scan.z;
      w.next = std::move(label);
      w.expect_tail.reset();
      w.stage = Stage::Clip;
    }
  }

  std::vector<std::pair<std::size_t, OrderClip>> clips;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    if (walks[i].stage == Stage::Clip) clips.emplace_back(i, OrderClip(*walks[i].next));
  }
  if (clips.empty()) return;
  for_each_batched(src, batch, ledger, [&](const Site& z) {
    for (auto& [owner, clip] : clips) clip.absorb(z);
  });

  for (auto& [owner, clip] : clips) {
    IntervalWalk& w = walks[owner];
    if (!clip.alive) throw lost(w);
    const HalfEdge f = clip.result();
    if (f.tail != w.expect_tail) throw lost(w);
    ++w.produced;
    visitor(w, f);
    if (!f.head) {
      w.stage = Stage::AtInfinity;
      w.from_dir = f.dir;
    } else if (f.in_closest(f.head_extra)) {
      w.stage = Stage::Done;
    } else {
      EdgeLabel label;
      label.k = f.k;
      label.closest = f.closest;
      label.x = clip.label.x;
      label.y = src.fetch(f.head_extra);
      w.next = std::move(label);
      w.expect_tail = f.head;
    }
  }
}

std::vector<HalfEdge> batch_order_diagram(const std::vector<Site>& sites, int m, WorkLedger& ledger,
                                          Reservation& storage) {
  std::vector<HalfEdge> cur;
  if (m < 1 || sites.size() <= static_cast<std::size_t>(m)) return cur;
  const std::int64_t base = storage.words();
  {
    Reservation nearest(ledger, 0);
    for (const BatchEdge& e : batch_diagram(sites, DiagramMode::Nearest, ledger, nearest)) {
      HalfEdge h = halfedge_from_piece(e.piece, 1, {});
      cur.push_back(h);
      cur.push_back(h.twin());
    }
  }
  storage.resize(base + static_cast<std::int64_t>(cur.size()) * words::half_edge(1));

  WorkspaceSites view(sites);
  // At most |sites| walks are open at a time.
  const std::size_t slots_cap = sites.size();
  for (int j = 1; j < m; ++j) {
    std::vector<const HalfEdge*> owners;
    for (const HalfEdge& e : cur) {
      if (owns_interval(e)) owners.push_back(&e);
    }
    std::vector<HalfEdge> next;
    for (std::size_t from = 0; from < owners.size(); from += slots_cap) {
      std::vector<IntervalWalk> walks;
      for (std::size_t i = from; i < std::min(owners.size(), from + slots_cap); ++i) {
        walks.push_back(start_walk(view, *owners[i]));
      }
      Reservation slots(ledger, static_cast<std::int64_t>(walks.size()) * walk_words(j));
      while (!walks.empty()) {
        successor_step(view, walks, sites.size(), ledger, [&](IntervalWalk&, const HalfEdge& f) {
          next.push_back(f);
          storage.resize(storage.words() + words::half_edge(j + 1));
        });
        std::erase_if(walks, [](const IntervalWalk& w) { return w.done(); });
      }
    }
    cur = std::move(next);
    storage.resize(base + static_cast<std::int64_t>(cur.size()) * words::half_edge(j + 1));
  }
  return cur;
}

// Stops once the stream is spent and fewer than s' walks are open, unless
// every interval fitted in the buffer without the consumer running.
BigCellTableK lift_phase1(const SiteSource& src, int k, std::size_t s_prime, const OrderStream& order_k,
                            WorkLedger& ledger) {
  WalkPool pool(src, k, s_prime, ledger, [](IntervalWalk&, const HalfEdge&) {});
  order_k([&](const HalfEdge& e) {
    if (owns_interval(e)) pool.offer(e);
  });
  while (pool.fill()) {
    if (pool.pumped() && pool.buffer_empty() && pool.walks().size() < s_prime) break;
    pool.round();
  }
  BigCellTableK table;
  for (const IntervalWalk& w : pool.walks()) table.insert(BigCell{cog_key(src, w.cell), w.cell});
  return table;
}

void lift_phase2(const SiteSource& src, int k, std::size_t s_prime, const OrderStream& order_k,
                   const BigCellTableK& table, WorkLedger& ledger, const HalfEdgeVisitor& out) {
  auto big = [&](const std::vector<int>& cell) { return !table.cells.empty() && table.contains(cog_key(src, cell)); };
  WalkPool pool(src, k, s_prime, ledger, [&](IntervalWalk&, const HalfEdge& f) {
    out(f);
    if (big(f.right_cell())) out(f.twin());
  });
  order_k([&](const HalfEdge& e) {
    if (owns_interval(e) && !big(e.enclosing_set())) pool.offer(e);
  });
  pool.drain();
}

void lift_phase3(const SiteSource& src, int k, std::size_t s_prime, const BigCellTableK& table,
                   WorkLedger& ledger, const HalfEdgeVisitor& out) {
  if (table.cells.size() < 2) return;
  std::vector<int> members;
  for (const BigCell& c : table.cells) members.insert(members.end(), c.members.begin(), c.members.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  Reservation storage(ledger, static_cast<std::int64_t>(members.size()) * words::kSite);
  std::vector<Site> sites;
  for (int i : members) sites.push_back(src.fetch(i));
  const WorkspaceSites view(sites);

  std::vector<OrderClip> clips;
  {
    std::vector<HalfEdge> diagram = batch_order_diagram(sites, k + 1, ledger, storage);
    for (const HalfEdge& h : diagram) {
      if (h.left > h.right) continue;
      if (!table.contains(cog_key(view, h.left_cell())) || !table.contains(cog_key(view, h.right_cell()))) continue;
      clips.emplace_back(EdgeLabel{k + 1, h.closest, view.fetch(h.left), view.fetch(h.right)});
    }
  }
  Reservation clip_words(ledger, static_cast<std::int64_t>(clips.size()) * (words::kPiece + words::half_edge(k + 1)));
  storage.resize(static_cast<std::int64_t>(members.size()) * words::kSite);
  for_each_batched(src, pass_batch(k, s_prime), ledger, [&](const Site& z) {
    for (OrderClip& c : clips) c.absorb(z);
  });
  for (const OrderClip& c : clips) {
    if (!c.alive) continue;
    const HalfEdge f = c.result();
    out(f);
    out(f.twin());
  }
}

void lift_order(const SiteSource& src, int k, std::size_t s_prime, const OrderStream& order_k,
                       WorkLedger& ledger, const HalfEdgeVisitor& out) {
  s_prime = std::max<std::size_t>(1, s_prime);
  BigCellTableK table = lift_phase1(src, k, s_prime, order_k, ledger);
  Reservation table_words(ledger, static_cast<std::int64_t>(table.cells.size()) * cell_words(k));
  lift_phase2(src, k, s_prime, order_k, table, ledger, out);
  lift_phase3(src, k, s_prime, table, ledger, out);
}

}  // namespace vw
