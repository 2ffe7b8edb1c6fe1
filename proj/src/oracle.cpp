#include "vorospace/oracle.hpp"

#include <algorithm>
#include <set>

namespace vw {

namespace {

struct Crossing {
  Rational t;
  int pos;
};

// Diagrams of orders min_k..max_k, in that order.
std::vector<OracleDiagram> oracle_range(std::span<const Site> sites, int min_k, int max_k) {
  const int n = static_cast<int>(sites.size());
  std::vector<OracleDiagram> out(static_cast<std::size_t>(std::max(0, max_k - min_k + 1)));
  for (int k = min_k; k <= max_k; ++k) out[static_cast<std::size_t>(k - min_k)].k = k;

  std::vector<char> closer(n);
  std::vector<Crossing> cuts;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || sites[a].index > sites[b].index) continue;
      const Site& p = sites[a];
      const Site& q = sites[b];
      const BisectorLine line = bisector(p, q);
      // r is closer than p on the line where alpha + beta * t < 0.
      cuts.clear();
      int count = 0;
      for (int c = 0; c < n; ++c) {
        closer[c] = 0;
        if (c == a || c == b) continue;
        const Point diff = p.at - sites[c].at;
        Rational alpha = 2 * dot(line.base, diff) + dot(sites[c].at, sites[c].at) - dot(p.at, p.at);
        Rational beta = 2 * dot(line.dir, diff);
        if (beta == 0) {
          closer[c] = alpha < 0;
        } else {
          closer[c] = beta > 0;
          cuts.push_back({-alpha / beta, c});
        }
        count += closer[c];
      }
      std::sort(cuts.begin(), cuts.end(), [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
      for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (cuts[i].t == cuts[i - 1].t) throw DegenerateError("oracle: four cocircular sites");
      }
      for (std::size_t i = 0; i <= cuts.size(); ++i) {
        const int order = count + 1;
        if (order >= min_k && order <= max_k) {
          EdgePiece piece = EdgePiece::whole(line);
          if (i > 0) {
            piece.lo = cuts[i - 1].t;
            piece.lo_site = sites[cuts[i - 1].pos].index;
          }
          if (i < cuts.size()) {
            piece.hi = cuts[i].t;
            piece.hi_site = sites[cuts[i].pos].index;
          }
          std::vector<int> closest;
          for (int c = 0; c < n; ++c) {
            if (closer[c]) closest.push_back(sites[c].index);
          }
          out[static_cast<std::size_t>(order - min_k)].edges.push_back(halfedge_from_piece(piece, order, std::move(closest)));
        }
        if (i < cuts.size()) {
          const int c = cuts[i].pos;
          closer[c] = !closer[c];
          count += closer[c] ? 1 : -1;
        }
      }
    }
  }
  for (auto& d : out) {
    std::sort(d.edges.begin(), d.edges.end(), [](const HalfEdge& x, const HalfEdge& y) {
      return encode_halfedge(x) < encode_halfedge(y);
    });
  }
  return out;
}

}  // namespace

std::vector<OracleDiagram> oracle_orders(std::span<const Site> sites, int max_k) {
  return oracle_range(sites, 1, max_k);
}

OracleDiagram oracle_vdk(std::span<const Site> sites, int k) {
  auto one = oracle_range(sites, k, k);
  return std::move(one.front());
}

std::vector<OracleVertex> oracle_vertices(std::span<const Site> sites) {
  const std::size_t n = sites.size();
  std::vector<OracleVertex> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l) {
        OracleVertex v;
        v.at = circumcenter(sites[i], sites[j], sites[l]);
        v.sites = {sites[i].index, sites[j].index, sites[l].index};
        std::sort(v.sites.begin(), v.sites.end());
        const Rational r2 = dist2(v.at, sites[i].at);
        for (std::size_t m = 0; m < n; ++m) {
          if (m == i || m == j || m == l) continue;
          if (dist2(v.at, sites[m].at) < r2) v.inside.push_back(sites[m].index);
        }
        std::sort(v.inside.begin(), v.inside.end());
        out.push_back(std::move(v));
      }
  return out;
}

std::vector<HalfEdge> directed(const std::vector<HalfEdge>& undirected_edges) {
  std::vector<HalfEdge> out;
  out.reserve(2 * undirected_edges.size());
  for (const auto& e : undirected_edges) {
    out.push_back(e);
    out.push_back(e.twin());
  }
  return out;
}

std::string canonical(const HalfEdge& e, bool undirected) {
  return encode_halfedge(undirected ? e.undirected() : e);
}

std::string DefectReport::summary() const {
  std::string s = "missing=" + std::to_string(missing.size()) + " spurious=" +
                  std::to_string(spurious.size()) + " duplicated=" + std::to_string(duplicated.size()) +
                  " invalid=" + std::to_string(invalid.size());
  auto list = [&](const char* tag, const std::vector<std::string>& v) {
    for (const auto& r : v) s += std::string("\n  ") + tag + " " + r;
  };
  list("missing", missing);
  list("spurious", spurious);
  list("duplicated", duplicated);
  list("invalid", invalid);
  return s;
}

std::string check_profile(std::span<const Site> sites, const HalfEdge& e) {
  const Point x = e.sample_point();
  const Site* left = nullptr;
  const Site* right = nullptr;
  for (const Site& s : sites) {
    if (s.index == e.left) left = &s;
    if (s.index == e.right) right = &s;
  }
  if (!left || !right) return "pair names an unknown site";
  const Rational d = dist2(x, left->at);
  if (dist2(x, right->at) != d) return "pair is not tied at the sample point";
  for (const Site& s : sites) {
    if (s.index == e.left || s.index == e.right) continue;
    const bool is_closer = dist2(x, s.at) < d;
    if (dist2(x, s.at) == d) return "third site tied at the sample point";
    if (is_closer != e.in_closest(s.index)) return "closest set does not match distances";
  }
  return {};
}

DefectReport verify_run(std::span<const Site> sites, const std::vector<HalfEdge>& records,
                        const OracleDiagram& oracle, bool undirected) {
  DefectReport report;
  std::multiset<std::string> got;
  for (const auto& r : records) {
    std::string key = canonical(r, undirected);
    if (got.count(key) == 1) report.duplicated.push_back(key);
    got.insert(key);
    std::string why = check_profile(sites, r);
    if (!why.empty()) report.invalid.push_back(key + " (" + why + ")");
  }
  std::set<std::string> want;
  if (undirected) {
    for (const auto& e : oracle.edges) want.insert(canonical(e, true));
  } else {
    for (const auto& e : directed(oracle.edges)) want.insert(canonical(e, false));
  }
  for (const auto& w : want) {
    if (!got.count(w)) report.missing.push_back(w);
  }
  for (auto it = got.begin(); it != got.end(); it = got.upper_bound(*it)) {
    if (!want.count(*it)) report.spurious.push_back(*it);
  }
  return report;
}

namespace {

bool same_end(const std::optional<Point>& a, const std::optional<Point>& b) {
  return a && b && *a == *b;
}

}  // namespace

std::vector<CellIntervals> oracle_intervals(std::span<const Site> sites, int k) {
  auto orders = oracle_orders(sites, k + 1);
  const auto lower = directed(orders[k - 1].edges);
  const auto upper = directed(orders[k].edges);

  std::map<std::vector<int>, CellIntervals> cells;
  for (const auto& f : upper) {
    auto& c = cells[f.left_cell()];
    c.cell = f.left_cell();
    c.boundary.push_back(f);
  }
  for (const auto& e : lower) {
    if (e.head && e.in_closest(e.head_extra)) continue;
    auto it = cells.find(e.enclosing_set());
    if (it != cells.end()) it->second.relevant.push_back(e);
  }

  std::vector<CellIntervals> out;
  for (auto& [key, c] : cells) {
    // Chain the boundary counterclockwise: each edge's head is the next tail.
    std::vector<HalfEdge> edges = std::move(c.boundary);
    std::vector<HalfEdge> chain;
    std::size_t start = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!edges[i].tail) start = i;
    }
    if (edges[start].tail) {
      // Bounded cell: start right after a relevant head when there is one.
      for (std::size_t i = 0; i < edges.size(); ++i) {
        for (const auto& r : c.relevant) {
          if (same_end(edges[i].tail, r.head)) start = i;
        }
      }
    }
    std::vector<char> used(edges.size(), 0);
    std::size_t cur = start;
    while (true) {
      chain.push_back(edges[cur]);
      used[cur] = 1;
      if (!edges[cur].head) break;
      std::size_t next = edges.size();
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!used[i] && same_end(edges[i].tail, edges[cur].head)) next = i;
      }
      if (next == edges.size()) break;
      cur = next;
    }
    c.boundary = std::move(chain);
    int owner = -1;
    for (const auto& f : c.boundary) {
      for (std::size_t r = 0; r < c.relevant.size(); ++r) {
        if (c.relevant[r].head && same_end(f.tail, c.relevant[r].head)) owner = static_cast<int>(r);
      }
      c.owner.push_back(owner);
    }
    // The edges coming in from infinity belong to the last head at infinity
    // before them, or else to the interval running off to infinity.
    if (!c.boundary.empty() && !c.boundary.back().head) {
      const Point out_dir = c.boundary.back().dir;
      int lead = owner;
      for (std::size_t r = 0; r < c.relevant.size(); ++r) {
        if (c.relevant[r].head) continue;
        if (lead < 0 || c.relevant[static_cast<std::size_t>(lead)].head ||
            ccw_before(out_dir, c.relevant[static_cast<std::size_t>(lead)].dir, c.relevant[r].dir)) {
          lead = static_cast<int>(r);
        }
      }
      for (int& o : c.owner) {
        if (o != -1) break;
        o = lead;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace vw
