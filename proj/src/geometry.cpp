#include "vorospace/geometry.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

namespace vw {

int orient(const Point& a, const Point& b, const Point& c) {
  return sign(cross(b - a, c - a));
}

namespace {

// 0: turn in (0, pi), 1: [pi, 2pi), 2: no turn.
int turn_half(const Point& from, const Point& u) {
  const int c = sign(cross(from, u));
  if (c > 0) return 0;
  if (c < 0) return 1;
  return sign(dot(from, u)) > 0 ? 2 : 1;
}

}  // namespace

bool ccw_before(const Point& from, const Point& a, const Point& b) {
  const int ha = turn_half(from, a);
  const int hb = turn_half(from, b);
  if (ha != hb) return ha < hb;
  if (ha == 2) return false;
  return sign(cross(a, b)) > 0;
}

int incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (orient(a, b, c) == 0) throw DegenerateError("incircle: collinear defining triple");
  Rational adx = a.x - d.x, ady = a.y - d.y;
  Rational bdx = b.x - d.x, bdy = b.y - d.y;
  Rational cdx = c.x - d.x, cdy = c.y - d.y;
  Rational alift = adx * adx + ady * ady;
  Rational blift = bdx * bdx + bdy * bdy;
  Rational clift = cdx * cdx + cdy * cdy;
  Rational det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                 clift * (adx * bdy - bdx * ady);
  return sign(det);
}

Point circumcenter(const Point& a, const Point& b, const Point& c) {
  Rational d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  if (d == 0) throw DegenerateError("circumcenter: collinear triple");
  Rational la = a.x * a.x + a.y * a.y;
  Rational lb = b.x * b.x + b.y * b.y;
  Rational lc = c.x * c.x + c.y * c.y;
  Rational ux = (la * (b.y - c.y) + lb * (c.y - a.y) + lc * (a.y - b.y)) / d;
  Rational uy = (la * (c.x - b.x) + lb * (a.x - c.x) + lc * (b.x - a.x)) / d;
  return {ux, uy};
}

BisectorLine bisector(const Site& p, const Site& q) {
  if (p.at == q.at) throw DegenerateError("bisector: identical sites");
  BisectorLine line;
  line.p = p.index;
  line.q = q.index;
  Point d = q.at - p.at;
  line.a = 2 * d.x;
  line.b = 2 * d.y;
  line.c = dot(q.at, q.at) - dot(p.at, p.at);
  line.base = Rational(1, 2) * (p.at + q.at);
  line.dir = rot90(d);
  return line;
}

bool same_line(const BisectorLine& l1, const BisectorLine& l2) {
  return l1.a * l2.b == l2.a * l1.b && l1.a * l2.c == l2.a * l1.c && l1.b * l2.c == l2.b * l1.c;
}

std::optional<Rational> ray_hit(const Ray& r, const BisectorLine& line) {
  Rational den = line.a * r.direction.x + line.b * r.direction.y;
  Rational num = line.c - line.a * r.origin.x - line.b * r.origin.y;
  if (den == 0) {
    if (num == 0) throw DegenerateError("ray_hit: ray lies inside the line");
    return std::nullopt;
  }
  Rational t = num / den;
  if (t < 0) return std::nullopt;
  return t;
}

EdgePiece::Kind EdgePiece::kind() const {
  if (lo && hi) return Kind::Segment;
  if (lo || hi) return Kind::Ray;
  return Kind::Line;
}

std::optional<Point> EdgePiece::lo_point() const {
  if (!lo) return std::nullopt;
  return carrier.at(*lo);
}

std::optional<Point> EdgePiece::hi_point() const {
  if (!hi) return std::nullopt;
  return carrier.at(*hi);
}

Point EdgePiece::sample_point() const {
  if (lo && hi) return carrier.at((*lo + *hi) / 2);
  if (lo) return carrier.at(*lo + 1);
  if (hi) return carrier.at(*hi - 1);
  return carrier.base;
}

bool clip_in_place(EdgePiece& piece, const Site& anchor, const Site& rival, Keep keep) {
  // d2(x, anchor) - d2(x, rival) = 2 x.(rival - anchor) + |anchor|^2 - |rival|^2,
  // affine in the carrier parameter: alpha + beta * t.
  Point diff = rival.at - anchor.at;
  Rational alpha = 2 * dot(piece.carrier.base, diff) + dot(anchor.at, anchor.at) -
                   dot(rival.at, rival.at);
  Rational beta = 2 * dot(piece.carrier.dir, diff);
  if (keep == Keep::Farther) {
    alpha = -alpha;
    beta = -beta;
  }
  // keep alpha + beta * t < 0
  if (beta == 0) return alpha < 0;
  Rational root = -alpha / beta;
  if (beta > 0) {
    if (!piece.hi || root < *piece.hi) {
      piece.hi = root;
      piece.hi_site = rival.index;
    }
  } else {
    if (!piece.lo || root > *piece.lo) {
      piece.lo = root;
      piece.lo_site = rival.index;
    }
  }
  return !(piece.lo && piece.hi && *piece.lo >= *piece.hi);
}

std::optional<EdgePiece> clip_to_nearer(const EdgePiece& piece, const Site& anchor,
                                        const Site& rival, Keep keep) {
  EdgePiece out = piece;
  if (!clip_in_place(out, anchor, rival, keep)) return std::nullopt;
  return out;
}

std::string Violation::describe() const {
  std::string name;
  switch (kind) {
    case Kind::DuplicateSite: name = "DuplicateSite"; break;
    case Kind::CollinearTriple: name = "CollinearTriple"; break;
    case Kind::CocircularQuadruple: name = "CocircularQuadruple"; break;
  }
  name += "(";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) name += ",";
    name += std::to_string(indices[i]);
  }
  return name + ")";
}

namespace {

std::optional<Violation> find_duplicate(std::span<const Site> sites) {
  std::vector<std::size_t> order(sites.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sites[a].at == sites[b].at) return a < b;
    return sites[a].at < sites[b].at;
  });
  std::optional<Violation> best;
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (sites[order[k - 1]].at == sites[order[k]].at) {
      std::vector<int> pair{sites[order[k - 1]].index, sites[order[k]].index};
      std::sort(pair.begin(), pair.end());
      if (!best || pair < best->indices) best = Violation{Violation::Kind::DuplicateSite, pair};
    }
  }
  return best;
}

}  // namespace

GeneralPositionReport validate_general_position(std::span<const Site> sites,
                                                const ValidationOptions& options) {
  GeneralPositionReport report;
  if (auto dup = find_duplicate(sites)) {
    report.violation = dup;
    return report;
  }
  const std::size_t n = sites.size();
  auto idx = [&](std::initializer_list<std::size_t> ids) {
    std::vector<int> out;
    for (auto i : ids) out.push_back(sites[i].index);
    return out;
  };

  if (n <= options.exhaustive_limit) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          ++report.tuples_checked;
          if (orient(sites[i], sites[j], sites[k]) == 0) {
            report.violation = Violation{Violation::Kind::CollinearTriple, idx({i, j, k})};
            return report;
          }
        }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          for (std::size_t l = k + 1; l < n; ++l) {
            ++report.tuples_checked;
            if (incircle(sites[i], sites[j], sites[k], sites[l]) == 0) {
              report.violation =
                  Violation{Violation::Kind::CocircularQuadruple, idx({i, j, k, l})};
              return report;
            }
          }
    return report;
  }

  // Sampled: alternate triples and quadruples of distinct positions.
  report.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    const std::size_t want = (s % 2 == 0) ? 3 : 4;
    std::vector<std::size_t> t;
    while (t.size() < want) {
      std::size_t c = pick(rng);
      if (std::find(t.begin(), t.end(), c) == t.end()) t.push_back(c);
    }
    std::sort(t.begin(), t.end());
    ++report.tuples_checked;
    if (orient(sites[t[0]], sites[t[1]], sites[t[2]]) == 0) {
      report.violation = Violation{Violation::Kind::CollinearTriple, idx({t[0], t[1], t[2]})};
      return report;
    }
    if (want == 4) {
      // A quadruple containing a collinear triple is reported as such.
      for (auto [a, b, c] : {std::array<std::size_t, 3>{t[0], t[1], t[3]},
                             std::array<std::size_t, 3>{t[0], t[2], t[3]},
                             std::array<std::size_t, 3>{t[1], t[2], t[3]}}) {
        if (orient(sites[a], sites[b], sites[c]) == 0) {
          report.violation = Violation{Violation::Kind::CollinearTriple, idx({a, b, c})};
          return report;
        }
      }
      if (incircle(sites[t[0]], sites[t[1]], sites[t[2]], sites[t[3]]) == 0) {
        report.violation =
            Violation{Violation::Kind::CocircularQuadruple, idx({t[0], t[1], t[2], t[3]})};
        return report;
      }
    }
  }
  return report;
}

}  // namespace vw
