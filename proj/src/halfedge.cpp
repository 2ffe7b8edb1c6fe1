#include "vorospace/halfedge.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace vw {

std::vector<int> HalfEdge::left_cell() const {
  std::vector<int> out = closest;
  out.insert(std::upper_bound(out.begin(), out.end(), left), left);
  return out;
}

std::vector<int> HalfEdge::right_cell() const {
  std::vector<int> out = closest;
  out.insert(std::upper_bound(out.begin(), out.end(), right), right);
  return out;
}

std::vector<int> HalfEdge::enclosing_set() const {
  std::vector<int> out = left_cell();
  out.insert(std::upper_bound(out.begin(), out.end(), right), right);
  return out;
}

bool HalfEdge::in_closest(int site) const {
  return std::binary_search(closest.begin(), closest.end(), site);
}

HalfEdge HalfEdge::twin() const {
  HalfEdge t = *this;
  std::swap(t.left, t.right);
  std::swap(t.tail, t.head);
  std::swap(t.tail_extra, t.head_extra);
  t.dir = Point{-dir.x, -dir.y};
  return t;
}

HalfEdge HalfEdge::undirected() const { return left < right ? *this : twin(); }

Point HalfEdge::sample_point() const {
  if (tail && head) return Rational(1, 2) * (*tail + *head);
  if (tail) return *tail + dir;
  if (head) return *head - dir;
  throw RecordError("half-edge without endpoints has no sample point");
}

Point primitive_direction(const Point& v) {
  if (v.x == 0 && v.y == 0) throw DegenerateError("primitive_direction: zero vector");
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), v.x.get_den_mpz_t(), v.y.get_den_mpz_t());
  mpz_class X = v.x.get_num() * (l / v.x.get_den());
  mpz_class Y = v.y.get_num() * (l / v.y.get_den());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
  return Point{Rational(X / g), Rational(Y / g)};
}

HalfEdge halfedge_from_piece(const EdgePiece& piece, int k, std::vector<int> closest) {
  HalfEdge e;
  e.k = k;
  e.closest = std::move(closest);
  std::sort(e.closest.begin(), e.closest.end());
  e.left = piece.carrier.p;
  e.right = piece.carrier.q;
  e.tail = piece.lo_point();
  e.head = piece.hi_point();
  e.dir = primitive_direction(piece.carrier.dir);
  e.tail_extra = piece.lo ? piece.lo_site : kUnbounded;
  e.head_extra = piece.hi ? piece.hi_site : kUnbounded;
  return e;
}

EdgePiece piece_from_halfedge(const HalfEdge& e, const Site& left, const Site& right) {
  EdgePiece piece = EdgePiece::whole(bisector(left, right));
  if (e.tail) {
    piece.lo = piece.carrier.param_of(*e.tail);
    piece.lo_site = e.tail_extra;
  }
  if (e.head) {
    piece.hi = piece.carrier.param_of(*e.head);
    piece.hi_site = e.head_extra;
  }
  return piece;
}

namespace {

std::string point_text(const Point& p) { return to_string(p.x) + "," + to_string(p.y); }

std::string end_text(const std::optional<Point>& pt, const Point& toward_infinity) {
  if (pt) return point_text(*pt);
  return "INF:" + point_text(toward_infinity);
}

std::string extra_text(int s) { return s == kUnbounded ? "-" : std::to_string(s); }

[[noreturn]] void fail(const std::string& why) { throw RecordError("malformed record: " + why); }

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail("bad integer '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Point parse_point(std::string_view s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) fail("bad point '" + std::string(s) + "'");
  auto x = parse_rational(parts[0]);
  auto y = parse_rational(parts[1]);
  if (!x || !y) fail("bad coordinate in '" + std::string(s) + "'");
  return {*x, *y};
}

struct End {
  std::optional<Point> point;
  std::optional<Point> direction;
};

End parse_end(std::string_view s) {
  if (s.starts_with("INF:")) return End{std::nullopt, parse_point(s.substr(4))};
  return End{parse_point(s), std::nullopt};
}

int parse_extra(std::string_view s) { return s == "-" ? kUnbounded : parse_int(s); }

}  // namespace

std::string encode_halfedge(const HalfEdge& e) {
  std::string out = "k=" + std::to_string(e.k) + " closest=";
  for (std::size_t i = 0; i < e.closest.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e.closest[i]);
  }
  out += " pair=" + std::to_string(e.left) + "," + std::to_string(e.right);
  out += " tail=" + end_text(e.tail, Point{-e.dir.x, -e.dir.y});
  out += " head=" + end_text(e.head, e.dir);
  out += " extraT=" + extra_text(e.tail ? e.tail_extra : kUnbounded);
  out += " extraH=" + extra_text(e.head ? e.head_extra : kUnbounded);
  return out;
}

HalfEdge decode_halfedge(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  std::map<std::string_view, std::string_view> fields;
  for (auto token : split(line, ' ')) {
    auto eq = token.find('=');
    if (eq == std::string_view::npos) fail("token without '='");
    if (!fields.emplace(token.substr(0, eq), token.substr(eq + 1)).second) fail("repeated key");
  }
  for (const char* key : {"k", "closest", "pair", "tail", "head", "extraT", "extraH"}) {
    if (!fields.contains(key)) fail(std::string("missing ") + key);
  }
  if (fields.size() != 7) fail("unexpected key");

  HalfEdge e;
  e.k = parse_int(fields["k"]);
  if (e.k < 1) fail("order must be positive");
  if (!fields["closest"].empty()) {
    for (auto c : split(fields["closest"], ',')) e.closest.push_back(parse_int(c));
  }
  if (static_cast<int>(e.closest.size()) != e.k - 1) fail("closest set has wrong size for its order");
  if (!std::is_sorted(e.closest.begin(), e.closest.end()) ||
      std::adjacent_find(e.closest.begin(), e.closest.end()) != e.closest.end()) {
    fail("closest set must be strictly increasing");
  }
  auto pair = split(fields["pair"], ',');
  if (pair.size() != 2) fail("pair needs two sites");
  e.left = parse_int(pair[0]);
  e.right = parse_int(pair[1]);
  if (e.left == e.right || e.left < 0 || e.right < 0) fail("pair sites must be distinct");
  if (e.in_closest(e.left) || e.in_closest(e.right)) fail("pair overlaps closest set");

  End tail = parse_end(fields["tail"]);
  End head = parse_end(fields["head"]);
  e.tail = tail.point;
  e.head = head.point;
  if (head.direction) {
    e.dir = primitive_direction(*head.direction);
  } else if (tail.direction) {
    const Point& d = *tail.direction;
    e.dir = primitive_direction(Point{-d.x, -d.y});
  } else {
    if (*e.tail == *e.head) fail("empty segment");
    e.dir = primitive_direction(*e.head - *e.tail);
  }
  if (head.direction && tail.direction) {
    const Point& d = *tail.direction;
    if (primitive_direction(Point{-d.x, -d.y}) != e.dir) fail("inconsistent directions");
  }
  if (e.tail && e.head && primitive_direction(*e.head - *e.tail) != e.dir) {
    fail("endpoints disagree with direction");
  }
  e.tail_extra = parse_extra(fields["extraT"]);
  e.head_extra = parse_extra(fields["extraH"]);
  if (!e.tail && e.tail_extra != kUnbounded) fail("unbounded tail with extra site");
  if (!e.head && e.head_extra != kUnbounded) fail("unbounded head with extra site");
  if (e.tail && e.tail_extra == kUnbounded) fail("bounded tail without extra site");
  if (e.head && e.head_extra == kUnbounded) fail("bounded head without extra site");
  return e;
}

}  // namespace vw
