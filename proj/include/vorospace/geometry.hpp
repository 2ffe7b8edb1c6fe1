#pragma once

#include "vorospace/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vw {

/// Raised when an exact predicate or construction meets a configuration that
/// general position forbids (collinear triple, ray lying inside a line, ...).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(const Rational& s, const Point& a) { return {s * a.x, s * a.y}; }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
/// Counterclockwise quarter turn.
inline Point rot90(const Point& v) { return {-v.y, v.x}; }
inline Rational dist2(const Point& a, const Point& b) {
  Rational dx = a.x - b.x;
  Rational dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// An input point. `index` is its position in the input and identifies it in
/// every output record.
struct Site {
  Point at;
  int index = -1;
};

/// Sign of the signed area of (a, b, c): +1 counterclockwise, -1 clockwise,
/// 0 collinear.
int orient(const Point& a, const Point& b, const Point& c);

/// True when direction a is met strictly before b turning counterclockwise
/// from `from`. Directions parallel to `from` itself count as a full turn.
bool ccw_before(const Point& from, const Point& a, const Point& b);
inline int orient(const Site& a, const Site& b, const Site& c) { return orient(a.at, b.at, c.at); }

/// Sign of the in-circle determinant. For counterclockwise (a, b, c) it is +1
/// iff d lies strictly inside their circle. Throws DegenerateError when
/// (a, b, c) is collinear.
int incircle(const Point& a, const Point& b, const Point& c, const Point& d);
inline int incircle(const Site& a, const Site& b, const Site& c, const Site& d) {
  return incircle(a.at, b.at, c.at, d.at);
}

/// Circumcenter of a non-collinear triple; throws DegenerateError otherwise.
Point circumcenter(const Point& a, const Point& b, const Point& c);
inline Point circumcenter(const Site& a, const Site& b, const Site& c) {
  return circumcenter(a.at, b.at, c.at);
}

/// Perpendicular bisector of sites p and q, as `a*x + b*y = c`, together with
/// the parametrisation `base + t * dir` where base is the midpoint and
/// dir = rot90(q - p). Site p lies to the left of dir.
struct BisectorLine {
  int p = -1;
  int q = -1;
  Rational a, b, c;
  Point base;
  Point dir;

  Point at(const Rational& t) const { return base + t * dir; }
  /// Parameter of a point already known to lie on the line.
  Rational param_of(const Point& pt) const { return dot(pt - base, dir) / dot(dir, dir); }
  bool contains(const Point& pt) const { return a * pt.x + b * pt.y == c; }
};

BisectorLine bisector(const Site& p, const Site& q);

/// True iff both lines describe the same point set.
bool same_line(const BisectorLine& l1, const BisectorLine& l2);

struct Ray {
  Point origin;
  Point direction;

  Point at(const Rational& t) const { return origin + t * direction; }
};

/// Smallest t >= 0 with origin + t*direction on the line, if any. Throws
/// DegenerateError when the ray lies inside the line.
std::optional<Rational> ray_hit(const Ray& r, const BisectorLine& line);

/// Which side of a bisector to keep when clipping.
enum class Keep { Nearer, Farther };

/// A connected, relatively open part of a bisector: the parameter interval
/// (lo, hi) on `carrier`, where a missing bound is unbounded. `lo_site` and
/// `hi_site` name the site whose bisector with the carrier's p produced the
/// bound (-1 when unbounded).
struct EdgePiece {
  enum class Kind { Segment, Ray, Line };

  BisectorLine carrier;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  int lo_site = -1;
  int hi_site = -1;

  static EdgePiece whole(BisectorLine line) { return EdgePiece{std::move(line), {}, {}, -1, -1}; }

  Kind kind() const;
  std::optional<Point> lo_point() const;
  std::optional<Point> hi_point() const;
  /// A point in the relative interior: the midpoint, or one parameter unit
  /// inside from the only endpoint, or the carrier base for a full line.
  Point sample_point() const;
};

/// Restricts `piece` to the points strictly nearer to (or farther from)
/// `anchor` than `rival`. Returns false, leaving `piece` unspecified, when
/// nothing remains.
bool clip_in_place(EdgePiece& piece, const Site& anchor, const Site& rival, Keep keep);

/// Value-returning form of clip_in_place.
std::optional<EdgePiece> clip_to_nearer(const EdgePiece& piece, const Site& anchor,
                                        const Site& rival, Keep keep = Keep::Nearer);

struct Violation {
  enum class Kind { DuplicateSite, CollinearTriple, CocircularQuadruple };
  Kind kind;
  std::vector<int> indices;

  std::string describe() const;
};

struct GeneralPositionReport {
  /// True when every tuple was checked; false when the check was sampled.
  bool exhaustive = true;
  std::uint64_t tuples_checked = 0;
  std::optional<Violation> violation;

  bool ok() const { return !violation.has_value(); }
};

struct ValidationOptions {
  std::size_t exhaustive_limit = 64;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
};

/// Rejects duplicate sites, collinear triples and cocircular quadruples.
/// Duplicates are always checked exhaustively; triples and quadruples are
/// exhaustive up to `exhaustive_limit` sites and sampled above it.
GeneralPositionReport validate_general_position(std::span<const Site> sites,
                                                const ValidationOptions& options = {});

}  // namespace vw
