#pragma once

#include "vorospace/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vw {

/// Sentinel for a missing endpoint site.
inline constexpr int kUnbounded = -1;

class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A directed edge of the order-k diagram, associated with the k-cell on its
/// left. It is named by at most k+3 sites: the k-1 sites nearer than the
/// edge, the tied pair, and one extra site per bounded endpoint.
///
/// The edge lies on the bisector of `left` and `right`; its left cell is
/// `closest` + {left}, its right cell `closest` + {right}. It runs from
/// `tail` to `head` along `dir`, the primitive integer multiple of
/// rot90(right - left).
///
/// For the nearest (k = 1) and farthest (k = n-1) diagrams the library also
/// uses this type for undirected edge records, with left < right.
struct HalfEdge {
  int k = 1;
  std::vector<int> closest;
  int left = -1;
  int right = -1;
  std::optional<Point> tail;
  std::optional<Point> head;
  Point dir;
  int tail_extra = kUnbounded;
  int head_extra = kUnbounded;

  /// Sites of the left cell, sorted.
  std::vector<int> left_cell() const;
  /// Sites of the right cell, sorted.
  std::vector<int> right_cell() const;
  /// closest + {left, right}, sorted: the (k+1)-cell containing the edge.
  std::vector<int> enclosing_set() const;
  bool in_closest(int site) const;

  HalfEdge twin() const;
  /// Same edge with left < right (reverses direction when needed).
  HalfEdge undirected() const;
  /// A point in the relative interior, mirroring EdgePiece::sample_point().
  Point sample_point() const;

  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// Primitive integer vector with the direction of v (v != 0).
Point primitive_direction(const Point& v);

/// Converts a clipped bisector piece of `carrier.p` and `carrier.q` into a
/// half-edge directed along the carrier (so left = p).
HalfEdge halfedge_from_piece(const EdgePiece& piece, int k, std::vector<int> closest);

/// Restores the parameter interval of `e` on bisector(left, right).
EdgePiece piece_from_halfedge(const HalfEdge& e, const Site& left, const Site& right);

/// One record line:
/// `k=<int> closest=<i1,...> pair=<a,b> tail=<x,y|INF:dx,dy>
///  head=<x,y|INF:dx,dy> extraT=<i|-> extraH=<i|->` (single spaces, one line).
std::string encode_halfedge(const HalfEdge& e);
/// Inverse of encode_halfedge; throws RecordError on malformed text.
HalfEdge decode_halfedge(std::string_view line);

}  // namespace vw
