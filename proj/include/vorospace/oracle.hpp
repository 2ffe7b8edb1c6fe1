#pragma once

#include "vorospace/geometry.hpp"
#include "vorospace/halfedge.hpp"

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace vw {

struct OracleVertex {
  Point at;
  std::array<int, 3> sites;
  /// Sites strictly inside the circle through `sites`.
  std::vector<int> inside;
  /// Old at order |inside| + 2, new at order |inside| + 1.
  int new_order() const { return static_cast<int>(inside.size()) + 1; }
};

struct OracleDiagram {
  int k = 1;
  /// Undirected records (left < right), sorted by their encoding.
  std::vector<HalfEdge> edges;
};

/// Brute-force diagrams of orders 1..max_k. Each bisector is cut at its
/// crossings with all other bisectors through one of its sites; every open
/// interval with c sites strictly closer is an edge of order c + 1.
std::vector<OracleDiagram> oracle_orders(std::span<const Site> sites, int max_k);
OracleDiagram oracle_vdk(std::span<const Site> sites, int k);

/// Every vertex of every order, by direct in-circle counting.
std::vector<OracleVertex> oracle_vertices(std::span<const Site> sites);

/// Both half-edges of every edge.
std::vector<HalfEdge> directed(const std::vector<HalfEdge>& undirected_edges);

/// Canonical identity of a record: its encoding after orienting undirected
/// records with left < right.
std::string canonical(const HalfEdge& e, bool undirected);

struct DefectReport {
  std::vector<std::string> missing;
  std::vector<std::string> spurious;
  std::vector<std::string> duplicated;
  std::vector<std::string> invalid;

  bool ok() const { return missing.empty() && spurious.empty() && duplicated.empty() && invalid.empty(); }
  std::string summary() const;
};

/// Sites closer than the tied pair at a point of the record, or an error
/// message when the record's distance profile is wrong there.
std::string check_profile(std::span<const Site> sites, const HalfEdge& e);

/// Compares records of one order against the oracle edges of that order.
/// `undirected` selects whether both directions of an edge collapse.
DefectReport verify_run(std::span<const Site> sites, const std::vector<HalfEdge>& records,
                        const OracleDiagram& oracle, bool undirected);

/// Cyclic boundary of one (k+1)-cell with the owner of every (k+1)-half-edge.
struct CellIntervals {
  std::vector<int> cell;
  /// Boundary half-edges in counterclockwise order, starting after a relevant
  /// head; unbounded cells start at the edge coming in from infinity.
  std::vector<HalfEdge> boundary;
  /// k-half-edges of the cell whose head is a boundary vertex or lies at
  /// infinity.
  std::vector<HalfEdge> relevant;
  /// owner[i] indexes `relevant`.
  std::vector<int> owner;
};

/// Interval structure of every (k+1)-cell, from the oracle diagrams of orders
/// k and k+1.
std::vector<CellIntervals> oracle_intervals(std::span<const Site> sites, int k);

}  // namespace vw
