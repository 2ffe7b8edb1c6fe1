#pragma once

#include "vorospace/geometry.hpp"
#include "vorospace/halfedge.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vw {

class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One site per line as `x y` decimal literals; `#` starts a comment and
/// blank lines are skipped. Sites are indexed in file order.
std::vector<Site> parse_sites(std::string_view text);
std::vector<Site> read_sites(const std::string& path);
std::string format_sites(const std::vector<Site>& sites);

/// Record stream: one encoded half-edge per line.
std::vector<HalfEdge> parse_records(std::string_view text);
std::vector<HalfEdge> read_records(const std::string& path);
void write_record(std::ostream& out, const HalfEdge& e);

/// n sites with integer coordinates drawn uniformly from [0, range), redrawn
/// until they pass the general-position check.
std::vector<Site> random_sites(std::size_t n, std::uint64_t seed, std::int64_t range = 1 << 20);

/// Generator spec of the form `random:<n>:<seed>`.
std::vector<Site> generate_from_spec(std::string_view spec);

}  // namespace vw
