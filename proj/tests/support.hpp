#pragma once

#include "vorospace/geometry.hpp"

#include <vector>

namespace vw::testing {

inline std::vector<Site> make_sites(const std::vector<std::pair<long, long>>& pts) {
  std::vector<Site> out;
  for (auto [x, y] : pts) out.push_back(Site{{Rational(x), Rational(y)}, static_cast<int>(out.size())});
  return out;
}

inline std::vector<Site> triangle() { return make_sites({{0, 0}, {8, 0}, {0, 6}}); }

inline Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }

/// num/den in lowest terms; gmp arithmetic expects canonical operands.
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace vw::testing
