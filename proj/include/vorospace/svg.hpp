#pragma once

#include "vorospace/geometry.hpp"
#include "vorospace/halfedge.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vw {

struct Viewport {
  Rational xmin;
  Rational ymin;
  Rational xmax;
  Rational ymax;
};

/// "xmin,ymin,xmax,ymax" with exact rational fields.
Viewport parse_viewport(const std::string& text);

/// Box around the sites and finite endpoints, padded by a quarter of its
/// size on every side. The unit box around the origin when there is nothing.
Viewport fit_viewport(const std::vector<HalfEdge>& records, const std::vector<Site>& sites);

/// Part of the record inside the viewport, exactly. Full lines need their
/// pair among `sites`; without it they are dropped.
std::optional<std::pair<Point, Point>> clip_to_viewport(const HalfEdge& e, const Viewport& view,
                                                        const std::vector<Site>& sites);

/// Same input, same bytes.
std::string render_svg(const std::vector<HalfEdge>& records, const std::vector<Site>& sites,
                       const std::optional<Viewport>& view);

}  // namespace vw
