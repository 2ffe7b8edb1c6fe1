#include "vorospace/svg.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vw {

namespace {

constexpr double kWidth = 800.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

// Narrows [lo, hi] (either side open when unset) to where a + t*d stays
// within [min, max] on one axis.
bool narrow(const Rational& a, const Rational& d, const Rational& min, const Rational& max,
            std::optional<Rational>& lo, std::optional<Rational>& hi) {
  if (d == 0) return a >= min && a <= max;
  Rational t1 = (min - a) / d;
  Rational t2 = (max - a) / d;
  if (t1 > t2) std::swap(t1, t2);
  if (!lo || t1 > *lo) lo = t1;
  if (!hi || t2 < *hi) hi = t2;
  return *lo <= *hi;
}

}  // namespace

Viewport parse_viewport(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    auto r = parse_rational(part);
    if (!r) throw std::invalid_argument("bad viewport '" + text + "'");
    v.push_back(*r);
  }
  if (v.size() != 4 || v[0] >= v[2] || v[1] >= v[3]) throw std::invalid_argument("bad viewport '" + text + "'");
  return Viewport{v[0], v[1], v[2], v[3]};
}

Viewport fit_viewport(const std::vector<HalfEdge>& records, const std::vector<Site>& sites) {
  std::vector<Point> pts;
  for (const Site& s : sites) pts.push_back(s.at);
  for (const HalfEdge& e : records) {
    if (e.tail) pts.push_back(*e.tail);
    if (e.head) pts.push_back(*e.head);
  }
  if (pts.empty()) return Viewport{Rational(-1), Rational(-1), Rational(1), Rational(1)};
  Viewport v{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const Point& p : pts) {
    if (p.x < v.xmin) v.xmin = p.x;
    if (p.y < v.ymin) v.ymin = p.y;
    if (p.x > v.xmax) v.xmax = p.x;
    if (p.y > v.ymax) v.ymax = p.y;
  }
  Rational pad = std::max<Rational>(v.xmax - v.xmin, v.ymax - v.ymin) / 4;
  if (pad == 0) pad = 1;
  v.xmin -= pad;
  v.ymin -= pad;
  v.xmax += pad;
  v.ymax += pad;
  return v;
}

std::optional<std::pair<Point, Point>> clip_to_viewport(const HalfEdge& e, const Viewport& view,
                                                        const std::vector<Site>& sites) {
  Point base;
  std::optional<Rational> lo, hi;
  if (e.tail) {
    base = *e.tail;
    lo = Rational(0);
    if (e.head) hi = dot(*e.head - base, e.dir) / dot(e.dir, e.dir);
  } else if (e.head) {
    base = *e.head;
    hi = Rational(0);
  } else {
    const Site* l = nullptr;
    const Site* r = nullptr;
    for (const Site& s : sites) {
      if (s.index == e.left) l = &s;
      if (s.index == e.right) r = &s;
    }
    if (!l || !r) return std::nullopt;
    base = bisector(*l, *r).base;
  }
  if (!narrow(base.x, e.dir.x, view.xmin, view.xmax, lo, hi)) return std::nullopt;
  if (!narrow(base.y, e.dir.y, view.ymin, view.ymax, lo, hi)) return std::nullopt;
  if (!lo || !hi || *lo >= *hi) return std::nullopt;
  return std::make_pair(base + *lo * e.dir, base + *hi * e.dir);
}

std::string render_svg(const std::vector<HalfEdge>& records, const std::vector<Site>& sites,
                       const std::optional<Viewport>& view_in) {
  const Viewport view = view_in ? *view_in : fit_viewport(records, sites);
  const double x0 = view.xmin.get_d();
  const double y1 = view.ymax.get_d();
  const double scale = kWidth / Rational(view.xmax - view.xmin).get_d();
  const double height = Rational(view.ymax - view.ymin).get_d() * scale;
  auto sx = [&](const Rational& x) { return fmt((x.get_d() - x0) * scale); };
  auto sy = [&](const Rational& y) { return fmt((y1 - y.get_d()) * scale); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0 0 " << fmt(kWidth) << " " << fmt(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const HalfEdge& e : records) {
    auto seg = clip_to_viewport(e, view, sites);
    if (!seg) continue;
    const char* color = kPalette[static_cast<std::size_t>(e.k - 1) % std::size(kPalette)];
    out << "<line x1=\"" << sx(seg->first.x) << "\" y1=\"" << sy(seg->first.y) << "\" x2=\"" << sx(seg->second.x)
        << "\" y2=\"" << sy(seg->second.y) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\" data-k=\"" << e.k
        << "\"/>\n";
  }
  for (const Site& s : sites) {
    out << "<circle cx=\"" << sx(s.at.x) << "\" cy=\"" << sy(s.at.y) << "\" r=\"3\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace vw
