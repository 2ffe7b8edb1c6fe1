#include "support.hpp"

#include "vorospace/io.hpp"
#include "vorospace/oracle.hpp"
#include "vorospace/pipeline.hpp"
#include "vorospace/run.hpp"
#include "vorospace/svg.hpp"

#include <doctest.h>

#include <sstream>

using namespace vw;
using vw::testing::pt;

namespace {

std::string run_text(const std::vector<Site>& sites, const RunOptions& options, RunReport* report = nullptr) {
  std::ostringstream out;
  auto r = execute_run(sites, options, [&](const HalfEdge& e) { write_record(out, e); });
  if (report) *report = r;
  return out.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("run modes parse") {
  CHECK(parse_run_mode("nvd") == RunMode::Nvd);
  CHECK(parse_run_mode("fvd") == RunMode::Fvd);
  CHECK(parse_run_mode("order") == RunMode::Order);
  CHECK_THROWS_AS(parse_run_mode("kvd"), ConfigError);
  CHECK(to_string(RunMode::Fvd) == "fvd");
}

TEST_CASE("execute_run matches the oracle in every mode") {
  auto s = random_sites(14, 4);
  auto orders = oracle_orders(s, 13);
  for (std::optional<std::size_t> ws : {std::optional<std::size_t>{}, std::optional<std::size_t>{3}}) {
    RunOptions o;
    o.workspace = ws;
    o.enforce = true;
    auto nvd = parse_records(run_text(s, o));
    CHECK(verify_run(s, nvd, orders[0], true).ok());
    o.mode = RunMode::Fvd;
    auto fvd = parse_records(run_text(s, o));
    CHECK(verify_run(s, fvd, orders[12], true).ok());
  }
  RunOptions o;
  o.mode = RunMode::Order;
  o.max_k = 2;
  o.enforce = true;
  RunReport report;
  auto records = parse_records(run_text(s, o, &report));
  CHECK(report.s == 4u);
  CHECK(report.emitted_per_order[1] == orders[0].edges.size());
  CHECK(report.emitted_per_order[2] == 2 * orders[1].edges.size());
  CHECK(report.peak_words <= report.budget_words);
}

TEST_CASE("reports are deterministic and leave out time by default") {
  auto s = random_sites(16, 2);
  RunOptions o;
  o.mode = RunMode::Order;
  o.max_k = 2;
  o.workspace = 16;
  RunReport a, b;
  CHECK(run_text(s, o, &a) == run_text(s, o, &b));
  CHECK(report_json(a, false) == report_json(b, false));
  CHECK(report_json(a, false).find("wall") == std::string::npos);
  CHECK(report_json(a, true).find("wall_seconds") != std::string::npos);
  CHECK(report_json(a, false).rfind("{\"n\":16,\"mode\":\"order\",\"K\":2,\"s\":16,", 0) == 0);
}

TEST_CASE("bad configurations are rejected before any work") {
  auto s = random_sites(6, 1);
  RunOptions o;
  o.mode = RunMode::Order;
  o.max_k = 6;
  CHECK_THROWS_AS(run_text(s, o), ConfigError);
  o.max_k = 3;
  o.workspace = 4;
  CHECK_THROWS_AS(run_text(s, o), ConfigError);
  o.mode = RunMode::Nvd;
  o.workspace = 0;
  CHECK_THROWS_AS(run_text(s, o), ConfigError);
}

TEST_CASE("records survive a text round trip") {
  auto s = random_sites(12, 8);
  RunOptions o;
  o.mode = RunMode::Order;
  o.max_k = 3;
  o.workspace = 9;
  const std::string text = run_text(s, o);
  std::ostringstream again;
  for (const auto& e : parse_records(text)) write_record(again, e);
  CHECK(again.str() == text);
  CHECK(parse_sites(format_sites(s)).size() == s.size());
}

TEST_CASE("viewports") {
  auto v = parse_viewport("-1,-2,3/2,4");
  CHECK(v.xmin == -1);
  CHECK(v.xmax == vw::testing::frac(3, 2));
  CHECK_THROWS(parse_viewport("0,0,1"));
  CHECK_THROWS(parse_viewport("1,0,0,1"));
  auto fit = fit_viewport({}, vw::testing::triangle());
  CHECK(fit.xmin == -2);
  CHECK(fit.xmax == 10);
  CHECK(fit.ymax == 8);
}

TEST_CASE("clipping to the viewport is exact") {
  auto tri = vw::testing::triangle();
  HalfEdge ray;
  ray.k = 1;
  ray.left = 1;
  ray.right = 0;
  ray.tail = pt(4, 3);
  ray.tail_extra = 2;
  ray.dir = pt(0, -1);
  Viewport v{Rational(0), Rational(-10), Rational(10), Rational(10)};
  auto seg = clip_to_viewport(ray, v, tri);
  REQUIRE(seg);
  CHECK(seg->first == pt(4, 3));
  CHECK(seg->second.x == 4);
  CHECK(seg->second.y == -10);
  Viewport away{Rational(20), Rational(20), Rational(30), Rational(30)};
  CHECK_FALSE(clip_to_viewport(ray, away, tri));
}

TEST_CASE("svg output") {
  auto tri = vw::testing::triangle();
  RunOptions o;
  auto records = parse_records(run_text(tri, o));
  CHECK(records.size() == 3);
  const std::string svg = render_svg(records, tri, std::nullopt);
  CHECK(svg == render_svg(records, tri, std::nullopt));
  CHECK(count(svg, "<line ") == 3);
  CHECK(count(svg, "<circle ") == 3);
  CHECK(svg.rfind("<svg ", 0) == 0);
  const std::string empty = render_svg({}, {}, std::nullopt);
  CHECK(empty.rfind("<svg ", 0) == 0);
  CHECK(empty.find("</svg>") != std::string::npos);
  CHECK(count(empty, "<line ") == 0);
}
