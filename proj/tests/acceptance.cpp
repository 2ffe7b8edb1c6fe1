// One line per acceptance criterion. Optional argument: path to vwtool, used
// for the command-line half of criterion 7.

#include "vorospace/io.hpp"
#include "vorospace/memory.hpp"
#include "vorospace/oracle.hpp"
#include "vorospace/order_k.hpp"
#include "vorospace/pipeline.hpp"
#include "vorospace/run.hpp"
#include "vorospace/svg.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using namespace vw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Enforcing runs across all criteria; any ModelViolation lands here.
int g_violations = 0;
std::string g_first_violation;

struct Captured {
  std::vector<HalfEdge> records;
  RunReport report;
  bool ok = true;
};

Captured capture(const std::vector<Site>& sites, const RunOptions& options) {
  Captured c;
  try {
    c.report = execute_run(sites, options, [&](const HalfEdge& e) { c.records.push_back(e); });
  } catch (const ModelViolation& e) {
    if (g_violations++ == 0) g_first_violation = e.what();
    c.ok = false;
  }
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string records_text(const std::vector<HalfEdge>& records) {
  std::ostringstream out;
  for (const auto& e : records) write_record(out, e);
  return out.str();
}

Outcome criterion1() {
  Outcome o;
  int runs = 0;
  for (int i = 0; i < 200 && o.pass; ++i) {
    const std::size_t n = 3 + static_cast<std::size_t>(i) % 38;
    auto sites = random_sites(n, 1000 + static_cast<std::uint64_t>(i));
    const OracleDiagram nearest = oracle_vdk(sites, 1);
    const OracleDiagram farthest = oracle_vdk(sites, static_cast<int>(n) - 1);
    const std::size_t root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::vector<std::optional<std::size_t>> workspaces{std::nullopt, 1, root, n};
    for (RunMode mode : {RunMode::Nvd, RunMode::Fvd}) {
      for (auto ws : workspaces) {
        RunOptions opt;
        opt.mode = mode;
        opt.workspace = ws;
        opt.enforce = true;
        auto c = capture(sites, opt);
        ++runs;
        auto report = verify_run(sites, c.records, mode == RunMode::Nvd ? nearest : farthest, true);
        if (!c.ok || !report.ok()) {
          o.fail("set " + std::to_string(i) + " n=" + std::to_string(n) + " mode=" + to_string(mode) +
                 " s=" + (ws ? std::to_string(*ws) : "const") + ": " + (c.ok ? report.summary() : "model violation"));
        }
      }
    }
  }
  if (o.pass) o.detail = "200 sets, " + std::to_string(runs) + " runs equal to the oracle";
  return o;
}

Outcome criterion2() {
  Outcome o;
  int runs = 0;
  for (int i = 0; i < 50 && o.pass; ++i) {
    const std::size_t n = 8 + static_cast<std::size_t>(i) % 17;
    auto sites = random_sites(n, 2000 + static_cast<std::uint64_t>(i));
    auto orders = oracle_orders(sites, 4);
    for (int K : {2, 3, 4}) {
      RunOptions opt;
      opt.mode = RunMode::Order;
      opt.max_k = K;
      opt.workspace = 64;
      opt.enforce = true;
      auto c = capture(sites, opt);
      ++runs;
      const std::string where = "set " + std::to_string(i) + " n=" + std::to_string(n) + " K=" + std::to_string(K);
      if (!c.ok) {
        o.fail(where + ": model violation");
        continue;
      }
      std::map<int, std::vector<HalfEdge>> by_k;
      int last = 0;
      for (const auto& e : c.records) {
        if (e.k < last) o.fail(where + ": order went down");
        last = e.k;
        by_k[e.k].push_back(e);
      }
      for (int k = 1; k <= K; ++k) {
        auto report = verify_run(sites, by_k[k], orders[static_cast<std::size_t>(k - 1)], k == 1);
        if (!report.ok()) o.fail(where + " k=" + std::to_string(k) + ": " + report.summary());
      }
    }
  }
  if (o.pass) o.detail = "50 sets, " + std::to_string(runs) + " pipeline runs equal to the oracle at every order";
  return o;
}

struct VertexId {
  Point at;
  std::array<int, 3> sites;
  auto operator<=>(const VertexId& o) const {
    if (at < o.at) return std::strong_ordering::less;
    if (o.at < at) return std::strong_ordering::greater;
    return sites <=> o.sites;
  }
  bool operator==(const VertexId& o) const { return at == o.at && sites == o.sites; }
};

VertexId head_id(const HalfEdge& e) {
  std::array<int, 3> t{e.left, e.right, e.head_extra};
  std::sort(t.begin(), t.end());
  return {*e.head, t};
}

// Union-find over tree nodes.
struct Forest {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Properties of order k against order k+1 on one site set. Returns an empty
// string when all hold.
std::string structure_check(const std::vector<Site>& sites, int k, const OracleDiagram& ok_k,
                            const OracleDiagram& ok_k1, int& cells_checked) {
  const auto dk = directed(ok_k.edges);
  const auto dk1 = directed(ok_k1.edges);
  std::map<std::vector<int>, std::vector<HalfEdge>> boundary;
  for (const auto& e : dk1) boundary[e.left_cell()].push_back(e);

  // (I) the two k-cells of a k-edge share k-1 sites and their union is a
  // nonempty (k+1)-cell.
  std::map<std::vector<int>, std::vector<HalfEdge>> inside;
  for (const auto& e : ok_k.edges) {
    auto u = e.enclosing_set();
    if (static_cast<int>(u.size()) != k + 1) return "union of size " + std::to_string(u.size());
    if (!boundary.count(u)) return "k-edge outside every (k+1)-cell";
    inside[u].push_back(e);
  }

  // (II) inside each (k+1)-cell the k-edges form a tree with 1..2k-1 edges.
  for (const auto& [cell, edges] : boundary) {
    ++cells_checked;
    auto it = inside.find(cell);
    if (it == inside.end()) return "(k+1)-cell without k-edges";
    const auto& tree = it->second;
    if (static_cast<int>(tree.size()) > 2 * k - 1 && k > 0) {
      return "(k+1)-cell with " + std::to_string(tree.size()) + " k-edges";
    }
    Forest f;
    std::map<Point, int> interior;
    auto node = [&](const std::optional<Point>& at, int extra) {
      // Old vertices (extra site in the cell) are shared tree nodes; new
      // vertices and points at infinity are leaves.
      if (at && std::binary_search(cell.begin(), cell.end(), extra)) {
        auto [pos, fresh] = interior.try_emplace(*at, 0);
        if (fresh) pos->second = f.add();
        return pos->second;
      }
      return f.add();
    };
    for (const auto& e : tree) {
      if (!f.unite(node(e.tail, e.tail_extra), node(e.head, e.head_extra))) return "cycle of k-edges in a (k+1)-cell";
    }
    std::set<int> roots;
    for (int x = 0; x < static_cast<int>(f.parent.size()); ++x) roots.insert(f.find(x));
    if (roots.size() != 1) return "k-edges of a (k+1)-cell are disconnected";
  }

  // (III) new k-vertices are exactly the old (k+1)-vertices.
  std::set<VertexId> fresh_k, old_k1;
  for (const auto& e : dk) {
    if (e.head && classify_head(e) == VertexClass::New) fresh_k.insert(head_id(e));
  }
  for (const auto& e : dk1) {
    if (e.head && classify_head(e) == VertexClass::Old) old_k1.insert(head_id(e));
  }
  if (fresh_k != old_k1) return "new k-vertices differ from old (k+1)-vertices";

  // Interval ownership: walks from the owning k-half-edges cover each
  // (k+1)-cell boundary once, each as a chain from its owner's head.
  ReadOnlyArena arena(sites);
  WorkLedger ledger(1 << 20, WorkLedger::Mode::Enforcing);
  std::map<std::vector<int>, std::vector<HalfEdge>> owners;
  for (const auto& e : dk) {
    if (owns_interval(e)) owners[e.enclosing_set()].push_back(e);
  }
  for (const auto& [cell, edges] : boundary) {
    std::set<Point> starts;
    for (const auto& r : owners[cell]) {
      if (r.head) starts.insert(*r.head);
    }
    std::multiset<std::string> expect, got;
    for (const auto& e : edges) expect.insert(encode_halfedge(e));
    for (const auto& r : owners[cell]) {
      std::vector<IntervalWalk> walks{start_walk(arena, r)};
      std::vector<HalfEdge> chain;
      while (!walks.front().done()) {
        successor_step(arena, walks, 4, ledger, [&](IntervalWalk&, const HalfEdge& h) { chain.push_back(h); });
      }
      // Of several k-half-edges heading off to infinity in one cell, only
      // the last counterclockwise owns the boundary there.
      if (chain.empty()) {
        if (r.head) return "empty interval after a relevant head";
        continue;
      }
      if (chain.front().tail != r.head) return "interval does not start at its owner's head";
      for (std::size_t i = 1; i < chain.size(); ++i) {
        if (chain[i].tail != chain[i - 1].head) return "interval is not a chain";
      }
      const auto& end = chain.back().head;
      if (end && !starts.count(*end)) return "interval ends away from the next owner";
      for (const auto& h : chain) got.insert(encode_halfedge(h));
    }
    if (got != expect) return "intervals do not partition the cell boundary";
  }
  return {};
}

Outcome criterion3() {
  Outcome o;
  int sets = 0, cells = 0;
  for (std::size_t n = 4; n <= 16 && o.pass; ++n) {
    for (std::uint64_t seed = 1; seed <= 3 && o.pass; ++seed) {
      auto sites = random_sites(n, 3000 + 100 * n + seed);
      const int top = std::min(3, static_cast<int>(n) - 2);
      auto orders = oracle_orders(sites, top + 1);
      ++sets;
      for (int k = 1; k <= top; ++k) {
        auto why = structure_check(sites, k, orders[static_cast<std::size_t>(k - 1)],
                                   orders[static_cast<std::size_t>(k)], cells);
        if (!why.empty()) o.fail("n=" + std::to_string(n) + " seed=" + std::to_string(seed) + " k=" + std::to_string(k) + ": " + why);
      }
    }
  }
  if (o.pass) o.detail = std::to_string(sets) + " sets, " + std::to_string(cells) + " (k+1)-cells";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::ostringstream d;
  for (std::size_t n : {10u, 100u, 1000u}) {
    auto sites = random_sites(n, 4000 + n);
    for (RunMode mode : {RunMode::Nvd, RunMode::Fvd}) {
      RunOptions opt;
      opt.mode = mode;
      opt.enforce = true;
      auto c = capture(sites, opt);
      if (!c.ok) o.fail("constant workspace n=" + std::to_string(n) + " went over budget");
      else if (c.report.peak_words > 64) o.fail("constant workspace peak " + std::to_string(c.report.peak_words));
      d << to_string(mode) << " n=" << n << " peak=" << c.report.peak_words << "; ";
    }
  }
  auto sites = random_sites(256, 4256);
  std::int64_t peak[2];
  for (int i = 0; i < 2; ++i) {
    RunOptions opt;
    opt.workspace = i == 0 ? 32 : 64;
    opt.enforce = true;
    auto c = capture(sites, opt);
    if (!c.ok) o.fail("n=256 s=" + std::to_string(*opt.workspace) + " went over budget");
    peak[i] = c.report.peak_words;
  }
  d << "n=256 peak(s=32)=" << peak[0] << " peak(s=64)=" << peak[1] << " limit=" << 2 * peak[0] + 64;
  if (peak[1] > 2 * peak[0] + 64) o.fail("peak(s=64)=" + std::to_string(peak[1]) + " over 2*peak(s=32)+64");
  if (g_violations) o.fail(std::to_string(g_violations) + " enforcing runs went over budget, first: " + g_first_violation);
  if (o.pass) o.detail = d.str() + "; no enforcing run went over budget";
  return o;
}

std::uint64_t tradeoff_reads(std::size_t n, std::size_t s, std::uint64_t seed) {
  RunOptions opt;
  opt.workspace = s;
  opt.enforce = true;
  auto c = capture(random_sites(n, seed), opt);
  return c.report.reads;
}

Outcome criterion5() {
  Outcome o;
  const double a = static_cast<double>(tradeoff_reads(512, 4, 5512)) / static_cast<double>(tradeoff_reads(512, 64, 5512));
  const double b = static_cast<double>(tradeoff_reads(512, 16, 5512)) / static_cast<double>(tradeoff_reads(256, 16, 5256));
  char buf[160];
  std::snprintf(buf, sizeof buf, "reads(s=4)/reads(s=64)=%.2f (need >= 8), reads(n=512)/reads(n=256)=%.2f (need 3.0..4.5)", a, b);
  o.detail = buf;
  if (!(a >= 8.0) || !(b >= 3.0 && b <= 4.5)) o.pass = false;
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::uint64_t reads[2];
  std::size_t ns[2] = {32, 128};
  for (int i = 0; i < 2; ++i) {
    RunOptions opt;
    opt.enforce = true;
    reads[i] = capture(random_sites(ns[i], 6000 + ns[i]), opt).report.reads;
  }
  const double r = static_cast<double>(reads[1]) / static_cast<double>(reads[0]);
  char buf[120];
  std::snprintf(buf, sizeof buf, "reads(n=128)/reads(n=32)=%.2f (need 12..20)", r);
  o.detail = buf;
  o.pass = r >= 12.0 && r <= 20.0;
  return o;
}

Outcome criterion7(const std::string& tool) {
  Outcome o;
  auto sites = random_sites(30, 7030);
  std::vector<RunOptions> configs(4);
  configs[1].workspace = 5;
  configs[2].mode = RunMode::Fvd;
  configs[2].workspace = 5;
  configs[3].mode = RunMode::Order;
  configs[3].max_k = 3;
  configs[3].workspace = 16;
  configs[3].seed = 9;
  for (const auto& opt : configs) {
    auto a = capture(sites, opt);
    auto b = capture(sites, opt);
    const std::string text = records_text(a.records);
    if (text != records_text(b.records)) o.fail(to_string(opt.mode) + ": record streams differ");
    if (report_json(a.report, false) != report_json(b.report, false)) o.fail(to_string(opt.mode) + ": reports differ");
    if (render_svg(a.records, sites, std::nullopt) != render_svg(b.records, sites, std::nullopt)) {
      o.fail(to_string(opt.mode) + ": svg differs");
    }
    if (records_text(parse_records(text)) != text) o.fail(to_string(opt.mode) + ": records do not round-trip");
  }
  if (format_sites(parse_sites(format_sites(sites))) != format_sites(sites)) o.fail("sites do not round-trip");

  std::string cli = "library only";
  if (!tool.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "vw_acceptance";
    fs::create_directories(dir);
    const std::string d = dir.string();
    auto sh = [](const std::string& cmd) { return std::system(cmd.c_str()); };
    bool ran = true;
    for (int i = 0; i < 2; ++i) {
      const std::string tag = std::to_string(i);
      ran &= sh(tool + " run random:30:7 --mode order --max-k 3 --workspace 16 --seed 9 --out " + d + "/r" + tag +
                ".txt --report " + d + "/j" + tag + ".json") == 0;
      ran &= sh(tool + " svg " + d + "/r" + tag + ".txt --sites random:30:7 --out " + d + "/s" + tag + ".svg") == 0;
    }
    ran &= sh(tool + " verify random:30:7 " + d + "/r0.txt > " + d + "/v.txt") == 0;
    if (!ran) o.fail("vwtool exited with an error");
    for (const char* f : {"r", "j", "s"}) {
      const std::string ext = f[0] == 'r' ? ".txt" : f[0] == 'j' ? ".json" : ".svg";
      const std::string x = slurp(d + "/" + f + "0" + ext);
      if (x.empty() || x != slurp(d + "/" + f + "1" + ext)) o.fail(std::string("vwtool output ") + f + ext + " differs");
    }
    fs::remove_all(dir);
    cli = "vwtool run/svg/verify byte-identical";
  }
  if (o.pass) o.detail = "records, reports and svg identical over 4 configurations; round trips hold; " + cli;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string tool = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence at orders 1 and n-1", criterion1},
      {"higher-order equivalence through the pipeline", criterion2},
      {"structural properties and interval ownership", criterion3},
      {"workspace model compliance", criterion4},
      {"trade-off read trend", criterion5},
      {"constant-workspace quadratic read trend", criterion6},
      {"determinism and interchange", [&] { return criterion7(tool); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s  [%s] (%.1fs)\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
