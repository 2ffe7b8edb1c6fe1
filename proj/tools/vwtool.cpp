#include "vorospace/io.hpp"
#include "vorospace/memory.hpp"
#include "vorospace/oracle.hpp"
#include "vorospace/pipeline.hpp"
#include "vorospace/run.hpp"
#include "vorospace/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

enum Exit { kOk = 0, kDefects = 1, kDegenerate = 2, kParse = 3, kModel = 4, kConfig = 5 };

std::vector<vw::Site> load_sites(const std::string& source) {
  if (source.rfind("random:", 0) == 0) return vw::generate_from_spec(source);
  return vw::read_sites(source);
}

bool check_position(const std::vector<vw::Site>& sites) {
  auto report = vw::validate_general_position(sites);
  if (report.ok()) return true;
  std::cerr << "degenerate input: " << report.violation->describe() << "\n";
  return false;
}

// Text written to a path, or to stdout when the path is empty or "-".
void deliver(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) out.push_back(std::stoul(part));
  }
  return out;
}

int cmd_validate(const std::string& file) {
  auto sites = load_sites(file);
  if (!check_position(sites)) return kDegenerate;
  std::cout << "ok: " << sites.size() << " sites in general position\n";
  return kOk;
}

struct RunArgs {
  std::string file;
  std::string mode = "nvd";
  int max_k = 1;
  std::size_t workspace = 0;
  bool enforce = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string report;
  bool timing = false;
};

int cmd_run(const RunArgs& a, bool has_workspace) {
  auto sites = load_sites(a.file);
  if (!check_position(sites)) return kDegenerate;
  vw::RunOptions options;
  options.mode = vw::parse_run_mode(a.mode);
  options.max_k = a.max_k;
  if (has_workspace) options.workspace = a.workspace;
  options.enforce = a.enforce;
  options.seed = a.seed;

  std::ostringstream records;
  auto report = vw::execute_run(sites, options, [&](const vw::HalfEdge& e) { vw::write_record(records, e); });
  deliver(a.out, records.str());
  const std::string json = vw::report_json(report, a.timing) + "\n";
  if (a.report.empty()) std::cerr << json;
  else deliver(a.report, json);
  return kOk;
}

int cmd_verify(const std::string& file, const std::string& records_path) {
  auto sites = load_sites(file);
  auto records = vw::read_records(records_path);
  std::map<int, std::vector<vw::HalfEdge>> by_k;
  for (const auto& e : records) by_k[e.k].push_back(e);
  if (by_k.empty()) {
    std::cout << "no records\n";
    return kOk;
  }
  const int n = static_cast<int>(sites.size());
  if (by_k.rbegin()->first >= n) {
    std::cerr << "record order " << by_k.rbegin()->first << " out of range for " << n << " sites\n";
    return kDefects;
  }
  auto orders = vw::oracle_orders(sites, by_k.rbegin()->first);
  bool ok = true;
  for (const auto& [k, edges] : by_k) {
    // Directed streams always contain some record with left > right.
    bool undirected = true;
    for (const auto& e : edges) undirected &= e.left < e.right;
    auto report = vw::verify_run(sites, edges, orders[static_cast<std::size_t>(k - 1)], undirected);
    std::cout << "k=" << k << " records=" << edges.size() << " " << (report.ok() ? "ok" : report.summary()) << "\n";
    ok &= report.ok();
  }
  return ok ? kOk : kDefects;
}

struct BenchArgs {
  std::string source;
  std::string mode = "nvd";
  std::string s_list = "4,8,16,32,64";
  std::string k_list;
  int repeats = 1;
  std::string out;
};

// Preamble lines start with '#'; rows are n,s,K,reads,peak_words,wall_ns.
int cmd_bench(const BenchArgs& a) {
  auto sites = load_sites(a.source);
  if (!check_position(sites)) return kDegenerate;
  const bool order = !a.k_list.empty();
  std::vector<std::size_t> ks = order ? parse_list(a.k_list) : std::vector<std::size_t>{1};
  std::ostringstream csv;
  csv << "# mode=" << (order ? "order" : a.mode) << " budget_constant=" << vw::budget_constant()
      << " ledger=observing\n";
  csv << "# predicates count as O(1) workspace words; time is measured in site reads\n";
  csv << "n,s,K,reads,peak_words,wall_ns\n";
  for (std::size_t s : parse_list(a.s_list)) {
    for (std::size_t K : ks) {
      for (int r = 0; r < a.repeats; ++r) {
        vw::RunOptions options;
        options.mode = order ? vw::RunMode::Order : vw::parse_run_mode(a.mode);
        options.max_k = static_cast<int>(K);
        options.workspace = s;
        auto report = vw::execute_run(sites, options, [](const vw::HalfEdge&) {});
        csv << report.n << "," << s << "," << report.K << "," << report.reads << "," << report.peak_words << ","
            << static_cast<std::int64_t>(report.wall_seconds * 1e9) << "\n";
      }
    }
  }
  deliver(a.out, csv.str());
  return kOk;
}

int cmd_svg(const std::string& records_path, const std::string& sites_path, const std::string& out,
            const std::string& viewport) {
  auto records = vw::read_records(records_path);
  std::vector<vw::Site> sites;
  if (!sites_path.empty()) sites = load_sites(sites_path);
  std::optional<vw::Viewport> view;
  if (!viewport.empty()) view = vw::parse_viewport(viewport);
  deliver(out, vw::render_svg(records, sites, view));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voronoi diagrams of order 1..K under a bounded workspace"};
  app.require_subcommand(1);

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "check that the sites are in general position");
  validate->add_option("file", validate_file, "site file or random:<n>:<seed>")->required();

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "construct a diagram and write its records");
  run->add_option("file", run_args.file, "site file or random:<n>:<seed>")->required();
  run->add_option("--mode", run_args.mode, "nvd, fvd or order")->check(CLI::IsMember({"nvd", "fvd", "order"}));
  run->add_option("--max-k", run_args.max_k, "highest order for --mode order");
  auto* ws = run->add_option("--workspace", run_args.workspace, "workspace parameter s");
  run->add_flag("--enforce", run_args.enforce, "fail when the ledger goes over c*s words");
  run->add_option("--seed", run_args.seed, "seed recorded in the configuration");
  run->add_option("--out", run_args.out, "record file (default stdout)");
  run->add_option("--report", run_args.report, "report file (default stderr)");
  run->add_flag("--timing", run_args.timing, "include wall time in the report");

  std::string verify_file, verify_records;
  auto* verify = app.add_subcommand("verify", "compare records with the brute-force diagrams");
  verify->add_option("file", verify_file, "site file")->required();
  verify->add_option("records", verify_records, "record file")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "reads and peak workspace over a grid of s (and K)");
  bench->add_option("source", bench_args.source, "site file or random:<n>:<seed>")->required();
  bench->add_option("--mode", bench_args.mode, "nvd or fvd")->check(CLI::IsMember({"nvd", "fvd"}));
  bench->add_option("--s-list", bench_args.s_list, "comma-separated workspace values");
  bench->add_option("--k-list", bench_args.k_list, "comma-separated max orders (pipeline runs)");
  bench->add_option("--repeats", bench_args.repeats, "runs per cell");
  bench->add_option("--out", bench_args.out, "CSV file (default stdout)");

  std::string svg_records, svg_sites, svg_out, svg_viewport;
  auto* svg = app.add_subcommand("svg", "render records as SVG");
  svg->add_option("records", svg_records, "record file")->required();
  svg->add_option("--sites", svg_sites, "site file, drawn as dots");
  svg->add_option("--out", svg_out, "SVG file (default stdout)");
  svg->add_option("--viewport", svg_viewport, "xmin,ymin,xmax,ymax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (*validate) return cmd_validate(validate_file);
    if (*run) return cmd_run(run_args, ws->count() > 0);
    if (*verify) return cmd_verify(verify_file, verify_records);
    if (*bench) return cmd_bench(bench_args);
    if (*svg) return cmd_svg(svg_records, svg_sites, svg_out, svg_viewport);
  } catch (const vw::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kParse;
  } catch (const vw::RecordError& e) {
    std::cerr << "record error: " << e.what() << "\n";
    return kParse;
  } catch (const vw::ModelViolation& e) {
    std::cerr << "model violation: " << e.what() << "\n";
    return kModel;
  } catch (const vw::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const vw::DegenerateError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kOk;
}
