#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "vw_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Exit status of vwtool with stdout and stderr sent to files in scratch().
int tool(const std::string& args) {
  const std::string cmd = std::string(VWTOOL) + " " + args + " > " + (scratch() / "stdout").string() + " 2> " +
                          (scratch() / "stderr").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out() { return slurp((scratch() / "stdout").string()); }
std::string err() { return slurp((scratch() / "stderr").string()); }

std::size_t lines(const std::string& text, const std::string& prefix = "") {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0 && !line.empty();
  return n;
}

const std::string kTriangle = "0 0\n8 0\n0 6\n";

}  // namespace

TEST_CASE("validate") {
  CHECK(tool("validate " + file("tri.txt", kTriangle)) == 0);
  CHECK(tool("validate " + file("rect.txt", "0 0\n4 0\n4 3\n0 3\n")) == 2);
  CHECK(err().find("CocircularQuadruple") != std::string::npos);
  CHECK(tool("validate " + file("bad.txt", "0 0\n1 one\n")) == 3);
  CHECK(tool("validate " + (scratch() / "missing.txt").string()) == 3);
}

TEST_CASE("run") {
  const std::string tri = file("tri.txt", kTriangle);
  CHECK(tool("run " + tri + " --mode nvd --workspace 8") == 0);
  CHECK(lines(out()) == 3);
  CHECK(err().find("\"reads\"") != std::string::npos);
  CHECK(tool("run random:20:1 --mode order --max-k 10 --workspace 9") == 5);
  CHECK(tool("run random:20:1 --mode order --max-k 3 --workspace 4") == 5);
  CHECK(tool("run " + file("rect.txt", "0 0\n4 0\n4 3\n0 3\n")) == 2);

  const std::string records = (scratch() / "order.txt").string();
  CHECK(tool("run random:12:5 --mode order --max-k 3 --workspace 36 --enforce --out " + records) == 0);
  CHECK(out().empty());
  const std::string text = slurp(records);
  CHECK(lines(text, "k=1 ") > 0);
  CHECK(lines(text, "k=2 ") > 0);
  CHECK(lines(text, "k=3 ") > 0);
  CHECK(tool("verify random:12:5 " + records) == 0);
  CHECK(lines(out(), "k=") == 3);
}

TEST_CASE("verify reports defects") {
  const std::string records = (scratch() / "nvd.txt").string();
  CHECK(tool("run random:15:2 --out " + records) == 0);
  std::string text = slurp(records);
  CHECK(tool("verify random:15:2 " + records) == 0);
  const std::string cut = file("cut.txt", text.substr(text.find('\n') + 1));
  CHECK(tool("verify random:15:2 " + cut) == 1);
  CHECK(out().find("missing=1") != std::string::npos);
  const std::string doubled = file("doubled.txt", text + text.substr(0, text.find('\n') + 1));
  CHECK(tool("verify random:15:2 " + doubled) == 1);
  CHECK(out().find("duplicated=1") != std::string::npos);
  CHECK(tool("verify random:15:2 " + file("junk.txt", "k=1 pair=oops\n")) == 3);
}

TEST_CASE("bench") {
  CHECK(tool("bench random:40:3 --s-list 4,16 --repeats 3") == 0);
  const std::string csv = out();
  CHECK(csv.find("budget_constant=64") != std::string::npos);
  CHECK(csv.find("\nn,s,K,reads,peak_words,wall_ns\n") != std::string::npos);
  CHECK(lines(csv, "40,4,1,") == 3);
  CHECK(lines(csv, "40,16,1,") == 3);
  // reads and peak columns repeat exactly
  std::istringstream in(csv);
  std::string line, first;
  int same = 0;
  while (std::getline(in, line)) {
    if (line.rfind("40,4,1,", 0) != 0) continue;
    const std::string stable = line.substr(0, line.rfind(','));
    if (first.empty()) first = stable;
    same += stable == first;
  }
  CHECK(same == 3);
  CHECK(tool("bench random:16:3 --s-list 9 --k-list 2,3") == 0);
  CHECK(lines(out(), "16,9,") == 2);
}

TEST_CASE("svg") {
  const std::string tri = file("tri.txt", kTriangle);
  const std::string records = (scratch() / "tri_records.txt").string();
  REQUIRE(tool("run " + tri + " --out " + records) == 0);
  const std::string a = (scratch() / "a.svg").string();
  const std::string b = (scratch() / "b.svg").string();
  CHECK(tool("svg " + records + " --sites " + tri + " --out " + a) == 0);
  CHECK(tool("svg " + records + " --sites " + tri + " --out " + b) == 0);
  const std::string svg = slurp(a);
  CHECK(svg == slurp(b));
  CHECK(lines(svg, "<line ") == 3);
  // (4,3) in the fitted viewport [-2,10] x [-2,8] at width 800.
  std::size_t at_vertex = 0;
  for (const char* end : {"x1=\"400.000\" y1=\"333.333\"", "x2=\"400.000\" y2=\"333.333\""}) {
    for (auto pos = svg.find(end); pos != std::string::npos; pos = svg.find(end, pos + 1)) ++at_vertex;
  }
  CHECK(at_vertex == 3);
  CHECK(tool("svg " + file("empty.txt", "") + " --out " + a) == 0);
  const std::string empty = slurp(a);
  CHECK(empty.rfind("<svg ", 0) == 0);
  CHECK(lines(empty, "<line ") == 0);
  CHECK(tool("svg " + records + " --viewport 0,0,1") == 5);
}
