#include "vorospace/io.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace vw {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(0, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line_no, line);
  }
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

}  // namespace

std::vector<Site> parse_sites(std::string_view text) {
  std::vector<Site> sites;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !is_space(line[j])) ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.empty()) return;
    if (fields.size() != 2) throw InputError(line_no, "expected two coordinates");
    auto x = parse_rational(fields[0]);
    auto y = parse_rational(fields[1]);
    if (!x || !y) throw InputError(line_no, "malformed coordinate");
    sites.push_back(Site{{*x, *y}, static_cast<int>(sites.size())});
  });
  return sites;
}

std::vector<Site> read_sites(const std::string& path) { return parse_sites(slurp(path)); }

std::string format_sites(const std::vector<Site>& sites) {
  std::string out;
  for (const auto& s : sites) out += to_string(s.at.x) + " " + to_string(s.at.y) + "\n";
  return out;
}

std::vector<HalfEdge> parse_records(std::string_view text) {
  std::vector<HalfEdge> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    try {
      out.push_back(decode_halfedge(line));
    } catch (const RecordError& err) {
      throw InputError(line_no, err.what());
    }
  });
  return out;
}

std::vector<HalfEdge> read_records(const std::string& path) { return parse_records(slurp(path)); }

void write_record(std::ostream& out, const HalfEdge& e) { out << encode_halfedge(e) << '\n'; }

std::vector<Site> random_sites(std::size_t n, std::uint64_t seed, std::int64_t range) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(0, range - 1);
  ValidationOptions options;
  options.samples = 20'000;
  options.seed = seed;
  while (true) {
    std::vector<Site> sites;
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    while (sites.size() < n) {
      const std::int64_t x = coord(rng);
      const std::int64_t y = coord(rng);
      if (!seen.insert({x, y}).second) continue;
      sites.push_back(Site{{Rational(x), Rational(y)}, static_cast<int>(sites.size())});
    }
    if (validate_general_position(sites, options).ok()) return sites;
  }
}

std::vector<Site> generate_from_spec(std::string_view spec) {
  auto fail = [&]() -> std::vector<Site> {
    throw InputError(0, "bad generator spec '" + std::string(spec) + "'");
  };
  if (!spec.starts_with("random:")) return fail();
  spec.remove_prefix(7);
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) return fail();
  std::size_t n = 0;
  std::uint64_t seed = 0;
  auto a = std::from_chars(spec.data(), spec.data() + colon, n);
  auto b = std::from_chars(spec.data() + colon + 1, spec.data() + spec.size(), seed);
  if (a.ec != std::errc{} || b.ec != std::errc{} || b.ptr != spec.data() + spec.size() || n < 3) {
    return fail();
  }
  return random_sites(n, seed);
}

}  // namespace vw
