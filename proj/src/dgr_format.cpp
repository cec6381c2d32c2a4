#include "tourep/dgr_format.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace tourep {

namespace {

std::string_view strip(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  const auto ws = " \t\r";
  auto b = line.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = line.find_last_not_of(ws);
  return line.substr(b, e - b + 1);
}

// Parses exactly two non-negative integers separated by whitespace.
bool parse_pair(std::string_view s, long long& a, long long& b) {
  auto read = [&s](long long& out) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return false;
    s.remove_prefix(b);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || out < 0) return false;
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return true;
  };
  if (!read(a) || !read(b)) return false;
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

Digraph parse_dgr(std::string_view text) {
  long long n = -1, m = -1;
  std::vector<Arc> arcs;
  int line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    auto line = strip(raw);
    if (line.empty()) continue;
    long long a, b;
    if (!parse_pair(line, a, b)) throw ParseError(line_no, "expected two non-negative integers");
    if (n < 0) {
      if (a > 1'000'000) throw ParseError(line_no, "vertex count too large");
      n = a;
      m = b;
      continue;
    }
    if (static_cast<long long>(arcs.size()) == m) throw ParseError(line_no, "more arc lines than declared");
    if (a >= n || b >= n) throw ParseError(line_no, "vertex id out of range");
    if (a == b) throw ParseError(line_no, "loop arcs are not allowed");
    arcs.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  if (n < 0) throw ParseError(line_no, "missing header line 'n m'");
  if (static_cast<long long>(arcs.size()) != m)
    throw ParseError(line_no, "declared " + std::to_string(m) + " arcs, found " + std::to_string(arcs.size()));
  return Digraph(static_cast<int>(n), std::move(arcs));
}

std::string format_dgr(const Digraph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_arcs() << '\n';
  for (const Arc& e : g.arcs()) out << e.tail << ' ' << e.head << '\n';
  return out.str();
}

}  // namespace tourep
