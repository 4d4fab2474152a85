#include "pabp/graph_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pabp {

namespace {

[[noreturn]] void bad(const std::string& why) {
  throw std::runtime_error("pa-graph: " + why);
}

template <typename T>
T parse_field(const std::string& token, const char* key) {
  const std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0) bad("expected field " + prefix + "..., got '" + token + "'");
  const std::string value = token.substr(prefix.size());
  if constexpr (std::is_same_v<T, double>) {
    try {
      std::size_t used = 0;
      const double d = std::stod(value, &used);
      if (used != value.size()) bad("trailing junk in " + token);
      return d;
    } catch (const std::logic_error&) {
      bad("cannot parse " + token);
    }
  } else {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) bad("cannot parse " + token);
    return out;
  }
}

}  // namespace

void save_graph(const PAGraph& g, std::ostream& out) {
  char header[96];
  std::snprintf(header, sizeof(header), "pa-graph v1 t=%u m=%d delta=%.17g",
                g.graph.vertex_count(), g.params.m, g.params.delta);
  out << header << '\n';
  for (const Edge& e : g.graph.edges()) {
    out << e.source << ' ' << e.target << '\n';
  }
}

void save_graph(const PAGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  save_graph(g, out);
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

PAGraph load_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) bad("empty input");
  std::istringstream header(line);
  std::string magic, version, t_tok, m_tok, d_tok;
  header >> magic >> version >> t_tok >> m_tok >> d_tok;
  if (magic != "pa-graph" || version != "v1") bad("malformed header '" + line + "'");
  std::string extra;
  if (header >> extra) bad("trailing header field '" + extra + "'");
  const auto t = parse_field<VertexId>(t_tok, "t");
  const auto m = parse_field<int>(m_tok, "m");
  const auto delta = parse_field<double>(d_tok, "delta");
  const Params params = make_params(m, delta);
  if (t < 1) bad("t must be positive");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(t) * m);
  std::uint64_t source, target;
  while (in >> source >> target) {
    if (source > t || target < 1 || target > t) bad("edge endpoint out of range");
    if (source < target) bad("edge violates source >= target");
    edges.push_back({static_cast<VertexId>(source), static_cast<VertexId>(target)});
  }
  if (!in.eof()) bad("unparsable edge line");
  if (edges.size() != static_cast<std::size_t>(t) * m) bad("edge count != m t");

  PAGraph g{params, Multigraph(t, std::move(edges))};
  check_pa_invariants(g);
  return g;
}

PAGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_graph(in);
}

}  // namespace pabp
