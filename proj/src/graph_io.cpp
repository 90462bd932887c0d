#include "ramcon/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ramcon/error.hpp"

namespace ramcon {

void write_edge_list(std::ostream& out, const Graph& g) {
  std::vector<Edge> lines(g.edges().begin(), g.edges().end());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (std::uint32_t c = 0; c < g.dropped_loops(v); ++c) lines.push_back({v, v});
  std::sort(lines.begin(), lines.end());
  out << g.vertex_count() << ' ' << lines.size() << '\n';
  for (const Edge& e : lines) out << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("edge list: missing header line");
  std::istringstream header(line);
  long long n = 0, m = 0;
  if (!(header >> n >> m) || n <= 0 || m < 0)
    throw IoError("edge list: header must be \"N M\" with N > 0, got \"" + line + "\"");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, line))
      throw IoError("edge list: expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0 || u >= n || v >= n)
      throw IoError("edge list: bad edge line " + std::to_string(i + 2) + ": \"" + line + "\"");
    edges.push_back({static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))});
  }
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  bool repeats = false;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1] && sorted[i].u != sorted[i].v) repeats = true;
  return Graph(static_cast<std::size_t>(n), std::move(edges), repeats);
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_edge_list(out, g);
  if (!out) throw IoError("write failed: " + path.string());
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_edge_list(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace ramcon
