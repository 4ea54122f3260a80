#include "rsd/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <queue>
#include <set>
#include <sstream>

namespace rsd {

int floor_log2(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("floor_log2(0)");
  return static_cast<int>(std::bit_width(x)) - 1;
}

int bitlen(std::uint64_t x) { return floor_log2(x) + 1; }

Graph::Graph(NodeId n, const std::vector<Edge>& edges) {
  if (n < 1) throw GraphError(0, "graph must have at least one node");
  adj_.resize(static_cast<std::size_t>(n));
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw GraphError(0, "node id out of range in edge " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw GraphError(0, "self-loop at node " + std::to_string(u));
    Edge e = std::minmax(u, v);
    if (!seen.insert(e).second)
      throw GraphError(0, "duplicate edge " + std::to_string(e.first) + " " + std::to_string(e.second));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  edges_.assign(seen.begin(), seen.end());
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  auto dist = distances_from(0);
  if (std::any_of(dist.begin(), dist.end(), [](int x) { return x < 0; }))
    throw GraphError(0, "graph is disconnected");
}

int Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& nb : adj_) best = std::max(best, nb.size());
  return static_cast<int>(best);
}

bool Graph::adjacent(NodeId u, NodeId v) const {
  const auto& nb = adj_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<int> Graph::distances_from(NodeId src) const {
  std::vector<int> dist(adj_.size(), -1);
  std::queue<NodeId> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (NodeId w : adj_[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

int Graph::diameter() const {
  int best = 0;
  for (NodeId v = 0; v < size(); ++v) {
    auto d = distances_from(v);
    best = std::max(best, *std::max_element(d.begin(), d.end()));
  }
  return best;
}

namespace {

std::vector<long long> parse_ints(std::string_view line, std::size_t lineno) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    long long value = 0;
    auto tok = line.substr(i, j - i);
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || p != tok.data() + tok.size())
      throw GraphError(lineno, "malformed token '" + std::string(tok) + "'");
    out.push_back(value);
    i = j;
  }
  return out;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> data;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    ++lineno;
    pos = nl + 1;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#') continue;
    data.emplace_back(lineno, line);
    if (nl == text.size()) break;
  }
  if (data.empty()) throw GraphError(0, "missing header line \"n m\"");

  auto header = parse_ints(data[0].second, data[0].first);
  if (header.size() != 2) throw GraphError(data[0].first, "header must be \"n m\"");
  long long n = header[0], m = header[1];
  if (n < 1) throw GraphError(data[0].first, "n must be at least 1");
  if (m < 0) throw GraphError(data[0].first, "m must be nonnegative");
  if (static_cast<long long>(data.size()) - 1 != m)
    throw GraphError(data.back().first, "expected " + std::to_string(m) + " edge lines, found " +
                                            std::to_string(data.size() - 1));

  std::vector<Graph::Edge> edges;
  std::set<Graph::Edge> seen;
  for (std::size_t k = 1; k < data.size(); ++k) {
    auto [ln, line] = data[k];
    auto uv = parse_ints(line, ln);
    if (uv.size() != 2) throw GraphError(ln, "edge line must be \"u v\"");
    if (uv[0] < 0 || uv[1] < 0 || uv[0] >= n || uv[1] >= n)
      throw GraphError(ln, "node id out of range");
    auto u = static_cast<NodeId>(uv[0]);
    auto v = static_cast<NodeId>(uv[1]);
    if (u == v) throw GraphError(ln, "self-loop");
    if (!seen.insert(std::minmax(u, v)).second) throw GraphError(ln, "duplicate edge");
    edges.emplace_back(u, v);
  }
  return Graph(static_cast<NodeId>(n), edges);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

LevelDecomposition decompose(const Graph& g) {
  LevelDecomposition d;
  d.delta = g.max_degree();
  for (NodeId v = 0; v < g.size(); ++v) {
    if (g.degree(v) == d.delta) {
      d.root = v;
      break;
    }
  }
  d.level = g.distances_from(d.root);
  d.height = *std::max_element(d.level.begin(), d.level.end());
  d.levels.assign(static_cast<std::size_t>(d.height) + 1, {});
  for (NodeId v = 0; v < g.size(); ++v) d.levels[d.level[v]].push_back(v);
  return d;
}

std::vector<NodeId> lower_neighbors(const Graph& g, const LevelDecomposition& d, NodeId v) {
  std::vector<NodeId> out;
  for (NodeId w : g.neighbors(v))
    if (d.level[w] == d.level[v] + 1) out.push_back(w);
  return out;
}

}  // namespace rsd
