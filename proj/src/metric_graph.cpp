#include "acyl/metric_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "acyl/error.hpp"
#include "acyl/free_word.hpp"

namespace acyl {

namespace {

bool all_numeric(const std::vector<std::string>& ids) {
  for (const auto& s : ids) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return false;
  }
  return true;
}

constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max();

}  // namespace

MetricGraph MetricGraph::from_edges(const std::vector<Edge>& edges, const std::string& base,
                                    const std::vector<std::string>& extra_vertices) {
  std::set<std::string> id_set(extra_vertices.begin(), extra_vertices.end());
  for (const auto& e : edges) {
    if (e.weight <= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge " + e.u + " " + e.v + " has nonpositive weight");
    }
    id_set.insert(e.u);
    id_set.insert(e.v);
  }
  if (id_set.empty()) id_set.insert(base);
  if (!id_set.count(base)) {
    throw Error(ErrorCode::kUnknownVertex, "basepoint '" + base + "' is not a vertex");
  }
  std::vector<std::string> ids(id_set.begin(), id_set.end());
  if (all_numeric(ids)) {
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
      return std::stoll(a) < std::stoll(b);
    });
  }
  if (ids.size() > kMaxVertices) {
    throw Error(ErrorCode::kInvalidArgument,
                "graph has " + std::to_string(ids.size()) + " vertices; limit is " +
                    std::to_string(kMaxVertices));
  }

  MetricGraph g;
  g.names_ = ids;
  for (Vertex i = 0; i < ids.size(); ++i) g.ids_.emplace(ids[i], i);
  g.base_ = g.ids_.at(base);
  const std::size_t n = ids.size();

  std::vector<std::map<Vertex, std::int64_t>> adj(n);
  for (const auto& e : edges) {
    Vertex u = g.ids_.at(e.u);
    Vertex v = g.ids_.at(e.v);
    if (u == v) continue;
    auto it = adj[u].find(v);
    std::int64_t w = it == adj[u].end() ? e.weight : std::min(it->second, e.weight);
    adj[u][v] = w;
    adj[v][u] = w;
  }
  g.adjacency_.resize(n);
  for (Vertex u = 0; u < n; ++u) g.adjacency_[u].assign(adj[u].begin(), adj[u].end());

  g.dist_.assign(n * n, kUnreachable);
  using Item = std::pair<std::int64_t, Vertex>;
  for (Vertex s = 0; s < n; ++s) {
    std::int32_t* row = &g.dist_[s * n];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    row[s] = 0;
    pq.emplace(0, s);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > row[u]) continue;
      for (auto [v, w] : g.adjacency_[u]) {
        std::int64_t nd = d + w;
        if (nd < row[v]) {
          if (nd >= kUnreachable) throw Error(ErrorCode::kInvalidArgument, "distance overflow");
          row[v] = static_cast<std::int32_t>(nd);
          pq.emplace(nd, v);
        }
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      if (row[v] == kUnreachable) {
        throw Error(ErrorCode::kInvalidArgument,
                    "graph is disconnected: no path from " + ids[s] + " to " + ids[v]);
      }
    }
  }
  return g;
}

MetricGraph MetricGraph::parse(std::istream& in) {
  std::vector<Edge> edges;
  std::vector<std::string> vertices;
  std::string base;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + msg);
    };
    if (tok[0] == "base") {
      if (tok.size() != 2) fail("expected 'base <id>'");
      base = tok[1];
      continue;
    }
    if (tok[0] == "vertex") {
      if (tok.size() != 2) fail("expected 'vertex <id>'");
      vertices.push_back(tok[1]);
      continue;
    }
    if (tok.size() != 2 && tok.size() != 3) fail("expected 'u v [w]'");
    Edge e{tok[0], tok[1], 1};
    if (tok.size() == 3) {
      try {
        e.weight = std::stoll(tok[2]);
      } catch (const std::exception&) {
        fail("bad weight '" + tok[2] + "'");
      }
    }
    edges.push_back(std::move(e));
  }
  if (base.empty()) throw Error(ErrorCode::kParse, "missing 'base <id>' header");
  return from_edges(edges, base, vertices);
}

MetricGraph MetricGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open graph file " + path);
  return parse(in);
}

void MetricGraph::write(std::ostream& out) const {
  out << "base " << names_[base_] << "\n";
  if (size() == 1) out << "vertex " << names_[0] << "\n";
  for (Vertex u = 0; u < size(); ++u) {
    for (auto [v, w] : adjacency_[u]) {
      if (u >= v) continue;
      out << names_[u] << " " << names_[v];
      if (w != 1) out << " " << w;
      out << "\n";
    }
  }
}

Vertex MetricGraph::index(std::string_view id) const {
  auto it = ids_.find(std::string(id));
  if (it == ids_.end()) throw Error(ErrorCode::kUnknownVertex, "unknown vertex '" + std::string(id) + "'");
  return it->second;
}

bool MetricGraph::contains(std::string_view id) const { return ids_.count(std::string(id)) > 0; }

std::size_t MetricGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& a : adjacency_) m += a.size();
  return m / 2;
}

std::int64_t MetricGraph::diameter() const {
  std::int64_t d = 0;
  for (auto x : dist_) d = std::max<std::int64_t>(d, x);
  return d;
}

Geodesic MetricGraph::geodesic(Vertex u, Vertex v) const {
  if (u >= size() || v >= size()) throw Error(ErrorCode::kUnknownVertex, "vertex index out of range");
  Geodesic g;
  g.length = distance(u, v);
  g.path.push_back(u);
  Vertex cur = u;
  while (cur != v) {
    // Neighbors are sorted by index, so the first admissible one keeps the
    // path lexicographically minimal.
    for (auto [w, weight] : adjacency_[cur]) {
      if (weight + distance(w, v) == distance(cur, v)) {
        cur = w;
        break;
      }
    }
    g.path.push_back(cur);
  }
  return g;
}

std::int64_t MetricGraph::distance_to(Vertex p, const Geodesic& g) const {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (Vertex q : g.path) best = std::min(best, distance(p, q));
  return best;
}

namespace {

// Twice the slimness defect of the triangle on canonical sides.
std::int64_t slim_defect(const MetricGraph& s, Vertex x, Vertex y, Vertex z) {
  auto side = [&](Vertex a, Vertex b) { return s.geodesic(std::min(a, b), std::max(a, b)); };
  const Geodesic sides[3] = {side(x, y), side(y, z), side(z, x)};
  std::int64_t worst = 0;
  for (int i = 0; i < 3; ++i) {
    for (Vertex p : sides[i].path) {
      std::int64_t d = std::min(s.distance_to(p, sides[(i + 1) % 3]),
                                s.distance_to(p, sides[(i + 2) % 3]));
      worst = std::max(worst, d);
    }
  }
  return worst;
}

std::int64_t twice_four_point_defect(const MetricGraph& s, Vertex x, Vertex y, Vertex z, Vertex w) {
  std::int64_t xy = s.twice_gromov_product(x, y, w);
  std::int64_t xz = s.twice_gromov_product(x, z, w);
  std::int64_t yz = s.twice_gromov_product(y, z, w);
  return std::max<std::int64_t>(0, std::min(xz, yz) - xy);
}

}  // namespace

DeltaReport measure_delta(const MetricGraph& space, SampleMode mode, std::uint64_t samples,
                          std::uint64_t seed) {
  DeltaReport r;
  const std::size_t n = space.size();
  std::int64_t slim = 0;
  std::int64_t four = 0;
  if (mode == SampleMode::kExhaustive) {
    r.exhaustive = true;
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = x; y < n; ++y) {
        for (Vertex z = y; z < n; ++z) {
          slim = std::max(slim, slim_defect(space, x, y, z));
          ++r.triangles;
        }
      }
    }
    for (Vertex w = 0; w < n; ++w) {
      for (Vertex x = 0; x < n; ++x) {
        for (Vertex y = x; y < n; ++y) {
          const std::int64_t xy = space.twice_gromov_product(x, y, w);
          for (Vertex z = 0; z < n; ++z) {
            std::int64_t m = std::min(space.twice_gromov_product(x, z, w),
                                      space.twice_gromov_product(y, z, w));
            four = std::max(four, m - xy);
          }
          r.quadruples += n;
        }
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    for (std::uint64_t i = 0; i < samples; ++i) {
      slim = std::max(slim, slim_defect(space, pick(rng), pick(rng), pick(rng)));
      four = std::max(four, twice_four_point_defect(space, pick(rng), pick(rng), pick(rng), pick(rng)));
    }
    r.triangles = samples;
    r.quadruples = samples;
  }
  r.delta_slim = Rational(slim);
  r.delta_4pt = half(four);
  return r;
}

std::vector<Vertex> u_k_set(const MetricGraph& space, Vertex x, const Rational& K) {
  if (K < 0) throw Error(ErrorCode::kInvalidArgument, "K must be nonnegative");
  std::vector<Vertex> out;
  for (Vertex s = 0; s < space.size(); ++s) {
    if (space.gromov_product(x, s, space.basepoint()) > K) out.push_back(s);
  }
  return out;
}

namespace instances {

MetricGraph free_group_tree(int radius) {
  if (radius < 0) throw Error(ErrorCode::kInvalidArgument, "radius must be nonnegative");
  std::vector<Edge> edges;
  for (const auto& w : f2::words_up_to(radius)) {
    if (w.empty()) continue;
    std::string parent = w.substr(0, w.size() - 1);
    edges.push_back({f2::display(parent), w, 1});
  }
  return MetricGraph::from_edges(edges, "e", {"e"});
}

MetricGraph cycle(int n) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({std::to_string(i), std::to_string((i + 1) % n), 1});
  return MetricGraph::from_edges(edges, "0");
}

MetricGraph grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::kInvalidArgument, "grid sides must be positive");
  std::vector<Edge> edges;
  auto id = [&](int r, int c) { return std::to_string(r * cols + c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1});
    }
  }
  return MetricGraph::from_edges(edges, "0", {"0"});
}

MetricGraph torus(int rows, int cols) {
  if (rows < 3 || cols < 3) throw Error(ErrorCode::kInvalidArgument, "torus sides must be >= 3");
  std::vector<Edge> edges;
  auto id = [&](int r, int c) { return std::to_string(r * cols + c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      edges.push_back({id(r, c), id(r, (c + 1) % cols), 1});
      edges.push_back({id(r, c), id((r + 1) % rows, c), 1});
    }
  }
  return MetricGraph::from_edges(edges, "0");
}

}  // namespace instances

}  // namespace acyl
