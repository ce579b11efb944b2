#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "acyl/rational.hpp"

namespace acyl {

using Vertex = std::size_t;

struct Edge {
  std::string u;
  std::string v;
  std::int64_t weight = 1;
};

/// A path of adjacent vertices; `length` is the sum of edge weights.
struct Geodesic {
  std::vector<Vertex> path;
  std::int64_t length = 0;

  Vertex front() const { return path.front(); }
  Vertex back() const { return path.back(); }
};

/// Finite connected weighted graph with its shortest-path metric and a basepoint.
///
/// Vertex indices follow the order of the vertex ids: numeric order when every id
/// parses as an integer, byte order otherwise. Canonical geodesics are the
/// lexicographically smallest shortest paths with respect to these indices.
/// Instances are immutable once built, so concurrent readers need no locking.
class MetricGraph {
 public:
  static constexpr std::size_t kMaxVertices = 4096;

  /// Builds the graph. Isolated vertices can be listed in `extra_vertices`.
  static MetricGraph from_edges(const std::vector<Edge>& edges, const std::string& base,
                                const std::vector<std::string>& extra_vertices = {});

  /// Parses the `u v [w]` edge-list format with a `base <id>` header line.
  static MetricGraph parse(std::istream& in);
  static MetricGraph load(const std::string& path);
  void write(std::ostream& out) const;

  std::size_t size() const { return names_.size(); }
  Vertex basepoint() const { return base_; }
  const std::string& name(Vertex v) const { return names_.at(v); }
  Vertex index(std::string_view id) const;
  bool contains(std::string_view id) const;

  const std::vector<std::pair<Vertex, std::int64_t>>& neighbors(Vertex v) const {
    return adjacency_.at(v);
  }
  std::size_t edge_count() const;

  std::int64_t distance(Vertex u, Vertex v) const {
    return dist_[u * names_.size() + v];
  }
  std::int64_t distance(std::string_view u, std::string_view v) const {
    return distance(index(u), index(v));
  }
  std::int64_t diameter() const;

  Geodesic geodesic(Vertex u, Vertex v) const;

  /// (x.y)_z = (d(x,z) + d(y,z) - d(x,y)) / 2.
  Rational gromov_product(Vertex x, Vertex y, Vertex z) const {
    return half(twice_gromov_product(x, y, z));
  }
  std::int64_t twice_gromov_product(Vertex x, Vertex y, Vertex z) const {
    return distance(x, z) + distance(y, z) - distance(x, y);
  }

  /// Distance from `p` to the vertex set of `g`.
  std::int64_t distance_to(Vertex p, const Geodesic& g) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> ids_;
  std::vector<std::vector<std::pair<Vertex, std::int64_t>>> adjacency_;
  std::vector<std::int32_t> dist_;
  Vertex base_ = 0;
};

struct DeltaReport {
  Rational delta_slim;
  Rational delta_4pt;
  std::uint64_t triangles = 0;
  std::uint64_t quadruples = 0;
  bool exhaustive = false;
};

enum class SampleMode { kExhaustive, kSampled };

/// Slim-triangle and four-point hyperbolicity defects. Sampled mode draws
/// `samples` triangles and quadruples from a generator seeded with `seed`.
DeltaReport measure_delta(const MetricGraph& space, SampleMode mode, std::uint64_t samples = 0,
                          std::uint64_t seed = 0);

/// {s : (x.s)_e > K}.
std::vector<Vertex> u_k_set(const MetricGraph& space, Vertex x, const Rational& K);

namespace instances {

/// Ball of radius `radius` in the Cayley tree of the free group on a, b.
/// Vertex ids are reduced words over {a,A,b,B}; the identity is "e".
MetricGraph free_group_tree(int radius);
MetricGraph cycle(int n);
MetricGraph grid(int rows, int cols);
/// rows x cols torus; used as a finite quotient window for Z^2 translations.
MetricGraph torus(int rows, int cols);

}  // namespace instances

}  // namespace acyl
