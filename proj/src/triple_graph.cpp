#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

#include "acyl/annulus.hpp"
#include "acyl/error.hpp"

namespace acyl {

namespace {

class PairTable {
 public:
  explicit PairTable(std::size_t points) : points_(points), index_(points * points, 0) {
    std::size_t next = 0;
    for (std::size_t i = 0; i < points; ++i) {
      for (std::size_t j = i + 1; j < points; ++j) {
        index_[i * points + j] = index_[j * points + i] = next++;
        pairs_.push_back({i, j});
      }
    }
  }
  std::size_t size() const { return pairs_.size(); }
  std::size_t id(std::size_t i, std::size_t j) const { return index_[i * points_ + j]; }
  std::array<std::size_t, 2> pair(std::size_t id) const { return pairs_[id]; }

 private:
  std::size_t points_;
  std::vector<std::size_t> index_;
  std::vector<std::array<std::size_t, 2>> pairs_;
};

struct Sigma {
  const PairTable& pairs;
  std::vector<std::uint8_t> cr;  // crossratio of pair p against pair q at p * n + q
  std::vector<std::array<std::uint32_t, 3>> class_pairs;

  std::uint8_t value(std::size_t p, std::size_t q) const { return cr[p * pairs.size() + q]; }

  int rho(std::size_t x, std::size_t y) const {
    int best = 0;
    for (auto p : class_pairs[x]) {
      for (auto q : class_pairs[y]) best = std::max<int>(best, value(p, q));
    }
    return best;
  }
};

class GeodesicSearch {
 public:
  GeodesicSearch(const Sigma& sigma, std::size_t classes, int budget)
      : sigma_(sigma), classes_(classes), budget_(budget) {}

  bool connect(std::size_t x, std::size_t y, int s) {
    const int d = sigma_.rho(x, y);
    left_ = budget_;
    for (int n = std::max(1, d - s); n <= d + s; ++n) {
      seq_.assign(1, x);
      target_ = y;
      if (extend(n, s)) return true;
      if (left_ <= 0) return false;
    }
    return false;
  }

 private:
  bool extend(int n, int s) {
    const int i = static_cast<int>(seq_.size());
    if (i == n) return true;  // the target constraints were enforced when each point was placed
    if (--left_ < 0) return false;
    if (i == n - 1) {
      for (int j = 0; j < i; ++j) {
        if (std::abs(sigma_.rho(seq_[j], target_) - (n - j)) > s) return false;
      }
      return true;
    }
    std::vector<std::pair<int, std::size_t>> options;
    for (std::size_t v = 0; v < classes_; ++v) {
      int score = std::abs(sigma_.rho(v, target_) - (n - i));
      if (score > s) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        int dev = std::abs(sigma_.rho(seq_[j], v) - (i - j));
        ok = dev <= s;
        score += dev;
      }
      if (ok) options.push_back({score, v});
    }
    std::sort(options.begin(), options.end());
    const std::size_t branch = std::min<std::size_t>(options.size(), 6);
    for (std::size_t b = 0; b < branch; ++b) {
      seq_.push_back(options[b].second);
      if (extend(n, s)) return true;
      seq_.pop_back();
      if (left_ <= 0) return false;
    }
    return false;
  }

  const Sigma& sigma_;
  std::size_t classes_;
  int budget_;
  int left_ = 0;
  std::size_t target_ = 0;
  std::vector<std::size_t> seq_;
};

std::vector<int> bfs(const TripleSpaceGraph& g, std::size_t source) {
  const std::size_t n = g.classes;
  std::vector<int> dist(n, -1);
  std::vector<std::uint64_t> unvisited(g.row_words, 0);
  for (std::size_t v = 0; v < n; ++v) unvisited[v / 64] |= std::uint64_t{1} << (v % 64);
  std::vector<std::size_t> frontier{source};
  unvisited[source / 64] &= ~(std::uint64_t{1} << (source % 64));
  dist[source] = 0;
  for (int d = 1; !frontier.empty(); ++d) {
    std::vector<std::uint64_t> reach(g.row_words, 0);
    for (auto u : frontier) {
      const std::uint64_t* row = &g.adjacency[u * g.row_words];
      for (std::size_t w = 0; w < g.row_words; ++w) reach[w] |= row[w];
    }
    frontier.clear();
    for (std::size_t w = 0; w < g.row_words; ++w) {
      std::uint64_t bits = reach[w] & unvisited[w];
      unvisited[w] &= ~bits;
      while (bits) {
        std::size_t v = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        dist[v] = d;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

TripleSpaceGraph build_triple_graph(const AnnulusSystem& system, const SigmaOptions& options) {
  const auto& m = system.model();
  const std::size_t npts = m.points().size();
  if (npts < 3 || npts > 64) throw Error(ErrorCode::kPrecondition, "triple graph needs between 3 and 64 model points");

  TripleSpaceGraph g;
  g.depth = m.depth();
  g.points = npts;
  g.ordered_vertices = npts * (npts - 1) * (npts - 2);

  PairTable pairs(npts);
  Sigma sigma{pairs, std::vector<std::uint8_t>(pairs.size() * pairs.size(), 0), {}};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs.pair(p);
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      auto [k, l] = pairs.pair(q);
      auto c = system.crossratio_exact({m.ray(i), m.ray(j)}, {m.ray(k), m.ray(l)});
      if (c.infinite || c.value > 250) {
        throw Error(ErrorCode::kPrecondition, "unbounded crossratio between model pairs");
      }
      sigma.cr[p * pairs.size() + q] = static_cast<std::uint8_t>(c.value);
    }
  }
  g.symmetric = true;
  for (std::size_t p = 0; p < pairs.size() && g.symmetric; ++p) {
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      if (sigma.value(p, q) != sigma.value(q, p)) {
        g.symmetric = false;
        break;
      }
    }
  }

  for (std::size_t i = 0; i < npts; ++i) {
    for (std::size_t j = i + 1; j < npts; ++j) {
      for (std::size_t k = j + 1; k < npts; ++k) {
        g.manifest.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(k)});
        sigma.class_pairs.push_back({static_cast<std::uint32_t>(pairs.id(i, j)), static_cast<std::uint32_t>(pairs.id(i, k)),
                                     static_cast<std::uint32_t>(pairs.id(j, k))});
      }
    }
  }
  const std::size_t n = g.manifest.size();
  g.classes = n;

  g.diagonal_zero = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (sigma.rho(x, x) != 0) g.diagonal_zero = false;
    for (std::size_t y = 0; y < n; ++y) {
      int r = sigma.rho(x, y);
      if (g.rho_histogram.size() <= static_cast<std::size_t>(r)) g.rho_histogram.resize(r + 1);
      ++g.rho_histogram[r];
      g.max_rho = std::max(g.max_rho, r);
    }
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  for (std::uint64_t t = 0; t < options.defect_samples; ++t) {
    auto x = pick(rng), y = pick(rng), z = pick(rng);
    g.r_defect = std::max(g.r_defect, sigma.rho(x, y) - sigma.rho(x, z) - sigma.rho(z, y));
  }
  g.defect_samples = options.defect_samples;

  // Pairs for the s-geodesic coverage.
  std::vector<std::pair<std::size_t, std::size_t>> probe_pairs;
  for (int guard = 0; static_cast<int>(probe_pairs.size()) < options.geodesic_pairs && guard < 100 * options.geodesic_pairs; ++guard) {
    auto x = pick(rng), y = pick(rng);
    if (x != y && sigma.rho(x, y) <= options.geodesic_max_rho) probe_pairs.push_back({x, y});
  }
  GeodesicSearch search(sigma, n, options.geodesic_budget);
  auto coverage = [&](int s) {
    std::size_t found = 0;
    for (auto [x, y] : probe_pairs) found += search.connect(x, y, s) ? 1 : 0;
    return probe_pairs.empty() ? 1.0 : static_cast<double>(found) / static_cast<double>(probe_pairs.size());
  };
  if (options.s) {
    g.s = *options.s;
    g.s_auto = false;
    g.geodesic_coverage = coverage(g.s);
    g.coverage_by_s.push_back({g.s, g.geodesic_coverage});
  } else {
    g.s = -1;
    for (int s = 0; s <= std::max(g.max_rho, 1); ++s) {
      double c = coverage(s);
      g.coverage_by_s.push_back({s, c});
      if (c >= options.coverage_target) {
        g.s = s;
        g.geodesic_coverage = c;
        break;
      }
    }
    if (g.s < 0) throw Error(ErrorCode::kBudgetExhausted, "no s reached the s-geodesic coverage target");
  }

  g.row_words = (n + 63) / 64;
  g.adjacency.assign(n * g.row_words, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (sigma.rho(x, y) <= g.s + 1) {
        g.adjacency[x * g.row_words + y / 64] |= std::uint64_t{1} << (y % 64);
        g.adjacency[y * g.row_words + x / 64] |= std::uint64_t{1} << (x % 64);
        ++g.class_edges;
      }
    }
  }
  // Each class is 6 ordered triples, pairwise at rho 0 and therefore adjacent.
  g.ordered_edges = g.class_edges * 36 + n * 15;

  std::vector<bool> seen(n, false);
  std::vector<std::size_t> component_of(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v]) continue;
    auto d = bfs(g, v);
    std::size_t size = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (d[u] >= 0) {
        seen[u] = true;
        component_of[u] = g.component_sizes.size();
        ++size;
      }
    }
    g.component_sizes.push_back(size);
  }

  // Four-point constant of the path metric over quadruples of BFS sources in the largest component.
  const std::size_t big = static_cast<std::size_t>(std::max_element(g.component_sizes.begin(), g.component_sizes.end()) -
                                                   g.component_sizes.begin());
  std::vector<std::size_t> sources;
  for (int guard = 0; static_cast<int>(sources.size()) < options.delta_sources && guard < 1000 * options.delta_sources; ++guard) {
    auto v = pick(rng);
    if (component_of[v] == big && std::find(sources.begin(), sources.end(), v) == sources.end()) sources.push_back(v);
  }
  std::vector<std::vector<int>> dist;
  for (auto s : sources) {
    dist.push_back(bfs(g, s));
    for (auto d : dist.back()) g.diameter_lower = std::max(g.diameter_lower, d);
  }
  const std::size_t k = sources.size();
  std::int64_t twice_delta = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (std::size_t c = b + 1; c < k; ++c) {
        for (std::size_t d = c + 1; d < k; ++d) {
          std::array<std::int64_t, 3> sums{dist[a][sources[b]] + dist[c][sources[d]], dist[a][sources[c]] + dist[b][sources[d]],
                                           dist[a][sources[d]] + dist[b][sources[c]]};
          std::sort(sums.begin(), sums.end());
          twice_delta = std::max(twice_delta, sums[2] - sums[1]);
          ++g.delta_quadruples;
        }
      }
    }
  }
  g.delta = Rational(twice_delta, 2);

  // Equivariance of rho, recomputed from rays on both sides.
  std::vector<std::array<int, 3>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::uniform_int_distribution<std::size_t> pick_perm(0, perms.size() - 1);
  auto ordered = [&](std::size_t cls) {
    const auto& perm = perms[pick_perm(rng)];
    const auto& t = g.manifest[cls];
    return Triple{m.ray(t[perm[0]]), m.ray(t[perm[1]]), m.ray(t[perm[2]])};
  };
  const auto hs = f2::words_up_to(options.equivariance_radius);
  for (int e = 0; e < options.equivariance_pairs; ++e) {
    auto cx = pick(rng), cy = pick(rng);
    Triple x = ordered(cx), y = ordered(cy);
    const int base = sigma.rho(cx, cy);
    for (const auto& h : hs) {
      ++g.equivariance_checks;
      int moved = system.rho(act(h, x), act(h, y));
      if (moved != base) {
        ++g.equivariance_failures;
        if (!g.equivariance_witness) {
          g.equivariance_witness = "h=" + f2::display(h) + " x=" + to_string(x) + " y=" + to_string(y);
        }
      }
    }
  }
  return g;
}

void write_edge_list(const TripleSpaceGraph& graph, const BoundaryModel& model, std::ostream& out) {
  const auto& pts = model.points();
  for (std::size_t v = 0; v < graph.manifest.size(); ++v) {
    const auto& t = graph.manifest[v];
    out << "v " << v << ' ' << pts[t[0]] << ' ' << pts[t[1]] << ' ' << pts[t[2]] << '\n';
  }
  for (std::size_t x = 0; x < graph.classes; ++x) {
    for (std::size_t y = x + 1; y < graph.classes; ++y) {
      if (graph.adjacent(x, y)) out << "e " << x << ' ' << y << '\n';
    }
  }
}

}  // namespace acyl
