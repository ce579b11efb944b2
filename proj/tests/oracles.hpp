#pragma once

// Brute-force reference computations used by the unit tests. None of these call
// into the library except for plain data types.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace oracle {

inline char inv(char c) {
  switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    default: return 'b';
  }
}

/// Free reduction with an explicit stack.
inline std::string reduce(const std::string& w) {
  std::string st;
  for (char c : w) {
    if (!st.empty() && st.back() == inv(c)) st.pop_back();
    else st.push_back(c);
  }
  return st;
}

inline std::string inverse(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) c = inv(c);
  return out;
}

/// Every reduced word of length exactly n, built letter by letter.
inline std::vector<std::string> words(int n) {
  std::vector<std::string> out{""};
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out) {
      for (char c : std::string("aAbB")) {
        if (!w.empty() && w.back() == inv(c)) continue;
        next.push_back(w + c);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::string> words_up_to(int n) {
  std::vector<std::string> out;
  for (int k = 0; k <= n; ++k) {
    auto w = words(k);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

/// Ray given as an infinite letter function: stem followed by period repeated.
struct Ray {
  std::string stem, period;
  char at(std::size_t i) const {
    return i < stem.size() ? stem[i] : period[(i - stem.size()) % period.size()];
  }
  std::string prefix(std::size_t n) const {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(at(i));
    return s;
  }
};

/// Prefix of length n of g * r, computed from a finite piece of r.
inline std::string act_prefix(const std::string& g, const Ray& r, std::size_t n) {
  return reduce(g + r.prefix(n + g.size())).substr(0, n);
}

using Adjacency = std::vector<std::vector<std::pair<std::size_t, std::int64_t>>>;

/// All-pairs distances by repeated Dijkstra over an adjacency list.
inline std::vector<std::vector<std::int64_t>> all_pairs(const Adjacency& adj) {
  const std::size_t n = adj.size();
  const auto inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, inf));
  for (std::size_t s = 0; s < n; ++s) {
    auto& ds = d[s];
    ds[s] = 0;
    std::vector<bool> done(n, false);
    for (std::size_t it = 0; it < n; ++it) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (!done[v] && (u == n || ds[v] < ds[u])) u = v;
      }
      if (u == n || ds[u] >= inf) break;
      done[u] = true;
      for (auto [v, w] : adj[u]) ds[v] = std::min(ds[v], ds[u] + w);
    }
  }
  return d;
}

/// Lexicographically smallest shortest path, found by enumerating all of them.
inline std::vector<std::size_t> lex_min_geodesic(const Adjacency& adj,
                                                 const std::vector<std::vector<std::int64_t>>& d,
                                                 std::size_t u, std::size_t v) {
  std::vector<std::vector<std::size_t>> all;
  std::vector<std::size_t> path{u};
  std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t x, std::int64_t used) {
    if (x == v) {
      all.push_back(path);
      return;
    }
    for (auto [y, w] : adj[x]) {
      if (used + w + d[y][v] != d[u][v]) continue;
      path.push_back(y);
      go(y, used + w);
      path.pop_back();
    }
  };
  go(u, 0);
  return *std::min_element(all.begin(), all.end());
}

/// Twice the four-point delta by looping over every quadruple.
inline std::int64_t twice_delta(const std::vector<std::vector<std::int64_t>>& d) {
  const std::size_t n = d.size();
  std::int64_t worst = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t w = 0; w < n; ++w) {
          std::int64_t s[3] = {d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]};
          std::sort(s, s + 3);
          worst = std::max(worst, s[2] - s[1]);
        }
  return worst;  // the largest sum exceeds the middle one by at most 2 delta
}

}  // namespace oracle
