#include "qham/hamming.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "qham/qnum.hpp"

namespace qham {

std::vector<std::uint8_t> HammingSpace::decode(std::size_t index) const {
  std::vector<std::uint8_t> w(static_cast<std::size_t>(D));
  for (int i = 0; i < D; ++i) {
    w[i] = static_cast<std::uint8_t>(index % n);
    index /= n;
  }
  return w;
}

std::size_t HammingSpace::encode(const std::vector<std::uint8_t>& word) const {
  if (word.size() != static_cast<std::size_t>(D))
    throw InvalidOperandError("HammingSpace: word length mismatch");
  std::size_t idx = 0;
  for (int i = D; i-- > 0;) {
    if (word[i] >= n) throw InvalidOperandError("HammingSpace: digit out of range");
    idx = idx * n + word[i];
  }
  return idx;
}

int HammingSpace::weight(std::size_t index) const {
  int w = 0;
  for (int i = 0; i < D; ++i) {
    if (index % n != 0) ++w;
    index /= n;
  }
  return w;
}

HammingSpace make_space(int D, int n) {
  if (D < 1) throw InvalidOperandError("HammingSpace: D must be >= 1");
  if (n < 3) throw InvalidOperandError("HammingSpace: n must be >= 3");
  __int128 count = 1;
  for (int i = 0; i < D; ++i) {
    count *= n;
    if (count > (static_cast<__int128>(1) << 31))
      throw std::overflow_error("HammingSpace: n^D too large");
  }
  return HammingSpace{D, n, static_cast<std::size_t>(count)};
}

int hamming_distance(const std::vector<std::uint8_t>& u, const std::vector<std::uint8_t>& v) {
  if (u.size() != v.size()) throw InvalidOperandError("hamming_distance: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) ++d;
  return d;
}

FullBipartiteGraph full_bipartite(const HammingSpace& space) {
  FullBipartiteGraph g;
  g.space = space;
  g.base = 0;
  const std::size_t count = space.vertex_count;
  g.adj.assign(count, {});
  g.weight.assign(count, 0);
  g.classes.assign(static_cast<std::size_t>(space.D) + 1, {});

  std::size_t stride = 1;  // n^c for coordinate c
  std::vector<std::size_t> strides(static_cast<std::size_t>(space.D));
  for (int c = 0; c < space.D; ++c) {
    strides[c] = stride;
    stride *= space.n;
  }

  for (std::size_t v = 0; v < count; ++v) {
    std::size_t rest = v;
    int w = 0;
    for (int c = 0; c < space.D; ++c) {
      std::size_t digit = rest % space.n;
      rest /= space.n;
      if (digit != 0) {
        ++w;
        // lowering edge: zero this coordinate
        g.adj[v].push_back(static_cast<std::uint32_t>(v - digit * strides[c]));
      } else {
        // raising edges: every nonzero value of this coordinate
        for (int val = 1; val < space.n; ++val)
          g.adj[v].push_back(static_cast<std::uint32_t>(v + static_cast<std::size_t>(val) * strides[c]));
      }
    }
    g.weight[v] = w;
    g.classes[w].push_back(static_cast<std::uint32_t>(v));
    std::sort(g.adj[v].begin(), g.adj[v].end());
  }

  std::size_t degree_sum = 0;
  for (const auto& nb : g.adj) degree_sum += nb.size();
  g.edge_count = degree_sum / 2;
  return g;
}

void FullBipartiteGraph::write_edges(std::ostream& os) const {
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (std::uint32_t u : adj[v])
      if (v < u) os << v << " " << u << "\n";
}

IntersectionReport intersection_numbers_around_x(const FullBipartiteGraph& g) {
  const int D = g.space.D;
  IntersectionReport rep;
  rep.b.assign(static_cast<std::size_t>(D) + 1, -1);
  rep.c.assign(static_cast<std::size_t>(D) + 1, -1);

  for (std::size_t v = 0; v < g.adj.size(); ++v) {
    const int w = g.weight[v];
    std::int64_t down = 0, up = 0;
    for (std::uint32_t u : g.adj[v]) {
      int wu = g.weight[u];
      if (wu == w - 1)
        ++down;
      else if (wu == w + 1)
        ++up;
      else {
        rep.ok = false;
        rep.witness = "edge " + std::to_string(v) + "-" + std::to_string(u) +
                      " joins classes " + std::to_string(w) + " and " + std::to_string(wu);
        return rep;
      }
    }
    auto& bi = rep.b[static_cast<std::size_t>(w)];
    auto& ci = rep.c[static_cast<std::size_t>(w)];
    if (bi == -1) {
      bi = up;
      ci = down;
    } else if (bi != up || ci != down) {
      rep.ok = false;
      rep.witness = "vertex " + std::to_string(v) + " in class " + std::to_string(w) +
                    " has (up, down) = (" + std::to_string(up) + ", " + std::to_string(down) +
                    "), class has (" + std::to_string(bi) + ", " + std::to_string(ci) + ")";
      return rep;
    }
  }
  return rep;
}

std::vector<int> bfs_distances(const FullBipartiteGraph& g, std::size_t from) {
  std::vector<int> dist(g.adj.size(), -1);
  std::deque<std::uint32_t> queue;
  dist[from] = 0;
  queue.push_back(static_cast<std::uint32_t>(from));
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t u : g.adj[v])
      if (dist[u] == -1) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
  }
  return dist;
}

std::int64_t binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  __int128 r = 1;
  for (int i = 1; i <= b; ++i) {
    r = r * (a - b + i) / i;
    if (r > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("binomial: int64 overflow");
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t ipow(std::int64_t base, int exp) {
  if (exp < 0) throw InvalidOperandError("ipow: negative exponent");
  __int128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > std::numeric_limits<std::int64_t>::max() || r < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("ipow: int64 overflow");
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace qham
