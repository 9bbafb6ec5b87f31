#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qham {

/// Words of length D over {0, ..., n-1}, indexed by the base-n value of the
/// word (digit i contributes word[i] * n^i). The base vertex x is the all-zero
/// word, index 0.
struct HammingSpace {
  int D = 0;
  int n = 0;
  std::size_t vertex_count = 0;  // n^D

  std::vector<std::uint8_t> decode(std::size_t index) const;
  std::size_t encode(const std::vector<std::uint8_t>& word) const;
  /// Hamming weight = distance to the base word.
  int weight(std::size_t index) const;
};

/// Validates D >= 1, n >= 3 and that n^D fits comfortably in 32 bits.
HammingSpace make_space(int D, int n);

int hamming_distance(const std::vector<std::uint8_t>& u, const std::vector<std::uint8_t>& v);

/// The graph keeps exactly the Hamming-adjacent pairs whose distances to the
/// base vertex differ; same-weight ("flat") pairs are cut.
struct FullBipartiteGraph {
  HammingSpace space;
  std::size_t base = 0;
  std::vector<std::vector<std::uint32_t>> adj;      // sorted neighbor lists
  std::vector<int> weight;                          // weight[v] = distance(x, v)
  std::vector<std::vector<std::uint32_t>> classes;  // classes[i] = vertices at weight i
  std::size_t edge_count = 0;

  /// Undirected edge list, one "i j" line per edge with i < j.
  void write_edges(std::ostream& os) const;
};

FullBipartiteGraph full_bipartite(const HammingSpace& space);

/// Per-class neighbor counts around the base vertex. ok = false carries a
/// witness when some class is not regular in that sense (it always is here;
/// the report exists so callers can verify rather than assume).
struct IntersectionReport {
  bool ok = true;
  std::vector<std::int64_t> b;  // b[i] = neighbors one class up, b[D] = 0
  std::vector<std::int64_t> c;  // c[i] = neighbors one class down, c[0] = 0
  std::string witness;
};

IntersectionReport intersection_numbers_around_x(const FullBipartiteGraph& g);

std::vector<int> bfs_distances(const FullBipartiteGraph& g, std::size_t from);

/// C(a, b) as int64 with overflow checking.
std::int64_t binomial(int a, int b);
/// base^exp as int64 with overflow checking.
std::int64_t ipow(std::int64_t base, int exp);

}  // namespace qham
