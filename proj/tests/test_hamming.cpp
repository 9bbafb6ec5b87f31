#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qham/hamming.hpp"
#include "qham/qnum.hpp"

using namespace qham;

namespace {

// all Hamming-adjacent pairs, split into cut (same weight) and kept pairs
struct PairCensus {
  std::size_t flat = 0;
  std::size_t kept = 0;
};

PairCensus census(const HammingSpace& s) {
  PairCensus out;
  for (std::size_t u = 0; u < s.vertex_count; ++u) {
    const auto wu = s.decode(u);
    for (std::size_t v = u + 1; v < s.vertex_count; ++v) {
      const auto wv = s.decode(v);
      if (hamming_distance(wu, wv) != 1) continue;
      if (s.weight(u) == s.weight(v))
        ++out.flat;
      else
        ++out.kept;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("make_space validates parameters") {
  CHECK_THROWS_AS(make_space(0, 3), InvalidOperandError);
  CHECK_THROWS_AS(make_space(-1, 3), InvalidOperandError);
  CHECK_THROWS_AS(make_space(2, 2), InvalidOperandError);
  CHECK_THROWS_AS(make_space(40, 9), std::overflow_error);
  const HammingSpace s = make_space(3, 4);
  CHECK(s.vertex_count == 64);
}

TEST_CASE("decode/encode round-trip and weight") {
  const HammingSpace s = make_space(3, 5);
  for (std::size_t v = 0; v < s.vertex_count; ++v) {
    const auto word = s.decode(v);
    REQUIRE(word.size() == 3);
    CHECK(s.encode(word) == v);
    int nz = 0;
    for (auto d : word) {
      CHECK(d < 5);
      nz += d != 0;
    }
    CHECK(s.weight(v) == nz);
  }
  // digit i carries weight n^i
  CHECK(s.decode(1)[0] == 1);
  CHECK(s.decode(5)[1] == 1);
  CHECK(s.decode(25)[2] == 1);
}

TEST_CASE("hamming_distance is a metric on sampled words") {
  const HammingSpace s = make_space(4, 3);
  const auto a = s.decode(7);
  const auto b = s.decode(55);
  const auto c = s.decode(61);
  CHECK(hamming_distance(a, a) == 0);
  CHECK(hamming_distance(a, b) == hamming_distance(b, a));
  CHECK(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
}

TEST_CASE("frozen shape of the (2,3) instance") {
  const FullBipartiteGraph g = full_bipartite(make_space(2, 3));
  REQUIRE(g.classes.size() == 3);
  CHECK(g.classes[0].size() == 1);
  CHECK(g.classes[1].size() == 4);
  CHECK(g.classes[2].size() == 4);
  CHECK(g.edge_count == 12);
  CHECK(g.base == 0);

  // even/odd bipartition 5 / 4
  std::size_t even = 0, odd = 0;
  for (int w : g.weight) (w % 2 == 0 ? even : odd) += 1;
  CHECK(even == 5);
  CHECK(odd == 4);

  const auto rep = intersection_numbers_around_x(g);
  REQUIRE(rep.ok);
  CHECK(rep.b == std::vector<std::int64_t>{4, 2, 0});
  CHECK(rep.c == std::vector<std::int64_t>{0, 1, 2});
}

TEST_CASE("frozen shape of the (3,3) instance") {
  const FullBipartiteGraph g = full_bipartite(make_space(3, 3));
  REQUIRE(g.classes.size() == 4);
  CHECK(g.classes[0].size() == 1);
  CHECK(g.classes[1].size() == 6);
  CHECK(g.classes[2].size() == 12);
  CHECK(g.classes[3].size() == 8);
}

TEST_CASE("class sizes follow C(D,i)(n-1)^i and cover the space") {
  for (int D = 1; D <= 3; ++D) {
    for (int nn = 3; nn <= 5; ++nn) {
      const FullBipartiteGraph g = full_bipartite(make_space(D, nn));
      std::size_t total = 0;
      for (int i = 0; i <= D; ++i) {
        const std::size_t expect =
            static_cast<std::size_t>(binomial(D, i) * ipow(nn - 1, i));
        CHECK(g.classes[static_cast<std::size_t>(i)].size() == expect);
        total += expect;
      }
      CHECK(total == g.space.vertex_count);
    }
  }
}

TEST_CASE("kept and cut pair counts match brute-force enumeration") {
  for (auto [D, nn] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}}) {
    const HammingSpace s = make_space(D, nn);
    const FullBipartiteGraph g = full_bipartite(s);
    const PairCensus pc = census(s);
    CHECK(g.edge_count == pc.kept);
    // Hamming graph degree is D(n-1); the cut pairs account for the rest
    const std::size_t all_pairs = s.vertex_count * static_cast<std::size_t>(D * (nn - 1)) / 2;
    CHECK(pc.flat + pc.kept == all_pairs);
    CHECK(pc.flat == all_pairs - g.edge_count);
  }
}

TEST_CASE("degrees equal b_w + c_w and neighbor lists are sorted") {
  const FullBipartiteGraph g = full_bipartite(make_space(3, 4));
  const int D = g.space.D;
  const int nn = g.space.n;
  for (std::size_t v = 0; v < g.adj.size(); ++v) {
    const int w = g.weight[v];
    CHECK(g.adj[v].size() == static_cast<std::size_t>((D - w) * (nn - 1) + w));
    CHECK(std::is_sorted(g.adj[v].begin(), g.adj[v].end()));
  }
}

TEST_CASE("graph distance from the base equals Hamming weight") {
  for (auto [D, nn] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 5}}) {
    const FullBipartiteGraph g = full_bipartite(make_space(D, nn));
    const auto dist = bfs_distances(g, g.base);
    for (std::size_t v = 0; v < dist.size(); ++v) CHECK(dist[v] == g.weight[v]);
  }
}

TEST_CASE("write_edges lists each edge once with ascending endpoints") {
  const FullBipartiteGraph g = full_bipartite(make_space(2, 3));
  std::stringstream ss;
  g.write_edges(ss);
  std::size_t lines = 0;
  std::size_t u = 0, v = 0;
  while (ss >> u >> v) {
    ++lines;
    CHECK(u < v);
    CHECK(std::binary_search(g.adj[u].begin(), g.adj[u].end(), static_cast<std::uint32_t>(v)));
  }
  CHECK(lines == g.edge_count);
}

TEST_CASE("binomial and ipow frozen values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(5, 6) == 0);
  CHECK(ipow(3, 0) == 1);
  CHECK(ipow(2, 10) == 1024);
  CHECK(ipow(5, 4) == 625);
}
