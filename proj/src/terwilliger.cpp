#include "qham/terwilliger.hpp"

#include <algorithm>
#include <sstream>

namespace qham {

namespace {

std::string entry_witness(const char* what, std::size_t z, std::size_t y, const QuadScalar& lhs,
                          const QuadScalar& rhs) {
  std::ostringstream os;
  os << what << " at entry (" << z << ", " << y << "): lhs = " << lhs.to_string()
     << ", rhs = " << rhs.to_string();
  return os.str();
}

std::vector<std::uint8_t> digit_table(const HammingSpace& space) {
  std::vector<std::uint8_t> digits(space.vertex_count * static_cast<std::size_t>(space.D));
  for (std::size_t v = 0; v < space.vertex_count; ++v) {
    auto w = space.decode(v);
    std::copy(w.begin(), w.end(), digits.begin() + v * static_cast<std::size_t>(space.D));
  }
  return digits;
}

int pair_distance(const std::vector<std::uint8_t>& digits, int D, std::size_t u, std::size_t v) {
  int d = 0;
  const std::uint8_t* a = digits.data() + u * static_cast<std::size_t>(D);
  const std::uint8_t* b = digits.data() + v * static_cast<std::size_t>(D);
  for (int i = 0; i < D; ++i)
    if (a[i] != b[i]) ++d;
  return d;
}

}  // namespace

QuadScalar TerwilligerContext::sqrt_n_minus_1() const { return QuadScalar::sqrt_of(n() - 1); }

TerwilligerContext::TerwilligerContext(FullBipartiteGraph g)
    : graph_(std::move(g)),
      L_int_(graph_.space.vertex_count),
      R_int_(graph_.space.vertex_count),
      A_int_(graph_.space.vertex_count),
      A_(graph_.space.vertex_count),
      L_(graph_.space.vertex_count),
      R_(graph_.space.vertex_count),
      Astar_(graph_.space.vertex_count) {
  auto parts = normalize_radicand(n() - 1);
  scale_ = parts.scale;
  radicand_ = parts.radicand;

  const std::size_t count = order();
  for (std::size_t y = 0; y < count; ++y) {
    for (std::uint32_t z : graph_.adj[y]) {
      A_int_.at(z, y) = 1;
      if (graph_.weight[z] == graph_.weight[y] - 1)
        L_int_.at(z, y) = 1;
      else if (graph_.weight[z] == graph_.weight[y] + 1)
        R_int_.at(z, y) = 1;
    }
  }
  A_ = ExactMatrix::from_int(A_int_);
  L_ = ExactMatrix::from_int(L_int_);
  R_ = ExactMatrix::from_int(R_int_);

  dual_idem_.reserve(static_cast<std::size_t>(D()) + 1);
  for (int i = 0; i <= D(); ++i) dual_idem_.emplace_back(count);
  for (std::size_t v = 0; v < count; ++v) {
    int w = graph_.weight[v];
    dual_idem_[static_cast<std::size_t>(w)].at(v) = QuadScalar(1);
    Astar_.at(v) = QuadScalar(static_cast<long>(theta_star(w)));
  }
}

namespace {

void require(bool ok, const char* identity, const std::string& witness) {
  if (!ok) throw VerificationError(identity, witness);
}

void check_construction(const TerwilligerContext& ctx) {
  const auto& g = ctx.graph();
  const int D = ctx.D();
  const int n = ctx.n();
  const std::size_t count = ctx.order();

  // distance partition sizes
  std::int64_t total = 0;
  for (int i = 0; i <= D; ++i) {
    std::int64_t expect = binomial(D, i) * ipow(n - 1, i);
    std::int64_t got = static_cast<std::int64_t>(g.classes[static_cast<std::size_t>(i)].size());
    require(got == expect, "partition sizes",
            "class " + std::to_string(i) + " has " + std::to_string(got) + " vertices, expected " +
                std::to_string(expect));
    total += got;
  }
  require(total == static_cast<std::int64_t>(count), "partition sizes",
          "classes cover " + std::to_string(total) + " of " + std::to_string(count) + " vertices");

  // adjacency: symmetric, no loops, no repeated neighbors, weight step 1
  for (std::size_t v = 0; v < count; ++v) {
    const auto& nb = g.adj[v];
    require(std::adjacent_find(nb.begin(), nb.end()) == nb.end(), "simple adjacency",
            "vertex " + std::to_string(v) + " has a repeated neighbor");
    for (std::uint32_t u : nb) {
      require(u != v, "simple adjacency", "loop at vertex " + std::to_string(v));
      const auto& back = g.adj[u];
      require(std::binary_search(back.begin(), back.end(), static_cast<std::uint32_t>(v)),
              "symmetric adjacency",
              "edge " + std::to_string(v) + "-" + std::to_string(u) + " lacks its reverse");
      require(std::abs(g.weight[u] - g.weight[v]) == 1, "no flat edges",
              "edge " + std::to_string(v) + "-" + std::to_string(u) + " joins classes " +
                  std::to_string(g.weight[v]) + " and " + std::to_string(g.weight[u]));
    }
  }

  // A = L + R and R = L^T on the integer matrices
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      require(ctx.A_int().at(i, j) == ctx.L_int().at(i, j) + ctx.R_int().at(i, j), "A = L + R",
              "entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      require(ctx.R_int().at(i, j) == ctx.L_int().at(j, i), "R = L^T",
              "entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }

  // dual idempotents: 0/1 diagonals, pairwise disjoint, summing to I
  for (std::size_t v = 0; v < count; ++v) {
    int hits = 0;
    for (int i = 0; i <= D; ++i) {
      const QuadScalar& e = ctx.dual_idempotent(i).at(v);
      if (e.is_zero()) continue;
      require(e == QuadScalar(1), "dual idempotents are 0/1",
              "E*_" + std::to_string(i) + " diagonal at vertex " + std::to_string(v) + " is " +
                  e.to_string());
      ++hits;
    }
    require(hits == 1, "dual idempotents resolve identity",
            "vertex " + std::to_string(v) + " is covered " + std::to_string(hits) + " times");
  }

  // theta* values distinct and matching A*'s diagonal
  for (int i = 0; i <= D; ++i)
    for (int j = i + 1; j <= D; ++j)
      require(ctx.theta_star(i) != ctx.theta_star(j), "theta* distinct",
              "theta*_" + std::to_string(i) + " = theta*_" + std::to_string(j));
  for (std::size_t v = 0; v < count; ++v)
    require(ctx.Astar().at(v) == QuadScalar(static_cast<long>(ctx.theta_star(g.weight[v]))),
            "A* diagonal", "vertex " + std::to_string(v));

  // connected, and graph distance from the base equals the weight
  auto dist = bfs_distances(g, g.base);
  for (std::size_t v = 0; v < count; ++v) {
    require(dist[v] >= 0, "connected", "vertex " + std::to_string(v) + " unreachable");
    require(dist[v] == g.weight[v], "geodesic distances",
            "vertex " + std::to_string(v) + " has graph distance " + std::to_string(dist[v]) +
                " but weight " + std::to_string(g.weight[v]));
  }
}

}  // namespace

TerwilligerContext build_context(FullBipartiteGraph g) {
  TerwilligerContext ctx(std::move(g));
  check_construction(ctx);
  return ctx;
}

CheckResult verify_dual_idempotent_blocks(const TerwilligerContext& ctx) {
  const int D = ctx.D();
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j) {
      ExactMatrix block = ctx.dual_idempotent(i) * (ctx.A() * ctx.dual_idempotent(j));
      if (std::abs(i - j) == 1) {
        if (block.is_zero())
          return CheckResult::failed("block E*_" + std::to_string(i) + " A E*_" +
                                     std::to_string(j) + " is zero but the classes are adjacent");
      } else if (auto nz = block.first_nonzero()) {
        return CheckResult::failed("block E*_" + std::to_string(i) + " A E*_" + std::to_string(j) +
                                   " has nonzero entry (" + std::to_string(nz->first) + ", " +
                                   std::to_string(nz->second) + ")");
      }
    }
  return CheckResult::passed();
}

CheckResult verify_uniform(const TerwilligerContext& ctx) {
  const auto& L = ctx.L();
  const auto& R = ctx.R();
  ExactMatrix RL = R * L;
  ExactMatrix LL = L * L;

  ExactMatrix lhs = L * RL;  // L R L
  lhs.add_scaled(RL * L, QuadScalar(Rational(-1, 2)));
  lhs.add_scaled(LL * R, QuadScalar(Rational(-1, 2)));

  ExactMatrix rhs = L.scaled(QuadScalar(static_cast<long>(ctx.n() - 1)));
  const std::size_t count = ctx.order();
  for (std::size_t z = 0; z < count; ++z)
    for (std::size_t y = 0; y < count; ++y)
      if (lhs.at(z, y) != rhs.at(z, y))
        return CheckResult::failed(
            entry_witness("-1/2 RL^2 + LRL - 1/2 L^2R != (n-1)L", z, y, lhs.at(z, y), rhs.at(z, y)));
  return CheckResult::passed();
}

CheckResult verify_tridiagonal(const TerwilligerContext& ctx) {
  const auto& A = ctx.A();
  const auto& Astar = ctx.Astar();
  ExactMatrix A2 = A * A;
  ExactMatrix A3 = A2 * A;

  ExactMatrix lhs = A3 * Astar;
  lhs -= Astar * A3;
  lhs.add_scaled(A * (Astar * A2), QuadScalar(3));
  lhs.add_scaled(A2 * (Astar * A), QuadScalar(-3));

  ExactMatrix rhs = A * Astar;
  rhs -= Astar * A;
  rhs = rhs.scaled(QuadScalar(static_cast<long>(4 * (ctx.n() - 1))));

  const std::size_t count = ctx.order();
  for (std::size_t z = 0; z < count; ++z)
    for (std::size_t y = 0; y < count; ++y)
      if (lhs.at(z, y) != rhs.at(z, y))
        return CheckResult::failed(entry_witness("A^3A* - A*A^3 + 3(AA*A^2 - A^2A*A) != 4(n-1)(AA* - A*A)",
                                                 z, y, lhs.at(z, y), rhs.at(z, y)));

  // zero pattern: both sides vanish off pair distance 1 and 3
  auto digits = digit_table(ctx.graph().space);
  for (std::size_t z = 0; z < count; ++z)
    for (std::size_t y = 0; y < count; ++y) {
      int d = pair_distance(digits, ctx.D(), z, y);
      if (d == 1 || d == 3) continue;
      if (!lhs.at(z, y).is_zero())
        return CheckResult::failed("nonzero entry (" + std::to_string(z) + ", " + std::to_string(y) +
                                   ") at pair distance " + std::to_string(d));
    }
  return CheckResult::passed();
}

CheckResult verify_tridiagonal_entrywise(const TerwilligerContext& ctx) {
  const int D = ctx.D();
  const int n = ctx.n();
  const std::size_t count = ctx.order();
  const auto& weight = ctx.graph().weight;

  IntMatrix LL = ctx.L_int() * ctx.L_int();
  IntMatrix RL = ctx.R_int() * ctx.L_int();
  IntMatrix RL2 = RL * ctx.L_int();        // walks shaped l, l, r
  IntMatrix LRL = ctx.L_int() * RL;        // walks shaped l, r, l
  IntMatrix L2R = LL * ctx.R_int();        // walks shaped r, l, l
  IntMatrix G3 = ctx.L_int() * LL;         // walks shaped l, l, l

  auto digits = digit_table(ctx.graph().space);
  auto ts = [&](int i) { return ctx.theta_star(i); };

  for (std::size_t z = 0; z < count; ++z) {
    for (std::size_t y = 0; y < count; ++y) {
      const std::int64_t a = RL2.at(z, y);
      const std::int64_t b = LRL.at(z, y);
      const std::int64_t c = L2R.at(z, y);
      const int wy = weight[y];
      const int wz = weight[z];

      if (wz != wy - 1) {
        if (a != 0 || b != 0 || c != 0)
          return CheckResult::failed("net-lowering walk count at non-descent pair (" +
                                     std::to_string(z) + ", " + std::to_string(y) + ")");
      } else {
        const int i = wy;
        const std::int64_t edge = ctx.L_int().at(z, y);
        if (-a + 2 * b - c != 2 * static_cast<std::int64_t>(n - 1) * edge)
          return CheckResult::failed("walk identity -a + 2b - c != 2(n-1)[z ~ y] at (" +
                                     std::to_string(z) + ", " + std::to_string(y) + "): a = " +
                                     std::to_string(a) + ", b = " + std::to_string(b) + ", c = " +
                                     std::to_string(c));

        // the commutator entry expanded over intermediate classes
        const std::int64_t lhs = ts(i) * (a + b + c) - ts(i - 1) * (a + b + c) +
                                 3 * (ts(i - 2) * a + ts(i) * (b + c)) -
                                 3 * (ts(i - 1) * (a + b) + ts(i + 1) * c);
        if (lhs != static_cast<std::int64_t>(n) * (2 * a - 4 * b + 2 * c))
          return CheckResult::failed("commutator entry != n(2a - 4b + 2c) at (" + std::to_string(z) +
                                     ", " + std::to_string(y) + ")");
        if (lhs != -4 * static_cast<std::int64_t>(n) * (n - 1) * ctx.A_int().at(z, y))
          return CheckResult::failed("commutator entry != -4n(n-1)[z ~ y] at (" + std::to_string(z) +
                                     ", " + std::to_string(y) + ")");
      }

      if (wy - wz == 3) {
        int d = pair_distance(digits, D, z, y);
        std::int64_t expect = (d == 3) ? 6 : 0;
        if (G3.at(z, y) != expect)
          return CheckResult::failed("triple-lowering count at (" + std::to_string(z) + ", " +
                                     std::to_string(y) + ") is " + std::to_string(G3.at(z, y)) +
                                     ", expected " + std::to_string(expect));
      }
    }
  }
  return CheckResult::passed();
}

namespace {

void validate_shape(std::string_view shape) {
  if (shape.empty()) throw InvalidOperandError("shape_walk_count: empty shape");
  for (char c : shape)
    if (c != 'l' && c != 'r' && c != 'f')
      throw InvalidOperandError("shape_walk_count: bad symbol '" + std::string(1, c) + "'");
}

// weight change demanded by a step symbol
int symbol_delta(char c) { return c == 'l' ? -1 : (c == 'r' ? +1 : 0); }

}  // namespace

IntMatrix shape_count_matrix(const TerwilligerContext& ctx, std::string_view shape) {
  validate_shape(shape);
  auto step = [&](char c) -> IntMatrix {
    if (c == 'l') return ctx.L_int();
    if (c == 'r') return ctx.R_int();
    return IntMatrix(ctx.order());  // flat steps do not exist in this graph
  };
  IntMatrix m = step(shape[0]);
  for (std::size_t i = 1; i < shape.size(); ++i) m = step(shape[i]) * m;
  return m;
}

IntMatrix shape_count_matrix_enumerated(const TerwilligerContext& ctx, std::string_view shape) {
  validate_shape(shape);
  const auto& g = ctx.graph();
  IntMatrix m(ctx.order());
  std::vector<std::size_t> frontier, next;
  std::vector<std::int64_t> count(ctx.order()), next_count(ctx.order());
  for (std::size_t y = 0; y < ctx.order(); ++y) {
    std::fill(count.begin(), count.end(), 0);
    count[y] = 1;
    frontier.assign(1, y);
    for (char c : shape) {
      int delta = symbol_delta(c);
      std::fill(next_count.begin(), next_count.end(), 0);
      next.clear();
      for (std::size_t v : frontier)
        for (std::uint32_t u : g.adj[v])
          if (g.weight[u] == g.weight[v] + delta) {
            if (next_count[u] == 0) next.push_back(u);
            next_count[u] += count[v];
          }
      count.swap(next_count);
      frontier.swap(next);
      if (frontier.empty()) break;
    }
    for (std::size_t z : frontier) m.at(z, y) = count[z];
  }
  return m;
}

std::int64_t shape_walk_count(const TerwilligerContext& ctx, std::string_view shape, std::size_t y,
                              std::size_t z) {
  validate_shape(shape);
  if (y >= ctx.order() || z >= ctx.order())
    throw InvalidOperandError("shape_walk_count: vertex out of range");
  const auto& g = ctx.graph();

  // product route, as one matrix-vector chain
  std::vector<std::int64_t> vec(ctx.order(), 0), nxt(ctx.order());
  vec[y] = 1;
  for (char c : shape) {
    int delta = symbol_delta(c);
    std::fill(nxt.begin(), nxt.end(), 0);
    for (std::size_t v = 0; v < ctx.order(); ++v) {
      if (vec[v] == 0) continue;
      for (std::uint32_t u : g.adj[v])
        if (g.weight[u] == g.weight[v] + delta) nxt[u] += vec[v];
    }
    vec.swap(nxt);
  }
  std::int64_t product_route = vec[z];

  // enumeration route, depth-first
  std::int64_t enumerated = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // vertex, steps taken
  stack.emplace_back(y, 0);
  while (!stack.empty()) {
    auto [v, done] = stack.back();
    stack.pop_back();
    if (done == shape.size()) {
      if (v == z) ++enumerated;
      continue;
    }
    int delta = symbol_delta(shape[done]);
    for (std::uint32_t u : g.adj[v])
      if (g.weight[u] == g.weight[v] + delta) stack.emplace_back(u, done + 1);
  }

  if (product_route != enumerated)
    throw VerificationError("shape walk routes disagree",
                            "shape " + std::string(shape) + ", pair (" + std::to_string(y) + ", " +
                                std::to_string(z) + "): product " + std::to_string(product_route) +
                                ", enumeration " + std::to_string(enumerated));
  return product_route;
}

CheckResult verify_walk_counts(const TerwilligerContext& ctx, int max_len) {
  std::vector<std::string> shapes;
  std::string cur;
  auto gen = [&](auto&& self, int remaining) -> void {
    if (!cur.empty()) shapes.push_back(cur);
    if (remaining == 0) return;
    for (char c : {'f', 'l', 'r'}) {
      cur.push_back(c);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  gen(gen, max_len);

  for (const auto& shape : shapes) {
    IntMatrix product = shape_count_matrix(ctx, shape);
    IntMatrix enumerated = shape_count_matrix_enumerated(ctx, shape);
    if (!(product == enumerated)) {
      for (std::size_t z = 0; z < ctx.order(); ++z)
        for (std::size_t y = 0; y < ctx.order(); ++y)
          if (product.at(z, y) != enumerated.at(z, y))
            return CheckResult::failed("shape " + shape + " at (" + std::to_string(z) + ", " +
                                       std::to_string(y) + "): product " +
                                       std::to_string(product.at(z, y)) + ", enumeration " +
                                       std::to_string(enumerated.at(z, y)));
    }
    if (shape.find('f') != std::string::npos && !product.is_zero())
      return CheckResult::failed("shape " + shape + " contains a flat step but counts walks");
  }
  return CheckResult::passed();
}

}  // namespace qham
