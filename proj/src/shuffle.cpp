#include "lambdet/shuffle.hpp"

#include <functional>

#include "lambdet/error.hpp"

namespace lambdet {

UrbanCell urban_renewal(const UrbanCell& c) {
  if (c.x1.is_zero()) fail(ErrorKind::ZeroFaceWeight, "urban renewal on a face of weight 0");
  UrbanCell r = c;
  r.x1 = (c.alpha * c.gamma * c.x2 * c.x4 + c.beta * c.delta * c.x3 * c.x5) / c.x1;
  std::swap(r.alpha, r.gamma);
  std::swap(r.beta, r.delta);
  return r;
}

std::pair<SquareMatrix, SquareMatrix> shuffle_step(const SquareMatrix& p, const SquareMatrix& q, const Scalar& lambda) {
  const Eigen::Index n = q.rows();
  if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != n + 1)
    fail(ErrorKind::SizeMismatch, "P must be (n+1)x(n+1) and Q nxn");
  if (n < 1) fail(ErrorKind::SizeMismatch, "nothing left to shuffle");
  SquareMatrix pp(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (q(i, j).is_zero())
        fail(ErrorKind::ZeroFaceWeight, "q_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + " is 0");
      pp(i, j) = (p(i, j) * p(i + 1, j + 1) + lambda * p(i, j + 1) * p(i + 1, j)) / q(i, j);
    }
  SquareMatrix qq = p.block(1, 1, n - 1, n - 1);
  return {std::move(pp), std::move(qq)};
}

std::pair<SquareMatrix, SquareMatrix> shuffle(SquareMatrix p, SquareMatrix q, const Scalar& lambda, int steps) {
  if (steps < 0 || steps > q.rows()) fail(ErrorKind::SizeMismatch, "steps must lie in 0..n");
  for (int k = 0; k < steps; ++k) std::tie(p, q) = shuffle_step(p, q, lambda);
  return {std::move(p), std::move(q)};
}

Scalar substitution_S(int k, const Scalar& lambda, const std::string& p_stem, const std::string& q_stem) {
  if (k < 0) fail(ErrorKind::SizeMismatch, "k must be nonnegative");
  auto name = [](const std::string& stem, int i, int j) {
    return stem + "_" + std::to_string(i) + "_" + std::to_string(j);
  };
  auto var = [&](const std::string& stem, int i, int j) { return Scalar::var(name(stem, i, j)); };
  Scalar t = var(p_stem, 1, 1);
  // After s steps t involves p up to index s+1 and q up to s.
  for (int s = 0; s < k; ++s) {
    Bindings b;
    for (int i = 1; i <= s + 1; ++i)
      for (int j = 1; j <= s + 1; ++j) {
        Scalar q = var(q_stem, i, j);
        b[name(p_stem, i, j)] =
            (var(p_stem, i, j) * var(p_stem, i + 1, j + 1) + lambda * var(p_stem, i, j + 1) * var(p_stem, i + 1, j)) / q;
        if (i <= s && j <= s) b[name(q_stem, i, j)] = var(p_stem, i + 1, j + 1);
      }
    t = substitute(t, b);
  }
  return t;
}

Scalar matching_sum(const WeightedGraph& g) {
  std::vector<std::vector<int>> adj(g.vertex_count);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const auto& ed = g.edges[e];
    if (ed.a < 0 || ed.b < 0 || ed.a >= g.vertex_count || ed.b >= g.vertex_count || ed.a == ed.b)
      fail(ErrorKind::SizeMismatch, "bad edge");
    adj[ed.a].push_back(e);
    adj[ed.b].push_back(e);
  }
  std::vector<bool> used(g.vertex_count, false);
  std::function<Scalar(int)> rec = [&](int from) -> Scalar {
    int v = from;
    while (v < g.vertex_count && used[v]) ++v;
    if (v == g.vertex_count) return Scalar(1);
    Scalar total;
    used[v] = true;
    for (int e : adj[v]) {
      int u = g.edges[e].a == v ? g.edges[e].b : g.edges[e].a;
      if (used[u]) continue;
      used[u] = true;
      Scalar rest = rec(v + 1);
      if (!rest.is_zero()) total += g.edges[e].w * rest;
      used[u] = false;
    }
    used[v] = false;
    return total;
  };
  return rec(0);
}

WeightedGraph split_vertex(const WeightedGraph& g, int v, const std::vector<int>& moved) {
  if (v < 0 || v >= g.vertex_count) fail(ErrorKind::SizeMismatch, "no such vertex");
  WeightedGraph r = g;
  int u = r.vertex_count++, w = r.vertex_count++;
  for (int e : moved) {
    if (e < 0 || e >= static_cast<int>(g.edges.size())) fail(ErrorKind::SizeMismatch, "no such edge");
    auto& ed = r.edges[e];
    if (ed.a == v)
      ed.a = w;
    else if (ed.b == v)
      ed.b = w;
    else
      fail(ErrorKind::SizeMismatch, "moved edge does not touch the split vertex");
  }
  r.edges.push_back({v, u, Scalar(1)});
  r.edges.push_back({u, w, Scalar(1)});
  return r;
}

WeightedGraph urban_renewal_graph(const WeightedGraph& g, std::array<int, 4> cycle, Scalar* factor) {
  std::array<int, 4> idx{-1, -1, -1, -1};
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    for (int k = 0; k < 4; ++k) {
      int s = cycle[k], t = cycle[(k + 1) % 4];
      const auto& ed = g.edges[e];
      if ((ed.a == s && ed.b == t) || (ed.a == t && ed.b == s)) {
        if (idx[k] >= 0) fail(ErrorKind::SizeMismatch, "parallel edges on the 4-cycle");
        idx[k] = e;
      }
    }
  for (int k = 0; k < 4; ++k)
    if (idx[k] < 0) fail(ErrorKind::SizeMismatch, "vertices do not form a 4-cycle");
  const Scalar &a = g.edges[idx[0]].w, &b = g.edges[idx[1]].w, &c = g.edges[idx[2]].w, &d = g.edges[idx[3]].w;
  Scalar D = a * c + b * d;
  if (D.is_zero()) fail(ErrorKind::ZeroFaceWeight, "urban renewal with ac + bd = 0");
  WeightedGraph r;
  r.vertex_count = g.vertex_count + 4;
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    if (e != idx[0] && e != idx[1] && e != idx[2] && e != idx[3]) r.edges.push_back(g.edges[e]);
  int base = g.vertex_count;
  for (int k = 0; k < 4; ++k) r.edges.push_back({cycle[k], base + k, Scalar(1)});
  const Scalar inner[4] = {c / D, d / D, a / D, b / D};
  for (int k = 0; k < 4; ++k) r.edges.push_back({base + k, base + (k + 1) % 4, inner[k]});
  if (factor) *factor = D;
  return r;
}

}  // namespace lambdet
