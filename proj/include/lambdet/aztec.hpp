#pragma once

// The order-n Aztec graph in doubled coordinates: a vertex at (u, v) with
// half-integer u, v is stored as the odd pair (2u, 2v); the face (k, l) is
// bounded by the four vertices (k +- 1/2, l +- 1/2).

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "lambdet/asm.hpp"
#include "lambdet/matrix.hpp"

namespace lambdet {

struct Vertex {
  int x2, y2;
  bool operator==(const Vertex&) const = default;
};

struct Edge {
  int a, b;  // vertex indices, a < b
  bool operator==(const Edge&) const = default;
  bool operator<(const Edge& o) const { return a != o.a ? a < o.a : b < o.b; }
};

struct Face {
  int k, l;
  bool operator==(const Face&) const = default;
};

class AztecGraph {
 public:
  explicit AztecGraph(int n);

  int n() const { return n_; }
  // Scan order: top row first, left to right.
  const std::vector<Vertex>& vertices() const { return verts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }

  std::optional<int> vertex_at(int x2, int y2) const;
  std::optional<Edge> edge_between(int x2a, int y2a, int x2b, int y2b) const;
  bool is_vertical(const Edge& e) const { return verts_[e.a].x2 == verts_[e.b].x2; }
  // Row label l of a vertical edge or column label k of a horizontal edge.
  int edge_label(const Edge& e) const;
  std::array<Face, 2> edge_faces(const Edge& e) const;
  int face_index(const Face& f) const;
  bool is_p_face(const Face& f) const { return ((f.k + f.l - n_) % 2 + 2) % 2 == 0; }
  bool is_boundary(const Face& f) const { return std::abs(f.k) + std::abs(f.l) == n_; }

  // (i, j) 1-based position of a face in P or Q.
  std::pair<int, int> matrix_position(const Face& f) const;
  Face p_face(int i, int j) const { return {i + j - n_ - 2, j - i}; }
  Face q_face(int i, int j) const { return {i + j - n_ - 1, j - i}; }

  // Vertices adjacent to vertex v: right and down neighbours (scan-forward).
  const std::vector<std::pair<int, int>>& forward_edges(int v) const { return fwd_[v]; }

 private:
  int n_;
  std::vector<Vertex> verts_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<int> grid_;  // vertex index by doubled coordinate, -1 if absent
  std::vector<std::vector<std::pair<int, int>>> fwd_;  // (neighbour, edge index)
  int gidx(int x2, int y2) const { return (y2 + 2 * n_) * (4 * n_ + 1) + (x2 + 2 * n_); }
};

class PerfectMatching {
 public:
  // Validates that every vertex is covered exactly once.
  PerfectMatching(const AztecGraph& g, std::vector<Edge> dimers);

  int n() const { return n_; }
  const std::vector<Edge>& dimers() const { return dimers_; }
  int face_count(const Face& f) const;
  int vertical_count() const { return vertical_; }
  bool operator==(const PerfectMatching& o) const { return n_ == o.n_ && dimers_ == o.dimers_; }

 private:
  int n_;
  std::vector<Edge> dimers_;
  std::vector<int> counts_;
  int vertical_ = 0;
  int face_offset(const Face& f) const;
};

struct Homogeneous {
  Scalar lambda;
};

// Vectors indexed by label a = -(n-1)..(n-1), stored at a + n - 1.
struct Inhomogeneous {
  std::vector<Scalar> lambda, mu;
};

using Bias = std::variant<Homogeneous, Inhomogeneous>;

struct AztecWeighting {
  SquareMatrix P;  // (n+1) x (n+1)
  SquareMatrix Q;  // n x n
  Bias bias;
  int n() const { return static_cast<int>(Q.rows()); }
};

AztecWeighting uniform_weighting(int n, const Scalar& lambda);

// Enumeration guard; LAMBDET_MAX_MATCHING_ORDER overrides the default 5.
int matching_bound();

void for_each_matching(const AztecGraph& g, const std::function<void(const PerfectMatching&)>& visit);
std::vector<PerfectMatching> enumerate_matchings(int n);

Scalar matching_weight(const AztecGraph& g, const PerfectMatching& m, const AztecWeighting& w);
Scalar partition_brute(const AztecWeighting& w);

struct AsmPair {
  Asm b, bp;
};

AsmPair matching_to_asm_pair(const AztecGraph& g, const PerfectMatching& m);
PerfectMatching asm_pair_to_matching(const AztecGraph& g, const Asm& b, const Asm& bp);

nlohmann::json to_json(const AztecGraph& g, const PerfectMatching& m);
PerfectMatching matching_from_json(const AztecGraph& g, const nlohmann::json& j);

struct SvgOptions {
  double cell = 24.0;
  bool show_dimers = true;
  bool show_faces = false;
};
std::string render_svg(const AztecGraph& g, const PerfectMatching& m, const SvgOptions& opt = {});

}  // namespace lambdet
