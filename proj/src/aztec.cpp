#include "lambdet/aztec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "lambdet/error.hpp"

namespace lambdet {

AztecGraph::AztecGraph(int n) : n_(n) {
  if (n < 1) fail(ErrorKind::SizeMismatch, "Aztec order must be positive");
  grid_.assign((4 * n + 1) * (4 * n + 1), -1);
  for (int y2 = 2 * n - 1; y2 >= -(2 * n - 1); y2 -= 2)
    for (int x2 = -(2 * n - 1); x2 <= 2 * n - 1; x2 += 2)
      if (std::abs(x2) + std::abs(y2) <= 2 * n) {
        grid_[gidx(x2, y2)] = static_cast<int>(verts_.size());
        verts_.push_back({x2, y2});
      }
  fwd_.resize(verts_.size());
  for (int v = 0; v < static_cast<int>(verts_.size()); ++v) {
    auto [x2, y2] = verts_[v];
    for (auto [dx, dy] : {std::pair{2, 0}, std::pair{0, -2}}) {
      if (auto w = vertex_at(x2 + dx, y2 + dy)) {
        fwd_[v].push_back({*w, static_cast<int>(edges_.size())});
        edges_.push_back({v, *w});
      }
    }
  }
  for (int l = n; l >= -n; --l)
    for (int k = -n; k <= n; ++k)
      if (std::abs(k) + std::abs(l) <= n) faces_.push_back({k, l});
}

std::optional<int> AztecGraph::vertex_at(int x2, int y2) const {
  if (std::abs(x2) > 2 * n_ || std::abs(y2) > 2 * n_) return std::nullopt;
  int v = grid_[gidx(x2, y2)];
  if (v < 0) return std::nullopt;
  return v;
}

std::optional<Edge> AztecGraph::edge_between(int x2a, int y2a, int x2b, int y2b) const {
  auto a = vertex_at(x2a, y2a), b = vertex_at(x2b, y2b);
  if (!a || !b) return std::nullopt;
  int dx = std::abs(x2a - x2b), dy = std::abs(y2a - y2b);
  if (!((dx == 2 && dy == 0) || (dx == 0 && dy == 2))) return std::nullopt;
  return Edge{std::min(*a, *b), std::max(*a, *b)};
}

int AztecGraph::edge_label(const Edge& e) const {
  const Vertex &a = verts_[e.a], &b = verts_[e.b];
  if (is_vertical(e)) return (std::max(a.y2, b.y2) - 1) / 2;
  return (std::min(a.x2, b.x2) + 1) / 2;
}

std::array<Face, 2> AztecGraph::edge_faces(const Edge& e) const {
  const Vertex &a = verts_[e.a], &b = verts_[e.b];
  if (is_vertical(e)) {
    int l = (std::max(a.y2, b.y2) - 1) / 2;
    return {Face{(a.x2 - 1) / 2, l}, Face{(a.x2 + 1) / 2, l}};
  }
  int k = (std::min(a.x2, b.x2) + 1) / 2;
  return {Face{k, (a.y2 + 1) / 2}, Face{k, (a.y2 - 1) / 2}};
}

int AztecGraph::face_index(const Face& f) const {
  if (std::abs(f.k) + std::abs(f.l) > n_) fail(ErrorKind::Internal, "face outside the diamond");
  // Faces are listed by l descending, k ascending.
  int idx = 0;
  for (int l = n_; l > f.l; --l) idx += 2 * (n_ - std::abs(l)) + 1;
  return idx + f.k + (n_ - std::abs(f.l));
}

std::pair<int, int> AztecGraph::matrix_position(const Face& f) const {
  if (is_p_face(f)) return {(f.k - f.l + n_ + 2) / 2, (f.k + f.l + n_ + 2) / 2};
  return {(f.k - f.l + n_ + 1) / 2, (f.k + f.l + n_ + 1) / 2};
}

// ---------------------------------------------------------------- matchings

PerfectMatching::PerfectMatching(const AztecGraph& g, std::vector<Edge> dimers)
    : n_(g.n()), dimers_(std::move(dimers)), counts_((2 * g.n() + 1) * (2 * g.n() + 1), 0) {
  std::sort(dimers_.begin(), dimers_.end());
  std::vector<int> cover(g.vertices().size(), 0);
  for (const auto& e : dimers_) {
    if (e.a < 0 || e.b >= static_cast<int>(cover.size()) || e.a >= e.b)
      fail(ErrorKind::Internal, "dimer with invalid vertices");
    ++cover[e.a];
    ++cover[e.b];
    if (g.is_vertical(e)) ++vertical_;
    for (const Face& f : g.edge_faces(e)) ++counts_[face_offset(f)];
  }
  for (int c : cover)
    if (c != 1) fail(ErrorKind::Internal, "not a perfect matching");
}

int PerfectMatching::face_offset(const Face& f) const {
  if (std::abs(f.k) > n_ || std::abs(f.l) > n_) fail(ErrorKind::Internal, "face outside the diamond");
  return (f.l + n_) * (2 * n_ + 1) + (f.k + n_);
}

int PerfectMatching::face_count(const Face& f) const { return counts_[face_offset(f)]; }

AztecWeighting uniform_weighting(int n, const Scalar& lambda) {
  return {ones(n + 1), ones(n), Homogeneous{lambda}};
}

int matching_bound() {
  const char* v = std::getenv("LAMBDET_MAX_MATCHING_ORDER");
  int b = v ? std::atoi(v) : 0;
  return b > 0 ? b : 5;
}

namespace {

struct MatchingSearch {
  const AztecGraph& g;
  const std::function<void(const PerfectMatching&)>& visit;
  std::vector<char> covered;
  std::vector<Edge> chosen;

  void rec(int start) {
    int V = static_cast<int>(covered.size());
    while (start < V && covered[start]) ++start;
    if (start == V) {
      visit(PerfectMatching(g, chosen));
      return;
    }
    for (auto [w, e] : g.forward_edges(start)) {
      if (covered[w]) continue;
      covered[start] = covered[w] = 1;
      chosen.push_back(g.edges()[e]);
      rec(start + 1);
      chosen.pop_back();
      covered[start] = covered[w] = 0;
    }
  }
};

void check_order(int n) {
  if (n > matching_bound()) fail(ErrorKind::SizeTooLarge, "matching enumeration beyond order " + std::to_string(matching_bound()));
}

}  // namespace

void for_each_matching(const AztecGraph& g, const std::function<void(const PerfectMatching&)>& visit) {
  check_order(g.n());
  MatchingSearch s{g, visit, std::vector<char>(g.vertices().size(), 0), {}};
  s.rec(0);
}

std::vector<PerfectMatching> enumerate_matchings(int n) {
  AztecGraph g(n);
  std::vector<PerfectMatching> out;
  for_each_matching(g, [&](const PerfectMatching& m) { out.push_back(m); });
  return out;
}

Scalar matching_weight(const AztecGraph& g, const PerfectMatching& m, const AztecWeighting& w) {
  int n = g.n();
  if (m.n() != n || w.n() != n || w.P.rows() != n + 1 || w.P.cols() != n + 1 || w.Q.cols() != n)
    fail(ErrorKind::OrderMismatch, "matching and weighting orders differ");
  Scalar num(1), den(1);
  for (const Face& f : g.faces()) {
    int e = 1 - m.face_count(f);
    if (e == 0) continue;
    auto [i, j] = g.matrix_position(f);
    const Scalar& x = g.is_p_face(f) ? w.P(i - 1, j - 1) : w.Q(i - 1, j - 1);
    if (e > 0) num *= pow(x, e);
    else den *= pow(x, -e);
  }
  if (den.is_zero()) fail(ErrorKind::DivisionByZero, "zero face weight under a multiply covered face");
  Scalar bias(1);
  if (const auto* h = std::get_if<Homogeneous>(&w.bias)) {
    if (m.vertical_count() % 2) fail(ErrorKind::Internal, "odd number of vertical dimers");
    bias = pow(h->lambda, m.vertical_count() / 2);
  } else {
    const auto& ib = std::get<Inhomogeneous>(w.bias);
    if (static_cast<int>(ib.lambda.size()) != 2 * n - 1 || static_cast<int>(ib.mu.size()) != 2 * n - 1)
      fail(ErrorKind::SizeMismatch, "bias vectors must have length 2n-1");
    std::vector<int> rows(2 * n - 1, 0), cols(2 * n - 1, 0);
    for (const Edge& e : m.dimers()) {
      int label = g.edge_label(e) + n - 1;
      (g.is_vertical(e) ? rows : cols)[label]++;
    }
    for (int a = 0; a < 2 * n - 1; ++a) {
      if (rows[a] % 2 || cols[a] % 2) fail(ErrorKind::Internal, "odd dimer count in a row or column");
      if (rows[a]) bias *= pow(ib.lambda[a], rows[a] / 2);
      if (cols[a]) bias *= pow(ib.mu[a], cols[a] / 2);
    }
  }
  return num * bias / den;
}

Scalar partition_brute(const AztecWeighting& w) {
  AztecGraph g(w.n());
  check_order(g.n());
  Scalar total;
  for_each_matching(g, [&](const PerfectMatching& m) { total += matching_weight(g, m, w); });
  return total;
}

// ---------------------------------------------------------------- ASM pairs

AsmPair matching_to_asm_pair(const AztecGraph& g, const PerfectMatching& m) {
  int n = g.n();
  IntMatrix b(n + 1, n + 1), bp(n, n);
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j) b(i - 1, j - 1) = 1 - m.face_count(g.p_face(i, j));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) bp(i - 1, j - 1) = m.face_count(g.q_face(i, j)) - 1;
  try {
    return {Asm::validate(b), Asm::validate(bp)};
  } catch (const Error& e) {
    fail(ErrorKind::Internal, std::string("matching does not yield an ASM pair: ") + e.what());
  }
}

namespace {

struct PairSearch {
  const AztecGraph& g;
  std::vector<int> target, count, open;  // by face index
  std::vector<std::vector<int>> vertex_faces;
  std::vector<char> covered;
  std::vector<Edge> chosen;
  std::optional<std::vector<Edge>> found;

  bool place(const Edge& e, int d) {
    bool ok = true;
    for (const Face& f : g.edge_faces(e)) {
      int fi = g.face_index(f);
      count[fi] += d;
      if (count[fi] > target[fi]) ok = false;
    }
    for (int v : {e.a, e.b})
      for (int fi : vertex_faces[v]) {
        open[fi] -= d;
        if (open[fi] == 0 && count[fi] != target[fi]) ok = false;
      }
    return ok;
  }

  void rec(int start) {
    if (found) return;
    int V = static_cast<int>(covered.size());
    while (start < V && covered[start]) ++start;
    if (start == V) {
      found = chosen;
      return;
    }
    for (auto [w, ei] : g.forward_edges(start)) {
      if (covered[w]) continue;
      const Edge& e = g.edges()[ei];
      covered[start] = covered[w] = 1;
      chosen.push_back(e);
      if (place(e, 1)) rec(start + 1);
      place(e, -1);
      chosen.pop_back();
      covered[start] = covered[w] = 0;
      if (found) return;
    }
  }
};

}  // namespace

PerfectMatching asm_pair_to_matching(const AztecGraph& g, const Asm& b, const Asm& bp) {
  int n = g.n();
  if (b.n() != n + 1 || bp.n() != n) fail(ErrorKind::SizeMismatch, "ASM orders must be n+1 and n");
  if (!compatible(b, bp)) fail(ErrorKind::Incompatible, "pair violates the corner-sum sandwich");
  std::size_t F = g.faces().size();
  PairSearch s{g, std::vector<int>(F), std::vector<int>(F, 0), std::vector<int>(F, 0), {}, {}, {}, {}};
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j) s.target[g.face_index(g.p_face(i, j))] = 1 - b.at(i, j);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) s.target[g.face_index(g.q_face(i, j))] = 1 + bp.at(i, j);
  s.vertex_faces.resize(g.vertices().size());
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    auto [x2, y2] = g.vertices()[v];
    for (int dx : {-1, 1})
      for (int dy : {-1, 1}) {
        Face f{(x2 + dx) / 2, (y2 + dy) / 2};
        if (std::abs(f.k) + std::abs(f.l) > n) continue;
        int fi = g.face_index(f);
        s.vertex_faces[v].push_back(fi);
        ++s.open[fi];
      }
  }
  s.covered.assign(g.vertices().size(), 0);
  s.rec(0);
  if (!s.found) fail(ErrorKind::Internal, "no matching realizes a compatible pair");
  return PerfectMatching(g, *s.found);
}

// ---------------------------------------------------------------- I/O

nlohmann::json to_json(const AztecGraph& g, const PerfectMatching& m) {
  nlohmann::json dimers = nlohmann::json::array();
  for (const Edge& e : m.dimers()) {
    const Vertex &a = g.vertices()[e.a], &b = g.vertices()[e.b];
    dimers.push_back({{a.x2 / 2.0, a.y2 / 2.0}, {b.x2 / 2.0, b.y2 / 2.0}});
  }
  return {{"n", g.n()}, {"dimers", dimers}};
}

PerfectMatching matching_from_json(const AztecGraph& g, const nlohmann::json& j) {
  if (j.at("n").get<int>() != g.n()) fail(ErrorKind::OrderMismatch, "matching order differs from graph");
  std::vector<Edge> dimers;
  for (const auto& d : j.at("dimers")) {
    auto coord = [](const nlohmann::json& x) { return static_cast<int>(std::lround(2 * x.get<double>())); };
    auto e = g.edge_between(coord(d[0][0]), coord(d[0][1]), coord(d[1][0]), coord(d[1][1]));
    if (!e) fail(ErrorKind::ParseError, "dimer is not an edge of the Aztec graph");
    dimers.push_back(*e);
  }
  try {
    return PerfectMatching(g, std::move(dimers));
  } catch (const Error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

std::string render_svg(const AztecGraph& g, const PerfectMatching& m, const SvgOptions& opt) {
  int n = g.n();
  double c = opt.cell, size = 2 * n * c + 2 * c;
  auto X = [&](double u) { return (u + n) * c + c; };
  auto Y = [&](double v) { return (n - v) * c + c; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const char* colors[4] = {"#4caf50", "#2e7d32", "#42a5f5", "#1565c0"};
  for (const Edge& e : m.dimers()) {
    const Vertex &a = g.vertices()[e.a], &b = g.vertices()[e.b];
    double u0 = std::min(a.x2, b.x2) / 2.0 - 0.5, u1 = std::max(a.x2, b.x2) / 2.0 + 0.5;
    double v0 = std::min(a.y2, b.y2) / 2.0 - 0.5, v1 = std::max(a.y2, b.y2) / 2.0 + 0.5;
    bool vert = g.is_vertical(e);
    int parity = ((g.edge_label(e) + n) % 2 + 2) % 2;
    os << "<rect x=\"" << X(u0) << "\" y=\"" << Y(v1) << "\" width=\"" << (u1 - u0) * c << "\" height=\""
       << (v1 - v0) * c << "\" fill=\"" << colors[(vert ? 2 : 0) + parity]
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    if (opt.show_dimers) {
      os << "<line x1=\"" << X(a.x2 / 2.0) << "\" y1=\"" << Y(a.y2 / 2.0) << "\" x2=\"" << X(b.x2 / 2.0)
         << "\" y2=\"" << Y(b.y2 / 2.0) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
  }
  if (opt.show_faces) {
    for (const Face& f : g.faces()) {
      os << "<text x=\"" << X(f.k) << "\" y=\"" << Y(f.l) + 3 << "\" font-size=\"" << c / 3
         << "\" text-anchor=\"middle\" fill=\"" << (g.is_p_face(f) ? "#b71c1c" : "#4a148c") << "\">"
         << 1 - m.face_count(f) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lambdet
