#include <set>

#include "doctest.h"
#include "lambdet/aztec.hpp"
#include "lambdet/error.hpp"
#include "support.hpp"

using namespace lambdet;
using testing_support::S;

namespace {

struct Seg {
  double x0, y0, x1, y1;
};

PerfectMatching from_segments(const AztecGraph& g, const std::vector<Seg>& segs) {
  std::vector<Edge> dimers;
  for (auto s : segs) {
    auto e = g.edge_between(int(2 * s.x0), int(2 * s.y0), int(2 * s.x1), int(2 * s.y1));
    REQUIRE(e);
    dimers.push_back(*e);
  }
  return PerfectMatching(g, dimers);
}

std::string face_name(int k, int l) {
  auto part = [](int v) { return v < 0 ? "m" + std::to_string(-v) : std::to_string(v); };
  return "x_" + part(k) + "_" + part(l);
}

AztecWeighting face_variables(const AztecGraph& g, const Scalar& lambda) {
  int n = g.n();
  AztecWeighting w{SquareMatrix(n + 1, n + 1), SquareMatrix(n, n), Homogeneous{lambda}};
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j) {
      Face f = g.p_face(i, j);
      w.P(i - 1, j - 1) = Scalar::var(face_name(f.k, f.l));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Face f = g.q_face(i, j);
      w.Q(i - 1, j - 1) = Scalar::var(face_name(f.k, f.l));
    }
  return w;
}

// Domino figure: horizontal rput at (X,Y) spans (X+.5,Y+.5)-(X+1.5,Y+.5),
// vertical spans (X+.5,Y+.5)-(X+.5,Y+1.5); centre (6,6).
PerfectMatching fig5(const AztecGraph& g) {
  std::vector<std::pair<int, int>> hor{{5, 10}, {4, 9}, {6, 9}, {5, 8}, {7, 8}, {6, 7}, {6, 6}, {5, 1},
                                       {6, 2},  {7, 3}, {5, 5}, {2, 5}, {2, 4}, {3, 6}, {3, 3}, {4, 2}};
  std::vector<std::pair<int, int>> ver{{4, 7}, {2, 6}, {1, 5}, {10, 5}, {9, 6}, {8, 6}, {5, 6},
                                       {3, 7}, {9, 4}, {7, 4}, {8, 4},  {6, 3}, {4, 4}, {5, 3}};
  std::vector<Seg> segs;
  for (auto [x, y] : hor) segs.push_back({x + .5 - 6, y + .5 - 6, x + 1.5 - 6, y + .5 - 6});
  for (auto [x, y] : ver) segs.push_back({x + .5 - 6, y + .5 - 6, x + .5 - 6, y + 1.5 - 6});
  return from_segments(g, segs);
}

IntMatrix rows(std::initializer_list<std::initializer_list<int>> r) {
  IntMatrix m(r.size(), r.size());
  int i = 0;
  for (auto row : r) {
    int j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("graph shape") {
  for (int n = 1; n <= 5; ++n) {
    AztecGraph g(n);
    CHECK(g.vertices().size() == std::size_t(2 * n * (n + 1)));
    CHECK(g.faces().size() == std::size_t(n * n + (n + 1) * (n + 1)));
    int p = 0;
    for (const Face& f : g.faces()) {
      CHECK(g.face_index(f) == &f - g.faces().data());
      auto [i, j] = g.matrix_position(f);
      if (g.is_p_face(f)) {
        ++p;
        CHECK(g.p_face(i, j) == f);
      } else {
        CHECK(g.q_face(i, j) == f);
      }
    }
    CHECK(p == (n + 1) * (n + 1));
  }
  AztecGraph g(2);
  CHECK(g.p_face(1, 1) == Face{-2, 0});
  CHECK(g.q_face(1, 1) == Face{-1, 0});
  CHECK(g.vertices().front() == Vertex{-1, 3});
}

TEST_CASE("matching counts") {
  for (int n = 1; n <= 5; ++n) {
    long count = 0;
    for_each_matching(AztecGraph(n), [&](const PerfectMatching&) { ++count; });
    CHECK(count == 1L << (n * (n + 1) / 2));
  }
  CHECK_THROWS_AS(enumerate_matchings(6), Error);
}

TEST_CASE("weighted matching of the n=3 figure") {
  AztecGraph g(3);
  auto m = from_segments(g, {{2.5, 0.5, 2.5, -0.5},
                             {0.5, 0.5, 1.5, 0.5},
                             {0.5, 1.5, 1.5, 1.5},
                             {-0.5, 2.5, 0.5, 2.5},
                             {-0.5, 1.5, -0.5, 0.5},
                             {-1.5, 1.5, -1.5, 0.5},
                             {-2.5, 0.5, -2.5, -0.5},
                             {-0.5, -0.5, -1.5, -0.5},
                             {-0.5, -1.5, -1.5, -1.5},
                             {-0.5, -2.5, 0.5, -2.5},
                             {0.5, -1.5, 0.5, -0.5},
                             {1.5, -1.5, 1.5, -0.5}});
  auto w = face_variables(g, Scalar(1));
  Scalar expect = S("x_1_m2*x_m2_m1*x_0_0*x_2_1*x_m1_2/(x_m1_m1*x_1_m1*x_m1_1*x_1_1)");
  CHECK(matching_weight(g, m, w) == expect);
  CHECK(m.vertical_count() == 6);
  CHECK(matching_weight(g, m, face_variables(g, S("lambda"))) == expect * pow(S("lambda"), 3));
}

TEST_CASE("n=5 figure gives the expected ASM pair") {
  AztecGraph g(5);
  auto m = fig5(g);
  auto [b, bp] = matching_to_asm_pair(g, m);
  CHECK(b.entries() == rows({{0, 0, 0, 1, 0, 0},
                             {1, 0, 0, 0, 0, 0},
                             {0, 0, 1, 0, 0, 0},
                             {0, 0, 0, 0, 0, 1},
                             {0, 1, 0, -1, 1, 0},
                             {0, 0, 0, 1, 0, 0}}));
  CHECK(bp.entries() == rows({{0, 0, 1, 0, 0}, {1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 1, 0, -1, 1}, {0, 0, 0, 1, 0}}));
  CHECK(asm_pair_to_matching(g, b, bp) == m);
}

TEST_CASE("n=2 generating function term by term") {
  AztecGraph g(2);
  AztecWeighting w{symbolic_matrix("p", 3), symbolic_matrix("q", 2), Homogeneous{S("lambda")}};
  std::multiset<std::string> terms;
  for (const auto& m : enumerate_matchings(2)) terms.insert(to_string(matching_weight(g, m, w)));
  std::multiset<std::string> expect;
  for (const char* t : {"p_1_1*p_2_2*p_3_3/(q_1_1*q_2_2)", "lambda*p_1_2*p_2_1*p_3_3/(q_1_1*q_2_2)",
                        "lambda*p_1_1*p_2_3*p_3_2/(q_1_1*q_2_2)", "lambda^2*p_1_2*p_2_3*p_3_1/(q_1_2*q_2_1)",
                        "lambda^2*p_1_3*p_2_1*p_3_2/(q_1_2*q_2_1)", "lambda^3*p_1_3*p_2_2*p_3_1/(q_1_2*q_2_1)",
                        "lambda*p_1_2*p_2_1*p_2_3*p_3_2/(p_2_2*q_1_2*q_2_1)",
                        "lambda^2*p_1_2*p_2_1*p_2_3*p_3_2/(p_2_2*q_1_1*q_2_2)"})
    expect.insert(to_string(S(t)));
  CHECK(terms == expect);
}

TEST_CASE("inhomogeneous n=2 bias") {
  AztecGraph g(2);
  std::vector<Scalar> la{S("l_m1"), S("l_0"), S("l_1")}, mu{S("m_m1"), S("m_0"), S("m_1")};
  AztecWeighting w{symbolic_matrix("p", 3), symbolic_matrix("q", 2), Inhomogeneous{la, mu}};
  Scalar expect = S(
      "m_m1*m_0*m_1*p_1_1*p_2_2*p_3_3/(q_1_1*q_2_2) + l_0*m_0*m_1*p_1_2*p_2_1*p_3_3/(q_1_1*q_2_2)"
      " + l_0*m_m1*m_0*p_1_1*p_2_3*p_3_2/(q_1_1*q_2_2) + l_m1*l_0*m_0*p_1_2*p_2_3*p_3_1/(q_1_2*q_2_1)"
      " + l_0*l_1*m_0*p_1_3*p_2_1*p_3_2/(q_1_2*q_2_1) + l_m1*l_0*l_1*p_1_3*p_2_2*p_3_1/(q_1_2*q_2_1)"
      " + l_0*m_0^2*p_1_2*p_2_1*p_2_3*p_3_2/(p_2_2*q_1_2*q_2_1)"
      " + l_0^2*m_0*p_1_2*p_2_1*p_2_3*p_3_2/(p_2_2*q_1_1*q_2_2)");
  CHECK(partition_brute(w) == expect);
}

TEST_CASE("bijection with compatible pairs") {
  for (int n = 1; n <= 4; ++n) {
    AztecGraph g(n);
    auto ms = enumerate_matchings(n);
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (const auto& m : ms) {
      auto [b, bp] = matching_to_asm_pair(g, m);
      CHECK(compatible(b, bp));
      CHECK(m.vertical_count() % 2 == 0);
      CHECK(asm_pair_to_matching(g, b, bp) == m);
      auto key = [](const Asm& a) { return std::vector<int>(a.entries().data(), a.entries().data() + a.entries().size()); };
      seen.insert({key(b), key(bp)});
    }
    CHECK(seen.size() == ms.size());
    long pairs = 0;
    for_each_asm(n + 1, [&](const Asm& b) { pairs += long(compatible_set(b, Direction::Smaller).size()); });
    CHECK(pairs == long(ms.size()));
  }
  AztecGraph g(2);
  Asm anti = Asm::validate(rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  CHECK_THROWS_AS(asm_pair_to_matching(g, anti, Asm::identity(2)), Error);
}

TEST_CASE("vertical dimer count matches inversion statistics") {
  AztecGraph g(3);
  for (const auto& m : enumerate_matchings(3)) {
    auto [b, bp] = matching_to_asm_pair(g, m);
    long lowest = compatible_set(b, Direction::Smaller).front().m.corner().total();
    CHECK(m.vertical_count() / 2 == b.stats().p_exp + (bp.corner().total() - lowest));
  }
}

TEST_CASE("json round trip and svg") {
  AztecGraph g(5);
  auto m = fig5(g);
  CHECK(matching_from_json(g, to_json(g, m)) == m);
  auto svg = render_svg(g, m, {24.0, true, true});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  nlohmann::json bad = {{"n", 1}, {"dimers", {{{-0.5, 0.5}, {0.5, -0.5}}}}};
  CHECK_THROWS_AS(matching_from_json(AztecGraph(1), bad), Error);
}
