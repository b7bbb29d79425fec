// lambdet: command-line front end.
//
// Results go to stdout, as plain text by default or as one JSON record
// with --format json. Any failure prints {"error": kind, "message": ...}
// to stdout and exits with status 2; verify exits 1 when a check fails.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "lambdet/applications.hpp"
#include "lambdet/asm.hpp"
#include "lambdet/aztec.hpp"
#include "lambdet/condense.hpp"
#include "lambdet/error.hpp"
#include "lambdet/periodic.hpp"
#include "lambdet/rr.hpp"
#include "lambdet/shuffle.hpp"

using namespace lambdet;
using nlohmann::json;

namespace {

struct Output {
  std::string format = "text";
  bool json_mode() const { return format == "json"; }
};

Output out;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

SquareMatrix read_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }

// Comma-separated Scalar expressions.
std::vector<Scalar> parse_vector(const std::string& text) {
  std::vector<Scalar> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_scalar(item));
  return v;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) fail(ErrorKind::ParseError, "cannot write " + path);
  f << body;
}

std::string matrix_text(const SquareMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
    os << '\n';
  }
  return os.str();
}

void emit(const std::string& command, const json& record, const std::string& text) {
  if (out.json_mode()) {
    json r = record;
    r["command"] = command;
    std::cout << r.dump() << '\n';
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

std::string poly_text(const std::vector<Integer>& c, const std::string& x) {
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    if (!s.empty()) s += " + ";
    std::string coef = c[k].get_str();
    if (k == 0) s += coef;
    else {
      if (c[k] != 1) s += coef + "*";
      s += x;
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s.empty() ? "0" : s;
}

RrForm parse_form(const std::string& f) {
  if (f == "min") return RrForm::Min;
  if (f == "max") return RrForm::Max;
  if (f == "corner") return RrForm::Corner;
  fail(ErrorKind::ParseError, "form must be min, max or corner");
}

Scalar random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 9), sign(0, 1);
  return Scalar(num(rng) * (sign(rng) ? 1L : -1L), den(rng));
}

SquareMatrix random_matrix(std::mt19937& rng, int n) {
  SquareMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = random_rational(rng);
  return m;
}

// ---------------------------------------------------------------- det

struct DetArgs {
  std::string matrix, q, lambda = "1", lambda_vector, mu_vector;
  bool trace = false;
};

void run_det(const DetArgs& a) {
  SquareMatrix p = read_matrix(a.matrix);
  std::optional<SquareMatrix> q;
  if (!a.q.empty()) q = read_matrix(a.q);
  json rec;
  Scalar value;
  std::string text;
  if (!a.lambda_vector.empty() || !a.mu_vector.empty()) {
    const std::size_t len = p.rows() > 1 ? static_cast<std::size_t>(2 * p.rows() - 3) : 0;
    std::vector<Scalar> ls = a.lambda_vector.empty() ? std::vector<Scalar>(len, Scalar(1)) : parse_vector(a.lambda_vector);
    std::vector<Scalar> ms = a.mu_vector.empty() ? std::vector<Scalar>(len, Scalar(1)) : parse_vector(a.mu_vector);
    value = lambda_mu_det(p, ls, ms, q);
  } else {
    Scalar lambda = parse_scalar(a.lambda);
    std::vector<SquareMatrix> trace;
    CondenseOptions opt;
    if (a.trace) opt.trace = &trace;
    value = q ? cond_pq(p, *q, lambda, opt) : lambda_det(p, lambda, opt);
    if (a.trace) {
      json steps = json::array();
      for (std::size_t k = 0; k < trace.size(); ++k) {
        steps.push_back(to_json(trace[k]));
        text += "A_" + std::to_string(k) + ":\n" + matrix_text(trace[k]);
      }
      rec["trace"] = steps;
    }
  }
  rec["value"] = to_string(value);
  emit("det", rec, text + to_string(value));
}

// ---------------------------------------------------------------- rr

void run_rr(const std::string& matrix, const std::string& qfile, const std::string& lambda, const std::string& form) {
  SquareMatrix p = read_matrix(matrix);
  SquareMatrix q = qfile.empty() ? ones(p.rows() - 1) : read_matrix(qfile);
  Scalar v = rr_general(p, q, parse_scalar(lambda), parse_form(form));
  emit("rr", {{"value", to_string(v)}, {"form", form}}, to_string(v));
}

// ---------------------------------------------------------------- shuffle

void run_shuffle(const std::string& pf, const std::string& qf, const std::string& lambda, int steps) {
  auto [p, q] = shuffle(read_matrix(pf), read_matrix(qf), parse_scalar(lambda), steps);
  emit("shuffle", {{"P", to_json(p)}, {"Q", to_json(q)}, {"steps", steps}},
       "P:\n" + matrix_text(p) + "Q:\n" + matrix_text(q));
}

// ---------------------------------------------------------------- periodic

struct PeriodicArgs {
  std::string a, b, lambda;
  int n = 0;
  bool somos = false, elliptic = false;
  int periodicity = 0, closed = 0;
};

void run_periodic(const PeriodicArgs& args) {
  json rec;
  std::ostringstream text;
  text << std::boolalpha;
  if (args.periodicity) {
    PeriodicityPolynomial pp = periodicity_polynomial(args.periodicity);
    json rows = json::array();
    for (const auto& row : pp.coeffs) {
      json r = json::array();
      for (const Rational& c : row) r.push_back(c.get_str());
      rows.push_back(r);
    }
    rec["periodicity"] = {{"p", pp.p}, {"poly", to_string(pp.poly)}, {"tau_coeffs", rows}};
    text << "periodicity " << pp.p << ": " << to_string(pp.poly) << '\n';
  }
  if (!args.a.empty() || !args.b.empty() || !args.lambda.empty()) {
    if (args.a.empty() || args.b.empty() || args.lambda.empty())
      fail(ErrorKind::ParseError, "--a, --b and --lambda go together");
    Scalar a = parse_scalar(args.a), b = parse_scalar(args.b), lambda = parse_scalar(args.lambda);
    const int n = std::max(args.n, 1);
    std::vector<Scalar> r = rk_sequence(lambda, a / b, n);
    json rj = json::array();
    for (const Scalar& x : r) rj.push_back(to_string(x));
    Scalar tn = tn_biased_product(n, a, b, lambda);
    rec["r"] = rj;
    rec["T_n"] = to_string(tn);
    rec["n"] = n;
    text << "T_" << n << " = " << to_string(tn) << '\n';
    if (args.closed) {
      Scalar c = tn_periodic_closed(args.closed, n, a, b, lambda);
      rec["closed"] = to_string(c);
      text << "closed form (p = " << args.closed << ") = " << to_string(c) << '\n';
    }
    if (args.somos) {
      SomosResult<Scalar> s = somos4_check(a, b, lambda, std::max(n, 8));
      rec["somos"] = {{"alpha", to_string(s.alpha)}, {"beta", to_string(s.beta)}, {"holds", s.holds()}};
      text << "somos-4: alpha = " << to_string(s.alpha) << ", beta = " << to_string(s.beta)
           << (s.holds() ? ", holds" : ", fails") << '\n';
    }
    if (args.elliptic) {
      EllipticFlow f = elliptic_flow(lambda, a / b, n);
      json pts = json::array();
      for (const auto& p : f.points) pts.push_back({to_string(p.x), to_string(p.y)});
      rec["elliptic"] = {{"points", pts}, {"on_curve", f.on_curve}, {"matches_r", f.matches_r}, {"inversion", f.inversion}};
      text << "elliptic flow: on curve " << f.on_curve << ", x_k = -r_k^2 " << f.matches_r << '\n';
    }
  }
  if (rec.empty()) fail(ErrorKind::ParseError, "periodic needs --periodicity or --a/--b/--lambda");
  emit("periodic", rec, text.str());
}

// ---------------------------------------------------------------- apps

std::string fraction_text(const FractionTriple& f) {
  return f.p0.get_str() + " " + f.p1.get_str() + " " + f.p2.get_str();
}

// First enumerated matching that passes the filter.
std::optional<PerfectMatching> witness(const AztecGraph& g, const std::function<bool(const PerfectMatching&)>& keep) {
  std::optional<PerfectMatching> found;
  for_each_matching(g, [&](const PerfectMatching& m) {
    if (!found && keep(m)) found = m;
  });
  return found;
}

void maybe_svg(const std::string& path, const AztecGraph& g, const std::optional<PerfectMatching>& m) {
  if (path.empty()) return;
  if (!m) fail(ErrorKind::Internal, "no witness matching");
  write_file(path, render_svg(g, *m));
}

void run_apps(const std::string& which, int n, int l, const std::string& lambda_text, int dimers, const std::string& svg) {
  Scalar lambda = parse_scalar(lambda_text);
  if (which == "square") {
    Scalar z = square_grid_partition(n, lambda);
    if (!svg.empty()) {
      AztecGraph g(2 * n - 1);
      AztecWeighting w{square_grid_matrix(n), ones(2 * n - 1), Homogeneous{Scalar(1)}};
      maybe_svg(svg, g, witness(g, [&](const PerfectMatching& m) { return !matching_weight(g, m, w).is_zero(); }));
    }
    emit("apps", {{"app", which}, {"n", n}, {"value", to_string(z)}}, to_string(z));
  } else if (which == "fibonacci") {
    Scalar z = fibonacci_det(n, lambda);
    emit("apps", {{"app", which}, {"n", n}, {"value", to_string(z)}}, to_string(z));
  } else if (which == "refined") {
    Scalar z = refined_nw(n, l, lambda);
    emit("apps", {{"app", which}, {"n", n}, {"l", l}, {"value", to_string(z)}, {"two_enumeration", two_enum_refined(n, l).get_str()}},
         to_string(z));
  } else if (which == "holey") {
    FractionTriple f = holey_fractions(n);
    json two = json::array();
    for (int i = 0; i <= 2; ++i) two.push_back(two_enum_holey(n, i).get_str());
    if (!svg.empty()) {
      AztecGraph g(n);
      maybe_svg(svg, g, witness(g, [&](const PerfectMatching& m) { return m.face_count({0, 0}) == dimers; }));
    }
    emit("apps",
         {{"app", which}, {"n", n}, {"p0", f.p0.get_str()}, {"p1", f.p1.get_str()}, {"p2", f.p2.get_str()}, {"two_enumeration", two}},
         fraction_text(f));
  } else if (which == "gn") {
    GnPolynomial g = gn_polynomial(n);
    json c = json::array();
    for (const Integer& x : g.coeffs) c.push_back(x.get_str());
    emit("apps", {{"app", which}, {"n", n}, {"coeffs", c}, {"asm_checked", g.asm_checked}}, poly_text(g.coeffs, "x"));
  } else {
    fail(ErrorKind::ParseError, "unknown application " + which);
  }
}

// ---------------------------------------------------------------- asm

void run_asm(int n, bool count_only, const std::string& validate) {
  if (!validate.empty()) {
    Asm b = asm_from_json(read_json_file(validate));
    const AsmStats& s = b.stats();
    emit("asm", {{"asm", to_json(b)}, {"n_minus", s.n_minus}, {"n_plus", s.n_plus}, {"inv", s.inv}, {"p", s.p_exp}},
         sign_grid(b) + "N- = " + std::to_string(s.n_minus) + ", P = " + std::to_string(s.p_exp));
    return;
  }
  if (count_only) {
    long c = 0;
    for_each_asm(n, [&](const Asm&) { ++c; });
    emit("asm", {{"n", n}, {"count", c}}, std::to_string(c));
    return;
  }
  json list = json::array();
  std::string text;
  for (const Asm& b : enumerate_asm(n)) {
    list.push_back(to_json(b));
    text += sign_grid(b) + "\n";
  }
  emit("asm", {{"n", n}, {"asms", list}}, text);
}

// ---------------------------------------------------------------- matchings

void run_matchings(int n, bool count_only, int index, bool to_asm, const std::string& svg) {
  AztecGraph g(n);
  if (count_only) {
    long c = 0;
    for_each_matching(g, [&](const PerfectMatching&) { ++c; });
    emit("matchings", {{"n", n}, {"count", c}}, std::to_string(c));
    return;
  }
  std::optional<PerfectMatching> m;
  long k = 0;
  for_each_matching(g, [&](const PerfectMatching& x) {
    if (k++ == index) m = x;
  });
  if (!m) fail(ErrorKind::SizeMismatch, "matching index out of range");
  maybe_svg(svg, g, m);
  json rec = {{"matching", to_json(g, *m)}, {"index", index}};
  std::string text = rec["matching"].dump();
  if (to_asm) {
    AsmPair pr = matching_to_asm_pair(g, *m);
    rec["B"] = to_json(pr.b);
    rec["Bp"] = to_json(pr.bp);
    text += "\nB:\n" + sign_grid(pr.b) + "B':\n" + sign_grid(pr.bp);
  }
  emit("matchings", rec, text);
}

// ---------------------------------------------------------------- verify

struct Checker {
  int passed = 0, failed = 0;
  json lines = json::array();
  void check(const std::string& name, bool ok) {
    ok ? ++passed : ++failed;
    lines.push_back({{"check", name}, {"pass", ok}});
    if (!out.json_mode()) std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
  }
};

void suite_oracle(Checker& c, int max_order, int trials, std::mt19937& rng) {
  for (int n = 1; n <= max_order; ++n)
    for (int t = 0; t < trials; ++t) {
      AztecWeighting w{random_matrix(rng, n + 1), random_matrix(rng, n), Homogeneous{random_rational(rng)}};
      const Scalar& lambda = std::get<Homogeneous>(w.bias).lambda;
      Scalar brute = partition_brute(w), cond = cond_pq(w.P, w.Q, lambda);
      bool ok = brute == cond;
      for (RrForm f : {RrForm::Min, RrForm::Max, RrForm::Corner}) ok = ok && rr_general(w.P, w.Q, lambda, f) == brute;
      c.check("oracle n=" + std::to_string(n) + " trial=" + std::to_string(t), ok);
    }
}

void suite_counting(Checker& c, int max_order) {
  const long asm_counts[] = {1, 2, 7, 42, 429, 7436, 218348};
  for (int n = 1; n <= max_order && n <= matching_bound(); ++n) {
    long m = 0;
    for_each_matching(AztecGraph(n), [&](const PerfectMatching&) { ++m; });
    c.check("matchings n=" + std::to_string(n), m == (1L << (n * (n + 1) / 2)));
  }
  for (int n = 1; n <= max_order + 1 && n <= 7; ++n) {
    long a = 0;
    for_each_asm(n, [&](const Asm&) { ++a; });
    c.check("asm n=" + std::to_string(n), a == asm_counts[n - 1]);
  }
}

void suite_compat(Checker& c, int max_order) {
  Scalar lambda = Scalar::var("lambda");
  for (int n = 1; n <= max_order; ++n) {
    bool ok = true;
    for (const Asm& b : enumerate_asm(n + 1)) {
      Scalar s;
      for (const auto& cp : compatible_set(b, Direction::Smaller)) s += pow(lambda, cp.delta);
      ok = ok && s == pow(Scalar(1) + lambda, b.stats().n_minus);
    }
    for (const Asm& bp : enumerate_asm(n)) {
      Scalar s;
      for (const auto& cb : compatible_set(bp, Direction::Larger)) s += pow(lambda, cb.delta);
      ok = ok && s == pow(Scalar(1) + lambda, bp.stats().n_plus);
    }
    c.check("compatible sums n=" + std::to_string(n), ok);
  }
}

int run_verify(const std::string& suite, int max_order, int trials, unsigned seed) {
  if (max_order < 1) fail(ErrorKind::SizeMismatch, "max-order must be positive");
  if (suite != "all" && suite != "oracle" && suite != "counting" && suite != "compat")
    fail(ErrorKind::ParseError, "suite must be all, oracle, counting or compat");
  Checker c;
  std::mt19937 rng(seed);
  if (suite == "all" || suite == "oracle") suite_oracle(c, max_order, trials, rng);
  if (suite == "all" || suite == "counting") suite_counting(c, max_order);
  if (suite == "all" || suite == "compat") suite_compat(c, max_order);
  if (out.json_mode())
    std::cout << json{{"command", "verify"}, {"suite", suite}, {"passed", c.passed}, {"failed", c.failed}, {"checks", c.lines}}.dump()
              << '\n';
  else
    std::cout << c.passed << " passed, " << c.failed << " failed\n";
  return c.failed ? 1 : 0;
}

void error_record(const std::string& kind, const std::string& message) {
  std::cout << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lambda-determinants, Aztec diamonds and alternating sign matrices"};
  app.require_subcommand(1);
  app.add_option("--format", out.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  DetArgs det;
  auto* c_det = app.add_subcommand("det", "lambda-determinant, cond_pq or the inhomogeneous version");
  c_det->add_option("--matrix", det.matrix, "matrix JSON")->required();
  c_det->add_option("--q", det.q, "Q matrix JSON");
  c_det->add_option("--lambda", det.lambda, "bias expression");
  c_det->add_option("--lambda-vector", det.lambda_vector, "comma-separated lambda_a, a = -(n-1)..n-1");
  c_det->add_option("--mu-vector", det.mu_vector, "comma-separated mu_b");
  c_det->add_flag("--trace", det.trace, "print every condensation step");

  std::string rr_matrix, rr_q, rr_lambda = "1", rr_form = "min";
  auto* c_rr = app.add_subcommand("rr", "Robbins-Rumsey sum over ASMs");
  c_rr->add_option("--matrix", rr_matrix, "P matrix JSON")->required();
  c_rr->add_option("--q", rr_q, "Q matrix JSON (default all ones)");
  c_rr->add_option("--lambda", rr_lambda, "bias expression");
  c_rr->add_option("--form", rr_form, "min, max or corner");

  std::string sh_p, sh_q, sh_lambda = "1";
  int sh_steps = 1;
  auto* c_sh = app.add_subcommand("shuffle", "apply shuffling steps to (P, Q)");
  c_sh->add_option("--p", sh_p, "P matrix JSON")->required();
  c_sh->add_option("--q", sh_q, "Q matrix JSON")->required();
  c_sh->add_option("--lambda", sh_lambda, "bias expression");
  c_sh->add_option("--steps", sh_steps, "number of steps");

  PeriodicArgs per;
  auto* c_per = app.add_subcommand("periodic", "two-periodic diamonds with vertical bias");
  c_per->add_option("--a", per.a);
  c_per->add_option("--b", per.b);
  c_per->add_option("--lambda", per.lambda);
  c_per->add_option("--n", per.n, "order");
  c_per->add_flag("--check-somos", per.somos);
  c_per->add_flag("--check-elliptic", per.elliptic);
  c_per->add_option("--periodicity", per.periodicity, "print the period-p condition");
  c_per->add_option("--closed", per.closed, "closed form for p = 3, 6 or 8");

  std::string app_which, app_lambda = "1", app_svg;
  int app_n = 1, app_l = 0, app_dimers = 2;
  auto* c_apps = app.add_subcommand("apps", "square, fibonacci, refined, holey or gn");
  c_apps->add_option("app", app_which, "which application")->required();
  c_apps->add_option("--n", app_n, "order");
  c_apps->add_option("--l", app_l, "NW boundary count (refined)");
  c_apps->add_option("--lambda", app_lambda, "bias expression");
  c_apps->add_option("--dimers", app_dimers, "central-face dimers of the holey witness");
  c_apps->add_option("--svg", app_svg, "write a witness matching as SVG (square, holey)");

  int asm_n = 3;
  bool asm_count = false;
  std::string asm_validate;
  auto* c_asm = app.add_subcommand("asm", "list, count or validate alternating sign matrices");
  c_asm->add_option("--n", asm_n, "order");
  c_asm->add_flag("--count", asm_count);
  c_asm->add_option("--validate", asm_validate, "ASM JSON to check");

  int m_n = 2, m_index = 0;
  bool m_count = false, m_asm = false;
  std::string m_svg;
  auto* c_m = app.add_subcommand("matchings", "perfect matchings of the Aztec graph");
  c_m->add_option("--n", m_n, "order");
  c_m->add_flag("--count", m_count);
  c_m->add_option("--index", m_index, "which matching in scan order");
  c_m->add_flag("--to-asm", m_asm, "print the ASM pair");
  c_m->add_option("--svg", m_svg, "write the matching as SVG");

  std::string v_suite = "all";
  int v_order = 4, v_trials = 25;
  unsigned v_seed = 1;
  auto* c_v = app.add_subcommand("verify", "oracle suites");
  c_v->add_option("--suite", v_suite, "all, oracle, counting or compat");
  c_v->add_option("--max-order", v_order);
  c_v->add_option("--trials", v_trials);
  c_v->add_option("--seed", v_seed);

  std::cout << std::boolalpha;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_record("ParseError", e.what());
    return 2;
  }

  try {
    if (*c_det) run_det(det);
    else if (*c_rr) run_rr(rr_matrix, rr_q, rr_lambda, rr_form);
    else if (*c_sh) run_shuffle(sh_p, sh_q, sh_lambda, sh_steps);
    else if (*c_per) run_periodic(per);
    else if (*c_apps) run_apps(app_which, app_n, app_l, app_lambda, app_dimers, app_svg);
    else if (*c_asm) run_asm(asm_n, asm_count, asm_validate);
    else if (*c_m) run_matchings(m_n, m_count, m_index, m_asm, m_svg);
    else if (*c_v) return run_verify(v_suite, v_order, v_trials, v_seed);
  } catch (const Error& e) {
    error_record(kind_name(e.kind()), e.what());
    return 2;
  } catch (const json::exception& e) {
    error_record("ParseError", e.what());
    return 2;
  }
  return 0;
}
