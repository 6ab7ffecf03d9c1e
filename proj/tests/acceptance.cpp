// Acceptance checks: one PASS/FAIL line per criterion, tolerances fixed here.

#include "gkz/io.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace gkz;
using testdata::S;
using std::numbers::pi;

namespace {

constexpr double kMbTol = 1e-6;
constexpr double kVerifyTol = 1e-6;
constexpr double kMonotoneSlack = 1.10;
constexpr double kUnitaryTol = 1e-12;
constexpr double kTorusTol = 1e-11;
constexpr int kMbOrder = 40;

const cplx I(0.0, 1.0);

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

// gg run with JSON output parsed.
struct GgRun {
  int code;
  json doc;
};

GgRun gg(const std::string& args) {
  auto out = std::filesystem::temp_directory_path() / ("gg_accept_" + std::to_string(::getpid()));
  std::string cmd = std::string(GG_BINARY) + " " + args + " >" + out.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  std::ifstream f(out);
  std::stringstream text;
  text << f.rdbuf();
  std::filesystem::remove(out);
  GgRun r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, json()};
  r.doc = json::parse(text.str(), nullptr, false);
  return r;
}

std::string data(const char* name) { return std::string(GG_DATA_DIR) + "/" + name; }

std::vector<IndexSet> cells(std::initializer_list<std::initializer_list<int>> l) {
  std::vector<IndexSet> out;
  for (auto& c : l) out.emplace_back(c);
  return out;
}

RatVector rho(std::initializer_list<Rational> v) {
  RatVector r(v.size());
  int i = 0;
  for (const auto& x : v) r(i++) = x;
  return r;
}

Eigen::VectorXcd vec(std::initializer_list<cplx> v) {
  Eigen::VectorXcd out(v.size());
  int i = 0;
  for (auto x : v) out(i++) = x;
  return out;
}

LogPoint polar(std::initializer_list<double> mod, std::initializer_list<double> arg) {
  Eigen::VectorXd l(mod.size()), a(arg.size());
  int i = 0;
  for (double v : mod) l(i++) = std::log(v);
  i = 0;
  for (double v : arg) a(i++) = v;
  return LogPoint::from_polar(l, a);
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

int find(const std::vector<GammaSeriesSpec>& basis, const IndexSet& sigma) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].sigma == sigma && basis[i].ktilde.isZero()) return static_cast<int>(i);
  return -1;
}

int find(const std::vector<GammaSeriesSpec>& basis, const IndexSet& sigma, const IntVector& k) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].sigma == sigma && basis[i].ktilde == k) return static_cast<int>(i);
  return -1;
}

int nonzero(const std::vector<CharFraction>& row) {
  int n = 0;
  for (const auto& e : row) n += !e.is_zero();
  return n;
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx x) {
  cplx term = 1.0, sum = 1.0;
  for (int m = 0; m < 4000; ++m) {
    term *= (a + double(m)) * (b + double(m)) / ((c + double(m)) * (m + 1.0)) * x;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// 2F1 beyond the unit disc through the 1/x connection formula.
cplx hyp2f1_far(cplx a, cplx b, cplx c, double x) {
  auto G = [](cplx w) { return gamma(w); };
  const double mx = -x;
  return G(c) * G(b - a) / (G(b) * G(c - a)) * std::pow(cplx(mx), -a) * hyp2f1(a, a - c + 1.0, a - b + 1.0, 1.0 / x) +
         G(c) * G(a - b) / (G(a) * G(c - b)) * std::pow(cplx(mx), -b) * hyp2f1(b, b - c + 1.0, b - a + 1.0, 1.0 / x);
}

// Z^d / Z M by brute force: the box [0, |det|)^d meets every class, and
// v is in Z M exactly when adj(M) v = 0 mod det.
long brute_force_classes(const IntMatrix& M) {
  const Integer det = determinant(M);
  const long d = mp::abs(det).convert_to<long>();
  const int dim = static_cast<int>(M.rows());
  Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> adj(dim, dim);
  for (int i = 0; i < dim; ++i) {
    RatVector col = *solve<Rational>(to_rational(M), RatVector(RatVector::Unit(dim, i)));
    for (int r = 0; r < dim; ++r) adj(r, i) = mp::numerator(Rational(col(r) * det)).convert_to<long>();
  }
  std::vector<Eigen::VectorX<long>> classes;
  Eigen::VectorX<long> k = Eigen::VectorX<long>::Zero(dim);
  while (true) {
    bool fresh = true;
    for (const auto& r : classes) {
      Eigen::VectorX<long> w = adj * (k - r);
      if (w.unaryExpr([d](long x) { return x % d; }).isZero()) {
        fresh = false;
        break;
      }
    }
    if (fresh) classes.push_back(k);
    int i = 0;
    while (i < dim && k(i) == d - 1) k(i++) = 0;
    if (i == dim) break;
    k(i) += 1;
  }
  return static_cast<long>(classes.size());
}

// Open cone inclusion: no point of `inner` fails a strict row of `outer`.
bool cone_inside(const ConeSystem& inner, const ConeSystem& outer) {
  for (const auto& g : outer.strict) {
    ConeSystem probe = inner;
    probe.weak.push_back(-g);
    if (interior_point(probe)) return false;
  }
  return true;
}

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const std::string& title, double limit, const std::function<std::string()>& body) {
  const auto start = Clock::now();
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (ok && seconds > limit) {
    ok = false;
    detail += "; over the time limit";
  }
  failures += !ok;
  std::cout << (ok ? "PASS" : "FAIL") << " " << id << " " << title << ": " << detail << " [" << fmt(seconds)
            << " s, limit " << limit << " s]" << std::endl;
}

std::string rank_via_cli(const char* file, long expected, double limit) {
  const auto start = Clock::now();
  GgRun r = gg("rank --matrix " + data(file));
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  expect(r.code == 0, std::string(file) + ": exit " + std::to_string(r.code));
  const std::string got = r.doc["result"]["rank"].get<std::string>();
  expect(got == std::to_string(expected), std::string(file) + ": rank " + got);
  expect(seconds < limit, std::string(file) + ": " + fmt(seconds) + " s");
  return std::string(file) + " " + got;
}

}  // namespace

int main() {
  std::cout << "acceptance (threads " << thread_count() << ")" << std::endl;

  criterion(1, "ranks", 3.0, [] {
    // Oracle for the pentagon: the volumes of one triangulation add up to the rank.
    auto A = testdata::pentagon();
    Integer sum = 0;
    for (const auto& s : cells({{1, 2, 4}, {1, 2, 5}, {2, 3, 4}, {2, 3, 5}})) sum += simplex_data(A, s).volume();
    expect(sum == 4, "pentagon volume oracle");
    std::string out = rank_via_cli("six_points.txt", 3, 1.0);
    out += ", " + rank_via_cli("pentagon.txt", 4, 1.0);
    out += ", " + rank_via_cli("appell.txt", 3, 1.0);
    return out;
  });

  criterion(2, "secondary fan and wall table", 5.0, [] {
    auto A = testdata::pentagon();
    const IntMatrix U = testdata::pentagon_basis();
    const std::vector<Subdivision> T{make_subdivision(A, cells({{1, 3, 4}, {1, 3, 5}})),
                                     make_subdivision(A, cells({{1, 2, 4}, {1, 2, 5}, {2, 3, 4}, {2, 3, 5}})),
                                     make_subdivision(A, cells({{2, 3, 4}, {2, 3, 5}, {2, 4, 5}})),
                                     make_subdivision(A, cells({{3, 4, 5}}))};
    FlipGraph g = flip_graph(A);
    expect(!g.truncated && g.nodes.size() == 4 && g.edges.size() == 4, "flip graph size");
    auto index = [&](const Subdivision& S) {
      for (int i = 0; i < 4; ++i)
        if (T[i] == S) return i;
      throw Failure("unexpected triangulation");
    };
    std::set<std::pair<int, int>> edges;
    for (const auto& e : g.edges) {
      int a = index(g.nodes[e.from]), b = index(g.nodes[e.to]);
      edges.insert({std::min(a, b), std::max(a, b)});
    }
    expect(edges == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}, "adjacency is not T1-T2-T3-T4-T1");

    // Quadrants of (w1, w2) for T1, T2 and T4.
    auto chamber_of = [&](long w1, long w2) {
      RatVector w(2);
      w << Rational(w1), Rational(w2);
      auto om = solve<Rational>(to_rational(U).transpose(), w);
      return regular_subdivision(A, *om);
    };
    expect(chamber_of(1, 1) == T[0] && chamber_of(-1, 1) == T[1] && chamber_of(1, -1) == T[3], "chambers");

    struct Row {
      int from, to;
      std::vector<IndexSet> cells;
      IndexSet Z, plus;
      std::vector<long> normal;  // pi_A of the redundant cone is {normal . w > 0}
    };
    const std::vector<Row> table{{0, 1, cells({{1, 2, 3, 4}, {1, 2, 3, 5}}), S({1, 2, 3}), S({2}), {0, 1}},
                                 {2, 1, cells({{1, 2, 4, 5}}), S({1, 4, 5}), S({1}), {-2, 1}},
                                 {3, 0, cells({{1, 3, 4, 5}}), S({1, 4, 5}), S({1}), {2, -1}}};
    for (const auto& row : table) {
      auto m = modification(A, T[row.from], T[row.to]);
      const std::string name = "T" + std::to_string(row.from + 1) + "->T" + std::to_string(row.to + 1);
      expect(m.cells == row.cells, name + " cells");
      expect(m.circuit.Z == row.Z, name + " circuit");
      expect(m.circuit.plus == row.plus, name + " Z+");
      std::set<std::vector<long>> normals;
      for (const auto& ineq : m.ctilde) {
        IntVector lam = primitive(RatVector(project_to_basis(ineq.functional, U).transpose()));
        normals.insert({lam(0).convert_to<long>(), lam(1).convert_to<long>()});
      }
      expect(normals == std::set<std::vector<long>>{row.normal}, name + " redundant cone");
    }
    return std::string("4-cycle, three table rows exact");
  });

  criterion(3, "exact connection matrices", 5.0, [] {
    // Pentagon, T3 -> T2.
    GgRun r = gg("connect --matrix " + data("pentagon.txt") + " --from '234;235;245' --to '124;125;234;235'");
    expect(r.code == 0, "pentagon: exit " + std::to_string(r.code));
    ConnectionMatrix cm = from_json<ConnectionMatrix>(r.doc["result"]);
    const IntVector k0 = IntVector::Zero(3), k1 = (IntVector(3) << 0, 1, 0).finished();
    const int s0 = find(cm.source, S({2, 4, 5}), k0), s1 = find(cm.source, S({2, 4, 5}), k1);
    const int t124 = find(cm.target, S({1, 2, 4})), t125 = find(cm.target, S({1, 2, 5}));
    expect(std::min({s0, s1, t124, t125}) >= 0, "pentagon: missing series");
    expect(cm.entries[s0][t124] == CharFraction::constant(3, 2), "pentagon: k0 -> 124");
    expect(cm.entries[s0][t125] == CharFraction::constant(3, 2), "pentagon: k0 -> 125");
    expect(cm.entries[s1][t124] == CharFraction::character(rho({0, 0, -1}), 2), "pentagon: k1 -> 124");
    expect(cm.entries[s1][t125] == CharFraction::constant(3, 2), "pentagon: k1 -> 125");
    expect(nonzero(cm.entries[s0]) == 2 && nonzero(cm.entries[s1]) == 2, "pentagon: extra entries");
    for (auto sigma : {S({2, 3, 4}), S({2, 3, 5})}) {
      const int a = find(cm.source, sigma), b = find(cm.target, sigma);
      expect(a >= 0 && b >= 0 && cm.entries[a][b] == CharFraction::constant(3, 1) && nonzero(cm.entries[a]) == 1,
             "pentagon: identity row " + label_string(sigma));
    }

    // Six points.
    r = gg("connect --matrix " + data("six_points.txt") + " --from '1234;1236;1256' --to '1246;2346;1256'");
    expect(r.code == 0, "six points: exit " + std::to_string(r.code));
    cm = from_json<ConnectionMatrix>(r.doc["result"]);
    const int r1234 = find(cm.source, S({1, 2, 3, 4})), r1236 = find(cm.source, S({1, 2, 3, 6}));
    const int r1256 = find(cm.source, S({1, 2, 5, 6}));
    const int t1246 = find(cm.target, S({1, 2, 4, 6})), t2346 = find(cm.target, S({2, 3, 4, 6}));
    const int t1256 = find(cm.target, S({1, 2, 5, 6}));
    expect(std::min({r1234, r1236, r1256, t1246, t2346, t1256}) >= 0, "six points: missing series");
    auto sine_ratio = [](const RatVector& x, const RatVector& y) {
      return CharFraction(CharacterSum::character(rho({0, 0, 0, Rational(-1, 2)})) * sin_pi(x), sin_pi(y));
    };
    expect(cm.entries[r1234][t1246] == CharFraction::constant(4, 1), "six points: 1234 -> 1246");
    expect(cm.entries[r1234][t2346] == CharFraction::constant(4, 1), "six points: 1234 -> 2346");
    expect(cm.entries[r1236][t2346] == sine_ratio(rho({1, 0, 0, 0}), rho({1, 0, 0, 1})), "six points: 1236 -> 2346");
    expect(cm.entries[r1236][t1246] == sine_ratio(rho({0, 0, 1, 0}), rho({0, 0, 1, 1})), "six points: 1236 -> 1246");
    expect(cm.entries[r1256][t1256] == CharFraction::constant(4, 1) && nonzero(cm.entries[r1256]) == 1,
           "six points: identity row 1256");
    return std::string("pentagon 2, 2, 2e(-c3), 2 and two identity rows; six points 1, 1, ") +
           to_string(cm.entries[r1236][t2346]) + ", " + to_string(cm.entries[r1236][t1246]) + " and one identity row";
  });

  criterion(4, "Mellin-Barnes agreement", 60.0, [] {
    std::ostringstream out;
    double worst = 0.0;
    // Gauss.
    {
      const auto start = Clock::now();
      auto A = testdata::gauss();
      const double a = 0.3, b = 0.7, g = 1.9;
      Eigen::VectorXcd c = vec({a, b, 1.0 - g});
      MBIntegrand ig(A, S({1, 2, 3, 4}), 4);
      const cplx pref = std::exp(-I * pi * (a + b)) * std::tgamma(a) * std::tgamma(b) / std::tgamma(g);
      auto near = polar({1, 1, 1, 0.3}, {0, 0, 0, pi});
      auto far = polar({1, 1, 1, 3.0}, {0, 0, 0, pi});
      expect(ig.sector_margin(near) > 0 && ig.sector_margin(far) > 0, "gauss: points outside the sector");
      const cplx qn = mb_evaluate(ig, near, c).value, qf = mb_evaluate(ig, far, c).value;
      const double e1 = rel(qn, residues_positive(ig, near, c, kMbOrder));
      const double e2 = rel(qf, residues_negative(ig, far, c, kMbOrder));
      const double e3 = std::max(rel(qn, pref * hyp2f1(a, b, g, -0.3)), rel(qf, pref * hyp2f1_far(a, b, g, -3.0)));
      expect(e1 < kMbTol && e2 < kMbTol && e3 < kMbTol,
             "gauss: " + fmt(e1) + " / " + fmt(e2) + " / closed form " + fmt(e3));
      const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      expect(seconds < 30.0, "gauss: " + fmt(seconds) + " s");
      worst = std::max({worst, e1, e2});
      out << "gauss " << fmt(std::max(e1, e2)) << " (closed form " << fmt(e3) << ")";
    }
    // Pentagon circuit 1245 with both representatives.
    {
      const auto start = Clock::now();
      auto A = testdata::pentagon();
      Eigen::VectorXcd c = vec({0.31, cplx(0.27, 0.1), -0.43});
      double local = 0.0;
      const std::vector<IntVector> reps{IntVector::Zero(3), (IntVector(3) << 0, 1, 0).finished()};
      for (const auto& k : reps) {
        MBIntegrand ig(A, S({1, 2, 4, 5}), 1, k);
        auto near = polar({0.5, 1.3, 0.1, 1.0, 1.0}, {pi / 2, 0.4, 0.0, 0.0, 0.0});
        auto far = polar({8.0, 1.3, 0.1, 1.0, 1.0}, {pi / 2, 0.4, 0.0, 0.0, 0.0});
        expect(ig.sector_margin(near) > 0 && ig.sector_margin(far) > 0, "pentagon: points outside the sector");
        const double e1 = rel(mb_evaluate(ig, near, c).value, residues_positive(ig, near, c, kMbOrder));
        const double e2 = rel(mb_evaluate(ig, far, c).value, residues_negative(ig, far, c, kMbOrder));
        expect(e1 < kMbTol && e2 < kMbTol, "pentagon: " + fmt(e1) + " / " + fmt(e2));
        local = std::max({local, e1, e2});
      }
      const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      expect(seconds < 30.0, "pentagon: " + fmt(seconds) + " s");
      worst = std::max(worst, local);
      out << ", pentagon " << fmt(local);
    }
    out << "; worst " << fmt(worst) << " < " << kMbTol << " at order " << kMbOrder;
    return out.str();
  });

  criterion(5, "numerical verification", 120.0, [] {
    const std::string base = "verify --matrix " + data("pentagon.txt") +
                             " --from '234;235;245' --to '124;125;234;235' --c '0.31,0.27+0.1i,-0.43' --tol " +
                             fmt(kVerifyTol);
    GgRun fine = gg(base + " --order 40");
    GgRun coarse = gg(base + " --order 20");
    expect(fine.code == 0, "order 40: exit " + std::to_string(fine.code));
    expect(coarse.code == 0 || coarse.code == 3, "order 20: exit " + std::to_string(coarse.code));
    const json& rep = fine.doc["result"]["report"];
    double worst = 0.0;
    for (const auto& row : rep["rows"]) {
      RowReport rr = from_json<RowReport>(row);
      expect(rr.converged, rr.label + ": " + rr.error);
      expect(rr.defect() < kVerifyTol, rr.label + ": defect " + fmt(rr.defect()));
      worst = std::max(worst, rr.defect());
    }
    const double d20 = coarse.doc["result"]["report"]["maxDefect"].get<double>();
    expect(worst <= kMonotoneSlack * d20 + 1e-15, "order 40 defect " + fmt(worst) + " above order 20 " + fmt(d20));
    return std::to_string(rep["rows"].size()) + " rows, max defect " + fmt(worst) + " at order 40 (order 20: " +
           fmt(d20) + ")";
  });

  criterion(6, "property suites", 120.0, [] {
    std::ostringstream out;
    const std::vector<Configuration> regression{testdata::pentagon(), testdata::six_points(), testdata::gauss(),
                                                testdata::appell(),
                                                testdata::make({{1, 1, 1, 1}, {0, 3, 0, 1}, {0, 0, 2, 1}})};

    // Character matrices.
    double unitary = 0.0;
    int simplices = 0;
    for (const auto& A : regression)
      for (const auto& T : flip_graph(A).nodes)
        for (const auto& sigma : T.cells) {
          SimplexData s = simplex_data(A, sigma);
          Eigen::MatrixXcd U = character_matrix(s, quotient_reps(A, s).reps, dual_reps(s));
          unitary = std::max(unitary, (U * U.adjoint() - Eigen::MatrixXcd::Identity(U.rows(), U.rows()))
                                          .cwiseAbs()
                                          .maxCoeff());
          ++simplices;
        }
    expect(unitary < kUnitaryTol, "unitarity " + fmt(unitary));
    out << "unitarity " << fmt(unitary) << " on " << simplices << " simplices";

    // bv o D on truncated series.
    {
      auto A = testdata::appell();
      GammaSeriesSpec spec{S({1, 2, 3}), S({1, 2}), S({3}), IntVector::Zero(3)};
      Evaluator f = boundary_value(A, spec, 5);
      Evaluator back = boundary_value(apply_D(f, A, 5), 5);
      int checked = 0;
      for (double x : {0.05, 0.1, 0.3})
        for (cplx a : {cplx(0.3), cplx(0.21, 0.1)}) {
          Eigen::VectorXcd c = vec({a, 0.7, -0.9});
          auto z = polar({1, 1, 1, x, 0.05}, {0.1, -0.2, 0, 0.3, 0.4});
          for (int order : {10, 25}) {
            expect(back(z, c, order, {}).value == f(z, c, order, {}).value, "bv o D differs");
            ++checked;
          }
        }
      out << ", bv o D exact on " << checked;
    }

    // Torus equivariance.
    {
      double worst = 0.0;
      std::mt19937 rng(4);
      std::uniform_real_distribution<double> d(-1.0, 1.0);
      struct Case {
        Configuration A;
        GammaSeriesSpec spec;
        Eigen::VectorXcd c;
        LogPoint z;
      };
      std::vector<Case> cases{
          {testdata::six_points(), {S({1, 2, 3, 4}), S({1, 3}), S({2, 4}), IntVector::Zero(4)},
           vec({cplx(0.21, 0.1), 0.33, cplx(0.17, -0.05), 0.26}),
           LogPoint::from_polar((Eigen::VectorXd(6) << 0.1, -0.2, 0.3, -2.5, -2.0, -2.2).finished(),
                                (Eigen::VectorXd(6) << 0.3, -0.4, 0.2, 0.1, 0.7, -0.2).finished())},
          {testdata::pentagon(), {S({2, 4, 5}), S({4, 5}), S({2}), (IntVector(3) << 0, 1, 0).finished()},
           vec({0.31, cplx(0.27, 0.1), -0.43}),
           LogPoint::from_polar(-6.0 * testdata::pentagon_weight(-1, -1),
                                (Eigen::VectorXd(5) << 0.2, 0.1, -0.3, 0.5, -0.1).finished())}};
      for (auto& cs : cases) {
        EvalOptions opt;
        opt.order = 30;
        GammaSeries psi(cs.A, cs.spec);
        const cplx base = psi.evaluate(cs.z, cs.c, opt).value;
        const Eigen::MatrixXd Ad = to_double(cs.A.rational());
        for (int t = 0; t < 10; ++t) {
          Eigen::VectorXd s(cs.A.n()), phi(cs.A.n());
          for (int i = 0; i < cs.A.n(); ++i) {
            s(i) = 0.2 * d(rng);
            phi(i) = 3.0 * d(rng);
          }
          LogPoint w = LogPoint::from_polar(cs.z.logAbs + Ad.transpose() * s, cs.z.arg + Ad.transpose() * phi);
          const cplx factor = std::exp(-((s.cast<cplx>() + I * phi.cast<cplx>()).transpose() * cs.c)(0));
          worst = std::max(worst, rel(psi.evaluate(w, cs.c, opt).value, factor * base));
        }
      }
      expect(worst < kTorusTol, "torus equivariance " + fmt(worst));
      out << ", torus " << fmt(worst);
    }

    // Facet volumes.
    {
      std::mt19937 rng(23);
      std::uniform_int_distribution<int> entry(-2, 3), rows(2, 3);
      int done = 0;
      while (done < 50) {
        const int n = rows(rng);
        const int N = std::uniform_int_distribution<int>(n + 1, 6)(rng);
        IntMatrix M(n, N);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < N; ++j) M(i, j) = entry(rng);
        if (rank(M) < n) continue;
        ++done;
        Configuration A(M);
        Integer sum = 0;
        for (const auto& f : facets_off_origin(A)) sum += f.volume;
        expect(sum == normalized_volume(A), "facet volumes do not add up");
      }
      out << ", facet additivity on " << done;
    }

    // Redundant cone contains the cones of Q and of both triangulations.
    {
      int mods = 0;
      for (const auto& A : regression) {
        FlipGraph g = flip_graph(A);
        for (const auto& e : g.edges) {
          Modification m = modification(A, g.nodes[e.from], g.nodes[e.to]);
          ConeSystem ct = m.ctilde_cone(A.N());
          expect(cone_inside(secondary_cone(A, m.source), ct), "C_T not inside");
          expect(cone_inside(secondary_cone(A, m.intermediate), ct), "C_Q not inside");
          ++mods;
        }
      }
      out << ", cone inclusion on " << mods << " modifications";
    }

    // Quotient representatives against a brute-force count.
    {
      std::mt19937 rng(3);
      std::uniform_int_distribution<int> entry(-3, 3);
      int checked = 0;
      while (checked < 40) {
        IntMatrix B(3, 5);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 5; ++j) B(i, j) = entry(rng);
        B.row(0).setConstant(Integer(1));
        if (rank(B) < 3) continue;
        Configuration C(B);
        for_each_subset(5, 3, [&](const IndexSet& sigma) {
          auto sd = try_simplex(C, sigma);
          if (!sd || sd->volume() > 12) return;
          const long brute = brute_force_classes(IntMatrix(C.columns(sigma).transpose()));
          SmithForm snf = smith_normal_form(C.columns(sigma));
          Integer prod = 1;
          for (Eigen::Index i = 0; i < snf.D.rows(); ++i) prod *= mp::abs(snf.D(i, i));
                    expect(static_cast<long>(quotient_reps(C, *sd).reps.size()) == brute, "quotient count");
          const int j0 = set_minus(full_set(5), sigma)[0];
          expect(static_cast<long>(quotient_reps(C, *sd, j0).reps.size()) == brute, "normalized quotient count");
          expect(prod == brute && sd->volume() == brute, "Smith form count");
          ++checked;
        });
      }
      out << ", quotient counts on " << checked << " simplices";
    }
    return out.str();
  });

  std::cout << (failures ? "FAILED " + std::to_string(failures) + " of 6" : std::string("all 6 passed")) << std::endl;
  return failures ? 1 : 0;
}
