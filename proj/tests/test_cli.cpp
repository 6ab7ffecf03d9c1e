#include "gkz/io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace gkz;
using testdata::S;

namespace {

// parse(serialize(x)) reproduces x, through a text dump so doubles are
// exercised as written.
template <class T>
bool survives(const T& x) {
  const std::string once = to_json(x).dump();
  const std::string twice = to_json(from_json<T>(json::parse(once))).dump();
  return once == twice;
}

template <class T>
T reread(const T& x) {
  return from_json<T>(json::parse(to_json(x).dump()));
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1'000'000'007, 1'000'000'007), den(1, 97);
  return Rational(num(rng), den(rng));
}

RatVector random_rho(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  RatVector rho(n);
  for (int i = 0; i < n; ++i) rho(i) = Rational(num(rng), den(rng));
  return rho;
}

CharacterSum random_sum(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> terms(0, 4), coef(-5, 5);
  CharacterSum s(n);
  for (int t = terms(rng); t > 0; --t) {
    RatVector rho = random_rho(rng, n);
    s.add(CharacterSum::Rho(rho.data(), rho.data() + n), GaussianRational(coef(rng), Rational(coef(rng), 3)));
  }
  return s;
}

std::vector<Configuration> configurations() {
  return {testdata::pentagon(), testdata::six_points(), testdata::appell(), testdata::gauss()};
}

struct Run {
  int code;
  std::string out, err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Run gg(const std::string& args, const std::string& env = "") {
  static int serial = 0;
  auto dir = std::filesystem::temp_directory_path();
  auto tag = std::to_string(::getpid()) + "_" + std::to_string(serial++);
  auto out = dir / ("gg_out_" + tag), err = dir / ("gg_err_" + tag);
  std::string cmd = env + (env.empty() ? "" : " ") + GG_BINARY + " " + args + " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return r;
}

std::string data(const char* name) { return std::string(GG_DATA_DIR) + "/" + name; }

const std::string kPentagonPair = " --from '234;235;245' --to '124;125;234;235'";

}  // namespace

TEST_CASE("numbers survive a JSON round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational q = random_rational(rng);
    CHECK(reread(q) == q);
    Integer big = mp::numerator(q) * mp::numerator(q) * mp::numerator(q);
    CHECK(reread(big) == big);
  }
  CHECK(to_json(Rational(-3, 4)) == json("-3/4"));
  CHECK(to_json(cplx(1.5, -2.0)) == json::array({1.5, -2.0}));
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 50; ++i) {
    cplx z(u(rng), u(rng));
    CHECK(reread(z) == z);
    LogPoint p = LogPoint::from_polar(Eigen::VectorXd::Random(5) * 30, Eigen::VectorXd::Random(5) * 7);
    CHECK(survives(p));
    LogPoint back = reread(p);
    CHECK(back.logAbs == p.logAbs);
    CHECK(back.arg == p.arg);
  }
}

TEST_CASE("character sums and fractions survive a JSON round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 5;
    CharacterSum s = random_sum(rng, n);
    CHECK(reread(s) == s);
    CharacterSum d = random_sum(rng, n);
    if (d.is_zero()) continue;
    CharFraction f(s, d);
    CHECK(reread(f) == f);
    CHECK(survives(f));
  }
}

TEST_CASE("combinatorial objects survive a JSON round trip") {
  for (const auto& A : configurations()) {
    CHECK(reread(A).matrix() == A.matrix());
    FlipGraph g = flip_graph(A);
    for (const auto& T : g.nodes) {
      CHECK(reread(T) == T);
      CHECK(survives(T));
    }
    for (const auto& c : find_circuits(A)) {
      Circuit back = reread(c);
      CHECK(back.Z == c.Z);
      CHECK(back.u == c.u);
      CHECK(back.plus == c.plus);
      CHECK(back.minus == c.minus);
    }
    for (const auto& f : facets_off_origin(A)) CHECK(survives(f));
    for (const auto& e : g.edges) {
      Modification m = modification(A, g.nodes[e.from], g.nodes[e.to]);
      CHECK(survives(m));
      CHECK(reread(m).source == m.source);
      CHECK(reread(m).omegaQ == m.omegaQ);
      if (!A.homogeneous()) continue;
      ConnectionMatrix cm = build_connection(A, m);
      CHECK(survives(cm));
      ConnectionMatrix back = reread(cm);
      REQUIRE(back.entries.size() == cm.entries.size());
      for (std::size_t r = 0; r < cm.entries.size(); ++r) CHECK(back.entries[r] == cm.entries[r]);
      for (const auto& s : cm.source) CHECK(survives(s));
      CHECK(survives(common_sector(A, m)));
      CHECK(survives(build_path(A, m)));
    }
  }
}

TEST_CASE("reports and run configurations survive a JSON round trip") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 50; ++i) {
    VerifyReport rep;
    rep.order = 10 + i;
    rep.evaluations = 1000 * i;
    for (int r = 0; r < 3; ++r) {
      RowReport row;
      row.row = r;
      row.label = "row" + std::to_string(r);
      row.circuit = r % 2;
      row.defectStart = std::abs(u(rng)) * 1e-9;
      row.defectEnd = r == 2 && i % 3 == 0 ? std::numeric_limits<double>::infinity() : std::abs(u(rng));
      row.lhsStart = {u(rng), u(rng)};
      row.rhsEnd = {u(rng), u(rng)};
      row.converged = r != 2;
      row.error = row.converged ? "" : "NonConverged";
      rep.rows.push_back(row);
      rep.maxDefect = std::max(rep.maxDefect, row.defect());
    }
    rep.ok = false;
    CHECK(survives(rep));
    CHECK(std::isinf(reread(rep).rows[2].defectEnd) == std::isinf(rep.rows[2].defectEnd));

    RunConfig cfg;
    cfg.command = i % 2 ? "verify" : "mb";
    cfg.matrix = "m" + std::to_string(i) + ".txt";
    cfg.weight = random_rho(rng, 5);
    cfg.from = std::vector<IndexSet>{S({1, 2, 3}), S({2, 3, 4})};
    if (i % 3 == 0) cfg.toWeight = random_rho(rng, 5);
    cfg.order = i;
    cfg.tol = std::abs(u(rng));
    cfg.quad.shift = u(rng);
    cfg.quad.step = 0.01 * i;
    cfg.args = Eigen::VectorXd::Random(5);
    cfg.r = random_rational(rng);
    if (i % 2) cfg.c = default_parameters(3, i);
    cfg.cell = S({1, 2, 4});
    cfg.j0 = 4;
    cfg.ktilde = IntVector::Constant(2, i);
    cfg.seed = rng();
    cfg.budget = i;
    CHECK(reread(cfg) == cfg);
  }
}

TEST_CASE("text parsers") {
  CHECK(parse_rational_list("1/2, 0 -3") == (RatVector(3) << Rational(1, 2), 0, -3).finished());
  Eigen::VectorXcd c = parse_complex_list("0.31, 0.27+0.1i, -0.43, 2i, -1-i");
  REQUIRE(c.size() == 5);
  CHECK(c(1) == cplx(0.27, 0.1));
  CHECK(c(3) == cplx(0, 2));
  CHECK(c(4) == cplx(-1, -1));
  CHECK(parse_cells("245; 234;2 3 5", 5) == std::vector<IndexSet>{S({2, 3, 4}), S({2, 3, 5}), S({2, 4, 5})});
  CHECK(parse_labels("10 11 3", 12) == S({3, 10, 11}));
  CHECK_THROWS_AS(parse_labels("16", 5), Error);
  CHECK(parse_matrix("# pentagon\n1 1 1 1 1\n0 1 2 0 0\n0 0 0 1 -1\n").matrix() == testdata::pentagon().matrix());
  CHECK(parse_matrix("{\"matrix\": [[1,0,0,1],[0,1,0,1],[0,0,1,-1]]}").matrix() == testdata::gauss().matrix());
  CHECK_THROWS_AS(parse_matrix("1 2\n3"), Error);
  CHECK(default_parameters(4, 9) == default_parameters(4, 9));
  CHECK(default_parameters(4, 9) != default_parameters(4, 10));
}

TEST_CASE("gg: basic commands") {
  Run r = gg("rank --matrix " + data("pentagon.txt"));
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["rank"] == "4");
  CHECK(doc["config"]["command"] == "rank");
  CHECK(json::parse(gg("rank --matrix " + data("six_points.txt")).out)["result"]["rank"] == "3");
  CHECK(json::parse(gg("rank --matrix " + data("appell.txt")).out)["result"]["rank"] == "3");

  doc = json::parse(gg("fan --matrix " + data("pentagon.txt")).out);
  CHECK(doc["result"]["nodes"].size() == 4);
  CHECK(doc["result"]["edges"].size() == 4);

  Run c = gg("connect --matrix " + data("pentagon.txt") + kPentagonPair);
  REQUIRE(c.code == 0);
  ConnectionMatrix cm = from_json<ConnectionMatrix>(json::parse(c.out)["result"]);
  auto p = testdata::pentagon();
  ConnectionMatrix direct = build_connection(
      p, modification(p, make_subdivision(p, parse_cells("234;235;245", 5)),
                      make_subdivision(p, parse_cells("124;125;234;235", 5))));
  REQUIRE(cm.entries.size() == direct.entries.size());
  for (std::size_t i = 0; i < cm.entries.size(); ++i) CHECK(cm.entries[i] == direct.entries[i]);

  Run pretty = gg("connect --pretty --matrix " + data("pentagon.txt") + kPentagonPair);
  CHECK(pretty.code == 0);
  CHECK(pretty.out.find("~>") != std::string::npos);
}

TEST_CASE("gg: exit codes") {
  auto bad = std::filesystem::temp_directory_path() / "gg_bad_matrix.txt";
  std::ofstream(bad) << "1 2 3\n4 5\n";
  Run r = gg("rank --matrix " + bad.string());
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["error"]["code"] == "InvalidInput");
  CHECK(r.err.find("gg: ") == 0);
  std::filesystem::remove(bad);

  CHECK(gg("rank --matrix /nonexistent/matrix.txt").code == 2);
  CHECK(gg("rank").code == 2);
  CHECK(gg("connect --matrix " + data("pentagon.txt") + " --from '234;235;245' --to '345;134;135'").code == 2);
  CHECK(gg("triangulate --matrix " + data("pentagon.txt") + " --weight 1,2").code == 2);

  const std::string verify = "verify --matrix " + data("pentagon.txt") + kPentagonPair + " --order 20";
  Run ok = gg(verify);
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["result"]["report"]["ok"] == true);
  Run strict = gg(verify + " --tol 1e-40");
  CHECK(strict.code == 3);
  CHECK(json::parse(strict.out)["result"]["report"]["ok"] == false);
  CHECK(gg(verify + " --budget 1").code == 4);
}

TEST_CASE("gg: output is deterministic and independent of the thread count") {
  const std::string verify = "verify --matrix " + data("pentagon.txt") + kPentagonPair + " --order 15 --seed 3";
  Run a = gg(verify, "GG_THREADS=1");
  Run b = gg(verify, "GG_THREADS=1");
  Run c = gg(verify, "GG_THREADS=3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);

  auto file = std::filesystem::temp_directory_path() / "gg_fan.json";
  CHECK(gg("fan --matrix " + data("six_points.txt") + " --out " + file.string()).code == 0);
  CHECK(json::parse(slurp(file))["result"] == json::parse(gg("fan --matrix " + data("six_points.txt")).out)["result"]);
  std::filesystem::remove(file);
}

TEST_CASE("thread count honours GG_THREADS") {
  ::setenv("GG_THREADS", "2", 1);
  CHECK(thread_count() <= 2);
  CHECK(thread_count() >= 1);
  ::setenv("GG_THREADS", "1", 1);
  CHECK(thread_count() == 1);
  ::unsetenv("GG_THREADS");
  CHECK(thread_count() >= 1);
}
