#include "gkz/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace gkz {

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double real(const json& j) { return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>(); }

json labels(const IndexSet& s) { return json(s); }
IndexSet labels_from(const json& j) { return j.get<IndexSet>(); }

json cell_list(const std::vector<IndexSet>& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back(labels(c));
  return out;
}
std::vector<IndexSet> cell_list_from(const json& j) {
  std::vector<IndexSet> out;
  for (const auto& c : j) out.push_back(labels_from(c));
  return out;
}

template <class V>
json vector_json(const V& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json sum_terms(const CharacterSum& s) {
  json out = json::array();
  for (const auto& [rho, coeff] : s.terms()) {
    json t = json::array({to_json(coeff.re), to_json(coeff.im)});
    for (const auto& r : rho) t.push_back(to_json(r));
    out.push_back(t);
  }
  return out;
}

CharacterSum sum_from(const json& j, int n) {
  CharacterSum s(n);
  for (const auto& t : j) {
    if (t.size() != static_cast<std::size_t>(n) + 2) throw Error(ErrorCode::InvalidInput, "character term of wrong length");
    CharacterSum::Rho rho;
    for (int i = 0; i < n; ++i) rho.push_back(from_json<Rational>(t[i + 2]));
    s.add(rho, GaussianRational(from_json<Rational>(t[0]), from_json<Rational>(t[1])));
  }
  return s;
}

std::vector<std::string> split(std::string_view text, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (seps.find(ch) != std::string_view::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_double(const std::string& t) {
  std::size_t used = 0;
  double x;
  try {
    x = std::stod(t, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, "not a number: '" + t + "'");
  }
  if (used != t.size()) throw Error(ErrorCode::InvalidInput, "not a number: '" + t + "'");
  return x;
}

}  // namespace

json to_json(const Rational& x) { return to_string(x); }
json to_json(const Integer& x) { return to_string(x); }
json to_json(cplx x) { return json::array({number(x.real()), number(x.imag())}); }
json to_json(const IntVector& v) { return vector_json(v); }
json to_json(const RatVector& v) { return vector_json(v); }
json to_json(const RatRowVector& v) { return vector_json(v); }
json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}
json to_json(const Eigen::VectorXcd& v) { return vector_json(v); }

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(IntVector(m.row(i).transpose())));
  return out;
}

template <> Rational from_json<Rational>(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error(ErrorCode::InvalidInput, "rationals are written as strings");
}
template <> Integer from_json<Integer>(const json& j) {
  Rational r = from_json<Rational>(j);
  if (!is_integral(r)) throw Error(ErrorCode::InvalidInput, "expected an integer");
  return mp::numerator(r);
}
template <> cplx from_json<cplx>(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidInput, "complex numbers are [re, im]");
  return {real(j[0]), real(j[1])};
}

namespace {
template <class V>
V vector_from(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected an array");
  V v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = from_json<typename V::Scalar>(j[i]);
  return v;
}
}  // namespace

template <> IntVector from_json<IntVector>(const json& j) { return vector_from<IntVector>(j); }
template <> RatVector from_json<RatVector>(const json& j) { return vector_from<RatVector>(j); }
template <> RatRowVector from_json<RatRowVector>(const json& j) { return vector_from<RatRowVector>(j); }
template <> Eigen::VectorXcd from_json<Eigen::VectorXcd>(const json& j) { return vector_from<Eigen::VectorXcd>(j); }
template <> Eigen::VectorXd from_json<Eigen::VectorXd>(const json& j) {
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = real(j[i]);
  return v;
}
template <> IntMatrix from_json<IntMatrix>(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw Error(ErrorCode::InvalidInput, "expected a matrix");
  IntMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != j[0].size()) throw Error(ErrorCode::InvalidInput, "ragged matrix");
    for (std::size_t c = 0; c < j[r].size(); ++c) m(r, c) = from_json<Integer>(j[r][c]);
  }
  return m;
}

json to_json(const Configuration& A) { return json{{"matrix", to_json(A.matrix())}}; }
template <> Configuration from_json<Configuration>(const json& j) {
  return Configuration(from_json<IntMatrix>(j.is_object() ? j.at("matrix") : j));
}

json to_json(const Subdivision& S) {
  json out{{"cells", cell_list(S.cells)}, {"isTriangulation", S.isTriangulation}, {"isAlmost", S.isAlmost}};
  out["weight"] = S.weight.size() ? to_json(S.weight) : json(nullptr);
  return out;
}
template <> Subdivision from_json<Subdivision>(const json& j) {
  Subdivision S;
  S.cells = cell_list_from(j.at("cells"));
  S.isTriangulation = j.value("isTriangulation", false);
  S.isAlmost = j.value("isAlmost", false);
  if (j.contains("weight") && !j["weight"].is_null()) S.weight = from_json<RatVector>(j["weight"]);
  return S;
}

json to_json(const Circuit& c) {
  return json{{"Z", labels(c.Z)}, {"u", to_json(c.u)}, {"plus", labels(c.plus)}, {"minus", labels(c.minus)}};
}
template <> Circuit from_json<Circuit>(const json& j) {
  Circuit c;
  c.Z = labels_from(j.at("Z"));
  c.u = from_json<IntVector>(j.at("u"));
  c.plus = labels_from(j.at("plus"));
  c.minus = labels_from(j.at("minus"));
  return c;
}

json to_json(const CtildeInequality& g) {
  return json{{"cell", labels(g.cell)}, {"removed", g.removed}, {"k", g.k}, {"functional", to_json(g.functional)}};
}
template <> CtildeInequality from_json<CtildeInequality>(const json& j) {
  return {labels_from(j.at("cell")), j.at("removed").get<int>(), j.at("k").get<int>(),
          from_json<RatRowVector>(j.at("functional"))};
}

json to_json(const Modification& m) {
  json ct = json::array();
  for (const auto& g : m.ctilde) ct.push_back(to_json(g));
  return json{{"source", to_json(m.source)},   {"target", to_json(m.target)},
              {"intermediate", to_json(m.intermediate)}, {"irrelevant", cell_list(m.irrelevant)},
              {"cells", cell_list(m.cells)},   {"circuit", to_json(m.circuit)},
              {"core", labels(m.core)},        {"omegaQ", to_json(m.omegaQ)},
              {"ctilde", ct}};
}
template <> Modification from_json<Modification>(const json& j) {
  Modification m;
  m.source = from_json<Subdivision>(j.at("source"));
  m.target = from_json<Subdivision>(j.at("target"));
  m.intermediate = from_json<Subdivision>(j.at("intermediate"));
  m.irrelevant = cell_list_from(j.at("irrelevant"));
  m.cells = cell_list_from(j.at("cells"));
  m.circuit = from_json<Circuit>(j.at("circuit"));
  m.core = labels_from(j.at("core"));
  m.omegaQ = from_json<RatVector>(j.at("omegaQ"));
  for (const auto& g : j.at("ctilde")) m.ctilde.push_back(from_json<CtildeInequality>(g));
  return m;
}

json to_json(const Facet& f) {
  return json{{"labels", labels(f.labels)}, {"functional", to_json(f.functional)}, {"volume", to_json(f.volume)}};
}
template <> Facet from_json<Facet>(const json& j) {
  return {labels_from(j.at("labels")), from_json<RatRowVector>(j.at("functional")), from_json<Integer>(j.at("volume"))};
}

json to_json(const GammaSeriesSpec& s) {
  return json{{"sigma", labels(s.sigma)}, {"upper", labels(s.upper)}, {"lower", labels(s.lower)},
              {"ktilde", to_json(s.ktilde)}, {"label", series_label(s)}};
}
template <> GammaSeriesSpec from_json<GammaSeriesSpec>(const json& j) {
  return {labels_from(j.at("sigma")), labels_from(j.at("upper")), labels_from(j.at("lower")),
          from_json<IntVector>(j.at("ktilde"))};
}

json to_json(const GaussianRational& x) { return json::array({to_json(x.re), to_json(x.im)}); }
template <> GaussianRational from_json<GaussianRational>(const json& j) {
  return {from_json<Rational>(j.at(0)), from_json<Rational>(j.at(1))};
}

json to_json(const CharacterSum& s) { return json{{"n", s.n()}, {"terms", sum_terms(s)}}; }
template <> CharacterSum from_json<CharacterSum>(const json& j) { return sum_from(j.at("terms"), j.at("n").get<int>()); }

json to_json(const CharFraction& f) {
  CharFraction g = f.canonical();
  return json{{"num", sum_terms(g.num)}, {"den", sum_terms(g.den)}, {"text", to_string(g)}};
}
template <> CharFraction from_json<CharFraction>(const json& j) {
  // the length of rho is implied by the first term of the denominator
  const auto& den = j.at("den");
  if (den.empty()) throw Error(ErrorCode::InvalidInput, "empty denominator");
  const int n = static_cast<int>(den[0].size()) - 2;
  return CharFraction(sum_from(j.at("num"), n), sum_from(den, n));
}

json to_json(const CharMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    out.push_back(r);
  }
  return out;
}
template <> CharMatrix from_json<CharMatrix>(const json& j) {
  CharMatrix m;
  for (const auto& row : j) {
    std::vector<CharFraction> r;
    for (const auto& e : row) r.push_back(from_json<CharFraction>(e));
    m.push_back(std::move(r));
  }
  return m;
}

json to_json(const LogPoint& z) {
  json values = json::array();
  for (int j = 1; j <= z.size(); ++j) values.push_back(to_json(z.value(j)));
  return json{{"logAbs", to_json(z.logAbs)}, {"arg", to_json(z.arg)}, {"z", values}};
}
template <> LogPoint from_json<LogPoint>(const json& j) {
  return LogPoint::from_polar(from_json<Eigen::VectorXd>(j.at("logAbs")), from_json<Eigen::VectorXd>(j.at("arg")));
}

json to_json(const SectorWindow& w) { return json{{"lo", to_json(w.lo)}, {"hi", to_json(w.hi)}}; }
template <> SectorWindow from_json<SectorWindow>(const json& j) {
  return {from_json<Rational>(j.at("lo")), from_json<Rational>(j.at("hi"))};
}

json to_json(const PathSpec& p) {
  return json{{"args", to_json(p.args)},
              {"omegaStart", to_json(p.omegaStart)},
              {"omegaEnd", to_json(p.omegaEnd)},
              {"r", to_json(p.r)},
              {"zStart", to_json(p.zStart)},
              {"zEnd", to_json(p.zEnd)},
              {"sectorMargin", number(p.sectorMargin)},
              {"startSeriesCoordinate", number(p.startSeriesCoordinate)},
              {"endSeriesCoordinate", number(p.endSeriesCoordinate)},
              {"expansionCoordinate", number(p.expansionCoordinate)}};
}
template <> PathSpec from_json<PathSpec>(const json& j) {
  PathSpec p;
  p.args = from_json<Eigen::VectorXd>(j.at("args"));
  p.omegaStart = from_json<RatVector>(j.at("omegaStart"));
  p.omegaEnd = from_json<RatVector>(j.at("omegaEnd"));
  p.r = from_json<Rational>(j.at("r"));
  p.zStart = from_json<LogPoint>(j.at("zStart"));
  p.zEnd = from_json<LogPoint>(j.at("zEnd"));
  p.sectorMargin = real(j.at("sectorMargin"));
  p.startSeriesCoordinate = real(j.at("startSeriesCoordinate"));
  p.endSeriesCoordinate = real(j.at("endSeriesCoordinate"));
  p.expansionCoordinate = real(j.at("expansionCoordinate"));
  return p;
}

json to_json(const ConnectionMatrix& cm) {
  json src = json::array(), tgt = json::array(), rows = json::array();
  for (std::size_t r = 0; r < cm.source.size(); ++r) {
    src.push_back(to_json(cm.source[r]));
    rows.push_back(json{{"cell", labels(cm.rowCell[r])}, {"j0", cm.rowJ0[r]}});
  }
  for (const auto& t : cm.target) tgt.push_back(to_json(t));
  return json{{"modification", to_json(cm.mod)}, {"j0Target", cm.j0Target}, {"source", src},
              {"target", tgt},                   {"rows", rows},           {"entries", to_json(cm.entries)}};
}
template <> ConnectionMatrix from_json<ConnectionMatrix>(const json& j) {
  ConnectionMatrix cm;
  cm.mod = from_json<Modification>(j.at("modification"));
  cm.j0Target = j.at("j0Target").get<int>();
  for (const auto& s : j.at("source")) cm.source.push_back(from_json<GammaSeriesSpec>(s));
  for (const auto& s : j.at("target")) cm.target.push_back(from_json<GammaSeriesSpec>(s));
  for (const auto& r : j.at("rows")) {
    cm.rowCell.push_back(labels_from(r.at("cell")));
    cm.rowJ0.push_back(r.at("j0").get<int>());
  }
  cm.entries = from_json<CharMatrix>(j.at("entries"));
  return cm;
}

json to_json(const RowReport& r) {
  return json{{"row", r.row},
              {"label", r.label},
              {"circuit", r.circuit},
              {"defect", number(r.defect())},
              {"defectStart", number(r.defectStart)},
              {"defectEnd", number(r.defectEnd)},
              {"lhsStart", to_json(r.lhsStart)},
              {"rhsStart", to_json(r.rhsStart)},
              {"lhsEnd", to_json(r.lhsEnd)},
              {"rhsEnd", to_json(r.rhsEnd)},
              {"lhsMag", number(std::max(std::abs(r.lhsStart), std::abs(r.lhsEnd)))},
              {"rhsMag", number(std::max(std::abs(r.rhsStart), std::abs(r.rhsEnd)))},
              {"tail", number(r.tail)},
              {"converged", r.converged},
              {"error", r.error}};
}
template <> RowReport from_json<RowReport>(const json& j) {
  RowReport r;
  r.row = j.at("row").get<int>();
  r.label = j.at("label").get<std::string>();
  r.circuit = j.at("circuit").get<bool>();
  r.defectStart = real(j.at("defectStart"));
  r.defectEnd = real(j.at("defectEnd"));
  r.lhsStart = from_json<cplx>(j.at("lhsStart"));
  r.rhsStart = from_json<cplx>(j.at("rhsStart"));
  r.lhsEnd = from_json<cplx>(j.at("lhsEnd"));
  r.rhsEnd = from_json<cplx>(j.at("rhsEnd"));
  r.tail = real(j.at("tail"));
  r.converged = j.at("converged").get<bool>();
  r.error = j.at("error").get<std::string>();
  return r;
}

json to_json(const VerifyReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  return json{{"ok", r.ok},
              {"maxDefect", number(r.maxDefect)},
              {"order", r.order},
              {"evaluations", r.evaluations},
              {"rows", rows}};
}
template <> VerifyReport from_json<VerifyReport>(const json& j) {
  VerifyReport r;
  r.ok = j.at("ok").get<bool>();
  r.maxDefect = real(j.at("maxDefect"));
  r.order = j.at("order").get<int>();
  r.evaluations = j.at("evaluations").get<long>();
  for (const auto& row : j.at("rows")) r.rows.push_back(from_json<RowReport>(row));
  return r;
}

json to_json(const MBValue& v) {
  return json{{"value", to_json(v.value)},           {"estimate", number(v.estimate)},
              {"shift", number(v.shift)},            {"step", number(v.step)},
              {"height", number(v.height)},          {"sectorMargin", number(v.sectorMargin)},
              {"crossedPoles", v.crossedPoles}};
}
template <> MBValue from_json<MBValue>(const json& j) {
  MBValue v;
  v.value = from_json<cplx>(j.at("value"));
  v.estimate = real(j.at("estimate"));
  v.shift = real(j.at("shift"));
  v.step = real(j.at("step"));
  v.height = real(j.at("height"));
  v.sectorMargin = real(j.at("sectorMargin"));
  v.crossedPoles = j.at("crossedPoles").get<int>();
  return v;
}

json to_json(const Quadrature& q) {
  return json{{"shift", q.shift ? number(*q.shift) : json(nullptr)},
              {"step", q.step},
              {"height", q.height},
              {"tol", q.tol},
              {"maxHalvings", q.maxHalvings},
              {"maxPoints", q.maxPoints}};
}
template <> Quadrature from_json<Quadrature>(const json& j) {
  Quadrature q;
  if (j.contains("shift") && !j["shift"].is_null()) q.shift = j["shift"].get<double>();
  q.step = j.value("step", q.step);
  q.height = j.value("height", q.height);
  q.tol = j.value("tol", q.tol);
  q.maxHalvings = j.value("maxHalvings", q.maxHalvings);
  q.maxPoints = j.value("maxPoints", q.maxPoints);
  return q;
}

namespace {
template <class T, class F>
json optional_json(const std::optional<T>& x, F&& f) {
  return x ? f(*x) : json(nullptr);
}
template <class T, class F>
std::optional<T> optional_from(const json& j, const char* key, F&& f) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return f(j[key]);
}
}  // namespace

json to_json(const RunConfig& c) {
  auto rat = [](const auto& v) { return to_json(v); };
  return json{{"command", c.command},
              {"matrix", c.matrix},
              {"weight", optional_json(c.weight, rat)},
              {"from", optional_json(c.from, cell_list)},
              {"to", optional_json(c.to, cell_list)},
              {"fromWeight", optional_json(c.fromWeight, rat)},
              {"toWeight", optional_json(c.toWeight, rat)},
              {"order", c.order},
              {"tol", c.tol},
              {"target", c.target},
              {"quadrature", to_json(c.quad)},
              {"args", optional_json(c.args, rat)},
              {"r", optional_json(c.r, rat)},
              {"c", optional_json(c.c, rat)},
              {"absz", optional_json(c.absz, rat)},
              {"cell", optional_json(c.cell, labels)},
              {"j0", optional_json(c.j0, [](int x) { return json(x); })},
              {"ktilde", optional_json(c.ktilde, rat)},
              {"maxNodes", c.maxNodes},
              {"budget", c.budget},
              {"seed", c.seed},
              {"out", c.out},
              {"pretty", c.pretty}};
}
namespace {
template <class V>
bool same(const std::optional<V>& a, const std::optional<V>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  if constexpr (std::is_base_of_v<Eigen::EigenBase<V>, V>)
    return a->size() == b->size() && *a == *b;
  else
    return *a == *b;
}
}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.command == b.command && a.matrix == b.matrix && same(a.weight, b.weight) && same(a.from, b.from) &&
         same(a.to, b.to) && same(a.fromWeight, b.fromWeight) && same(a.toWeight, b.toWeight) &&
         a.order == b.order && a.tol == b.tol && a.target == b.target && a.quad == b.quad && same(a.args, b.args) &&
         same(a.r, b.r) && same(a.c, b.c) && same(a.absz, b.absz) && same(a.cell, b.cell) && same(a.j0, b.j0) &&
         same(a.ktilde, b.ktilde) && a.maxNodes == b.maxNodes && a.budget == b.budget && a.seed == b.seed &&
         a.out == b.out && a.pretty == b.pretty;
}

template <> RunConfig from_json<RunConfig>(const json& j) {
  RunConfig c;
  c.command = j.value("command", "");
  c.matrix = j.value("matrix", "");
  c.weight = optional_from<RatVector>(j, "weight", from_json<RatVector>);
  c.from = optional_from<std::vector<IndexSet>>(j, "from", cell_list_from);
  c.to = optional_from<std::vector<IndexSet>>(j, "to", cell_list_from);
  c.fromWeight = optional_from<RatVector>(j, "fromWeight", from_json<RatVector>);
  c.toWeight = optional_from<RatVector>(j, "toWeight", from_json<RatVector>);
  c.order = j.value("order", c.order);
  c.tol = j.value("tol", c.tol);
  c.target = j.value("target", c.target);
  if (j.contains("quadrature")) c.quad = from_json<Quadrature>(j["quadrature"]);
  c.args = optional_from<Eigen::VectorXd>(j, "args", from_json<Eigen::VectorXd>);
  c.r = optional_from<Rational>(j, "r", from_json<Rational>);
  c.c = optional_from<Eigen::VectorXcd>(j, "c", from_json<Eigen::VectorXcd>);
  c.absz = optional_from<Eigen::VectorXd>(j, "absz", from_json<Eigen::VectorXd>);
  c.cell = optional_from<IndexSet>(j, "cell", labels_from);
  c.j0 = optional_from<int>(j, "j0", [](const json& x) { return x.get<int>(); });
  c.ktilde = optional_from<IntVector>(j, "ktilde", from_json<IntVector>);
  c.maxNodes = j.value("maxNodes", c.maxNodes);
  c.budget = j.value("budget", c.budget);
  c.seed = j.value("seed", c.seed);
  c.out = j.value("out", "");
  c.pretty = j.value("pretty", false);
  return c;
}

RatVector parse_rational_list(std::string_view text) {
  auto parts = split(text, ", \t\n");
  RatVector v(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) v(i) = parse_rational(parts[i]);
  return v;
}

Eigen::VectorXd parse_real_list(std::string_view text) {
  auto parts = split(text, ", \t\n");
  Eigen::VectorXd v(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) v(i) = parse_double(parts[i]);
  return v;
}

Eigen::VectorXcd parse_complex_list(std::string_view text) {
  auto parts = split(text, ", \t\n");
  Eigen::VectorXcd v(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::string t = parts[i];
    if (t.back() != 'i' && t.back() != 'j') {
      v(i) = parse_double(t);
      continue;
    }
    t.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t cut = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;)
      if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
        cut = k;
        break;
      }
    auto imag = [&](std::string s) {
      if (s.empty() || s == "+") return 1.0;
      if (s == "-") return -1.0;
      return parse_double(s);
    };
    if (cut == std::string::npos) v(i) = cplx(0.0, imag(t));
    else v(i) = cplx(parse_double(t.substr(0, cut)), imag(t.substr(cut)));
  }
  return v;
}

IndexSet parse_labels(std::string_view text, int N) {
  auto parts = split(text, ", \t");
  IndexSet s;
  if (parts.size() == 1 && N < 10 && parts[0].size() > 1) {
    for (char ch : parts[0]) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw Error(ErrorCode::InvalidInput, "bad label list");
      s.push_back(ch - '0');
    }
  } else {
    for (const auto& p : parts) s.push_back(static_cast<int>(parse_double(p)));
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw Error(ErrorCode::InvalidInput, "repeated label");
  for (int l : s)
    if (l < 1 || l > N) throw Error(ErrorCode::InvalidInput, "label " + std::to_string(l) + " out of range");
  return s;
}

std::vector<IndexSet> parse_cells(std::string_view text, int N) {
  std::vector<IndexSet> out;
  for (const auto& part : split(text, ";")) out.push_back(parse_labels(part, N));
  std::sort(out.begin(), out.end());
  return out;
}

Configuration parse_matrix(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorCode::InvalidInput, "empty matrix");
  if (text[first] == '{' || text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidInput, std::string("bad JSON: ") + e.what());
    }
    return from_json<Configuration>(j);
  }
  std::vector<std::vector<long long>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long long> row;
    std::string tok;
    while (ls >> tok) row.push_back(static_cast<long long>(parse_double(tok)));
    if (!row.empty()) rows.push_back(row);
  }
  if (rows.empty()) throw Error(ErrorCode::InvalidInput, "empty matrix");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw Error(ErrorCode::InvalidInput, "ragged matrix");
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return Configuration(m);
}

Configuration read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

Eigen::VectorXcd default_parameters(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> num(-45, 45);
  Eigen::VectorXcd c(n);
  for (int i = 0; i < n; ++i) {
    int k = num(gen);
    if (k % 10 == 0) k += 3;
    c(i) = cplx(k / 97.0, (i == 0 ? 0.1 : 0.0));
  }
  return c;
}

}  // namespace gkz
