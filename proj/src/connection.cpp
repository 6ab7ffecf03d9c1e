#include "gkz/connection.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace gkz {

namespace {

constexpr double kPi = std::numbers::pi;

std::optional<IndexSet> cell_containing(const Modification& mod, const IndexSet& sigma) {
  for (const auto& I : mod.cells)
    if (is_subset(sigma, I)) return I;
  return std::nullopt;
}

RatVector row_of(const RatMatrix& m, int pos) { return m.row(pos).transpose(); }

// The index in basis of the series on spec.sigma whose representative is in
// the class of k.
int find_in_class(const std::vector<GammaSeriesSpec>& basis, const SimplexData& s, const IntVector& k,
                  IntVector* w) {
  for (std::size_t t = 0; t < basis.size(); ++t) {
    if (basis[t].sigma != s.sigma) continue;
    if (auto d = class_difference(s, k, basis[t].ktilde)) {
      if (w) *w = *d;
      return static_cast<int>(t);
    }
  }
  return -1;
}

RatVector negated(const IntVector& w) {
  RatVector r(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) r(i) = Rational(-w(i));
  return r;
}

}  // namespace

std::string series_label(const GammaSeriesSpec& spec) {
  std::ostringstream out;
  out << "psi[" << label_string(spec.sigma) << "]";
  if (!spec.upper.empty()) out << "^" << label_string(spec.upper);
  out << "_k=(";
  for (Eigen::Index i = 0; i < spec.ktilde.size(); ++i) out << (i ? "," : "") << spec.ktilde(i);
  out << ")";
  return out.str();
}

SeriesExpansion expand_in_basis(const Configuration& A, const GammaSeriesSpec& from,
                                const std::vector<GammaSeriesSpec>& basis) {
  SimplexData s = simplex_data(A, from.sigma);
  const GammaSeriesSpec* to = nullptr;
  for (const auto& b : basis)
    if (b.sigma == from.sigma) {
      if (to && to->upper != b.upper)
        throw Error(ErrorCode::RepresentativeMismatch, "mixed partitions on " + label_string(from.sigma));
      to = &b;
    }
  if (!to) throw Error(ErrorCode::RepresentativeMismatch, "no basis series on " + label_string(from.sigma));

  // Termwise, upper = lower * 2 pi i / (e^{2 pi i p} - 1). With e^{2 pi i d p}
  // constant along the series,
  //   1/(e^{2 pi i p} - 1) = sum_{t<d} e^{2 pi i t p} / (e^{2 pi i d p} - 1),
  // and e^{2 pi i v.p} turns psi_k into psi_{k-v}.
  const int n = A.n();
  const int size = static_cast<int>(from.sigma.size());
  std::vector<std::pair<IntVector, CharFraction>> terms{{IntVector::Zero(size), CharFraction::constant(n, 1)}};
  RatMatrix moved = s.inverse * A.rational();
  SeriesExpansion out;
  for (int j : set_minus(from.upper, to->upper)) {
    const int pos = position(from.sigma, j);
    Integer d = 1;
    for (Eigen::Index c = 0; c < moved.cols(); ++c) d = mp::lcm(d, Integer(mp::denominator(moved(pos, c))));
    const CharFraction scale(CharacterSum::constant(n, 1), exp_minus_one(row_of(s.inverse, pos) * Rational(d)));
    std::vector<std::pair<IntVector, CharFraction>> next;
    for (const auto& [v, coef] : terms)
      for (Integer t = 0; t < d; ++t) {
        IntVector w = v;
        w(pos) += t;
        next.emplace_back(w, coef * scale);
      }
    terms = std::move(next);
    ++out.twoPiI;
  }
  for (int j : set_minus(to->upper, from.upper)) {
    const int pos = position(from.sigma, j);
    std::vector<std::pair<IntVector, CharFraction>> next;
    for (const auto& [v, coef] : terms) {
      IntVector w = v;
      w(pos) += 1;
      next.emplace_back(w, coef);
      next.emplace_back(v, CharFraction::constant(n, -1) * coef);
    }
    terms = std::move(next);
    --out.twoPiI;
  }

  out.row.assign(basis.size(), CharFraction(n));
  for (const auto& [v, coef] : terms) {
    IntVector w;
    const int col = find_in_class(basis, s, IntVector(from.ktilde - v), &w);
    if (col < 0) throw Error(ErrorCode::RepresentativeMismatch, "incomplete representatives on " + label_string(from.sigma));
    out.row[col] = out.row[col] + coef * CharFraction::character(negated(w));
  }
  return out;
}

BasisChange basis_change(const Configuration& A, const std::vector<GammaSeriesSpec>& from,
                         const std::vector<GammaSeriesSpec>& to) {
  if (from.size() != to.size()) throw Error(ErrorCode::RepresentativeMismatch, "bases of different sizes");
  BasisChange out;
  for (const auto& spec : from) {
    SeriesExpansion e = expand_in_basis(A, spec, to);
    out.matrix.push_back(std::move(e.row));
    out.twoPiI.push_back(e.twoPiI);
  }
  return out;
}

CharMatrix relabel(const Configuration& A, const std::vector<GammaSeriesSpec>& basis, const IntVector& h) {
  CharMatrix out(basis.size(), std::vector<CharFraction>(basis.size(), CharFraction(A.n())));
  for (std::size_t r = 0; r < basis.size(); ++r) {
    SimplexData s = simplex_data(A, basis[r].sigma);
    IntVector k = basis[r].ktilde;
    for (std::size_t t = 0; t < basis[r].sigma.size(); ++t) k(t) += h(basis[r].sigma[t] - 1);
    IntVector w;
    const int col = find_in_class(basis, s, k, &w);
    if (col < 0) throw Error(ErrorCode::RepresentativeMismatch, "incomplete representatives");
    out[r][col] = CharFraction::character(negated(w));
  }
  return out;
}

ConnectionMatrix build_connection(const Configuration& A, const Modification& mod, std::optional<int> j0Target) {
  ConnectionMatrix cm;
  cm.mod = mod;
  const IndexSet& plus = mod.circuit.plus;
  const IndexSet& minus = mod.circuit.minus;
  cm.j0Target = j0Target.value_or(plus.back());
  if (!contains(plus, cm.j0Target)) throw Error(ErrorCode::InvalidInput, "target column must lie in Z_+");

  for (const auto& sigma : mod.source.cells) {
    SimplexData s = simplex_data(A, sigma);
    auto I = cell_containing(mod, sigma);
    if (!I) {
      for (const auto& k : quotient_reps(A, s).reps) {
        cm.source.push_back({sigma, {}, sigma, k});
        cm.rowCell.emplace_back();
        cm.rowJ0.push_back(0);
      }
      continue;
    }
    const int j0 = set_minus(*I, sigma)[0];
    for (const auto& k : quotient_reps(A, s, j0).reps) {
      cm.source.push_back({sigma, minus, set_minus(sigma, minus), k});
      cm.rowCell.push_back(*I);
      cm.rowJ0.push_back(j0);
    }
  }
  for (const auto& sigma : mod.target.cells) {
    SimplexData s = simplex_data(A, sigma);
    auto I = cell_containing(mod, sigma);
    IndexSet upper;
    if (I) {
      const int i = set_minus(*I, sigma)[0];
      if (!contains(minus, i)) throw Error(ErrorCode::NotAdjacent, "target simplex misses a Z_+ column");
      upper = set_union(set_minus(minus, {i}), {cm.j0Target});
    }
    for (const auto& k : quotient_reps(A, s).reps) cm.target.push_back({sigma, upper, set_minus(sigma, upper), k});
  }
  if (cm.source.size() != cm.target.size())
    throw Error(ErrorCode::RepresentativeMismatch, "bases of different sizes");

  const int n = A.n();
  cm.entries.assign(cm.source.size(), std::vector<CharFraction>(cm.target.size(), CharFraction(n)));
  for (std::size_t r = 0; r < cm.source.size(); ++r) {
    if (cm.rowCell[r].empty()) {
      cm.entries[r] = expand_in_basis(A, cm.source[r], cm.target).row;
      continue;
    }
    MBIntegrand ig(A, cm.rowCell[r], cm.rowJ0[r], cm.source[r].ktilde);
    for (const auto& [coef, spec] : ig.negative_specs()) {
      SeriesExpansion e = expand_in_basis(A, spec, cm.target);
      if (e.twoPiI != 0) throw Error(ErrorCode::RepresentativeMismatch, "unbalanced partition change");
      const CharFraction scale = CharFraction::constant(n, GaussianRational(coef));
      for (std::size_t k = 0; k < e.row.size(); ++k)
        if (!e.row[k].is_zero()) cm.entries[r][k] = cm.entries[r][k] + scale * e.row[k];
    }
  }
  return cm;
}

SectorWindow common_sector(const Configuration& A, const Modification& mod) {
  const Circuit& z = mod.circuit;
  Rational uMinus = 0;
  for (int i : z.minus) uMinus += Rational(-z.coefficient(i));
  std::optional<SectorWindow> w;
  for (const auto& I : mod.cells)
    for (int j0 : z.plus) {
      SimplexData s = simplex_data(A, set_minus(I, {j0}));
      RatVector q = p_vector(s, A.rational_column(j0));
      const Rational uj = z.coefficient(j0);
      for (const auto& k : quotient_reps(A, s, j0).reps) {
        Rational S = 0;
        for (Eigen::Index t = 0; t < q.size(); ++t) S += Rational(k(t)) * q(t);
        SectorWindow here{uMinus + 2 * uj * (S - 1), uMinus + 2 * uj * S};
        if (!w) w = here;
        else w = SectorWindow{std::max(w->lo, here.lo), std::min(w->hi, here.hi)};
      }
    }
  if (!w) throw Error(ErrorCode::EmptySector, "no corank-1 cells");
  return *w;
}

double theta(const Modification& mod, const Eigen::VectorXd& args) {
  double t = 0.0;
  for (int j : mod.circuit.Z) t += mod.circuit.coefficient(j) * args(j - 1);
  return t;
}

Eigen::VectorXd centered_arguments(const Configuration& A, const Modification& mod) {
  SectorWindow w = common_sector(A, mod);
  if (w.empty()) throw Error(ErrorCode::EmptySector, "the sector conditions have no common solution");
  Eigen::VectorXd args = Eigen::VectorXd::Zero(A.N());
  const int j = mod.circuit.Z.front();
  args(j - 1) = kPi * to_double(Rational((w.lo + w.hi) / 2)) / mod.circuit.coefficient(j);
  return args;
}

LogPoint PathSpec::at(double t) const {
  Eigen::VectorXd om = (1.0 - t) * to_double(omegaStart) + t * to_double(omegaEnd);
  return LogPoint::from_polar(-om, args);
}

double expansion_coordinate(const Configuration&, const Modification& mod, const RatVector& omega) {
  double worst = 0.0;
  for (const auto& c : mod.ctilde) worst = std::max(worst, std::exp(-to_double(Rational((c.functional * omega)(0)))));
  return worst;
}

namespace {

// Largest x C over the series of T at -log|z| = omega.
double series_coordinate(const Configuration& A, const Subdivision& T, const RatVector& omega) {
  double worst = 0.0;
  for (const auto& sigma : T.cells) {
    SimplexData s = simplex_data(A, sigma);
    for (int k = 1; k <= A.N(); ++k) {
      if (contains(sigma, k)) continue;
      RatVector q = p_vector(s, A.rational_column(k));
      Rational ell = omega(k - 1);
      double logC = 0.0;
      for (Eigen::Index t = 0; t < q.size(); ++t) {
        ell -= omega(sigma[t] - 1) * q(t);
        const double x = std::fabs(to_double(q(t)));
        if (x > 0) logC += (q(t) > 0 ? 1.0 : -1.0) * x * std::log(x);
      }
      worst = std::max(worst, std::exp(logC - to_double(ell)));
    }
  }
  return worst;
}

RatVector scaled_into(const ConeSystem& cone, const std::function<double(const RatVector&)>& size, double target,
                      int maxDoublings, const char* what) {
  auto p = interior_point(cone);
  if (!p) throw Error(ErrorCode::EmptySector, std::string("empty cone for ") + what);
  Rational s = 1;
  for (int i = 0; i <= maxDoublings; ++i, s *= 2) {
    RatVector om = p->x * s;
    if (size(om) <= target) return om;
  }
  throw Error(ErrorCode::MarginTooSmall, std::string("could not reach the target for ") + what);
}

}  // namespace

PathSpec build_path(const Configuration& A, const Modification& mod, const PathOptions& opt) {
  PathSpec path;
  SectorWindow w = common_sector(A, mod);
  if (w.empty()) throw Error(ErrorCode::EmptySector, "the sector conditions have no common solution");
  path.args = opt.args ? *opt.args : centered_arguments(A, mod);
  if (path.args.size() != A.N()) throw Error(ErrorCode::InvalidInput, "one argument per column expected");
  const double t = theta(mod, path.args) / kPi;
  if (!(t > to_double(w.lo) && t < to_double(w.hi)))
    throw Error(ErrorCode::SectorViolation, "Theta/pi = " + std::to_string(t) + " outside (" + to_string(w.lo) +
                                                ", " + to_string(w.hi) + ")");

  ConeSystem start = secondary_cone(A, mod.source);
  path.omegaStart = scaled_into(
      start, [&](const RatVector& om) { return series_coordinate(A, mod.source, om); }, opt.target,
      opt.maxDoublings, "the source chamber");
  ConeSystem end = secondary_cone(A, mod.target);
  for (const auto& g : mod.ctilde_cone(A.N()).strict) end.strict.push_back(g);
  path.omegaEnd = scaled_into(
      end, [&](const RatVector& om) { return series_coordinate(A, mod.target, om); }, opt.target, opt.maxDoublings,
      "the target chamber");

  auto expansion = [&](const Rational& r) {
    return std::max(expansion_coordinate(A, mod, path.omegaStart + mod.omegaQ * r),
                    expansion_coordinate(A, mod, path.omegaEnd + mod.omegaQ * r));
  };
  if (opt.r) {
    path.r = *opt.r;
  } else {
    path.r = 1;
    int i = 0;
    while (expansion(path.r) > opt.target) {
      if (++i > opt.maxDoublings) throw Error(ErrorCode::MarginTooSmall, "omega_Q translation does not suffice");
      path.r *= 2;
    }
  }
  path.omegaStart += mod.omegaQ * path.r;
  path.omegaEnd += mod.omegaQ * path.r;
  path.zStart = path.at(0.0);
  path.zEnd = path.at(1.0);
  path.startSeriesCoordinate = series_coordinate(A, mod.source, path.omegaStart);
  path.endSeriesCoordinate = series_coordinate(A, mod.target, path.omegaEnd);
  path.expansionCoordinate = expansion(0);

  path.sectorMargin = kPi;
  for (const auto& I : mod.cells)
    for (int j0 : mod.circuit.plus) {
      SimplexData s = simplex_data(A, set_minus(I, {j0}));
      for (const auto& k : quotient_reps(A, s, j0).reps)
        path.sectorMargin = std::min(path.sectorMargin, MBIntegrand(A, I, j0, k).sector_margin(path.zStart));
    }
  return path;
}

int thread_count(int requested) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("GG_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) hw = std::min(hw, cap);
  }
  return requested > 0 ? std::min(requested, hw) : hw;
}

namespace {

double relative(cplx a, cplx b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// All m in N^k with |m| <= order, by shells.
std::vector<std::vector<int>> exponents(int k, int order) {
  std::vector<std::vector<int>> out;
  std::vector<int> m(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k) {
      out.push_back(m);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      m[pos] = x;
      rec(pos + 1, left - x);
    }
    m[pos] = 0;
  };
  rec(0, order);
  return out;
}

struct Expansion {
  cplx value = 0.0;
  double lastShell = 0.0;
};

// sum_m I(z_I; c + A_Ibar m) z_Ibar^m / m!
Expansion expand(const Configuration& A, const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c,
                 int order, const Quadrature& quad, const std::vector<std::vector<int>>& ms, const IndexSet& off) {
  Expansion out;
  cplx last = 0.0;
  for (const auto& m : ms) {
    Eigen::VectorXcd cm = c;
    cplx logMono = 0.0;
    int total = 0;
    for (std::size_t t = 0; t < off.size(); ++t) {
      if (m[t] == 0) continue;
      cm += double(m[t]) * to_double(A.rational_column(off[t])).cast<cplx>();
      logMono += double(m[t]) * z.log(off[t]) - std::lgamma(m[t] + 1.0);
      total += m[t];
    }
    const cplx term = mb_evaluate(ig, z, cm, quad).value * std::exp(logMono);
    out.value += term;
    if (total == order) last += term;
  }
  out.lastShell = std::abs(last);
  return out;
}

}  // namespace

VerifyReport verify_connection(const Configuration& A, const ConnectionMatrix& cm, const PathSpec& path,
                               const Eigen::VectorXcd& c, const VerifyOptions& opt) {
  VerifyReport report;
  report.order = opt.order;
  report.rows.resize(cm.source.size());
  const IndexSet all = full_set(A.N());

  long needed = 0;
  for (std::size_t r = 0; r < cm.source.size(); ++r)
    if (!cm.rowCell[r].empty())
      needed += 2 * static_cast<long>(exponents(static_cast<int>(set_minus(all, cm.rowCell[r]).size()), opt.order).size());
  if (opt.budget > 0 && needed > opt.budget)
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(needed) + " Mellin-Barnes evaluations exceed the budget of " + std::to_string(opt.budget));
  report.evaluations = needed;

  // Target series values at the end point, shared by all rows.
  std::vector<SeriesValue> targetEnd(cm.target.size());
  std::vector<std::string> targetError(cm.target.size());

  auto series_at = [&](const GammaSeriesSpec& spec, const LogPoint& z) {
    EvalOptions eo;
    eo.order = opt.order;
    eo.tol = 1e-15;
    eo.checkDomain = false;
    return GammaSeries(A, spec).evaluate(z, c, eo);
  };

  const int threads = std::max(1, std::min<int>(thread_count(opt.threads), static_cast<int>(cm.source.size())));
  auto parallel = [&](std::size_t count, const std::function<void(std::size_t)>& job) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  };

  parallel(cm.target.size(), [&](std::size_t k) {
    try {
      targetEnd[k] = series_at(cm.target[k], path.zEnd);
    } catch (const Error& e) {
      targetError[k] = e.what();
    }
  });

  parallel(cm.source.size(), [&](std::size_t r) {
    RowReport& row = report.rows[r];
    row.row = static_cast<int>(r);
    row.label = series_label(cm.source[r]);
    row.circuit = !cm.rowCell[r].empty();
    try {
      if (!row.circuit) {
        SeriesValue a = series_at(cm.source[r], path.zStart), b = series_at(cm.source[r], path.zEnd);
        row.lhsStart = row.rhsStart = a.value;
        row.lhsEnd = row.rhsEnd = b.value;
        row.tail = std::max(a.lastShell, b.lastShell);
        return;
      }
      const IndexSet off = set_minus(all, cm.rowCell[r]);
      const auto ms = exponents(static_cast<int>(off.size()), opt.order);
      MBIntegrand ig(A, cm.rowCell[r], cm.rowJ0[r], cm.source[r].ktilde);

      Expansion start = expand(A, ig, path.zStart, c, opt.order, opt.quad, ms, off);
      SeriesValue direct = series_at(cm.source[r], path.zStart);
      row.lhsStart = start.value;
      row.rhsStart = direct.value;
      row.defectStart = relative(start.value, direct.value);

      Expansion end = expand(A, ig, path.zEnd, c, opt.order, opt.quad, ms, off);
      cplx rhs = 0.0;
      double tail = 0.0;
      for (std::size_t k = 0; k < cm.target.size(); ++k) {
        if (cm.entries[r][k].is_zero()) continue;
        if (!targetError[k].empty()) throw Error(ErrorCode::NonConverged, targetError[k]);
        rhs += cm.entries[r][k].evaluate(c) * targetEnd[k].value;
        tail = std::max(tail, targetEnd[k].lastShell);
      }
      row.lhsEnd = end.value;
      row.rhsEnd = rhs;
      row.defectEnd = relative(end.value, rhs);
      row.tail = std::max({start.lastShell, end.lastShell, direct.lastShell, tail});
    } catch (const Error& e) {
      row.converged = false;
      row.error = e.what();
      row.defectStart = row.defectEnd = std::numeric_limits<double>::infinity();
    }
  });

  for (const auto& row : report.rows) {
    report.maxDefect = std::max(report.maxDefect, row.defect());
    if (!row.converged || !(row.defect() < opt.tol)) report.ok = false;
  }
  return report;
}

RoundTrip round_trip(const Configuration& A, const Subdivision& T, const Subdivision& Tprime) {
  Modification fwd = modification(A, T, Tprime), rev = modification(A, Tprime, T);
  ConnectionMatrix M = build_connection(A, fwd), R = build_connection(A, rev);
  Eigen::VectorXd args = centered_arguments(A, fwd);
  SectorWindow w = common_sector(A, rev);

  // Shift the labels of the circuit columns by 2 pi h until the reverse
  // sectors hold; smallest |h|_1 first.
  const IndexSet& Z = fwd.circuit.Z;
  std::vector<IntVector> candidates;
  std::vector<int> h(Z.size(), -3);
  while (true) {
    IntVector full = IntVector::Zero(A.N());
    for (std::size_t t = 0; t < Z.size(); ++t) full(Z[t] - 1) = h[t];
    candidates.push_back(full);
    std::size_t t = 0;
    while (t < h.size() && h[t] == 3) h[t++] = -3;
    if (t == h.size()) break;
    ++h[t];
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const IntVector& a, const IntVector& b) {
    Integer na = 0, nb = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      na += mp::abs(a(i));
      nb += mp::abs(b(i));
    }
    return na < nb;
  });
  std::optional<IntVector> found;
  for (const auto& cand : candidates) {
    Eigen::VectorXd shifted = args + 2.0 * kPi * to_double(cand);
    const double t = theta(rev, shifted) / kPi;
    if (t > to_double(w.lo) + 1e-9 && t < to_double(w.hi) - 1e-9) {
      found = cand;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::EmptySector, "no relabelling brings the reverse sectors into reach");

  BasisChange B1 = basis_change(A, M.target, R.source);
  BasisChange B2 = basis_change(A, R.target, M.source);
  CharMatrix Prs = relabel(A, R.source, *found), Prt = relabel(A, R.target, *found);
  RoundTrip out;
  out.h = *found;
  out.product = multiply(multiply(multiply(multiply(multiply(M.entries, B1.matrix), monomial_inverse(Prs)), R.entries),
                                  Prt),
                         B2.matrix);
  out.identity = is_identity(out.product);
  return out;
}

}  // namespace gkz
