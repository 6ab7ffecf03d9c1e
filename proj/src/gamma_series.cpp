#include "gkz/gamma_series.hpp"

#include <cmath>
#include <numbers>

namespace gkz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI(0.0, 1.0);

// Calls f(m) for all m in N^k with |m| = d, lexicographically decreasing.
template <class F>
void for_each_composition(int k, int d, std::vector<int>& m, int pos, F& f) {
  if (pos == k - 1) {
    m[pos] = d;
    f(m);
    return;
  }
  for (int x = d; x >= 0; --x) {
    m[pos] = x;
    for_each_composition(k, d - x, m, pos + 1, f);
  }
}

}  // namespace

LogPoint LogPoint::from_complex(const Eigen::VectorXcd& z) {
  LogPoint p;
  p.logAbs.resize(z.size());
  p.arg.resize(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (z(j) == cplx(0.0)) throw Error(ErrorCode::InvalidInput, "coordinates must be nonzero");
    p.logAbs(j) = std::log(std::abs(z(j)));
    p.arg(j) = std::arg(z(j));
  }
  return p;
}

LogPoint LogPoint::from_polar(const Eigen::VectorXd& logAbs, const Eigen::VectorXd& arg) {
  if (logAbs.size() != arg.size()) throw Error(ErrorCode::InvalidInput, "size mismatch");
  return LogPoint{logAbs, arg};
}

LogPoint LogPoint::shifted(int label, cplx delta) const {
  LogPoint p = *this;
  const cplx z = value(label), w = z + delta;
  if (w == cplx(0.0)) throw Error(ErrorCode::InvalidInput, "coordinates must be nonzero");
  p.logAbs(label - 1) = std::log(std::abs(w));
  p.arg(label - 1) += std::arg(w / z);
  return p;
}

GammaSeries::GammaSeries(const Configuration& A, GammaSeriesSpec spec)
    : spec_(std::move(spec)), simplex_(simplex_data(A, spec_.sigma)), N_(A.N()) {
  if (set_union(spec_.upper, spec_.lower) != spec_.sigma || !set_intersection(spec_.upper, spec_.lower).empty())
    throw Error(ErrorCode::InvalidInput, "upper and lower parts must partition the simplex");
  if (spec_.ktilde.size() == 0) spec_.ktilde = IntVector::Zero(A.n());
  if (spec_.ktilde.size() != A.n()) throw Error(ErrorCode::InvalidInput, "representative has wrong length");
  inverse_ = to_double(simplex_.inverse);
  for (int j = 1; j <= A.N(); ++j)
    if (!contains(spec_.sigma, j)) off_.push_back(j);
  q_.resize(A.n(), static_cast<Eigen::Index>(off_.size()));
  for (std::size_t k = 0; k < off_.size(); ++k) {
    RatVector qr = p_vector(simplex_, A.rational_column(off_[k]));
    q_.col(k) = to_double(qr);
    critical_.push_back(qr.sum() == 1);
    double logC = 0.0;
    for (Eigen::Index i = 0; i < qr.size(); ++i) {
      const double x = std::fabs(q_(i, k));
      if (x > 0) logC += (q_(i, k) > 0 ? 1.0 : -1.0) * x * std::log(x);
    }
    growth_.push_back(std::exp(logC));
  }
  for (int l : spec_.sigma) isUpper_.push_back(contains(spec_.upper, l));
}

double GammaSeries::domain_ratio(const LogPoint& z, int j) const {
  auto it = std::find(off_.begin(), off_.end(), j);
  if (it == off_.end()) throw Error(ErrorCode::NotASeriesInZj, std::to_string(j) + " lies in the simplex");
  const std::size_t k = it - off_.begin();
  if (!critical_[k]) return 0.0;
  double logx = z.logAbs(j - 1);
  for (std::size_t i = 0; i < spec_.sigma.size(); ++i) logx -= q_(i, k) * z.logAbs(spec_.sigma[i] - 1);
  return std::exp(logx) * growth_[k];
}

SeriesValue GammaSeries::evaluate(const LogPoint& z, const Eigen::VectorXcd& c, const EvalOptions& opt) const {
  const int n = static_cast<int>(spec_.sigma.size());
  if (z.size() != N_) throw Error(ErrorCode::InvalidInput, "point has wrong dimension");
  if (c.size() != n) throw Error(ErrorCode::InvalidInput, "parameter has wrong dimension");
  for (int j : opt.zeroed)
    if (contains(spec_.sigma, j)) throw Error(ErrorCode::NotASeriesInZj, std::to_string(j) + " lies in the simplex");

  std::vector<int> freeCols;  // positions in off_
  for (std::size_t k = 0; k < off_.size(); ++k)
    if (!contains(opt.zeroed, off_[k])) freeCols.push_back(static_cast<int>(k));

  if (opt.checkDomain)
    for (int k : freeCols)
      if (double r = domain_ratio(z, off_[k]); r >= 1.0)
        throw Error(ErrorCode::OutsideDomain,
                    "local coordinate for column " + std::to_string(off_[k]) + " is " + std::to_string(r) +
                        " times the radius");

  const Eigen::VectorXcd p0 = inverse_.cast<cplx>() * c;
  std::vector<cplx> phase(n);
  for (int i = 0; i < n; ++i) {
    const int l = spec_.sigma[i];
    phase[i] = cplx(z.logAbs(l - 1), z.arg(l - 1) + kTwoPi * spec_.ktilde(i).convert_to<double>() +
                                          (isUpper_[i] ? std::numbers::pi : 0.0));
  }
  std::vector<cplx> logz;
  for (int k : freeCols) logz.push_back(z.log(off_[k]));
  std::vector<double> logFact(opt.order + 1, 0.0);
  for (int m = 1; m <= opt.order; ++m) logFact[m] = logFact[m - 1] + std::log(double(m));

  SeriesValue out;
  const int K = static_cast<int>(freeCols.size());
  cplx shell = 0.0;
  auto term = [&](const std::vector<int>& m) {
    Eigen::VectorXcd pv = p0;
    cplx logt = 0.0;
    for (int k = 0; k < K; ++k) {
      if (m[k] == 0) continue;
      pv += double(m[k]) * q_.col(freeCols[k]).cast<cplx>();
      logt += double(m[k]) * logz[k] - logFact[m[k]];
    }
    for (int i = 0; i < n; ++i) {
      if (isUpper_[i]) {
        if (is_nonpositive_integer(pv(i))) throw Error(ErrorCode::PoleHit, "Gamma pole in an upper factor");
        logt += log_gamma(pv(i));
      } else {
        if (is_nonpositive_integer(1.0 - pv(i))) return;
        logt -= log_gamma(1.0 - pv(i));
      }
      logt -= pv(i) * phase[i];
    }
    shell += std::exp(logt);
    ++out.terms;
  };

  std::vector<int> m(std::max(K, 1), 0);
  for (int d = 0; d <= opt.order; ++d) {
    shell = 0.0;
    if (K == 0) {
      if (d == 0) term(m);
    } else {
      for_each_composition(K, d, m, 0, term);
    }
    out.value += shell;
    out.lastShell = std::abs(shell);
    if (K == 0) break;
  }
  out.converged = out.lastShell <= opt.tol * std::abs(out.value) || out.lastShell == 0.0;
  if (opt.strict && !out.converged)
    throw Error(ErrorCode::NonConverged, "last shell " + std::to_string(out.lastShell) + " exceeds tolerance");
  return out;
}

SeriesValue evaluate(const Configuration& A, const GammaSeriesSpec& spec, const LogPoint& z,
                     const Eigen::VectorXcd& c, int order, double tol) {
  EvalOptions opt;
  opt.order = order;
  opt.tol = tol;
  return GammaSeries(A, spec).evaluate(z, c, opt);
}

std::vector<GammaSeriesSpec> build_basis(const Configuration& A, const Subdivision& T,
                                         const std::map<IndexSet, IndexSet>& upper,
                                         const std::map<IndexSet, std::vector<IntVector>>& reps) {
  if (!is_convergent(A, T)) throw Error(ErrorCode::NotConvergent, "triangulation is not convergent");
  std::vector<GammaSeriesSpec> basis;
  for (const auto& sigma : T.cells) {
    SimplexData s = simplex_data(A, sigma);
    GammaSeriesSpec spec;
    spec.sigma = sigma;
    if (auto it = upper.find(sigma); it != upper.end()) spec.upper = it->second;
    spec.lower = set_minus(sigma, spec.upper);
    std::vector<IntVector> ks;
    if (auto it = reps.find(sigma); it != reps.end())
      ks = it->second;
    else
      ks = quotient_reps(A, s).reps;
    for (const auto& k : ks) {
      spec.ktilde = k;
      basis.push_back(spec);
    }
  }
  return basis;
}

Evaluator series_evaluator(const Configuration& A, const GammaSeriesSpec& spec, double tol) {
  auto series = std::make_shared<GammaSeries>(A, spec);
  return [series, tol](const LogPoint& z, const Eigen::VectorXcd& c, int order, const IndexSet& zeroed) {
    EvalOptions opt;
    opt.order = order;
    opt.tol = tol;
    opt.zeroed = zeroed;
    return series->evaluate(z, c, opt);
  };
}

Evaluator apply_D(Evaluator f, const Configuration& A, int j) {
  Eigen::VectorXcd aj = to_double(A.rational_column(j)).cast<cplx>();
  return [f = std::move(f), aj, j](const LogPoint& z, const Eigen::VectorXcd& c, int order, const IndexSet& zeroed) {
    IndexSet inner = set_union(zeroed, {j});
    if (contains(zeroed, j)) return f(z, c, order, inner);
    SeriesValue out;
    out.converged = true;
    const cplx logzj = z.log(j);
    double logFact = 0.0;
    for (int m = 0; m <= order; ++m) {
      if (m > 0) logFact += std::log(double(m));
      SeriesValue inside = f(z, c + double(m) * aj, order - m, inner);
      const cplx w = std::exp(double(m) * logzj - logFact);
      out.value += w * inside.value;
      out.lastShell += std::abs(w) * inside.lastShell;
      out.terms += inside.terms;
      if (m == order) out.lastShell += std::abs(w * inside.value);
      out.converged = out.converged && inside.converged;
    }
    return out;
  };
}

Evaluator boundary_value(Evaluator f, int j) {
  return [f = std::move(f), j](const LogPoint& z, const Eigen::VectorXcd& c, int order, const IndexSet& zeroed) {
    return f(z, c, order, set_union(zeroed, {j}));
  };
}

Evaluator boundary_value(const Configuration& A, const GammaSeriesSpec& spec, int j) {
  if (contains(spec.sigma, j)) throw Error(ErrorCode::NotASeriesInZj, std::to_string(j) + " lies in the simplex");
  return boundary_value(series_evaluator(A, spec), j);
}

std::vector<IntVector> dual_reps(const SimplexData& s) { return lattice_quotient(s.inverse, s.volume()); }

Eigen::MatrixXcd character_matrix(const SimplexData& s, const std::vector<IntVector>& reps,
                                  const std::vector<IntVector>& dual) {
  Eigen::MatrixXcd U(reps.size(), dual.size());
  const double scale = 1.0 / std::sqrt(double(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < dual.size(); ++b) {
      Rational t = to_rational(reps[a]).dot(s.inverse * to_rational(dual[b]));
      U(a, b) = scale * std::exp(-kTwoPi * kI * to_double(frac(t)));
    }
  return U;
}

double resonance_margin(const Configuration& A, const Subdivision& T, const Eigen::VectorXcd& c) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& sigma : T.cells) {
    SimplexData s = simplex_data(A, sigma);
    Eigen::MatrixXd inv = to_double(s.inverse);
    for (const auto& v : dual_reps(s)) {
      Eigen::VectorXcd x = inv.cast<cplx>() * (c + to_double(to_rational(v)).cast<cplx>());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double d = std::hypot(x(i).real() - std::round(x(i).real()), x(i).imag());
        margin = std::min(margin, d);
      }
    }
  }
  return margin;
}

}  // namespace gkz
