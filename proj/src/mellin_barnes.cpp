#include "gkz/mellin_barnes.hpp"

#include <cmath>
#include <limits>

namespace gkz {

namespace {

constexpr double kPi = MBIntegrand::kPi;
// A log plus a flag for exact zeros of 1/Gamma.
struct LogTerm {
  cplx log = 0.0;
  bool zero = false;
};

}  // namespace

MBIntegrand::MBIntegrand(const Configuration& A, const IndexSet& I, int j0, IntVector ktilde)
    : A_(A), I_(I), sigma_(set_minus(I, {j0})), j0_(j0), ktilde_(std::move(ktilde)) {
  if (static_cast<int>(I_.size()) != A.n() + 1 || !contains(I_, j0))
    throw Error(ErrorCode::InvalidInput, "cell must have n+1 columns and contain j0");
  circuit_ = circuit_of(A, I_, j0);
  if (!contains(circuit_.plus, j0)) throw Error(ErrorCode::InvalidInput, "j0 must lie in the circuit");
  SimplexData s = simplex_data(A, sigma_);
  if (ktilde_.size() == 0) ktilde_ = IntVector::Zero(A.n());
  if (ktilde_.size() != A.n()) throw Error(ErrorCode::InvalidInput, "representative has wrong length");
  q_ = p_vector(s, A.rational_column(j0));
  qd_ = to_double(q_);
  inverse_ = to_double(s.inverse);
  for (int l : sigma_) kind_.push_back(contains(circuit_.minus, l) ? -1 : contains(circuit_.plus, l) ? 1 : 0);
}

cplx MBIntegrand::log_base(const LogPoint& z, int pos) const {
  const int l = sigma_[pos];
  const double shift = 2.0 * kPi * to_double(Integer(ktilde_(pos))) + (kind_[pos] < 0 ? kPi : 0.0);
  return {z.logAbs(l - 1), z.arg(l - 1) + shift};
}

double MBIntegrand::arg_zeta(const LogPoint& z) const {
  double a = z.arg(j0_ - 1) + kPi;
  for (std::size_t k = 0; k < sigma_.size(); ++k) a -= qd_(k) * log_base(z, static_cast<int>(k)).imag();
  return a;
}

double MBIntegrand::abs_zeta(const LogPoint& z) const {
  double l = z.logAbs(j0_ - 1);
  for (std::size_t k = 0; k < sigma_.size(); ++k) l -= qd_(k) * z.logAbs(sigma_[k] - 1);
  return std::exp(l);
}

namespace {

// The integrand at s without Gamma(-s) and without the Gamma factor at
// position skip.
struct Context {
  const MBIntegrand& ig;
  Eigen::VectorXcd p;
  std::vector<cplx> bases;
  cplx baseJ0;

  Context(const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c)
      : ig(ig), p(ig.p(c)), baseJ0(ig.log_base_j0(z)) {
    for (std::size_t k = 0; k < ig.sigma().size(); ++k) bases.push_back(ig.log_base(z, static_cast<int>(k)));
  }

  LogTerm at(cplx s, int skip) const {
    LogTerm t;
    const auto& kind = ig.kinds();
    const auto& q = ig.q_double();
    for (std::size_t k = 0; k < kind.size(); ++k) {
      const cplx e = p(k) + q(k) * s;
      if (kind[k] < 0) {
        if (static_cast<int>(k) != skip) t.log += log_gamma(e);
      } else if (is_nonpositive_integer(1.0 - e)) {
        t.zero = true;
      } else {
        t.log -= log_gamma(1.0 - e);
      }
      t.log -= e * bases[k];
    }
    t.log += s * baseJ0;
    return t;
  }

  cplx f(cplx s) const {
    LogTerm t = at(s, -1);
    if (t.zero) return 0.0;
    return std::exp(t.log + log_gamma(-s));
  }

  // Residue term at s = m, with the sign that closing to the right produces.
  cplx positive(int m) const {
    const auto& kind = ig.kinds();
    for (std::size_t k = 0; k < kind.size(); ++k)
      if (kind[k] < 0 && is_nonpositive_integer(p(k) + ig.q_double()(k) * double(m)))
        throw Error(ErrorCode::PoleHit, "positive and negative poles meet at s = " + std::to_string(m));
    LogTerm t = at(cplx(m), -1);
    if (t.zero) return 0.0;
    return std::exp(t.log - std::lgamma(m + 1.0)) * (m % 2 ? -1.0 : 1.0);
  }

  // Residue term at s = -(p_k + m)/q_k, closing to the left.
  cplx negative(int k, int m) const {
    const double qk = ig.q_double()(k);
    const cplx s = -(p(k) + double(m)) / qk;
    if (is_nonpositive_integer(-s)) throw Error(ErrorCode::PoleHit, "negative pole on a positive pole");
    LogTerm t = at(s, k);
    if (t.zero) return 0.0;
    return std::exp(t.log + log_gamma(-s) - std::lgamma(m + 1.0)) * ((m % 2 ? -1.0 : 1.0) / qk);
  }
};

}  // namespace

cplx MBIntegrand::operator()(cplx s, const LogPoint& z, const Eigen::VectorXcd& c) const {
  return Context(*this, z, c).f(s);
}

std::vector<MBIntegrand::Pole> MBIntegrand::negative_poles(const Eigen::VectorXcd& c, int mmax) const {
  Eigen::VectorXcd pc = p(c);
  std::vector<Pole> out;
  for (std::size_t k = 0; k < sigma_.size(); ++k) {
    if (kind_[k] >= 0) continue;
    for (int m = 0; m <= mmax; ++m) out.push_back({sigma_[k], m, -(pc(k) + double(m)) / qd_(k)});
  }
  return out;
}

void MBIntegrand::check_resonance(const Eigen::VectorXcd& c, int mmax, double tol) const {
  auto poles = negative_poles(c, mmax);
  for (std::size_t a = 0; a < poles.size(); ++a) {
    const cplx s = poles[a].s;
    const double r = std::round(s.real());
    if (r >= 0 && std::abs(s - r) < tol)
      throw Error(ErrorCode::ResonantParameters,
                  "pole of column " + std::to_string(poles[a].label) + " meets s = " + std::to_string(int(r)));
    for (std::size_t b = a + 1; b < poles.size(); ++b)
      if (poles[b].label != poles[a].label && std::abs(s - poles[b].s) < tol)
        throw Error(ErrorCode::ResonantParameters, "poles of columns " + std::to_string(poles[a].label) + " and " +
                                                       std::to_string(poles[b].label) + " meet");
  }
}

GammaSeriesSpec MBIntegrand::positive_spec() const {
  GammaSeriesSpec spec;
  spec.sigma = sigma_;
  spec.upper = circuit_.minus;
  spec.lower = set_minus(sigma_, circuit_.minus);
  spec.ktilde = ktilde_;
  return spec;
}

std::vector<std::pair<Rational, GammaSeriesSpec>> MBIntegrand::negative_specs() const {
  std::vector<std::pair<Rational, GammaSeriesSpec>> out;
  for (std::size_t k = 0; k < sigma_.size(); ++k) {
    if (kind_[k] >= 0) continue;
    const int i = sigma_[k];
    GammaSeriesSpec spec;
    spec.sigma = set_minus(I_, {i});
    spec.upper = set_union(set_minus(circuit_.minus, {i}), {j0_});
    spec.lower = set_minus(spec.sigma, spec.upper);
    spec.ktilde = IntVector::Zero(A_.n());
    for (std::size_t t = 0; t < spec.sigma.size(); ++t) {
      const int l = spec.sigma[t];
      if (l != j0_) spec.ktilde(t) = ktilde_(position(sigma_, l));
    }
    out.emplace_back(Rational(1) / q_(k), std::move(spec));
  }
  return out;
}

cplx residues_positive(const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c, int order) {
  Context ctx(ig, z, c);
  cplx sum = 0.0;
  for (int m = 0; m <= order; ++m) sum += ctx.positive(m);
  return sum;
}

cplx residues_negative(const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c, int order) {
  Context ctx(ig, z, c);
  const auto& kind = ig.kinds();
  cplx sum = 0.0;
  for (std::size_t k = 0; k < kind.size(); ++k) {
    if (kind[k] >= 0) continue;
    for (int m = 0; m <= order; ++m) sum += ctx.negative(static_cast<int>(k), m);
  }
  return sum;
}

cplx residues_negative_series(const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c, int order) {
  EvalOptions opt;
  opt.order = order;
  opt.tol = 0.0;
  opt.zeroed = set_minus(full_set(z.size()), ig.cell());
  cplx sum = 0.0;
  for (const auto& [coef, spec] : ig.negative_specs())
    sum += to_double(coef) * GammaSeries(ig.configuration(), spec).evaluate(z, c, opt).value;
  return sum;
}

MBValue mb_evaluate(const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c, const Quadrature& quad) {
  MBValue out;
  out.sectorMargin = ig.sector_margin(z);
  if (out.sectorMargin <= 0.0)
    throw Error(ErrorCode::SectorViolation, "|arg zeta| = " + std::to_string(std::fabs(ig.arg_zeta(z))) + " >= pi");
  ig.check_resonance(c);
  Context ctx(ig, z, c);

  // Real parts of negative poles near or right of any line we may use.
  const double floorRe = std::min(quad.shift.value_or(-1.0), -1.0) - 1.0;
  const auto& kind = ig.kinds();
  const auto& q = ig.q_double();
  struct NegPole {
    int k, m;
    double re;
  };
  std::vector<NegPole> near;
  double maxNeg = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < kind.size(); ++k) {
    if (kind[k] >= 0) continue;
    for (int m = 0;; ++m) {
      const double re = -(ctx.p(k).real() + m) / q(k);
      if (m == 0) maxNeg = std::max(maxNeg, re);
      if (re < floorRe) break;
      near.push_back({static_cast<int>(k), m, re});
    }
  }
  auto distance = [&](double x) {
    double d = std::fabs(x - std::max(0.0, std::round(x)));
    if (x < 0) d = -x;
    for (const auto& np : near) d = std::min(d, std::fabs(np.re - x));
    return d;
  };

  double shift;
  if (quad.shift) {
    shift = *quad.shift;
  } else if (maxNeg < 0) {
    shift = 0.5 * maxNeg;
  } else {
    shift = -0.5;
    double best = distance(shift);
    for (int i = 1; i < 400; ++i) {
      const double x = -i / 400.0;
      if (distance(x) > best) {
        best = distance(x);
        shift = x;
      }
    }
  }
  const double d = distance(shift);
  if (d < 1e-9) throw Error(ErrorCode::ContourHitsPole, "contour Re s = " + std::to_string(shift) + " meets a pole");
  out.shift = shift;

  // Poles on the wrong side of the line, as residues.
  cplx correction = 0.0;
  for (int m = 0; m <= shift; ++m) {
    correction += ctx.positive(m);
    ++out.crossedPoles;
  }
  for (const auto& np : near)
    if (np.re > shift) {
      correction += ctx.negative(np.k, np.m);
      ++out.crossedPoles;
    }

  // Trapezoid on s = shift + i t; (1/2 pi i) ds = dt / 2 pi.
  double h = quad.step > 0 ? quad.step : std::min(0.25, d / 5.0);
  std::vector<cplx> samples;  // f at t = k h for k = -K..K, stored by k + K
  long K = 0;
  if (quad.height > 0) {
    K = static_cast<long>(std::ceil(quad.height / h));
    if (2 * K + 1 > quad.maxPoints) throw Error(ErrorCode::QuadratureNotConverged, "too many quadrature points");
    for (long k = -K; k <= K; ++k) samples.push_back(ctx.f(cplx(shift, k * h)));
  } else {
    std::vector<cplx> up{ctx.f(cplx(shift, 0.0))}, down;
    double peak = std::abs(up[0]);
    int quietUp = 0, quietDown = 0;
    long k = 0;
    while (quietUp < 8 || quietDown < 8) {
      ++k;
      if (2 * k + 1 > quad.maxPoints) throw Error(ErrorCode::QuadratureNotConverged, "integrand does not decay");
      const cplx a = ctx.f(cplx(shift, k * h)), b = ctx.f(cplx(shift, -k * h));
      up.push_back(a);
      down.push_back(b);
      peak = std::max({peak, std::abs(a), std::abs(b)});
      quietUp = std::abs(a) < 1e-16 * peak ? quietUp + 1 : 0;
      quietDown = std::abs(b) < 1e-16 * peak ? quietDown + 1 : 0;
    }
    K = k;
    samples.assign(down.rbegin(), down.rend());
    samples.insert(samples.end(), up.begin(), up.end());
  }
  const double H = K * h;
  cplx sum = 0.0;
  for (const auto& v : samples) sum += v;
  cplx coarse = h * sum / (2.0 * kPi);
  cplx fine = coarse;
  long points = static_cast<long>(samples.size());
  for (int halving = 0; halving < quad.maxHalvings; ++halving) {
    // midpoints of the current grid
    cplx mid = 0.0;
    const long M = static_cast<long>(std::llround(2.0 * H / h));
    for (long j = 0; j < M; ++j) mid += ctx.f(cplx(shift, -H + (j + 0.5) * h));
    points += M;
    if (points > quad.maxPoints) throw Error(ErrorCode::QuadratureNotConverged, "too many quadrature points");
    sum += mid;
    h *= 0.5;
    fine = h * sum / (2.0 * kPi);
    out.estimate = std::abs(fine - coarse);
    if (out.estimate <= quad.tol * std::max(std::abs(fine + correction), 1e-300)) break;
    coarse = fine;
  }
  if (out.estimate > std::max(quad.tol, 1e-6) * std::max(std::abs(fine + correction), 1e-300))
    throw Error(ErrorCode::QuadratureNotConverged, "step halving did not settle");
  out.value = fine + correction;
  out.step = h;
  out.height = H;
  return out;
}

}  // namespace gkz
