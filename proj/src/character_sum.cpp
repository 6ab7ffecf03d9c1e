#include "gkz/character_sum.hpp"

#include <numbers>
#include <sstream>

namespace gkz {

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational d = b.re * b.re + b.im * b.im;
  if (d == 0) throw Error(ErrorCode::InvalidInput, "division by zero");
  GaussianRational p = a * b.conj();
  return {p.re / d, p.im / d};
}

std::string to_string(const GaussianRational& x) {
  if (x.im == 0) return to_string(x.re);
  if (x.re == 0) return to_string(x.im) + "i";
  return "(" + to_string(x.re) + (x.im > 0 ? "+" : "") + to_string(x.im) + "i)";
}

CharacterSum CharacterSum::constant(int n, const GaussianRational& value) {
  CharacterSum s(n);
  s.add(Rho(n, Rational(0)), value);
  return s;
}

CharacterSum CharacterSum::character(const RatVector& rho, const GaussianRational& coeff) {
  CharacterSum s(static_cast<int>(rho.size()));
  s.add(Rho(rho.data(), rho.data() + rho.size()), coeff);
  return s;
}

void CharacterSum::add(const Rho& rho, const GaussianRational& coeff) {
  if (static_cast<int>(rho.size()) != n_) throw Error(ErrorCode::InvalidInput, "character of wrong length");
  if (coeff.is_zero()) return;
  auto it = terms_.find(rho);
  if (it == terms_.end()) {
    terms_.emplace(rho, coeff);
    return;
  }
  it->second = it->second + coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

cplx CharacterSum::evaluate(const Eigen::VectorXcd& c) const {
  cplx sum = 0.0;
  for (const auto& [rho, coeff] : terms_) {
    cplx dot = 0.0;
    for (int i = 0; i < n_; ++i) dot += to_double(rho[i]) * c(i);
    sum += coeff.to_complex() * std::exp(cplx(0.0, 2.0 * std::numbers::pi) * dot);
  }
  return sum;
}

bool CharacterSum::translation_invariant(const Configuration& A) const {
  for (const auto& [rho, coeff] : terms_)
    for (int j = 1; j <= A.N(); ++j) {
      Rational dot = 0;
      for (int i = 0; i < n_; ++i) dot += rho[i] * A.rational()(i, j - 1);
      if (!is_integral(dot)) return false;
    }
  return true;
}

CharacterSum CharacterSum::shifted(const RatVector& a) const {
  CharacterSum out(n_);
  for (const auto& [rho, coeff] : terms_) {
    Rational dot = 0;
    for (int i = 0; i < n_; ++i) dot += rho[i] * a(i);
    // exp(2 pi i dot) with dot rational: only exact for dot in Z/4
    const Rational f = frac(dot);
    GaussianRational phase;
    if (f == 0) phase = 1;
    else if (f == Rational(1, 4)) phase = {0, 1};
    else if (f == Rational(1, 2)) phase = -1;
    else if (f == Rational(3, 4)) phase = {0, -1};
    else throw Error(ErrorCode::InvalidInput, "shift by a(j) leaves the Gaussian rationals");
    out.add(rho, phase * coeff);
  }
  return out;
}

CharacterSum CharacterSum::operator-() const {
  CharacterSum out(n_);
  for (const auto& [rho, coeff] : terms_) out.terms_.emplace(rho, -coeff);
  return out;
}

CharacterSum operator+(const CharacterSum& a, const CharacterSum& b) {
  CharacterSum out = a;
  for (const auto& [rho, coeff] : b.terms_) out.add(rho, coeff);
  return out;
}

CharacterSum operator-(const CharacterSum& a, const CharacterSum& b) { return a + (-b); }

CharacterSum operator*(const CharacterSum& a, const CharacterSum& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::InvalidInput, "character sums of different lengths");
  CharacterSum out(a.n_);
  for (const auto& [ra, ca] : a.terms_)
    for (const auto& [rb, cb] : b.terms_) {
      CharacterSum::Rho r(ra.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = ra[i] + rb[i];
      out.add(r, ca * cb);
    }
  return out;
}

CharacterSum operator*(const GaussianRational& s, const CharacterSum& a) {
  CharacterSum out(a.n_);
  for (const auto& [rho, coeff] : a.terms_) out.add(rho, s * coeff);
  return out;
}

std::string to_string(const CharacterSum& s) {
  if (s.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [rho, coeff] : s.terms()) {
    bool trivial = true;
    for (const auto& r : rho) trivial = trivial && r == 0;
    // a real coefficient carries its sign into the separator
    GaussianRational c = coeff;
    bool negative = c.im == 0 && c.re < 0;
    if (negative) c = -c;
    if (first) out << (negative ? "-" : "");
    else out << (negative ? " - " : " + ");
    first = false;
    const bool unit = c == GaussianRational(1);
    if (trivial || !unit) out << to_string(c);
    if (trivial) continue;
    if (!unit) out << "*";
    out << "e(";
    bool firstC = true;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      if (rho[i] == 0) continue;
      if (!firstC) out << (rho[i] > 0 ? "+" : "");
      firstC = false;
      if (rho[i] == -1) out << "-";
      else if (rho[i] != 1) out << to_string(rho[i]) << "*";
      out << "c" << i + 1;
    }
    out << ")";
  }
  return out.str();
}

CharFraction::CharFraction(CharacterSum n, CharacterSum d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw Error(ErrorCode::InvalidInput, "zero denominator");
  if (num.n() != den.n()) throw Error(ErrorCode::InvalidInput, "character sums of different lengths");
}

CharFraction CharFraction::constant(int n, const GaussianRational& value) {
  return {CharacterSum::constant(n, value), CharacterSum::constant(n, 1)};
}

CharFraction CharFraction::character(const RatVector& rho, const GaussianRational& coeff) {
  const int n = static_cast<int>(rho.size());
  return {CharacterSum::character(rho, coeff), CharacterSum::constant(n, 1)};
}

CharFraction CharFraction::canonical() const {
  const auto& [rho0, c0] = *den.terms().begin();
  RatVector minus(rho0.size());
  for (std::size_t i = 0; i < rho0.size(); ++i) minus(i) = -rho0[i];
  const CharacterSum scale = CharacterSum::character(minus, GaussianRational(1) / c0);
  if (num.is_zero()) return {CharacterSum(num.n()), CharacterSum::constant(num.n(), 1)};
  return {scale * num, scale * den};
}

CharFraction CharFraction::inverse() const {
  if (num.is_zero()) throw Error(ErrorCode::InvalidInput, "inverse of zero");
  return {den, num};
}

cplx CharFraction::evaluate(const Eigen::VectorXcd& c) const { return num.evaluate(c) / den.evaluate(c); }

bool CharFraction::translation_invariant(const Configuration& A) const {
  CharFraction f = canonical();
  return f.num.translation_invariant(A) && f.den.translation_invariant(A);
}

CharFraction operator+(const CharFraction& a, const CharFraction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den == b.den) return CharFraction(a.num + b.num, a.den).canonical();
  return CharFraction(a.num * b.den + b.num * a.den, a.den * b.den).canonical();
}

CharFraction operator-(const CharFraction& a, const CharFraction& b) {
  return a + CharFraction(-b.num, b.den);
}

CharFraction operator*(const CharFraction& a, const CharFraction& b) {
  if (a.is_zero() || b.is_zero()) return CharFraction(a.num.n());
  return CharFraction(a.num * b.num, a.den * b.den).canonical();
}

bool operator==(const CharFraction& a, const CharFraction& b) { return a.num * b.den == b.num * a.den; }

std::string to_string(const CharFraction& f) {
  CharFraction g = f.canonical();
  if (g.den == CharacterSum::constant(g.den.n(), 1)) return to_string(g.num);
  return "(" + to_string(g.num) + ") / (" + to_string(g.den) + ")";
}

CharacterSum exp_minus_one(const RatVector& rho) {
  return CharacterSum::character(rho) - CharacterSum::constant(static_cast<int>(rho.size()), 1);
}

CharacterSum sin_pi(const RatVector& rho) {
  RatVector half = rho / Rational(2);
  const GaussianRational minusHalfI(0, Rational(-1, 2));  // 1/(2i)
  return minusHalfI * (CharacterSum::character(half) - CharacterSum::character(RatVector(-half)));
}

CharMatrix identity_matrix(int size, int n) {
  CharMatrix m(size, std::vector<CharFraction>(size, CharFraction(n)));
  for (int i = 0; i < size; ++i) m[i][i] = CharFraction::constant(n, 1);
  return m;
}

CharMatrix multiply(const CharMatrix& a, const CharMatrix& b) {
  const int n = a.empty() || a[0].empty() ? 0 : a[0][0].num.n();
  const std::size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  CharMatrix out(rows, std::vector<CharFraction>(cols, CharFraction(n)));
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != inner) throw Error(ErrorCode::InvalidInput, "matrix shapes do not match");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) out[i][j] = out[i][j] + a[i][k] * b[k][j];
    }
  }
  return out;
}

CharMatrix monomial_inverse(const CharMatrix& m) {
  const std::size_t size = m.size();
  const int n = size ? m[0][0].num.n() : 0;
  CharMatrix out(size, std::vector<CharFraction>(size, CharFraction(n)));
  for (std::size_t i = 0; i < size; ++i) {
    int hit = -1;
    for (std::size_t j = 0; j < size; ++j)
      if (!m[i][j].is_zero()) {
        if (hit >= 0) throw Error(ErrorCode::InvalidInput, "matrix is not monomial");
        hit = static_cast<int>(j);
      }
    if (hit < 0) throw Error(ErrorCode::InvalidInput, "singular matrix");
    out[hit][i] = m[i][hit].inverse().canonical();
  }
  return out;
}

bool is_identity(const CharMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      const int n = m[i][j].num.n();
      if (i == j ? !(m[i][j] == CharFraction::constant(n, 1)) : !m[i][j].is_zero()) return false;
    }
  return true;
}

Eigen::MatrixXcd evaluate(const CharMatrix& m, const Eigen::VectorXcd& c) {
  Eigen::MatrixXcd out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j].evaluate(c);
  return out;
}

}  // namespace gkz
