#pragma once

// Finite sums of characters c -> coeff * exp(2 pi i rho.c) with Gaussian
// rational coefficients, and fractions of them.

#include "gkz/gamma.hpp"
#include "gkz/lattice.hpp"

#include <map>

namespace gkz {

struct GaussianRational {
  Rational re, im;

  GaussianRational(Rational r = 0, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  cplx to_complex() const { return {to_double(re), to_double(im)}; }
  GaussianRational conj() const { return {re, -im}; }
  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;
};

std::string to_string(const GaussianRational& x);

class CharacterSum {
 public:
  using Rho = std::vector<Rational>;

  explicit CharacterSum(int n = 0) : n_(n) {}
  static CharacterSum constant(int n, const GaussianRational& value);
  static CharacterSum character(const RatVector& rho, const GaussianRational& coeff = 1);

  int n() const { return n_; }
  const std::map<Rho, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Rho& rho, const GaussianRational& coeff);

  cplx evaluate(const Eigen::VectorXcd& c) const;
  // Every rho.a(j) integral: the sum is unchanged by c -> c + a(j).
  bool translation_invariant(const Configuration& A) const;
  // The sum at c + a(j).
  CharacterSum shifted(const RatVector& a) const;

  CharacterSum operator-() const;
  friend CharacterSum operator+(const CharacterSum& a, const CharacterSum& b);
  friend CharacterSum operator-(const CharacterSum& a, const CharacterSum& b);
  friend CharacterSum operator*(const CharacterSum& a, const CharacterSum& b);
  friend CharacterSum operator*(const GaussianRational& s, const CharacterSum& a);
  friend bool operator==(const CharacterSum& a, const CharacterSum& b) { return a.terms_ == b.terms_; }

 private:
  int n_;
  std::map<Rho, GaussianRational> terms_;  // no zero coefficients
};

std::string to_string(const CharacterSum& s);

// num / den. canonical() divides both by the first term of den so that den
// has the term 1 at rho = 0; equality is tested by cross multiplication.
struct CharFraction {
  CharacterSum num, den;

  CharFraction(int n = 0) : num(n), den(CharacterSum::constant(n, 1)) {}
  CharFraction(CharacterSum n, CharacterSum d);
  static CharFraction constant(int n, const GaussianRational& value);
  static CharFraction character(const RatVector& rho, const GaussianRational& coeff = 1);

  bool is_zero() const { return num.is_zero(); }
  CharFraction canonical() const;
  CharFraction inverse() const;
  cplx evaluate(const Eigen::VectorXcd& c) const;
  bool translation_invariant(const Configuration& A) const;

  friend CharFraction operator+(const CharFraction& a, const CharFraction& b);
  friend CharFraction operator-(const CharFraction& a, const CharFraction& b);
  friend CharFraction operator*(const CharFraction& a, const CharFraction& b);
  friend CharFraction operator/(const CharFraction& a, const CharFraction& b) { return a * b.inverse(); }
  friend bool operator==(const CharFraction& a, const CharFraction& b);
};

std::string to_string(const CharFraction& f);

// (e^{2 pi i rho.c} - 1) as a character sum.
CharacterSum exp_minus_one(const RatVector& rho);
// sin(pi rho.c) = (e^{i pi rho.c} - e^{-i pi rho.c}) / 2i
CharacterSum sin_pi(const RatVector& rho);

// Dense matrices of fractions, row-major.
using CharMatrix = std::vector<std::vector<CharFraction>>;
CharMatrix identity_matrix(int size, int n);
CharMatrix multiply(const CharMatrix& a, const CharMatrix& b);
// Inverse of a matrix with one nonzero entry per row and per column.
CharMatrix monomial_inverse(const CharMatrix& m);
bool is_identity(const CharMatrix& m);
Eigen::MatrixXcd evaluate(const CharMatrix& m, const Eigen::VectorXcd& c);

}  // namespace gkz
