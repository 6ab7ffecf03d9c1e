#pragma once

// Gamma series solutions of the A-hypergeometric system around a simplex.

#include "gkz/gamma.hpp"
#include "gkz/secondary.hpp"

#include <functional>
#include <map>
#include <memory>

namespace gkz {

// A point of the universal cover of the torus: z_j = exp(logAbs_j + i arg_j).
struct LogPoint {
  Eigen::VectorXd logAbs;
  Eigen::VectorXd arg;

  static LogPoint from_complex(const Eigen::VectorXcd& z);  // principal arguments
  static LogPoint from_polar(const Eigen::VectorXd& logAbs, const Eigen::VectorXd& arg);
  int size() const { return static_cast<int>(logAbs.size()); }
  cplx log(int label) const { return {logAbs(label - 1), arg(label - 1)}; }
  cplx value(int label) const { return std::exp(log(label)); }
  // z_j + delta, with the argument continued from the current one.
  LogPoint shifted(int label, cplx delta) const;
};

// psi^{upper}_{lower, ktilde} on sigma = upper + lower.
struct GammaSeriesSpec {
  IndexSet sigma, upper, lower;
  IntVector ktilde;  // aligned with sigma
};

struct EvalOptions {
  int order = 30;
  double tol = 1e-12;
  bool strict = false;       // throw NonConverged instead of flagging
  bool checkDomain = true;   // throw OutsideDomain beyond the convergence radius
  IndexSet zeroed;           // columns outside sigma set to z_j = 0
};

struct SeriesValue {
  cplx value = 0.0;
  double lastShell = 0.0;  // modulus of the highest total-degree shell
  bool converged = false;
  long terms = 0;
};

class GammaSeries {
 public:
  GammaSeries(const Configuration& A, GammaSeriesSpec spec);

  const GammaSeriesSpec& spec() const { return spec_; }
  const SimplexData& simplex() const { return simplex_; }

  SeriesValue evaluate(const LogPoint& z, const Eigen::VectorXcd& c, const EvalOptions& opt = {}) const;

  // x_j C_j for the local coordinate x_j = |z_sigma^{-q_j} z_j| along a
  // direction with sum(q_j) = 1; the series converges in that direction
  // when this is below 1. Returns 0 for directions of faster decay.
  double domain_ratio(const LogPoint& z, int j) const;

 private:
  GammaSeriesSpec spec_;
  SimplexData simplex_;
  int N_;
  Eigen::MatrixXd inverse_;  // A_sigma^{-1}
  std::vector<int> off_;     // labels outside sigma
  Eigen::MatrixXd q_;        // column k: A_sigma^{-1} a(off_[k])
  std::vector<bool> critical_;
  std::vector<double> growth_;
  std::vector<bool> isUpper_;
};

SeriesValue evaluate(const Configuration& A, const GammaSeriesSpec& spec, const LogPoint& z,
                     const Eigen::VectorXcd& c, int order, double tol);

// The basis Phi_T: every simplex, every representative. Missing entries of
// upper default to the empty set, missing reps to quotient_reps(sigma).
std::vector<GammaSeriesSpec> build_basis(const Configuration& A, const Subdivision& T,
                                         const std::map<IndexSet, IndexSet>& upper = {},
                                         const std::map<IndexSet, std::vector<IntVector>>& reps = {});

// Anything evaluable on (z, c) with a truncation order and a set of columns
// held at zero.
using Evaluator =
    std::function<SeriesValue(const LogPoint& z, const Eigen::VectorXcd& c, int order, const IndexSet& zeroed)>;

Evaluator series_evaluator(const Configuration& A, const GammaSeriesSpec& spec, double tol = 1e-12);

// D_j f = sum_m f(z; c + m a(j)) z_j^m / m!, truncated so that the shells line
// up with the extended series: f is called with order - m.
Evaluator apply_D(Evaluator f, const Configuration& A, int j);

// Sets z_j = 0.
Evaluator boundary_value(Evaluator f, int j);
Evaluator boundary_value(const Configuration& A, const GammaSeriesSpec& spec, int j);

// Representatives of Z^n / Z A_sigma.
std::vector<IntVector> dual_reps(const SimplexData& s);

// (1/sqrt r) exp(-2 pi i tk A_sigma^{-1} v).
Eigen::MatrixXcd character_matrix(const SimplexData& s, const std::vector<IntVector>& reps,
                                  const std::vector<IntVector>& dual);

// Smallest distance from an integer of any p_{sigma,i}(c + k), k in Z^n,
// sigma in T. Parameters are very generic for T when this is positive.
double resonance_margin(const Configuration& A, const Subdivision& T, const Eigen::VectorXcd& c);

}  // namespace gkz
