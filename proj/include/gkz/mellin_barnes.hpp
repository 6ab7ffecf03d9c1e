#pragma once

// The circuit Mellin-Barnes integral of a corank-1 cell I and its two residue
// expansions.

#include "gkz/gamma_series.hpp"

#include <numbers>

namespace gkz {

struct Quadrature {
  std::optional<double> shift;  // Re s of the contour; chosen from the poles if unset
  double step = 0.0;            // 0: a fifth of the distance to the nearest pole
  double height = 0.0;          // 0: walk out until the integrand is negligible
  double tol = 1e-12;           // relative, for the halved-step check
  int maxHalvings = 4;
  long maxPoints = 2'000'000;

  bool operator==(const Quadrature&) const = default;
};

struct MBValue {
  cplx value = 0.0;
  double estimate = 0.0;  // |T(h) - T(h/2)|
  double shift = 0.0;
  double step = 0.0;
  double height = 0.0;
  double sectorMargin = 0.0;
  int crossedPoles = 0;  // negative poles right of the line, added back as residues
};

class MBIntegrand {
 public:
  // sigma = I \ {j0}; ktilde is aligned with sigma (zero if empty).
  MBIntegrand(const Configuration& A, const IndexSet& I, int j0, IntVector ktilde = {});

  const IndexSet& cell() const { return I_; }
  const IndexSet& sigma() const { return sigma_; }
  int j0() const { return j0_; }
  const Circuit& circuit() const { return circuit_; }  // plus side contains j0
  const IndexSet& zplus() const { return circuit_.plus; }
  const IndexSet& zminus() const { return circuit_.minus; }
  const IntVector& ktilde() const { return ktilde_; }
  const Configuration& configuration() const { return A_; }
  // p_{sigma i}(a(j0)), aligned with sigma.
  const RatVector& q() const { return q_; }
  const Eigen::VectorXd& q_double() const { return qd_; }
  // Per sigma entry: -1 in Z_-, 0 in I_0, +1 in Z_+.
  const std::vector<int>& kinds() const { return kind_; }
  Eigen::VectorXcd p(const Eigen::VectorXcd& c) const { return inverse_.cast<cplx>() * c; }
  // Log of the base of the sigma entry at pos, on its branch:
  // log|z_i| + i(arg z_i + 2 pi k_i + pi [i in Z_-]).
  cplx log_base(const LogPoint& z, int pos) const;
  cplx log_base_j0(const LogPoint& z) const { return {z.logAbs(j0_ - 1), z.arg(j0_ - 1) + kPi}; }

  // The integrand at s, including the (e^{pi i 1_-} z_sigma)^{-A_sigma^{-1} c} factor.
  cplx operator()(cplx s, const LogPoint& z, const Eigen::VectorXcd& c) const;

  double arg_zeta(const LogPoint& z) const;
  double sector_margin(const LogPoint& z) const { return kPi - std::fabs(arg_zeta(z)); }
  // |zeta|, the modulus of the circuit variable.
  double abs_zeta(const LogPoint& z) const;

  // Poles s = -(p_i(c) + m)/q_i for i in Z_-, m <= mmax, as (i, m, s).
  struct Pole {
    int label;
    int m;
    cplx s;
  };
  std::vector<Pole> negative_poles(const Eigen::VectorXcd& c, int mmax) const;

  // Throws ResonantParameters when poles of different spirals meet.
  void check_resonance(const Eigen::VectorXcd& c, int mmax = 60, double tol = 1e-9) const;

  // The series on the positive spiral: psi^{Z_-}_{sigma cap I>=0, ktilde}.
  GammaSeriesSpec positive_spec() const;
  // The negative spirals: (1/p_{sigma i}(a(j0)), psi^{(Z_- \ i) + j0}_{I>=0 \ j0, (ktilde, 0)}).
  std::vector<std::pair<Rational, GammaSeriesSpec>> negative_specs() const;

  static constexpr double kPi = std::numbers::pi;

 private:
  Configuration A_;
  IndexSet I_, sigma_;
  int j0_;
  Circuit circuit_;
  IntVector ktilde_;
  RatVector q_;
  Eigen::VectorXd qd_;
  Eigen::MatrixXd inverse_;
  std::vector<int> kind_;
};

MBValue mb_evaluate(const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c, const Quadrature& quad = {});

// Residue sums truncated at m <= order.
cplx residues_positive(const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c, int order);
cplx residues_negative(const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c, int order);
// The same sum as residues_negative, assembled from the Gamma series of
// negative_specs() with the columns outside I set to zero.
cplx residues_negative_series(const MBIntegrand& ig, const LogPoint& z, const Eigen::VectorXcd& c, int order);

}  // namespace gkz
