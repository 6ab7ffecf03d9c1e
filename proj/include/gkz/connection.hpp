#pragma once

// Connection matrices between the Gamma series bases of two adjacent regular
// triangulations, the continuation path, and numerical checks along it.

#include "gkz/character_sum.hpp"
#include "gkz/mellin_barnes.hpp"

namespace gkz {

struct ConnectionMatrix {
  Modification mod;
  int j0Target = 0;  // the Z_+ column kept upper in every target series
  std::vector<GammaSeriesSpec> source, target;
  // For source rows on a corank-1 cell: the cell and the column j0 with
  // sigma = cell \ j0. Empty cell for the rows of T cap T'.
  std::vector<IndexSet> rowCell;
  std::vector<int> rowJ0;
  // source[r] continues to sum_k entries[r][k] target[k].
  CharMatrix entries;
};

// Source series: sigma^u = Z_- on the simplices of the circuit cells with
// representatives normalized for j0, plain series with graded-colex
// representatives elsewhere. Target series on I \ i: sigma^u = (Z_- \ i) + j0Target.
ConnectionMatrix build_connection(const Configuration& A, const Modification& mod,
                                  std::optional<int> j0Target = std::nullopt);

// psi_from = (2 pi i)^d sum_k row[k] basis[k], over the basis series on the
// simplex of from. Moving a column j between upper and lower is a constant
// factor when row j of A_sigma^{-1} A is integral; otherwise the classes mix.
struct SeriesExpansion {
  std::vector<CharFraction> row;
  int twoPiI = 0;
};
SeriesExpansion expand_in_basis(const Configuration& A, const GammaSeriesSpec& from,
                                const std::vector<GammaSeriesSpec>& basis);

// Psi_from = D B Psi_to with D = diag((2 pi i)^{twoPiI[r]}). The power is
// |upper| of the row minus |upper| of the target series, so B alone relates
// the normalized series (2 pi i)^{-|upper|} psi.
struct BasisChange {
  CharMatrix matrix;
  std::vector<int> twoPiI;
};
BasisChange basis_change(const Configuration& A, const std::vector<GammaSeriesSpec>& from,
                         const std::vector<GammaSeriesSpec>& to);

// P with Psi(theta + 2 pi h) = P Psi(theta).
CharMatrix relabel(const Configuration& A, const std::vector<GammaSeriesSpec>& basis, const IntVector& h);

// Theta = sum_{j in Z} u_j arg z_j must lie in pi (lo, hi) for every cell,
// j0 in Z_+ and normalized representative.
struct SectorWindow {
  Rational lo, hi;
  bool empty() const { return lo >= hi; }
};
SectorWindow common_sector(const Configuration& A, const Modification& mod);
double theta(const Modification& mod, const Eigen::VectorXd& args);
// Arguments with Theta at the window center, carried by the smallest label of Z.
Eigen::VectorXd centered_arguments(const Configuration& A, const Modification& mod);

struct PathOptions {
  std::optional<Eigen::VectorXd> args;
  std::optional<Rational> r;  // multiplier of omega_Q; smallest adequate power of 2 if unset
  double target = 0.25;       // bound for every local coordinate at the endpoints
  int maxDoublings = 40;
};

struct PathSpec {
  Eigen::VectorXd args;
  RatVector omegaStart, omegaEnd;  // -log|z| at the endpoints
  Rational r;
  LogPoint zStart, zEnd;
  double sectorMargin = 0.0;
  double startSeriesCoordinate = 0.0;  // largest x C of the source series at zStart
  double endSeriesCoordinate = 0.0;    // same for the target series at zEnd
  double expansionCoordinate = 0.0;    // largest D-expansion coordinate at either end
  LogPoint at(double t) const;         // straight line in -log|z|, fixed arguments
};

PathSpec build_path(const Configuration& A, const Modification& mod, const PathOptions& opt = {});

// Largest |z_sigma^{-A_sigma^{-1} a(k)} z_k| over the cells I, sigma = I \ j
// with j in Z_+, and k outside I.
double expansion_coordinate(const Configuration& A, const Modification& mod, const RatVector& omega);

struct VerifyOptions {
  int order = 40;
  double tol = 1e-6;
  Quadrature quad;
  int threads = 0;  // 0: GG_THREADS or the hardware count
  long budget = 0;  // maximal number of Mellin-Barnes evaluations, 0 = unlimited
};

struct RowReport {
  int row = 0;
  std::string label;
  bool circuit = false;
  double defectStart = 0.0, defectEnd = 0.0;
  cplx lhsStart = 0.0, rhsStart = 0.0, lhsEnd = 0.0, rhsEnd = 0.0;
  double tail = 0.0;  // largest last-shell modulus among the truncated sums
  bool converged = true;
  std::string error;
  double defect() const { return std::max(defectStart, defectEnd); }
};

struct VerifyReport {
  std::vector<RowReport> rows;
  double maxDefect = 0.0;
  bool ok = true;
  int order = 0;
  long evaluations = 0;
};

int thread_count(int requested = 0);

VerifyReport verify_connection(const Configuration& A, const ConnectionMatrix& cm, const PathSpec& path,
                               const Eigen::VectorXcd& c, const VerifyOptions& opt = {});

// M B1 P_rs^{-1} R P_rt B2 for the forward and reverse connection matrices,
// with reverse arguments shifted by 2 pi h so that the reverse sectors hold.
// Basis changes act on normalized series; M and R keep |upper| fixed.
struct RoundTrip {
  CharMatrix product;
  IntVector h;
  bool identity = false;
};
RoundTrip round_trip(const Configuration& A, const Subdivision& T, const Subdivision& Tprime);

std::string series_label(const GammaSeriesSpec& spec);

}  // namespace gkz
