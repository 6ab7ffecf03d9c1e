#pragma once

// Exact linear programming: dense two-phase simplex with Bland's rule.

#include "gkz/exact.hpp"

#include <optional>
#include <vector>

namespace gkz {

enum class Relation { LessEqual, Equal, GreaterEqual };

// maximize c.x subject to rows (A x rel b), x >= 0.
struct LinearProgram {
  RatMatrix A;
  RatVector b;
  std::vector<Relation> relations;
  RatVector c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RatVector x;
  Rational value;
};

LpResult solve_lp(const LinearProgram& lp);

// Homogeneous cone { x : g.x > 0 for g in strict, g.x >= 0 for g in weak,
// h.x = 0 for h in equal }.
struct ConeSystem {
  int dim = 0;
  std::vector<RatRowVector> strict;
  std::vector<RatRowVector> weak;
  std::vector<RatRowVector> equal;

  bool contains(const RatVector& x) const;
};

struct InteriorPoint {
  RatVector x;
  Rational depth;  // min over strict rows of g.x, with |x_i| <= 1
};

// Maximizes the smallest strict slack over the box |x_i| <= 1; nullopt when the
// open cone is empty.
std::optional<InteriorPoint> interior_point(const ConeSystem& cone);

}  // namespace gkz
