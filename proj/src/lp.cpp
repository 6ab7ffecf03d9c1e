#include "gkz/lp.hpp"

#include "gkz/errors.hpp"

namespace gkz {

namespace {

struct Tableau {
  RatMatrix t;  // m x (cols + 1), last column is the right-hand side
  std::vector<Eigen::Index> basis;
  std::vector<bool> allowed;

  Eigen::Index cols() const { return t.cols() - 1; }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Rational lead = t(row, col);
    t.row(row) /= lead;
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      if (r == row || t(r, col) == 0) continue;
      const Rational f = t(r, col);
      t.row(r) -= f * t.row(row);
    }
    basis[row] = col;
  }

  // Maximizes cost.x from the current basic feasible solution.
  LpStatus maximize(const RatVector& cost) {
    const Eigen::Index m = t.rows(), rhs = cols();
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < rhs && enter < 0; ++j) {
        if (!allowed[j]) continue;
        Rational r = cost(j);
        for (Eigen::Index i = 0; i < m; ++i)
          if (t(i, j) != 0) r -= cost(basis[i]) * t(i, j);
        if (r > 0) enter = j;
      }
      if (enter < 0) return LpStatus::Optimal;
      Eigen::Index leave = -1;
      Rational best;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (t(i, enter) <= 0) continue;
        Rational ratio = t(i, rhs) / t(i, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const Eigen::Index m = lp.A.rows(), n = lp.A.cols();
  if (lp.b.size() != m || static_cast<Eigen::Index>(lp.relations.size()) != m || lp.c.size() != n)
    throw Error(ErrorCode::InvalidInput, "inconsistent linear program");

  RatMatrix A = lp.A;
  RatVector b = lp.b;
  std::vector<Relation> rel = lp.relations;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b(i) >= 0) continue;
    A.row(i) *= Rational(-1);
    b(i) = -b(i);
    if (rel[i] == Relation::LessEqual)
      rel[i] = Relation::GreaterEqual;
    else if (rel[i] == Relation::GreaterEqual)
      rel[i] = Relation::LessEqual;
  }

  Eigen::Index slacks = 0, artificials = 0;
  for (auto r : rel) {
    if (r != Relation::Equal) ++slacks;
    if (r != Relation::LessEqual) ++artificials;
  }
  const Eigen::Index cols = n + slacks + artificials;
  Tableau tab;
  tab.t = RatMatrix::Zero(m, cols + 1);
  tab.t.leftCols(n) = A;
  tab.t.col(cols) = b;
  tab.basis.assign(m, -1);
  tab.allowed.assign(cols, true);

  Eigen::Index s = n, a = n + slacks;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (rel[i] == Relation::LessEqual) {
      tab.t(i, s) = 1;
      tab.basis[i] = s++;
    } else {
      if (rel[i] == Relation::GreaterEqual) tab.t(i, s++) = -1;
      tab.t(i, a) = 1;
      tab.basis[i] = a++;
    }
  }

  LpResult result;
  if (artificials > 0) {
    RatVector phase1 = RatVector::Zero(cols);
    for (Eigen::Index j = n + slacks; j < cols; ++j) phase1(j) = -1;
    tab.maximize(phase1);
    Rational infeas = 0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (tab.basis[i] >= n + slacks) infeas += tab.t(i, cols);
    if (infeas != 0) return result;
    for (Eigen::Index j = n + slacks; j < cols; ++j) tab.allowed[j] = false;
    // Drive zero-level artificials out of the basis; drop redundant rows.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis[i] < n + slacks) {
        keep.push_back(i);
        continue;
      }
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < n + slacks && col < 0; ++j)
        if (tab.t(i, j) != 0) col = j;
      if (col >= 0) {
        tab.pivot(i, col);
        keep.push_back(i);
      }
    }
    if (static_cast<Eigen::Index>(keep.size()) < m) {
      RatMatrix t(keep.size(), cols + 1);
      std::vector<Eigen::Index> basis;
      for (std::size_t k = 0; k < keep.size(); ++k) {
        t.row(k) = tab.t.row(keep[k]);
        basis.push_back(tab.basis[keep[k]]);
      }
      tab.t = std::move(t);
      tab.basis = std::move(basis);
    }
  }

  RatVector cost = RatVector::Zero(cols);
  cost.head(n) = lp.c;
  result.status = tab.maximize(cost);
  if (result.status != LpStatus::Optimal) return result;
  result.x = RatVector::Zero(n);
  for (std::size_t i = 0; i < tab.basis.size(); ++i)
    if (tab.basis[i] < n) result.x(tab.basis[i]) = tab.t(i, cols);
  result.value = lp.c.dot(result.x);
  return result;
}

bool ConeSystem::contains(const RatVector& x) const {
  for (const auto& g : strict)
    if (g.dot(x) <= 0) return false;
  for (const auto& g : weak)
    if (g.dot(x) < 0) return false;
  for (const auto& h : equal)
    if (h.dot(x) != 0) return false;
  return true;
}

std::optional<InteriorPoint> interior_point(const ConeSystem& cone) {
  // Variables y = x + 1 in [0,2]^dim and t in [0,1]; maximize t.
  const int d = cone.dim;
  const Eigen::Index rows =
      static_cast<Eigen::Index>(cone.strict.size() + cone.weak.size() + cone.equal.size()) + d + 1;
  LinearProgram lp;
  lp.A = RatMatrix::Zero(rows, d + 1);
  lp.b = RatVector::Zero(rows);
  lp.c = RatVector::Zero(d + 1);
  lp.c(d) = 1;
  Eigen::Index r = 0;
  auto shifted = [&](const RatRowVector& g) {
    lp.A.block(r, 0, 1, d) = g;
    lp.b(r) = g.sum();
  };
  for (const auto& g : cone.strict) {
    shifted(g);
    lp.A(r, d) = -1;
    lp.relations.push_back(Relation::GreaterEqual);
    ++r;
  }
  for (const auto& g : cone.weak) {
    shifted(g);
    lp.relations.push_back(Relation::GreaterEqual);
    ++r;
  }
  for (const auto& h : cone.equal) {
    shifted(h);
    lp.relations.push_back(Relation::Equal);
    ++r;
  }
  for (int i = 0; i < d; ++i, ++r) {
    lp.A(r, i) = 1;
    lp.b(r) = 2;
    lp.relations.push_back(Relation::LessEqual);
  }
  lp.A(r, d) = 1;
  lp.b(r) = 1;
  lp.relations.push_back(Relation::LessEqual);

  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal || res.value <= 0) return std::nullopt;
  InteriorPoint out;
  out.x = res.x.head(d) - RatVector::Constant(d, Rational(1));
  out.depth = res.value;
  return out;
}

}  // namespace gkz
