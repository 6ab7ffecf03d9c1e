#include "gkz/secondary.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace gkz {

namespace {

// Unit-vector tail that makes any lexicographic height generic.
std::vector<RatVector> generic_tail(int N) {
  std::vector<RatVector> tail;
  RatVector powers(N);
  Rational w = 1;
  for (int j = 0; j < N; ++j, w *= 2) powers(j) = w;
  tail.push_back(powers);
  for (int j = 0; j < N; ++j) {
    RatVector e = RatVector::Zero(N);
    e(j) = 1;
    tail.push_back(e);
  }
  return tail;
}

// Volume of conv(0, columns) for columns lying on a hyperplane off the origin,
// or of conv(0, columns) generally when M has full row rank.
Integer pyramid_volume(const IntMatrix& M) {
  const Eigen::Index n = M.rows(), N = M.cols();
  if (N == n) return mp::abs(Integer(mp::numerator(determinant(to_rational(M)))));
  IntMatrix B = IntMatrix::Zero(n + 1, N + 1);
  B.row(0).setConstant(Integer(1));
  B.block(1, 1, n, N) = M;
  Configuration hom(B);
  RatVector lift = RatVector::Zero(N + 1);
  for (Eigen::Index j = 0; j < N; ++j) lift(j + 1) = Rational(M.col(j).squaredNorm());
  std::vector<RatVector> levels{lift};
  for (auto& t : generic_tail(static_cast<int>(N + 1))) levels.push_back(t);
  Subdivision T = regular_subdivision_lex(hom, levels);
  Integer vol = 0;
  for (const auto& cell : T.cells) vol += simplex_data(hom, cell).volume();
  return vol;
}

// Cells through the lex lower hull, one simplex per candidate.
std::set<IndexSet> lower_cells(const Configuration& A, std::span<const RatVector> levels) {
  const int n = A.n(), N = A.N();
  std::set<IndexSet> cells;
  for_each_subset(N, n, [&](const IndexSet& tau) {
    auto s = try_simplex(A, tau);
    if (!s) return;
    std::vector<RatRowVector> normals;
    for (const auto& h : levels) {
      RatRowVector ht(n);
      for (int i = 0; i < n; ++i) ht(i) = h(tau[i] - 1);
      normals.push_back(ht * s->inverse);
    }
    IndexSet cell;
    for (int j = 1; j <= N; ++j) {
      int sign = 0;
      for (std::size_t l = 0; l < levels.size() && sign == 0; ++l) {
        Rational d = levels[l](j - 1) - normals[l].dot(A.rational_column(j));
        sign = d > 0 ? 1 : (d < 0 ? -1 : 0);
      }
      if (sign < 0) return;
      if (sign == 0) cell.push_back(j);
    }
    cells.insert(std::move(cell));
  });
  return cells;
}

}  // namespace

int corank(const Configuration& A, const IndexSet& cell) {
  return static_cast<int>(cell.size()) - static_cast<int>(rank(A.rational_columns(cell)));
}

Subdivision make_subdivision(const Configuration& A, std::vector<IndexSet> cells) {
  Subdivision S;
  for (auto& c : cells) std::sort(c.begin(), c.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  S.cells = std::move(cells);
  S.isTriangulation = !S.cells.empty();
  std::optional<IndexSet> circuitSupport;
  bool almost = true;
  int corankOne = 0;
  for (const auto& c : S.cells) {
    int k = corank(A, c);
    if (k != 0 || static_cast<int>(c.size()) != A.n()) S.isTriangulation = false;
    if (k > 1) almost = false;
    if (k == 1) {
      ++corankOne;
      RatMatrix ker = nullspace(A.rational_columns(c));
      IndexSet Z;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (ker(i, 0) != 0) Z.push_back(c[i]);
      if (circuitSupport && *circuitSupport != Z) almost = false;
      circuitSupport = Z;
    }
  }
  S.isAlmost = almost && corankOne > 0;
  return S;
}

Subdivision regular_subdivision_lex(const Configuration& A, std::span<const RatVector> levels) {
  if (levels.empty()) throw Error(ErrorCode::InvalidInput, "empty height");
  for (const auto& h : levels)
    if (h.size() != A.N()) throw Error(ErrorCode::InvalidInput, "weight has wrong length");
  auto cells = lower_cells(A, levels);
  Subdivision S = make_subdivision(A, std::vector<IndexSet>(cells.begin(), cells.end()));
  S.weight = levels[0];
  return S;
}

Subdivision regular_subdivision(const Configuration& A, const RatVector& omega, bool perturb) {
  std::vector<RatVector> levels{omega};
  if (perturb)
    for (auto& t : generic_tail(A.N())) levels.push_back(t);
  return regular_subdivision_lex(A, levels);
}

int Circuit::coefficient(int label) const {
  int i = position(Z, label);
  return i < 0 ? 0 : u(i).convert_to<int>();
}

Circuit Circuit::reversed() const {
  Circuit c = *this;
  c.u = -u;
  std::swap(c.plus, c.minus);
  return c;
}

namespace {

Circuit orient(IndexSet Z, IntVector u, std::optional<int> positive) {
  int ref = 0;
  if (positive) ref = position(Z, *positive);
  if (ref < 0) throw Error(ErrorCode::InvalidInput, "orientation index not in circuit");
  if (u(ref) < 0) u = -u;
  Circuit c;
  c.Z = std::move(Z);
  c.u = std::move(u);
  for (std::size_t i = 0; i < c.Z.size(); ++i) (c.u(i) > 0 ? c.plus : c.minus).push_back(c.Z[i]);
  return c;
}

}  // namespace

std::vector<Circuit> find_circuits(const Configuration& A) {
  std::vector<Circuit> out;
  for (int k = 1; k <= A.n() + 1; ++k) {
    for_each_subset(A.N(), k, [&](const IndexSet& Z) {
      RatMatrix ker = nullspace(A.rational_columns(Z));
      if (ker.cols() != 1) return;
      for (Eigen::Index i = 0; i < ker.rows(); ++i)
        if (ker(i, 0) == 0) return;
      out.push_back(orient(Z, primitive(ker.col(0)), std::nullopt));
    });
  }
  return out;
}

Circuit circuit_of(const Configuration& A, const IndexSet& cell, std::optional<int> positive) {
  RatMatrix ker = nullspace(A.rational_columns(cell));
  if (ker.cols() != 1) throw Error(ErrorCode::InvalidInput, "cell " + label_string(cell) + " is not of corank 1");
  IntVector full = primitive(ker.col(0));
  IndexSet Z;
  std::vector<Integer> u;
  for (std::size_t i = 0; i < cell.size(); ++i)
    if (full(i) != 0) {
      Z.push_back(cell[i]);
      u.push_back(full(i));
    }
  IntVector uv(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) uv(i) = u[i];
  return orient(Z, uv, positive);
}

bool is_convergent(const Configuration& A, const Subdivision& T) {
  if (!T.isTriangulation) throw Error(ErrorCode::NotATriangulation, "convergence needs a triangulation");
  for (const auto& sigma : T.cells) {
    SimplexData s = simplex_data(A, sigma);
    for (int j = 1; j <= A.N(); ++j) {
      if (contains(sigma, j)) continue;
      if (p_vector(s, A.rational_column(j)).sum() > 1) return false;
    }
  }
  return true;
}

Integer normalized_volume(const Configuration& A) {
  if (rank(A.rational()) < A.n()) throw Error(ErrorCode::ZeroVolume, "configuration is not full rank");
  return pyramid_volume(A.matrix());
}

std::vector<Facet> facets_off_origin(const Configuration& A) {
  std::map<IndexSet, RatRowVector> found;
  for_each_subset(A.N(), A.n(), [&](const IndexSet& tau) {
    auto s = try_simplex(A, tau);
    if (!s) return;
    RatRowVector phi = RatRowVector::Constant(A.n(), Rational(1)) * s->inverse;
    IndexSet F;
    for (int j = 1; j <= A.N(); ++j) {
      Rational v = phi.dot(A.rational_column(j));
      if (v > 1) return;
      if (v == 1) F.push_back(j);
    }
    found.emplace(F, phi);
  });
  std::vector<Facet> out;
  for (auto& [F, phi] : found) out.push_back(Facet{F, phi, pyramid_volume(A.columns(F))});
  return out;
}

Integer rank_gg(const Configuration& A) {
  Integer vol = normalized_volume(A);
  Integer idx = lattice_index(A);
  if (vol % idx != 0) throw Error(ErrorCode::InvalidInput, "volume not divisible by lattice index");
  return vol / idx;
}

RatRowVector wall_functional(const Configuration& A, const SimplexData& tau, int k) {
  RatRowVector g = RatRowVector::Zero(A.N());
  RatVector q = p_vector(tau, A.rational_column(k));
  g(k - 1) += 1;
  for (std::size_t i = 0; i < tau.sigma.size(); ++i) g(tau.sigma[i] - 1) -= q(i);
  return g;
}

namespace {

SimplexData first_simplex(const Configuration& A, const IndexSet& cell) {
  std::optional<SimplexData> out;
  for_each_subset(static_cast<int>(cell.size()), A.n(), [&](const IndexSet& pos) {
    if (out) return;
    IndexSet tau;
    for (int p : pos) tau.push_back(cell[p - 1]);
    out = try_simplex(A, tau);
  });
  if (!out) throw Error(ErrorCode::DegenerateSimplex, "cell " + label_string(cell) + " is not full-dimensional");
  return *out;
}

}  // namespace

ConeSystem secondary_cone(const Configuration& A, const Subdivision& S) {
  ConeSystem cone;
  cone.dim = A.N();
  for (const auto& cell : S.cells) {
    SimplexData tau = first_simplex(A, cell);
    for (int k = 1; k <= A.N(); ++k) {
      if (contains(tau.sigma, k)) continue;
      RatRowVector g = wall_functional(A, tau, k);
      (contains(cell, k) ? cone.equal : cone.strict).push_back(g);
    }
  }
  return cone;
}

ConeSystem Modification::ctilde_cone(int N) const {
  ConeSystem cone;
  cone.dim = N;
  for (const auto& c : ctilde) cone.strict.push_back(c.functional);
  return cone;
}

Modification modification(const Configuration& A, const Subdivision& T, const Subdivision& Tprime) {
  if (!T.isTriangulation || !Tprime.isTriangulation)
    throw Error(ErrorCode::NotATriangulation, "modification needs two triangulations");
  std::vector<IndexSet> D, Dp, irr;
  for (const auto& c : T.cells)
    (std::binary_search(Tprime.cells.begin(), Tprime.cells.end(), c) ? irr : D).push_back(c);
  for (const auto& c : Tprime.cells)
    if (!std::binary_search(T.cells.begin(), T.cells.end(), c)) Dp.push_back(c);
  if (D.empty() || Dp.empty()) throw Error(ErrorCode::NotAdjacent, "triangulations coincide");

  for (const Circuit& base : find_circuits(A)) {
    for (const Circuit& c : {base, base.reversed()}) {
      std::set<IndexSet> links;
      bool ok = true;
      for (const auto& sigma : D) {
        IndexSet missing = set_minus(c.Z, sigma);
        if (missing.size() != 1 || !contains(c.plus, missing[0])) {
          ok = false;
          break;
        }
        links.insert(set_minus(sigma, c.Z));
      }
      if (!ok) continue;
      auto side = [&](const IndexSet& part) {
        std::vector<IndexSet> cells;
        for (const auto& L : links)
          for (int i : part) cells.push_back(set_union(set_minus(c.Z, {i}), L));
        std::sort(cells.begin(), cells.end());
        return cells;
      };
      if (side(c.plus) != D || side(c.minus) != Dp) continue;

      Modification m;
      m.source = T;
      m.target = Tprime;
      m.irrelevant = irr;
      m.circuit = c;
      for (const auto& L : links) m.cells.push_back(set_union(c.Z, L));
      std::vector<IndexSet> qcells = irr;
      qcells.insert(qcells.end(), m.cells.begin(), m.cells.end());
      m.intermediate = make_subdivision(A, qcells);
      ConeSystem cq = secondary_cone(A, m.intermediate);
      auto inside = interior_point(cq);
      if (!inside) throw Error(ErrorCode::NotAdjacent, "intermediate subdivision is not regular");
      m.intermediate.weight = inside->x;
      if (!(regular_subdivision(A, inside->x) == m.intermediate))
        throw Error(ErrorCode::NotAdjacent, "intermediate subdivision is not regular");

      m.core = m.cells.front();
      for (const auto& I : m.cells) m.core = set_intersection(m.core, I);
      ConeSystem cw = cq;
      for (int k = 1; k <= A.N(); ++k) {
        RatRowVector e = RatRowVector::Zero(A.N());
        e(k - 1) = 1;
        (contains(m.core, k) ? cw.equal : cw.strict).push_back(e);
      }
      auto wq = interior_point(cw);
      if (!wq) throw Error(ErrorCode::NotAdjacent, "no weight of the intermediate cone vanishes on its core");
      m.omegaQ = to_rational(primitive(wq->x));

      for (const auto& I : m.cells)
        for (int j : c.plus) {
          SimplexData tau = simplex_data(A, set_minus(I, {j}));
          for (int k = 1; k <= A.N(); ++k)
            if (!contains(I, k)) m.ctilde.push_back({I, j, k, wall_functional(A, tau, k)});
        }
      return m;
    }
  }
  throw Error(ErrorCode::NotAdjacent, "no circuit relates the two triangulations");
}

namespace {

// Appends the domain constraints omega - vA > 0 for non-homogeneous
// configurations, extending the cone by n auxiliary coordinates.
ConeSystem with_domain(const Configuration& A, const ConeSystem& cone) {
  if (A.homogeneous()) return cone;
  const int N = A.N(), n = A.n();
  ConeSystem out;
  out.dim = N + n;
  auto extend = [&](const RatRowVector& g) {
    RatRowVector e = RatRowVector::Zero(N + n);
    e.head(N) = g;
    return e;
  };
  for (const auto& g : cone.strict) out.strict.push_back(extend(g));
  for (const auto& g : cone.weak) out.weak.push_back(extend(g));
  for (const auto& g : cone.equal) out.equal.push_back(extend(g));
  for (int i = 0; i < N; ++i) {
    RatRowVector e = RatRowVector::Zero(N + n);
    e(i) = 1;
    for (int r = 0; r < n; ++r) e(N + r) = -A.rational()(r, i);
    out.strict.push_back(e);
  }
  return out;
}

std::optional<RatVector> cone_point(const Configuration& A, const ConeSystem& cone) {
  auto p = interior_point(with_domain(A, cone));
  if (!p) return std::nullopt;
  return RatVector(p->x.head(A.N()));
}

}  // namespace

FlipGraph flip_graph(const Configuration& A, int maxNodes) {
  const int N = A.N();
  FlipGraph g;
  std::vector<RatVector> levels{A.homogeneous() ? RatVector(RatVector::Zero(N))
                                                : RatVector(RatVector::Constant(N, Rational(1)))};
  for (auto& t : generic_tail(N)) levels.push_back(t);
  Subdivision seed = regular_subdivision_lex(A, levels);
  if (auto w = cone_point(A, secondary_cone(A, seed))) seed.weight = *w;
  std::map<std::vector<IndexSet>, int> index;
  index[seed.cells] = 0;
  g.nodes.push_back(seed);
  std::set<std::pair<int, int>> seen;
  std::deque<int> queue{0};

  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const Subdivision T = g.nodes[cur];
    ConeSystem cone = secondary_cone(A, T);
    std::vector<RatRowVector> walls;
    std::set<std::vector<Integer>> dirs;
    for (const auto& f : cone.strict) {
      IntVector prim = primitive(RatVector(f.transpose()));
      if (dirs.insert(std::vector<Integer>(prim.data(), prim.data() + prim.size())).second)
        walls.push_back(to_rational(prim).transpose());
    }
    for (std::size_t k = 0; k < walls.size(); ++k) {
      ConeSystem wall;
      wall.dim = N;
      wall.equal.push_back(walls[k]);
      for (std::size_t l = 0; l < walls.size(); ++l)
        if (l != k) wall.strict.push_back(walls[l]);
      auto x = cone_point(A, wall);
      if (!x) continue;
      std::vector<RatVector> lv{*x, RatVector(-walls[k].transpose())};
      for (auto& t : generic_tail(N)) lv.push_back(t);
      Subdivision next = regular_subdivision_lex(A, lv);
      if (!next.isTriangulation || next == T) continue;
      auto w = cone_point(A, secondary_cone(A, next));
      if (!w) continue;
      next.weight = *w;
      Modification m;
      try {
        m = modification(A, T, next);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotAdjacent) continue;
        throw;
      }
      int to;
      if (auto it = index.find(next.cells); it != index.end()) {
        to = it->second;
      } else {
        if (static_cast<int>(g.nodes.size()) >= maxNodes) {
          g.truncated = true;
          continue;
        }
        to = static_cast<int>(g.nodes.size());
        index[next.cells] = to;
        g.nodes.push_back(next);
        queue.push_back(to);
      }
      if (seen.insert({std::min(cur, to), std::max(cur, to)}).second)
        g.edges.push_back({cur, to, m.circuit});
    }
  }
  return g;
}

RatRowVector project_to_basis(const RatRowVector& g, const IntMatrix& U) {
  auto lambda = solve<Rational>(to_rational(U), RatVector(g.transpose()));
  if (!lambda) throw Error(ErrorCode::InvalidInput, "functional does not lie in the span of the basis");
  return lambda->transpose();
}

RatVector project_weight(const RatVector& omega, const IntMatrix& U) {
  return to_rational(U).transpose() * omega;
}

}  // namespace gkz
