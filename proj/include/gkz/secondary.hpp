#pragma once

// Regular subdivisions, the secondary fan and its walls.

#include "gkz/lattice.hpp"
#include "gkz/lp.hpp"

#include <optional>
#include <span>
#include <vector>

namespace gkz {

struct Subdivision {
  std::vector<IndexSet> cells;  // maximal cells, sorted
  RatVector weight;             // a weight inducing it, when known
  bool isTriangulation = false;
  bool isAlmost = false;

  bool operator==(const Subdivision& o) const { return cells == o.cells; }
};

// Lower-hull subdivision for a lexicographic height: levels[0] is the weight,
// later levels break ties in order.
Subdivision regular_subdivision_lex(const Configuration& A, std::span<const RatVector> levels);

// S(omega). With perturb, ties are broken by omega + eps (1,2,4,8,...) followed
// by unit vectors, so the result is always a triangulation.
Subdivision regular_subdivision(const Configuration& A, const RatVector& omega, bool perturb = false);

// Builds a Subdivision from an explicit cell list and classifies it.
Subdivision make_subdivision(const Configuration& A, std::vector<IndexSet> cells);

// |I| - rank(A_I).
int corank(const Configuration& A, const IndexSet& cell);

struct Circuit {
  IndexSet Z;
  IntVector u;  // primitive kernel vector, entries aligned with Z
  IndexSet plus, minus;

  int coefficient(int label) const;
  Circuit reversed() const;
};

// All circuits; u is oriented with its first entry positive.
std::vector<Circuit> find_circuits(const Configuration& A);
// The circuit supported inside a corank-1 set, oriented with u_j0 > 0 if given.
Circuit circuit_of(const Configuration& A, const IndexSet& cell, std::optional<int> positive = std::nullopt);

// Every cell's exponents sum to at most 1 along every other column.
bool is_convergent(const Configuration& A, const Subdivision& T);

Integer normalized_volume(const Configuration& A);

struct Facet {
  IndexSet labels;
  RatRowVector functional;  // phi with phi.a(j) = 1 exactly on the facet
  Integer volume;
};

std::vector<Facet> facets_off_origin(const Configuration& A);

// vol / [Z^n : ZA]; throws if not integral.
Integer rank_gg(const Configuration& A);

// Strict-inequality description of the secondary cone of a subdivision.
ConeSystem secondary_cone(const Configuration& A, const Subdivision& S);

// The functional omega -> omega_k - omega_tau A_tau^{-1} a(k) as a row vector.
RatRowVector wall_functional(const Configuration& A, const SimplexData& tau, int k);

struct CtildeInequality {
  IndexSet cell;  // corank-1 cell I
  int removed;    // j in Z_+, so the simplex is I \ j
  int k;          // column outside I
  RatRowVector functional;
};

struct Modification {
  Subdivision source, target, intermediate;
  std::vector<IndexSet> irrelevant;  // T cap T'
  std::vector<IndexSet> cells;       // corank-1 cells I_s of the intermediate subdivision
  Circuit circuit;                   // oriented so the source is the plus-side refinement
  IndexSet core;                     // intersection of the cells I_s
  RatVector omegaQ;                  // primitive integer point of C_Q, 0 on core, > 0 off it
  std::vector<CtildeInequality> ctilde;

  IndexSet zero_part(const IndexSet& cell) const { return set_minus(cell, circuit.Z); }
  ConeSystem ctilde_cone(int N) const;
};

// Throws NotAdjacent unless T and T' differ by one modification along a circuit.
Modification modification(const Configuration& A, const Subdivision& T, const Subdivision& Tprime);

struct FlipEdge {
  int from, to;
  Circuit circuit;  // plus side is the 'from' triangulation
};

struct FlipGraph {
  std::vector<Subdivision> nodes;
  std::vector<FlipEdge> edges;
  bool truncated = false;
};

// Breadth-first search over regular triangulations by wall crossing.
FlipGraph flip_graph(const Configuration& A, int maxNodes = 1000);

// Coordinates of functionals (which vanish on the row space of A) in a basis of
// L_A given as the columns of U: returns lambda with g = sum lambda_l u_l.
RatRowVector project_to_basis(const RatRowVector& g, const IntMatrix& U);
// pi_A(omega) = (u_l . omega)_l.
RatVector project_weight(const RatVector& omega, const IntMatrix& U);

}  // namespace gkz
