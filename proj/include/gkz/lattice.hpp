#pragma once

// Configurations, simplices and the integer lattice arithmetic around them.
// Column labels are 1-based throughout, matching the usual notation a(1..N).

#include "gkz/errors.hpp"
#include "gkz/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gkz {

using IndexSet = std::vector<int>;  // sorted 1-based labels

IndexSet set_minus(const IndexSet& a, const IndexSet& b);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
bool contains(const IndexSet& s, int label);
bool is_subset(const IndexSet& a, const IndexSet& b);
int position(const IndexSet& s, int label);  // -1 if absent
std::string label_string(const IndexSet& s);  // {1,3,4} -> "134" (or "1,3,14")
IndexSet full_set(int N);

// Calls f(subset) for every k-subset of {1..N} in lexicographic order.
template <class F>
void for_each_subset(int N, int k, F&& f) {
  if (k < 0 || k > N) return;
  IndexSet s(k);
  for (int i = 0; i < k; ++i) s[i] = i + 1;
  while (true) {
    f(static_cast<const IndexSet&>(s));
    int i = k - 1;
    while (i >= 0 && s[i] == N - k + i + 1) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

class Configuration {
 public:
  // Requires n < N and rank n; throws InvalidInput otherwise.
  explicit Configuration(IntMatrix entries);

  int n() const { return static_cast<int>(a_.rows()); }
  int N() const { return static_cast<int>(a_.cols()); }
  const IntMatrix& matrix() const { return a_; }
  const RatMatrix& rational() const { return q_; }
  IntVector column(int label) const { return a_.col(label - 1); }
  RatVector rational_column(int label) const { return q_.col(label - 1); }
  IntMatrix columns(const IndexSet& labels) const;
  RatMatrix rational_columns(const IndexSet& labels) const;

  // A row functional h with h a(j) = 1 for all j, when one exists.
  const std::optional<RatRowVector>& homogeneity() const { return h_; }
  bool homogeneous() const { return h_.has_value(); }

 private:
  IntMatrix a_;
  RatMatrix q_;
  std::optional<RatRowVector> h_;
};

struct SimplexData {
  IndexSet sigma;
  RatMatrix inverse;  // A_sigma^{-1}, rows aligned with sigma
  Integer det;        // signed det A_sigma
  Integer volume() const { return mp::abs(det); }
};

// Throws DegenerateSimplex unless sigma has n independent columns.
SimplexData simplex_data(const Configuration& A, const IndexSet& sigma);
std::optional<SimplexData> try_simplex(const Configuration& A, const IndexSet& sigma);

// p_{sigma,i}(v): the i-th coordinate of A_sigma^{-1} v.
Rational p(const SimplexData& s, int label, const RatVector& v);
RatVector p_vector(const SimplexData& s, const RatVector& v);

// U D V with U M V = D diagonal, d_1 | d_2 | ..., U and V unimodular.
struct SmithForm {
  IntMatrix U, D, V;
  Eigen::Index rank = 0;
};
SmithForm smith_normal_form(const IntMatrix& M);

// Column Hermite form: M V = [H 0] with H lower triangular, positive diagonal.
struct HermiteForm {
  IntMatrix H, V;
  Eigen::Index rank = 0;
};
HermiteForm hermite_normal_form(const IntMatrix& M);

// A basis of ker(M) over Z that spans the saturated kernel lattice.
IntMatrix kernel_basis(const IntMatrix& M);

// [Z^n : ZA].
Integer lattice_index(const Configuration& A);

// Representatives of Z^d / Z M given M^{-1}; d = |det M| classes, enumerated
// in graded colex order over the box [0,|det M|)^d, first hit of each class.
std::vector<IntVector> lattice_quotient(const RatMatrix& inverseGenerator, const Integer& index);

struct QuotientReps {
  IndexSet sigma;
  std::vector<IntVector> reps;  // entries aligned with sigma
  std::optional<int> normalizedFor;
};

// Representatives of Z^sigma / Z tA_sigma. With j0, each representative is
// moved along 1_sigma so that 0 <= sum_i k_i p_{sigma,i}(a(j0)) < 1; that needs
// a homogeneous configuration (NormalizationImpossible otherwise).
QuotientReps quotient_reps(const Configuration& A, const SimplexData& s,
                           std::optional<int> j0 = std::nullopt);

// w with tA_sigma w = k - k', if k and k' are in one class.
std::optional<IntVector> class_difference(const SimplexData& s, const IntVector& k,
                                          const IntVector& kPrime);

}  // namespace gkz
