#include "gkz/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace gkz {

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const IndexSet& s, int label) { return std::binary_search(s.begin(), s.end(), label); }

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

int position(const IndexSet& s, int label) {
  auto it = std::lower_bound(s.begin(), s.end(), label);
  return (it != s.end() && *it == label) ? static_cast<int>(it - s.begin()) : -1;
}

std::string label_string(const IndexSet& s) {
  bool small = std::all_of(s.begin(), s.end(), [](int i) { return i < 10; });
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!small && i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

IndexSet full_set(int N) {
  IndexSet s(N);
  for (int i = 0; i < N; ++i) s[i] = i + 1;
  return s;
}

Configuration::Configuration(IntMatrix entries) : a_(std::move(entries)) {
  if (a_.rows() < 1 || a_.rows() >= a_.cols())
    throw Error(ErrorCode::InvalidInput, "configuration needs 0 < n < N");
  q_ = to_rational(a_);
  if (rank(q_) != a_.rows()) throw Error(ErrorCode::InvalidInput, "configuration must have full row rank");
  RatVector ones = RatVector::Constant(a_.cols(), Rational(1));
  if (auto h = solve<Rational>(q_.transpose(), ones)) h_ = RatRowVector(h->transpose());
}

IntMatrix Configuration::columns(const IndexSet& labels) const {
  IntMatrix m(n(), static_cast<Eigen::Index>(labels.size()));
  for (std::size_t k = 0; k < labels.size(); ++k) m.col(k) = a_.col(labels[k] - 1);
  return m;
}

RatMatrix Configuration::rational_columns(const IndexSet& labels) const {
  RatMatrix m(n(), static_cast<Eigen::Index>(labels.size()));
  for (std::size_t k = 0; k < labels.size(); ++k) m.col(k) = q_.col(labels[k] - 1);
  return m;
}

std::optional<SimplexData> try_simplex(const Configuration& A, const IndexSet& sigma) {
  if (static_cast<int>(sigma.size()) != A.n()) return std::nullopt;
  RatMatrix m = A.rational_columns(sigma);
  auto inv = inverse(m);
  if (!inv) return std::nullopt;
  SimplexData s;
  s.sigma = sigma;
  s.inverse = std::move(*inv);
  s.det = mp::numerator(determinant(m));
  return s;
}

SimplexData simplex_data(const Configuration& A, const IndexSet& sigma) {
  for (int l : sigma)
    if (l < 1 || l > A.N()) throw Error(ErrorCode::InvalidInput, "label out of range");
  auto s = try_simplex(A, sigma);
  if (!s) throw Error(ErrorCode::DegenerateSimplex, label_string(sigma));
  return *s;
}

Rational p(const SimplexData& s, int label, const RatVector& v) {
  int i = position(s.sigma, label);
  if (i < 0)
    throw Error(ErrorCode::IndexNotInSimplex, std::to_string(label) + " not in " + label_string(s.sigma));
  return s.inverse.row(i).dot(v);
}

RatVector p_vector(const SimplexData& s, const RatVector& v) { return s.inverse * v; }

SmithForm smith_normal_form(const IntMatrix& M) {
  const Eigen::Index m = M.rows(), n = M.cols();
  SmithForm f;
  f.D = M;
  f.U = IntMatrix::Identity(m, m);
  f.V = IntMatrix::Identity(n, n);
  IntMatrix& D = f.D;
  Eigen::Index t = 0;
  for (; t < std::min(m, n); ++t) {
    while (true) {
      Eigen::Index pr = -1, pc = -1;
      Integer best = 0;
      for (Eigen::Index r = t; r < m; ++r)
        for (Eigen::Index c = t; c < n; ++c)
          if (D(r, c) != 0 && (pr < 0 || mp::abs(D(r, c)) < best)) {
            best = mp::abs(D(r, c));
            pr = r;
            pc = c;
          }
      if (pr < 0) goto done;
      if (pr != t) {
        D.row(t).swap(D.row(pr));
        f.U.row(t).swap(f.U.row(pr));
      }
      if (pc != t) {
        D.col(t).swap(D.col(pc));
        f.V.col(t).swap(f.V.col(pc));
      }
      bool clean = true;
      for (Eigen::Index r = t + 1; r < m; ++r) {
        if (D(r, t) == 0) continue;
        Integer q = D(r, t) / D(t, t);
        D.row(r) -= q * D.row(t);
        f.U.row(r) -= q * f.U.row(t);
        if (D(r, t) != 0) clean = false;
      }
      for (Eigen::Index c = t + 1; c < n; ++c) {
        if (D(t, c) == 0) continue;
        Integer q = D(t, c) / D(t, t);
        D.col(c) -= q * D.col(t);
        f.V.col(c) -= q * f.V.col(t);
        if (D(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (Eigen::Index r = t + 1; r < m && divides; ++r)
        for (Eigen::Index c = t + 1; c < n; ++c)
          if (D(r, c) % D(t, t) != 0) {
            D.row(t) += D.row(r);
            f.U.row(t) += f.U.row(r);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.row(t) *= Integer(-1);
      f.U.row(t) *= Integer(-1);
    }
  }
done:
  f.rank = t;
  return f;
}

HermiteForm hermite_normal_form(const IntMatrix& M) {
  const Eigen::Index m = M.rows(), n = M.cols();
  HermiteForm f;
  f.H = M;
  f.V = IntMatrix::Identity(n, n);
  IntMatrix& H = f.H;
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m && k < n; ++i) {
    // Euclid on columns k..n-1 of row i until one nonzero entry remains.
    while (true) {
      Eigen::Index pc = -1;
      for (Eigen::Index c = k; c < n; ++c)
        if (H(i, c) != 0 && (pc < 0 || mp::abs(H(i, c)) < mp::abs(H(i, pc)))) pc = c;
      if (pc < 0) break;
      if (pc != k) {
        H.col(k).swap(H.col(pc));
        f.V.col(k).swap(f.V.col(pc));
      }
      bool done = true;
      for (Eigen::Index c = k + 1; c < n; ++c) {
        if (H(i, c) == 0) continue;
        Integer q = H(i, c) / H(i, k);
        H.col(c) -= q * H.col(k);
        f.V.col(c) -= q * f.V.col(k);
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (H(i, k) == 0) continue;
    if (H(i, k) < 0) {
      H.col(k) *= Integer(-1);
      f.V.col(k) *= Integer(-1);
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      Integer q = floor(Rational(H(i, c)) / Rational(H(i, k)));
      if (q == 0) continue;
      H.col(c) -= q * H.col(k);
      f.V.col(c) -= q * f.V.col(k);
    }
    ++k;
  }
  f.rank = k;
  return f;
}

IntMatrix kernel_basis(const IntMatrix& M) {
  SmithForm f = smith_normal_form(M);
  return f.V.rightCols(M.cols() - f.rank);
}

Integer lattice_index(const Configuration& A) {
  SmithForm f = smith_normal_form(A.matrix());
  Integer idx = 1;
  for (Eigen::Index i = 0; i < f.rank; ++i) idx *= f.D(i, i);
  return idx;
}

namespace {

// Graded colex walk over [0,bound)^dim. Returns false from f to stop.
bool graded_colex(int dim, long bound, const std::function<bool(const std::vector<long>&)>& f) {
  std::vector<long> v(dim, 0);
  std::function<bool(int, long)> fill = [&](int pos, long rest) -> bool {
    if (pos == 0) {
      if (rest >= bound) return true;
      v[0] = rest;
      return f(v);
    }
    for (long x = 0; x <= std::min(rest, bound - 1); ++x) {
      v[pos] = x;
      if (!fill(pos - 1, rest - x)) return false;
    }
    v[pos] = 0;
    return true;
  };
  for (long total = 0; total <= dim * (bound - 1); ++total)
    if (!fill(dim - 1, total)) return false;
  return true;
}

}  // namespace

std::vector<IntVector> lattice_quotient(const RatMatrix& inverseGenerator, const Integer& index) {
  const int dim = static_cast<int>(inverseGenerator.rows());
  const long count = index.convert_to<long>();
  std::vector<IntVector> reps;
  std::map<std::vector<Rational>, bool> seen;
  graded_colex(dim, count, [&](const std::vector<long>& v) {
    RatVector x(dim);
    for (int i = 0; i < dim; ++i) x(i) = Rational(v[i]);
    RatVector y = inverseGenerator * x;
    std::vector<Rational> key(dim);
    for (int i = 0; i < dim; ++i) key[i] = frac(y(i));
    if (seen.emplace(std::move(key), true).second) {
      IntVector k(dim);
      for (int i = 0; i < dim; ++i) k(i) = Integer(v[i]);
      reps.push_back(std::move(k));
    }
    return static_cast<long>(reps.size()) < count;
  });
  return reps;
}

QuotientReps quotient_reps(const Configuration& A, const SimplexData& s, std::optional<int> j0) {
  QuotientReps out;
  out.sigma = s.sigma;
  out.reps = lattice_quotient(s.inverse.transpose(), s.volume());
  if (!j0) return out;
  if (contains(s.sigma, *j0) || *j0 < 1 || *j0 > A.N())
    throw Error(ErrorCode::InvalidInput, "normalizing index must lie outside the simplex");
  if (!A.homogeneous())
    throw Error(ErrorCode::NormalizationImpossible, "configuration is not homogeneous");
  RatVector q = p_vector(s, A.rational_column(*j0));
  for (auto& k : out.reps) {
    Rational sum = 0;
    for (Eigen::Index i = 0; i < k.size(); ++i) sum += Rational(k(i)) * q(i);
    Integer shift = floor(sum);
    for (Eigen::Index i = 0; i < k.size(); ++i) k(i) -= shift;
  }
  out.normalizedFor = j0;
  return out;
}

std::optional<IntVector> class_difference(const SimplexData& s, const IntVector& k, const IntVector& kPrime) {
  RatVector d = to_rational(IntVector(k - kPrime));
  RatVector w = s.inverse.transpose() * d;
  if (!all_integral(w)) return std::nullopt;
  IntVector out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) out(i) = mp::numerator(w(i));
  return out;
}

}  // namespace gkz
