#pragma once

#include "gkz/lattice.hpp"

#include <initializer_list>

namespace testdata {

inline gkz::Configuration make(std::initializer_list<std::initializer_list<int>> rows) {
  gkz::IntMatrix m(rows.size(), rows.begin()->size());
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (int v : row) m(r, c++) = v;
    ++r;
  }
  return gkz::Configuration(m);
}

// Five points in the plane: (0,0),(1,0),(2,0),(0,1),(0,-1), homogenized.
inline gkz::Configuration pentagon() { return make({{1, 1, 1, 1, 1}, {0, 1, 2, 0, 0}, {0, 0, 0, 1, -1}}); }

inline gkz::Configuration six_points() {
  return make({{1, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 1}, {0, 0, 0, 1, -1, -1}});
}

// Not homogeneous; conv(0, A) has two facets off the origin.
inline gkz::Configuration appell() { return make({{1, 0, 0, 1, 1}, {0, 1, 0, 1, 0}, {0, 0, 1, -1, -1}}); }

inline gkz::Configuration gauss() { return make({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, -1}}); }

inline gkz::IntMatrix pentagon_basis() {
  gkz::IntMatrix U(5, 2);
  U << -1, -2, 2, 0, -1, 0, 0, 1, 0, 1;
  return U;
}

// A weight w with U^T w = (w1, w2); its chamber is fixed by the sign pattern.
inline Eigen::VectorXd pentagon_weight(double w1, double w2) {
  Eigen::MatrixXd Ut = gkz::to_double(pentagon_basis()).transpose();
  return Ut.completeOrthogonalDecomposition().solve(Eigen::Vector2d(w1, w2));
}

inline gkz::IndexSet S(std::initializer_list<int> l) { return gkz::IndexSet(l); }

}  // namespace testdata
