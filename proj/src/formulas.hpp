#pragma once
// Closed-form normals shared by the binary64 and multiprecision code paths.
#include <array>
#include <vector>

#include <boost/math/constants/constants.hpp>

namespace coxdef::formulas {

template <class T>
using V4 = std::array<T, 4>;

template <class T>
T lorentz(const V4<T>& x, const V4<T>& y) {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

// Side faces 0..n-1, top n, bottom n+1, with c = cos(2 pi / n).
template <class T>
std::vector<V4<T>> prism_normals(int n) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T pi = boost::math::constants::pi<T>();
  T c = cos(2 * pi / n);
  T x = sqrt(c / (1 - c)), r = sqrt(1 / (1 - c));
  std::vector<V4<T>> out;
  for (int k = 0; k < n; ++k) {
    T phi = 2 * pi * k / n;
    out.push_back({x, r * cos(phi), r * sin(phi), T(0)});
  }
  T y = sqrt((1 - c) / (4 * c)), z = sqrt((1 + 3 * c) / (4 * c));
  out.push_back({y, T(0), T(0), z});
  out.push_back({y, T(0), T(0), -z});
  return out;
}

// Five-fold symmetric dodecahedron, rotation-axis numbering: faces 1..10
// alternate around the band, 11 and 12 sit on the axis.
template <class T>
struct Do13 {
  T c, s, d;
  V4<T> L(const V4<T>& v) const { return {v[0], c * v[1] - s * v[2], s * v[1] + c * v[2], -v[3]}; }
  V4<T> nu1() const {
    using std::sqrt;
    return {sqrt(c / (4 - 4 * c)), 1 / (sqrt(T(2)) * s), T(0), sqrt((2 + 3 * c) / (4 + 4 * c))};
  }
  V4<T> axis(int sign) const {
    using std::sqrt;
    T q = sqrt(d * d - 1);
    return {1 / q, T(0), T(0), sign * d / q};
  }
  std::vector<V4<T>> axis_numbering() const {
    std::vector<V4<T>> out{nu1()};
    for (int k = 1; k < 10; ++k) out.push_back(L(out.back()));
    out.push_back(axis(1));
    out.push_back(axis(-1));
    return out;
  }
};

template <class T>
Do13<T> do13() {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T pi = boost::math::constants::pi<T>();
  Do13<T> D;
  D.c = cos(pi / 5);
  D.s = sin(pi / 5);
  D.d = sqrt((1 + D.c) / (1 - D.c)) / (sqrt(2 * D.c + 3 * D.c * D.c) + sqrt(-1 + 3 * D.c * D.c));
  return D;
}

// Catalog dodecahedron face -> 1-based index in the axis numbering.
inline constexpr std::array<int, 12> kDo13Index = {11, 7, 9, 1, 3, 5, 8, 10, 2, 4, 6, 12};

template <class T>
std::vector<V4<T>> do13_catalog_normals() {
  auto ax = do13<T>().axis_numbering();
  std::vector<V4<T>> out;
  for (int k : kDo13Index) out.push_back(ax[k - 1]);
  return out;
}

// Frame targets for the (3,3,2) anchor: axis face, then the two band faces.
template <class T>
std::array<V4<T>, 3> do13_frame_targets() {
  auto D = do13<T>();
  auto n1 = D.nu1();
  return {D.axis(1), n1, D.L(D.L(n1))};
}

template <class T>
std::array<V4<T>, 3> standard_targets(bool with_order3) {
  using std::sqrt;
  if (with_order3)
    return {V4<T>{T(0), T(1), T(0), T(0)}, V4<T>{T(0), T(0), T(1), T(0)},
            V4<T>{T(0), T(0), T(-1) / 2, sqrt(T(3)) / 2}};
  return {V4<T>{T(0), T(1), T(0), T(0)}, V4<T>{T(0), T(0), T(1), T(0)}, V4<T>{T(0), T(0), T(0), T(1)}};
}

}  // namespace coxdef::formulas
