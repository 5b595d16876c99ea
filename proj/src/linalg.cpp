#include "esd/linalg.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "esd/errors.hpp"

namespace esd {

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kPivotTol = std::numeric_limits<double>::epsilon();
// Column orthogonality reachable in floating point: sqrt(4) * eps, the
// usual one-sided Jacobi threshold for 4 rows.
constexpr double kOrthoTol = 2.0 * std::numeric_limits<double>::epsilon();
// Squared norm (after scaling to unit max entry) below which a column is zero.
constexpr double kNegligibleColumn2 = 1e-60;

// Rotate the (p, q) plane so that a(p, q) vanishes. The pivot phase is first
// absorbed into column q, after which the usual real symmetric rotation
// applies.
template <std::size_t N>
void rotate(SquareMatrix<N>& a, SquareMatrix<N>* v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  const Complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * r);
  double t = 1.0 / (std::abs(theta) + std::hypot(theta, 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::hypot(t, 1.0);
  const double s = t * c;

  // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] restricted to (p, q).
  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * std::conj(phase);
  const Complex jqq = c * std::conj(phase);

  for (std::size_t k = 0; k < N; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < N; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;

  if (v != nullptr) {
    for (std::size_t k = 0; k < N; ++k) {
      const Complex vkp = (*v)(k, p);
      const Complex vkq = (*v)(k, q);
      (*v)(k, p) = vkp * jpp + vkq * jqp;
      (*v)(k, q) = vkp * jpq + vkq * jqq;
    }
  }
}

}  // namespace

template <std::size_t N>
HermitianEigen<N> jacobi_eigen(SquareMatrix<N> a, bool want_vectors) {
  for (std::size_t i = 0; i < N; ++i) a(i, i) = a(i, i).real();

  SquareMatrix<N> v = SquareMatrix<N>::identity();
  SquareMatrix<N>* vp = want_vectors ? &v : nullptr;

  int sweep = 0;
  for (;; ++sweep) {
    if (sweep == kMaxSweeps)
      throw Error(ErrorCode::EigFailure,
                  "Jacobi iteration did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double off = std::abs(a(p, q));
        if (off == 0.0) continue;
        const double scale = std::sqrt(std::abs(a(p, p).real())) * std::sqrt(std::abs(a(q, q).real()));
        if (off <= kPivotTol * scale) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, vp, p, q);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  HermitianEigen<N> out;
  out.sweeps = sweep;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    if (want_vectors)
      for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

template HermitianEigen<4> jacobi_eigen<4>(SquareMatrix<4>, bool);

}  // namespace esd

namespace esd {

std::array<double, 4> singular_values(const Matrix4& input) {
  std::array<double, 4> out{};
  const double largest = input.max_abs();
  if (largest == 0.0) return out;
  // Power-of-two scaling is exact and, unlike 1 / largest, cannot overflow
  // when the input is subnormal.
  const int exponent = std::ilogb(largest);
  Matrix4 a;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      a(r, c) = {std::ldexp(input(r, c).real(), -exponent), std::ldexp(input(r, c).imag(), -exponent)};

  auto column_gram = [&](std::size_t p, std::size_t q) {
    Complex g = 0.0;
    for (std::size_t r = 0; r < 4; ++r) g += std::conj(a(r, p)) * a(r, q);
    return g;
  };

  int sweep = 0;
  for (;; ++sweep) {
    if (sweep == kMaxSweeps)
      throw Error(ErrorCode::EigFailure, "one-sided Jacobi did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
    bool rotated = false;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const double alpha = column_gram(p, p).real();
        const double beta = column_gram(q, q).real();
        const Complex gamma = column_gram(p, q);
        const double r = std::abs(gamma);
        if (r == 0.0 || r <= kOrthoTol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        // Parallel columns of a rank-deficient matrix only shrink by ~eps per
        // rotation; once one is this small it no longer matters.
        if (alpha < kNegligibleColumn2 || beta < kNegligibleColumn2) continue;

        const Complex phase = gamma / r;
        const double zeta = (beta - alpha) / (2.0 * r);
        double t = 1.0 / (std::abs(zeta) + std::hypot(zeta, 1.0));
        if (zeta < 0.0) t = -t;
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex ap = a(k, p);
          const Complex aq = a(k, q);
          a(k, p) = ap * c + aq * jqp;
          a(k, q) = ap * s + aq * jqq;
        }
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  for (std::size_t k = 0; k < 4; ++k) out[k] = std::ldexp(std::sqrt(column_gram(k, k).real()), exponent);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace esd
