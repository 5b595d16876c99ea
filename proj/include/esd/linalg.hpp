#pragma once

// Small fixed-size dense complex matrices, a Jacobi eigensolver for the
// Hermitian case and a one-sided Jacobi SVD.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace esd {

using Complex = std::complex<double>;

template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t size = N;

  constexpr SquareMatrix() = default;

  static constexpr SquareMatrix zero() { return SquareMatrix{}; }

  static constexpr SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr SquareMatrix diagonal(const std::array<Complex, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  constexpr Complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  SquareMatrix adjoint() const {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  SquareMatrix transpose() const {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  SquareMatrix conjugate() const {
    SquareMatrix out;
    for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = std::conj(data_[i]);
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entry magnitude.
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }
  friend SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex ark = a(r, k);
        if (ark == Complex{}) continue;
        for (std::size_t c = 0; c < N; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::array<Complex, N * N> data_{};
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

/// Kronecker product a (x) b; `a` acts on the first (party A) factor.
Matrix4 kron(const Matrix2& a, const Matrix2& b);

template <std::size_t N>
double max_entry_distance(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return (a - b).max_abs();
}

/// max |m(i,j) - conj(m(j,i))| including the imaginary part of the diagonal.
template <std::size_t N>
double hermiticity_defect(const SquareMatrix<N>& m) {
  double d = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = r; c < N; ++c) d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
  return d;
}

template <std::size_t N>
struct HermitianEigen {
  std::array<double, N> values{};  // descending
  SquareMatrix<N> vectors;         // column k belongs to values[k]
  int sweeps = 0;
};

/// Cyclic complex Jacobi. Rotations are skipped only when the pivot is
/// negligible relative to sqrt(|a_pp a_qq|), which keeps small eigenvalues of
/// graded matrices accurate. Throws Error{EigFailure} if it fails to settle.
template <std::size_t N>
HermitianEigen<N> jacobi_eigen(SquareMatrix<N> a, bool want_vectors);

extern template HermitianEigen<4> jacobi_eigen<4>(SquareMatrix<4>, bool);

/// Singular values, descending, by one-sided (Hestenes) Jacobi. Small singular
/// values come out with absolute error near eps * largest, never
/// sqrt(eps)-sized as they would from the eigenvalues of A^dagger A.
std::array<double, 4> singular_values(const Matrix4& a);

}  // namespace esd
