#pragma once

// Two-qubit density matrices in the fixed computational basis
//   index 0 = |up up>, 1 = |up down>, 2 = |down up>, 3 = |down down>
// where the first factor is party A. Every module indexes against this order.

#include <array>
#include <optional>
#include <string_view>

#include "esd/linalg.hpp"

namespace esd {

inline constexpr double kTolHermitian = 1e-12;
inline constexpr double kTolTrace = 1e-12;
inline constexpr double kTolPsd = 1e-10;
/// A diagonal element at or below this counts as vanishing.
inline constexpr double kTolZero = 1e-10;

class DensityMatrix {
 public:
  const Matrix4& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  double population(std::size_t i) const { return m_(i, i).real(); }
  std::array<double, 4> diagonal() const;
  double purity() const;

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  explicit DensityMatrix(const Matrix4& m) : m_(m) {}
  friend DensityMatrix validate(const Matrix4& m);

  Matrix4 m_;
};

struct Spectrum {
  std::array<double, 4> eigenvalues{};  // descending
  std::optional<Matrix4> eigenvectors;  // columns, when requested
};

/// Checks hermiticity, unit trace and positivity; returns the input unchanged
/// or throws NotHermitian / TraceNotOne / NotPositive with the measured defect.
DensityMatrix validate(const Matrix4& m);

/// Named states: bell-phi+, bell-phi-, bell-psi+, bell-psi-, up-up, down-down,
/// mixed, werner:p=<v>.
DensityMatrix preset(std::string_view name);

Spectrum eig_hermitian(const Matrix4& m, bool with_vectors = false);

/// diag(rho) as a density matrix (the infinite-time dephased state).
DensityMatrix diagonal_part(const DensityMatrix& rho);

}  // namespace esd
