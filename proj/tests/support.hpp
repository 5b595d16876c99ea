#pragma once

// Shared helpers for the test binaries. Random inputs come from std::mt19937_64
// so they do not depend on the library's own sampler, and Eigen serves as an
// independent linear algebra reference.

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "esd/linalg.hpp"
#include "esd/qstate.hpp"

namespace esd::test {

using EMatrix = Eigen::Matrix4cd;

inline EMatrix to_eigen(const Matrix4& m) {
  EMatrix e;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) e(r, c) = m(std::size_t(r), std::size_t(c));
  return e;
}

inline Matrix4 from_eigen(const EMatrix& e) {
  Matrix4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(std::size_t(r), std::size_t(c)) = e(r, c);
  return m;
}

inline EMatrix random_complex(std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  EMatrix g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g(r, c) = {n(gen), n(gen)};
  return g;
}

inline Matrix4 random_hermitian(std::mt19937_64& gen) {
  const EMatrix g = random_complex(gen);
  return from_eigen((g + g.adjoint()) / 2.0);
}

/// G G^dagger / tr, full rank with probability one.
inline DensityMatrix random_density(std::mt19937_64& gen) {
  const EMatrix g = random_complex(gen);
  EMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return validate(from_eigen(rho));
}

/// Normalized random pure state amplitudes.
inline Eigen::Vector4cd random_ket(std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = {n(gen), n(gen)};
  return v.normalized();
}

inline DensityMatrix projector(const Eigen::Vector4cd& v) {
  EMatrix p = v * v.adjoint();
  p = (p + p.adjoint()).eval() / 2.0;
  return validate(from_eigen(p));
}

inline Matrix4 diag4(double a, double b, double c, double d) { return Matrix4::diagonal({a, b, c, d}); }

}  // namespace esd::test
