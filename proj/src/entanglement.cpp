#include "esd/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "esd/errors.hpp"

namespace esd {

const Matrix4& spin_flip() {
  static const Matrix4 yy = [] {
    Matrix2 sy;
    sy(0, 1) = Complex(0.0, -1.0);
    sy(1, 0) = Complex(0.0, 1.0);
    return kron(sy, sy);
  }();
  return yy;
}

Matrix4 r_matrix(const DensityMatrix& rho) {
  const auto& yy = spin_flip();
  return rho.matrix() * yy * rho.matrix().conjugate() * yy;
}

ConcurrenceResult concurrence(const DensityMatrix& rho) {
  const auto eig = jacobi_eigen(rho.matrix(), true);

  // W = V diag(sqrt(mu)); small negative mu are round-off of a PSD matrix.
  Matrix4 w;
  for (std::size_t k = 0; k < 4; ++k) {
    const double root = std::sqrt(std::max(eig.values[k], 0.0));
    for (std::size_t r = 0; r < 4; ++r) w(r, k) = eig.vectors(r, k) * root;
  }
  const Matrix4 tau = w.transpose() * spin_flip() * w;

  const auto sv = singular_values(tau);

  ConcurrenceResult out;
  out.sqrt_eigs = sv;
  out.lambda_cap = out.sqrt_eigs[0] - out.sqrt_eigs[1] - out.sqrt_eigs[2] - out.sqrt_eigs[3];
  out.concurrence = std::max(0.0, out.lambda_cap);
  return out;
}

double lambda_dephased_limit(const DensityMatrix& rho) {
  const auto d = rho.diagonal();
  const double outer = d[0] * d[3];
  const double inner = d[1] * d[2];
  if (inner >= outer) return -2.0 * std::sqrt(std::max(outer, 0.0));
  return -2.0 * std::sqrt(std::max(inner, 0.0));
}

double lambda_rhoI_closed_form(const DensityMatrix& rho0, const NoiseRates& rates, double t, ChannelKind kind) {
  if (rho0.population(0) > kTolZero)
    throw Error(ErrorCode::NotInSubspaceI,
                "rho_11 = " + std::to_string(rho0.population(0)) + " exceeds the vanishing tolerance");
  const auto p = params_at(rates, t);

  const double coherence = std::norm(rho0(1, 2));  // rho_23 rho_32
  const double populations = rho0.population(1) * rho0.population(2);
  const double root = std::sqrt(std::max(coherence * populations, 0.0));

  const double amp = (p.g1_a * p.g1_b) * (p.g1_a * p.g1_b);
  const double deph = p.g2_a * p.g2_b;

  double alpha = 0.0;
  double beta = 0.0;
  switch (kind) {
    case ChannelKind::PhaseDamping:
      alpha = deph * deph * coherence + populations;
      beta = 2.0 * deph * root;
      break;
    case ChannelKind::AmplitudeDamping:
      alpha = amp * (coherence + populations);
      beta = 2.0 * amp * root;
      break;
    case ChannelKind::Composite:
      alpha = amp * (deph * deph * coherence + populations);
      beta = 2.0 * amp * deph * root;
      break;
  }
  if (alpha == 0.0 && beta == 0.0) return 0.0;
  // alpha - beta is a perfect square; only round-off can push it below zero.
  const double diff = alpha - beta;
  return 2.0 * beta / (std::sqrt(alpha + beta) + std::sqrt(std::max(diff, 0.0)));
}

}  // namespace esd
