#pragma once

#include <array>

#include "esd/channels.hpp"
#include "esd/qstate.hpp"

namespace esd {

struct ConcurrenceResult {
  std::array<double, 4> sqrt_eigs{};  // sqrt of the R(rho) eigenvalues, descending
  double lambda_cap = 0.0;            // sqrt_eigs[0] - sqrt_eigs[1] - sqrt_eigs[2] - sqrt_eigs[3]
  double concurrence = 0.0;           // max(0, lambda_cap)
};

/// sigma_y (x) sigma_y; real, antidiagonal, involutory.
const Matrix4& spin_flip();

/// R(rho) = rho (sy x sy) rho^* (sy x sy).
Matrix4 r_matrix(const DensityMatrix& rho);

/// Wootters concurrence.
///
/// The square roots of the eigenvalues of R are obtained as singular values of
/// the complex symmetric matrix tau = W^T (sy x sy) W, where rho = W W^dagger
/// comes from the eigendecomposition of rho. Taking singular values directly
/// means no eigenvalue of R is ever square-rooted: an R eigenvalue that is
/// exactly zero comes out at round-off level in sqrt(lambda) instead of
/// sqrt(round-off).
ConcurrenceResult concurrence(const DensityMatrix& rho);

/// Lambda of the fully dephased state diag(rho).
double lambda_dephased_limit(const DensityMatrix& rho);

/// Closed-form Lambda(t) for an initial state with vanishing |up up> population.
/// Throws NotInSubspaceI otherwise.
double lambda_rhoI_closed_form(const DensityMatrix& rho0, const NoiseRates& rates, double t, ChannelKind kind);

}  // namespace esd
