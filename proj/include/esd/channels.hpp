#pragma once

// Kraus representations of the local amplitude-damping, phase-damping and
// composite channels acting independently on both qubits.

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "esd/linalg.hpp"
#include "esd/qstate.hpp"

namespace esd {

enum class ChannelKind { AmplitudeDamping, PhaseDamping, Composite };

inline constexpr std::array<ChannelKind, 3> kAllChannelKinds = {
    ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping, ChannelKind::Composite};

std::string_view to_string(ChannelKind kind);

/// Relaxation (gamma1) and dephasing (gamma2) rates per party, in inverse time.
struct NoiseRates {
  double gamma1_a = 0.0;
  double gamma1_b = 0.0;
  double gamma2_a = 0.0;
  double gamma2_b = 0.0;

  /// Throws NegativeRate if any rate is negative or not finite.
  void check() const;

  /// Copy with the rates that `kind` does not use set to zero.
  NoiseRates restricted_to(ChannelKind kind) const;

  friend bool operator==(const NoiseRates&, const NoiseRates&) = default;
};

/// Decay factors at a fixed time. g1 = exp(-Gamma1 t / 2), g2 = exp(-Gamma2 t),
/// w = sqrt(1 - g^2).
struct ChannelParams {
  double g1_a = 1.0, g1_b = 1.0;
  double w1_a = 0.0, w1_b = 0.0;
  double g2_a = 1.0, g2_b = 1.0;
  double w2_a = 0.0, w2_b = 0.0;

  /// Builds params from decay factors directly; each factor must lie in [0, 1].
  static ChannelParams from_factors(double g1_a, double g1_b, double g2_a, double g2_b);
};

ChannelParams params_at(const NoiseRates& rates, double t);

struct KrausSet {
  ChannelKind kind = ChannelKind::Composite;
  std::vector<Matrix4> operators;
  ChannelParams params;

  /// max-entry norm of sum K^dagger K - identity.
  double completeness_defect() const;
};

/// Single-qubit factors. Index 0 is the first operator of each family.
std::array<Matrix2, 2> amplitude_factors(double g1, double w1);
std::array<Matrix2, 2> phase_factors(double g2, double w2);
std::array<Matrix2, 3> composite_factors(double g1, double w1, double g2, double w2);

/// All pairwise tensor products a[k] (x) b[l], k-major.
template <std::size_t N>
std::vector<Matrix4> tensor_family(const std::array<Matrix2, N>& a, const std::array<Matrix2, N>& b) {
  std::vector<Matrix4> out;
  out.reserve(N * N);
  for (const auto& ka : a)
    for (const auto& kb : b) out.push_back(kron(ka, kb));
  return out;
}

KrausSet kraus_amplitude(const ChannelParams& p);
KrausSet kraus_phase(const ChannelParams& p);
KrausSet kraus_composite(const ChannelParams& p);
KrausSet kraus_for(ChannelKind kind, const ChannelParams& p);

using CompositeBuilder = std::function<KrausSet(const ChannelParams&)>;

/// sum_i K_i rho K_i^dagger. A result that fails validation throws
/// InternalChannelError.
DensityMatrix apply(const KrausSet& set, const DensityMatrix& rho);

/// Channel of `kind` at absolute time t.
DensityMatrix evolve_state(ChannelKind kind, const NoiseRates& rates, double t, const DensityMatrix& rho);

/// max over both orderings of |$C rho - $X $Y rho|_max.
double check_factorization(const NoiseRates& rates, double t, const DensityMatrix& rho,
                           const CompositeBuilder& composite = kraus_composite);

/// |$_{tau+tau'} rho - $_{tau'} $_tau rho|_max.
double check_semigroup(ChannelKind kind, const NoiseRates& rates, double tau, double tau_p,
                       const DensityMatrix& rho, const CompositeBuilder& composite = kraus_composite);

}  // namespace esd
