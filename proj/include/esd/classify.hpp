#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "esd/channels.hpp"
#include "esd/qstate.hpp"

namespace esd {

/// Concurrence above which a state counts as entangled for the ESD rules.
inline constexpr double kEntangledThreshold = 1e-10;

enum class Subspace { None, I, II, III, IV };

std::string_view to_string(Subspace s);

struct SubspaceLabel {
  std::vector<int> vanishing;  // 1-based diagonal indices with rho_ii <= kTolZero
  Subspace canonical = Subspace::None;
};

/// Membership by vanishing diagonal. Any state with rho_11 vanishing is
/// labelled I even when other diagonals vanish as well.
SubspaceLabel subspace(const DensityMatrix& rho);

enum class Verdict { EsdFree, AbruptEsd, NotEntangled, Undecided };

std::string_view to_string(Verdict v);

struct EsdVerdict {
  ChannelKind kind = ChannelKind::Composite;
  Verdict verdict = Verdict::Undecided;
  std::string_view reason;
};

/// Analytic ESD prediction. When `rates` is omitted every rate is assumed
/// strictly positive. Amplitude damping alone is only decided on subspace I;
/// elsewhere the verdict is Undecided and the numerical crossing finder is the
/// reference.
EsdVerdict predict_esd(const DensityMatrix& rho, ChannelKind kind,
                       const std::optional<NoiseRates>& rates = std::nullopt);

/// Diagonal of the state after time tau under amplitude damping (dephasing
/// does not touch populations).
std::array<double, 4> diag_evolution_amp(const DensityMatrix& rho0, const NoiseRates& rates, double tau);

}  // namespace esd
