#include "esd/classify.hpp"

#include "esd/entanglement.hpp"

namespace esd {

std::string_view to_string(Subspace s) {
  switch (s) {
    case Subspace::None: return "none";
    case Subspace::I: return "I";
    case Subspace::II: return "II";
    case Subspace::III: return "III";
    case Subspace::IV: return "IV";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::EsdFree: return "esd-free";
    case Verdict::AbruptEsd: return "abrupt-esd";
    case Verdict::NotEntangled: return "not-entangled";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

SubspaceLabel subspace(const DensityMatrix& rho) {
  SubspaceLabel label;
  for (int i = 0; i < 4; ++i)
    if (rho.population(static_cast<std::size_t>(i)) <= kTolZero) label.vanishing.push_back(i + 1);
  if (!label.vanishing.empty()) label.canonical = static_cast<Subspace>(label.vanishing.front());
  return label;
}

namespace {

EsdVerdict phase_rule(const SubspaceLabel& label) {
  if (label.vanishing.empty()) return {ChannelKind::PhaseDamping, Verdict::AbruptEsd, "phase:all-diagonals-nonzero"};
  return {ChannelKind::PhaseDamping, Verdict::EsdFree, "phase:vanishing-diagonal"};
}

EsdVerdict amplitude_rule(const SubspaceLabel& label) {
  if (label.canonical == Subspace::I)
    return {ChannelKind::AmplitudeDamping, Verdict::EsdFree, "amplitude:subspace-I"};
  return {ChannelKind::AmplitudeDamping, Verdict::Undecided, "amplitude:outside-subspace-I"};
}

EsdVerdict composite_rule(const SubspaceLabel& label, const NoiseRates& r) {
  const bool relax_a = r.gamma1_a > 0.0;
  const bool relax_b = r.gamma1_b > 0.0;
  const bool dephase = r.gamma2_a > 0.0 || r.gamma2_b > 0.0;

  if (!relax_a && !relax_b) {
    if (!dephase) return {ChannelKind::Composite, Verdict::EsdFree, "composite:no-noise"};
    auto v = phase_rule(label);
    v.kind = ChannelKind::Composite;
    return v;
  }
  if (label.canonical == Subspace::I) return {ChannelKind::Composite, Verdict::EsdFree, "composite:subspace-I"};
  if (!relax_a || !relax_b)
    return {ChannelKind::Composite, Verdict::Undecided, "composite:one-party-without-relaxation"};
  if (!dephase) return {ChannelKind::Composite, Verdict::Undecided, "composite:amplitude-only"};
  return {ChannelKind::Composite, Verdict::AbruptEsd, "composite:rho11-nonzero"};
}

}  // namespace

EsdVerdict predict_esd(const DensityMatrix& rho, ChannelKind kind, const std::optional<NoiseRates>& rates) {
  if (concurrence(rho).concurrence <= kEntangledThreshold) return {kind, Verdict::NotEntangled, "not-entangled"};
  const auto label = subspace(rho);
  switch (kind) {
    case ChannelKind::PhaseDamping: return phase_rule(label);
    case ChannelKind::AmplitudeDamping: return amplitude_rule(label);
    case ChannelKind::Composite: return composite_rule(label, rates.value_or(NoiseRates{1.0, 1.0, 1.0, 1.0}));
  }
  return {kind, Verdict::Undecided, "unknown-kind"};
}

std::array<double, 4> diag_evolution_amp(const DensityMatrix& rho0, const NoiseRates& rates, double tau) {
  const auto p = params_at(rates, tau);
  const auto d = rho0.diagonal();
  const double ga2 = p.g1_a * p.g1_a, gb2 = p.g1_b * p.g1_b;
  const double wa2 = p.w1_a * p.w1_a, wb2 = p.w1_b * p.w1_b;
  return {
      ga2 * gb2 * d[0],
      ga2 * (d[1] + wb2 * d[0]),
      gb2 * (d[2] + wa2 * d[0]),
      d[3] + wb2 * d[2] + wa2 * d[1] + wa2 * wb2 * d[0],
  };
}

}  // namespace esd
