#include "esd/channels.hpp"

#include <cmath>
#include <string>

#include "esd/errors.hpp"

namespace esd {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return "am";
    case ChannelKind::PhaseDamping: return "ph";
    case ChannelKind::Composite: return "composite";
  }
  return "?";
}

void NoiseRates::check() const {
  for (double r : {gamma1_a, gamma1_b, gamma2_a, gamma2_b})
    if (!(r >= 0.0) || !std::isfinite(r))
      throw Error(ErrorCode::NegativeRate, "rates must be finite and >= 0, got " + std::to_string(r));
}

NoiseRates NoiseRates::restricted_to(ChannelKind kind) const {
  NoiseRates r = *this;
  if (kind == ChannelKind::AmplitudeDamping) r.gamma2_a = r.gamma2_b = 0.0;
  if (kind == ChannelKind::PhaseDamping) r.gamma1_a = r.gamma1_b = 0.0;
  return r;
}

ChannelParams ChannelParams::from_factors(double g1_a, double g1_b, double g2_a, double g2_b) {
  auto complement = [](double g) {
    if (!(g >= 0.0 && g <= 1.0))
      throw Error(ErrorCode::NegativeRate, "decay factor " + std::to_string(g) + " outside [0, 1]");
    return std::sqrt(1.0 - g * g);
  };
  ChannelParams p;
  p.g1_a = g1_a;
  p.g1_b = g1_b;
  p.g2_a = g2_a;
  p.g2_b = g2_b;
  p.w1_a = complement(g1_a);
  p.w1_b = complement(g1_b);
  p.w2_a = complement(g2_a);
  p.w2_b = complement(g2_b);
  return p;
}

ChannelParams params_at(const NoiseRates& rates, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeTime, "t = " + std::to_string(t));
  rates.check();
  // g^2 = exp(-x) so w = sqrt(-expm1(-x)) without cancellation at small x.
  ChannelParams p;
  p.g1_a = std::exp(-0.5 * rates.gamma1_a * t);
  p.g1_b = std::exp(-0.5 * rates.gamma1_b * t);
  p.w1_a = std::sqrt(-std::expm1(-rates.gamma1_a * t));
  p.w1_b = std::sqrt(-std::expm1(-rates.gamma1_b * t));
  p.g2_a = std::exp(-rates.gamma2_a * t);
  p.g2_b = std::exp(-rates.gamma2_b * t);
  p.w2_a = std::sqrt(-std::expm1(-2.0 * rates.gamma2_a * t));
  p.w2_b = std::sqrt(-std::expm1(-2.0 * rates.gamma2_b * t));
  return p;
}

double KrausSet::completeness_defect() const {
  Matrix4 sum;
  for (const auto& k : operators) sum += k.adjoint() * k;
  return max_entry_distance(sum, Matrix4::identity());
}

std::array<Matrix2, 2> amplitude_factors(double g1, double w1) {
  Matrix2 m1;
  m1(0, 0) = g1;
  m1(1, 1) = 1.0;
  Matrix2 m2;
  m2(1, 0) = w1;
  return {m1, m2};
}

std::array<Matrix2, 2> phase_factors(double g2, double w2) {
  Matrix2 p1;
  p1(0, 0) = g2;
  p1(1, 1) = 1.0;
  Matrix2 p2;
  p2(0, 0) = w2;
  return {p1, p2};
}

std::array<Matrix2, 3> composite_factors(double g1, double w1, double g2, double w2) {
  Matrix2 c1;
  c1(0, 0) = g1 * g2;
  c1(1, 1) = 1.0;
  Matrix2 c2;
  c2(0, 0) = g1 * w2;
  Matrix2 c3;
  c3(1, 0) = w1;
  return {c1, c2, c3};
}

KrausSet kraus_amplitude(const ChannelParams& p) {
  return {ChannelKind::AmplitudeDamping,
          tensor_family(amplitude_factors(p.g1_a, p.w1_a), amplitude_factors(p.g1_b, p.w1_b)), p};
}

KrausSet kraus_phase(const ChannelParams& p) {
  return {ChannelKind::PhaseDamping,
          tensor_family(phase_factors(p.g2_a, p.w2_a), phase_factors(p.g2_b, p.w2_b)), p};
}

KrausSet kraus_composite(const ChannelParams& p) {
  return {ChannelKind::Composite,
          tensor_family(composite_factors(p.g1_a, p.w1_a, p.g2_a, p.w2_a),
                        composite_factors(p.g1_b, p.w1_b, p.g2_b, p.w2_b)),
          p};
}

KrausSet kraus_for(ChannelKind kind, const ChannelParams& p) {
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return kraus_amplitude(p);
    case ChannelKind::PhaseDamping: return kraus_phase(p);
    case ChannelKind::Composite: return kraus_composite(p);
  }
  return kraus_composite(p);
}

DensityMatrix apply(const KrausSet& set, const DensityMatrix& rho) {
  Matrix4 out;
  for (const auto& k : set.operators) out += k * rho.matrix() * k.adjoint();
  try {
    return validate(out);
  } catch (const Error& e) {
    throw Error(ErrorCode::InternalChannelError,
                std::string(to_string(set.kind)) + " channel produced an invalid state (" + e.what() + ")");
  }
}

DensityMatrix evolve_state(ChannelKind kind, const NoiseRates& rates, double t, const DensityMatrix& rho) {
  return apply(kraus_for(kind, params_at(rates, t)), rho);
}

double check_factorization(const NoiseRates& rates, double t, const DensityMatrix& rho,
                           const CompositeBuilder& composite) {
  const auto p = params_at(rates, t);
  const auto am = kraus_amplitude(p);
  const auto ph = kraus_phase(p);
  const auto direct = apply(composite(p), rho).matrix();
  const auto am_after_ph = apply(am, apply(ph, rho)).matrix();
  const auto ph_after_am = apply(ph, apply(am, rho)).matrix();
  return std::max(max_entry_distance(direct, am_after_ph), max_entry_distance(direct, ph_after_am));
}

double check_semigroup(ChannelKind kind, const NoiseRates& rates, double tau, double tau_p,
                       const DensityMatrix& rho, const CompositeBuilder& composite) {
  auto build = [&](double t) {
    const auto p = params_at(rates, t);
    return kind == ChannelKind::Composite ? composite(p) : kraus_for(kind, p);
  };
  const auto whole = apply(build(tau + tau_p), rho);
  const auto chained = apply(build(tau_p), apply(build(tau), rho));
  return max_entry_distance(whole.matrix(), chained.matrix());
}

}  // namespace esd
