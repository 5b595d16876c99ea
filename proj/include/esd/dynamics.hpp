#pragma once

#include <span>
#include <vector>

#include "esd/channels.hpp"
#include "esd/entanglement.hpp"
#include "esd/qstate.hpp"

namespace esd {

/// Lambda at or below this at t = 0 means the state starts separable.
inline constexpr double kTolRoot = 1e-12;
/// Lambda counts as negative for crossing detection only below
/// -kSignBand * sqrt_eigs[0]; smaller negatives are round-off of a state that
/// is decaying asymptotically.
inline constexpr double kSignBand = 1e-9;
/// Horizon is this many inverse (smallest positive) rates.
inline constexpr double kHorizonLifetimes = 50.0;
/// Lambda(horizon) above this is reported as not yet settled.
inline constexpr double kHorizonWarnLambda = 1e-8;

struct Trajectory {
  ChannelKind kind = ChannelKind::Composite;
  NoiseRates rates;
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<ConcurrenceResult> lambdas;
};

/// Every state is produced directly from rho0 at its absolute time.
Trajectory evolve(const DensityMatrix& rho0, ChannelKind kind, const NoiseRates& rates, std::span<const double> times);

enum class EsdOutcome { FiniteCrossing, NoCrossingWithinHorizon, InitiallySeparable };

struct EsdTimeResult {
  EsdOutcome outcome = EsdOutcome::NoCrossingWithinHorizon;
  double t_star = 0.0;   // meaningful for FiniteCrossing
  double horizon = 0.0;
  double lambda_at_horizon = 0.0;
  int evaluations = 0;
  /// No crossing was found but the state underflowed to Lambda's scale being
  /// exactly 0 before the horizon, so a later crossing cannot be ruled out.
  /// Happens when one rate is thousands of times larger than another.
  bool underflow = false;
};

/// Horizon for the rates `kind` actually uses; throws AllRatesZero.
double esd_horizon(ChannelKind kind, const NoiseRates& rates);

/// Lambda(t) of rho0 evolved under `kind`.
double lambda_at(const DensityMatrix& rho0, ChannelKind kind, const NoiseRates& rates, double t);

/// Locates the first zero crossing of Lambda(t) on [0, horizon].
///
/// Lambda is scanned on t = 0 plus 64 geometric points in
/// [1e-6 T, T]; if that finds no negative value while Lambda dips below 1e-8
/// a 256-point uniform pass is added. The bracketing interval is bisected to
/// width 1e-9 T and then until |Lambda(t_star)| <= kTolRoot or the interval
/// can no longer shrink.
EsdTimeResult esd_time(const DensityMatrix& rho0, ChannelKind kind, const NoiseRates& rates);

/// d rho / dt for simultaneous relaxation and dephasing on both qubits.
Matrix4 lindblad_rhs(const Matrix4& rho, const NoiseRates& rates);

/// Fixed-step RK4 on the master equation with
/// h = min(1e-3 / max(max rate, 1), t / 100), rounded so the last step lands on t.
DensityMatrix integrate_lindblad(const DensityMatrix& rho0, const NoiseRates& rates, double t);

}  // namespace esd
