#include "esd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "esd/errors.hpp"

namespace esd {

Trajectory evolve(const DensityMatrix& rho0, ChannelKind kind, const NoiseRates& rates, std::span<const double> times) {
  if (times.empty() || times.front() != 0.0) throw Error(ErrorCode::BadGrid, "time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw Error(ErrorCode::BadGrid, "time grid must be strictly increasing");

  Trajectory traj;
  traj.kind = kind;
  traj.rates = rates;
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());
  traj.lambdas.reserve(times.size());
  for (double t : times) {
    traj.states.push_back(t == 0.0 ? rho0 : evolve_state(kind, rates, t, rho0));
    traj.lambdas.push_back(concurrence(traj.states.back()));
  }
  return traj;
}

double esd_horizon(ChannelKind kind, const NoiseRates& rates) {
  rates.check();
  const auto r = rates.restricted_to(kind);
  double slowest = std::numeric_limits<double>::infinity();
  for (double x : {r.gamma1_a, r.gamma1_b, r.gamma2_a, r.gamma2_b})
    if (x > 0.0) slowest = std::min(slowest, x);
  if (!std::isfinite(slowest))
    throw Error(ErrorCode::AllRatesZero, std::string("no positive rate drives the ") + std::string(to_string(kind)) +
                                             " channel");
  return kHorizonLifetimes / slowest;
}

double lambda_at(const DensityMatrix& rho0, ChannelKind kind, const NoiseRates& rates, double t) {
  if (t == 0.0) return concurrence(rho0).lambda_cap;
  return concurrence(evolve_state(kind, rates, t, rho0)).lambda_cap;
}

namespace {

struct Sample {
  double t;
  ConcurrenceResult c;
};

bool clearly_negative(const ConcurrenceResult& c) { return c.lambda_cap < -kSignBand * c.sqrt_eigs[0]; }

}  // namespace

EsdTimeResult esd_time(const DensityMatrix& rho0, ChannelKind kind, const NoiseRates& rates) {
  EsdTimeResult result;
  result.horizon = esd_horizon(kind, rates);
  const double horizon = result.horizon;

  auto eval = [&](double t) {
    ++result.evaluations;
    return Sample{t, t == 0.0 ? concurrence(rho0) : concurrence(evolve_state(kind, rates, t, rho0))};
  };

  std::vector<Sample> samples;
  samples.push_back(eval(0.0));
  constexpr int kGeometric = 64;
  const double t_first = horizon * 1e-6;
  for (int k = 0; k < kGeometric; ++k) {
    const double t = k + 1 == kGeometric ? horizon : t_first * std::pow(1e6, double(k) / (kGeometric - 1));
    samples.push_back(eval(t));
  }
  result.lambda_at_horizon = samples.back().c.lambda_cap;

  if (samples.front().c.lambda_cap <= kTolRoot) {
    result.outcome = EsdOutcome::InitiallySeparable;
    return result;
  }

  auto first_negative = [&]() -> std::ptrdiff_t {
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (clearly_negative(samples[i].c)) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };

  std::ptrdiff_t neg = first_negative();
  if (neg < 0) {
    double min_lambda = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) min_lambda = std::min(min_lambda, s.c.lambda_cap);
    if (min_lambda < 1e-8) {
      constexpr int kUniform = 256;
      for (int k = 1; k <= kUniform; ++k) samples.push_back(eval(horizon * k / kUniform));
      std::stable_sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.t < b.t; });
      neg = first_negative();
    }
  }
  if (neg < 0) {
    result.outcome = EsdOutcome::NoCrossingWithinHorizon;
    result.underflow = std::any_of(samples.begin(), samples.end(), [](const Sample& s) { return s.c.sqrt_eigs[0] == 0.0; });
    return result;
  }

  // Latest strictly positive sample before the first negative one; t = 0 qualifies.
  std::ptrdiff_t pos = neg - 1;
  while (pos > 0 && !(samples[static_cast<std::size_t>(pos)].c.lambda_cap > 0.0)) --pos;
  double lo = samples[static_cast<std::size_t>(pos)].t;
  double hi = samples[static_cast<std::size_t>(neg)].t;
  double lambda_lo = samples[static_cast<std::size_t>(pos)].c.lambda_cap;
  double lambda_hi = samples[static_cast<std::size_t>(neg)].c.lambda_cap;

  const double width = 1e-9 * horizon;
  for (;;) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) {
      result.t_star = std::abs(lambda_lo) <= std::abs(lambda_hi) ? lo : hi;
      break;
    }
    const double lm = eval(mid).c.lambda_cap;
    if (hi - lo <= width && std::abs(lm) <= kTolRoot) {
      result.t_star = mid;
      break;
    }
    if (lm > 0.0) {
      lo = mid;
      lambda_lo = lm;
    } else {
      hi = mid;
      lambda_hi = lm;
    }
  }
  result.outcome = EsdOutcome::FiniteCrossing;
  return result;
}

namespace {

struct LocalOperators {
  Matrix4 lower_a, lower_b;         // sigma_- on one party
  Matrix4 excited_a, excited_b;     // sigma_+ sigma_-
  Matrix4 sz_a, sz_b;
};

const LocalOperators& local_operators() {
  static const LocalOperators ops = [] {
    Matrix2 lower;  // |down><up|, with |up> = index 0
    lower(1, 0) = 1.0;
    Matrix2 sz;
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    const Matrix2 id = Matrix2::identity();
    const Matrix2 excited = lower.adjoint() * lower;
    return LocalOperators{kron(lower, id), kron(id, lower), kron(excited, id),
                          kron(id, excited), kron(sz, id),    kron(id, sz)};
  }();
  return ops;
}

}  // namespace

Matrix4 lindblad_rhs(const Matrix4& rho, const NoiseRates& rates) {
  const auto& ops = local_operators();
  Matrix4 out;
  auto relax = [&](const Matrix4& l, const Matrix4& n, double gamma) {
    if (gamma == 0.0) return;
    Matrix4 term = l * rho * l.adjoint() * 2.0;
    term -= n * rho;
    term -= rho * n;
    out += term * (0.5 * gamma);
  };
  auto dephase = [&](const Matrix4& z, double gamma) {
    if (gamma == 0.0) return;
    out += (z * rho * z - rho) * (0.5 * gamma);
  };
  relax(ops.lower_a, ops.excited_a, rates.gamma1_a);
  relax(ops.lower_b, ops.excited_b, rates.gamma1_b);
  dephase(ops.sz_a, rates.gamma2_a);
  dephase(ops.sz_b, rates.gamma2_b);
  return out;
}

DensityMatrix integrate_lindblad(const DensityMatrix& rho0, const NoiseRates& rates, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeTime, "t = " + std::to_string(t));
  rates.check();
  if (t == 0.0) return rho0;

  const double fastest = std::max({rates.gamma1_a, rates.gamma1_b, rates.gamma2_a, rates.gamma2_b, 1.0});
  const double h_max = std::min(1e-3 / fastest, t / 100.0);
  const double steps_real = std::ceil(t / h_max);
  if (steps_real > 1e8) throw Error(ErrorCode::StepUnderflow, std::to_string(steps_real) + " RK4 steps requested");
  const auto steps = static_cast<long>(steps_real);
  const double h = t / static_cast<double>(steps);

  Matrix4 rho = rho0.matrix();
  for (long s = 0; s < steps; ++s) {
    const Matrix4 k1 = lindblad_rhs(rho, rates);
    const Matrix4 k2 = lindblad_rhs(rho + k1 * (0.5 * h), rates);
    const Matrix4 k3 = lindblad_rhs(rho + k2 * (0.5 * h), rates);
    const Matrix4 k4 = lindblad_rhs(rho + k3 * h, rates);
    rho += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
  }
  try {
    return validate(rho);
  } catch (const Error& e) {
    throw Error(ErrorCode::InternalChannelError, std::string("RK4 result failed validation (") + e.what() + ")");
  }
}

}  // namespace esd
