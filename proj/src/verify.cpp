#include "esd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "esd/classify.hpp"
#include "esd/entanglement.hpp"
#include "esd/errors.hpp"
#include "esd/io.hpp"
#include "esd/sampling.hpp"

namespace esd {

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

// Independent stream per suite.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  SplitMix64 sm(seed ^ (tag * 0xD1B54A32D192ED03ULL));
  return sm.next();
}

double uniform(Xoshiro256& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

NoiseRates random_rates(Xoshiro256& rng, double lo, double hi, double zero_probability = 0.0) {
  auto draw = [&] {
    const double r = uniform(rng, lo, hi);
    return rng.uniform() < zero_probability ? 0.0 : r;
  };
  NoiseRates rates;
  rates.gamma1_a = draw();
  rates.gamma1_b = draw();
  rates.gamma2_a = draw();
  rates.gamma2_b = draw();
  return rates;
}

std::string describe(const NoiseRates& r) {
  std::ostringstream os;
  os << "rates=(" << format_double(r.gamma1_a) << "," << format_double(r.gamma1_b) << ","
     << format_double(r.gamma2_a) << "," << format_double(r.gamma2_b) << ")";
  return os.str();
}

// Accumulates deviations against a tolerance and records the first failures.
class Tally {
 public:
  Tally(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void deviation(double d, const std::function<std::string()>& context) {
    ++result_.cases;
    if (!(d <= result_.tolerance)) {
      fail("deviation " + format_double(d) + " at " + context());
    }
    if (std::isnan(d) || d > result_.max_deviation) result_.max_deviation = d;
  }

  void check(bool ok, const std::function<std::string()>& context) {
    ++result_.cases;
    if (!ok) fail(context());
  }

  void fail(const std::string& what) {
    result_.passed = false;
    ++result_.failures;
    if (result_.counterexamples.size() < kMaxCounterexamples) result_.counterexamples.push_back(what);
  }

  // Runs one case; an exception from the library is a failed case.
  template <class F>
  void guarded(F&& body, const std::function<std::string()>& context) {
    try {
      body();
    } catch (const std::exception& e) {
      ++result_.cases;
      fail(std::string(e.what()) + " at " + context());
    }
  }

  SuiteResult done() { return std::move(result_); }

 private:
  SuiteResult result_;
};

DensityMatrix random_state(StateSampler& ginibre, StateSampler& haar, Xoshiro256& rng) {
  return rng.uniform() < 0.75 ? ginibre.next() : haar.next();
}

KrausSet build(ChannelKind kind, const ChannelParams& p, const VerifyOptions& opt) {
  return kind == ChannelKind::Composite ? opt.composite(p) : kraus_for(kind, p);
}

}  // namespace

SuiteResult suite_completeness(const VerifyOptions& opt) {
  Tally tally("completeness", 1e-12);
  Xoshiro256 rng(derive_seed(opt.seed, 1));
  for (std::size_t i = 0; i < opt.n_samples; ++i) {
    const auto rates = random_rates(rng, 0.0, 2.0, 0.15);
    const double t = uniform(rng, 0.0, 5.0);
    const auto ctx = [&] { return describe(rates) + " t=" + format_double(t); };
    tally.guarded(
        [&] {
          const auto p = params_at(rates, t);
          for (auto kind : kAllChannelKinds) tally.deviation(build(kind, p, opt).completeness_defect(), ctx);
        },
        ctx);
  }
  return tally.done();
}

SuiteResult suite_kraus_reference(const VerifyOptions& opt) {
  Tally tally("kraus-reference", 1e-15);
  Xoshiro256 rng(derive_seed(opt.seed, 2));
  const std::size_t n = std::max<std::size_t>(opt.n_samples / 10, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto rates = random_rates(rng, 0.05, 2.0);
    const double t = uniform(rng, 0.05, 5.0);
    const auto ctx = [&] { return describe(rates) + " t=" + format_double(t); };
    tally.guarded(
        [&] {
          const auto p = params_at(rates, t);
          // Single-qubit factor entries [k][row][col] for each party.
          const double ca[3][2][2] = {{{p.g1_a * p.g2_a, 0.0}, {0.0, 1.0}},
                                      {{p.g1_a * p.w2_a, 0.0}, {0.0, 0.0}},
                                      {{0.0, 0.0}, {p.w1_a, 0.0}}};
          const double cb[3][2][2] = {{{p.g1_b * p.g2_b, 0.0}, {0.0, 1.0}},
                                      {{p.g1_b * p.w2_b, 0.0}, {0.0, 0.0}},
                                      {{0.0, 0.0}, {p.w1_b, 0.0}}};
          const auto set = opt.composite(p);
          tally.check(set.operators.size() == 9, [&] { return "expected 9 operators at " + ctx(); });
          if (set.operators.size() != 9) return;
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
              const auto& op = set.operators[static_cast<std::size_t>(3 * k + l)];
              double worst = 0.0;
              for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                  const double expected = ca[k][r / 2][c / 2] * cb[l][r % 2][c % 2];
                  worst = std::max(worst, std::abs(op(std::size_t(r), std::size_t(c)) - expected));
                }
              tally.deviation(worst, [&] {
                return "C" + std::to_string(k + 1) + "(x)C" + std::to_string(l + 1) + " " + ctx();
              });
            }
        },
        ctx);
  }
  return tally.done();
}

SuiteResult suite_trace_positivity(const VerifyOptions& opt) {
  Tally tally("trace-positivity", 1e-12);
  Xoshiro256 rng(derive_seed(opt.seed, 3));
  StateSampler ginibre({derive_seed(opt.seed, 103), Ensemble::GinibreMixed, std::nullopt});
  StateSampler haar({derive_seed(opt.seed, 203), Ensemble::HaarPure, std::nullopt});
  for (std::size_t i = 0; i < opt.n_samples; ++i) {
    const auto rho = random_state(ginibre, haar, rng);
    const auto rates = random_rates(rng, 0.0, 2.0, 0.15);
    const double t = uniform(rng, 0.0, 5.0);
    const auto ctx = [&] { return describe(rates) + " t=" + format_double(t); };
    tally.guarded(
        [&] {
          const auto p = params_at(rates, t);
          for (auto kind : kAllChannelKinds) {
            // apply() re-validates, so positivity failures surface as exceptions.
            const auto out = apply(build(kind, p, opt), rho);
            tally.deviation(std::abs(out.matrix().trace() - 1.0), ctx);
          }
        },
        ctx);
  }
  return tally.done();
}

SuiteResult suite_factorization(const VerifyOptions& opt) {
  Tally tally("factorization", 1e-12);
  Xoshiro256 rng(derive_seed(opt.seed, 4));
  StateSampler ginibre({derive_seed(opt.seed, 104), Ensemble::GinibreMixed, std::nullopt});
  StateSampler haar({derive_seed(opt.seed, 204), Ensemble::HaarPure, std::nullopt});
  for (std::size_t i = 0; i < opt.n_samples; ++i) {
    const auto rho = random_state(ginibre, haar, rng);
    const auto rates = random_rates(rng, 0.0, 2.0, 0.15);
    const double t = uniform(rng, 0.0, 5.0);
    const auto ctx = [&] { return describe(rates) + " t=" + format_double(t); };
    tally.guarded([&] { tally.deviation(check_factorization(rates, t, rho, opt.composite), ctx); }, ctx);
  }
  return tally.done();
}

SuiteResult suite_semigroup(const VerifyOptions& opt) {
  Tally tally("semigroup", 1e-12);
  Xoshiro256 rng(derive_seed(opt.seed, 5));
  StateSampler ginibre({derive_seed(opt.seed, 105), Ensemble::GinibreMixed, std::nullopt});
  StateSampler haar({derive_seed(opt.seed, 205), Ensemble::HaarPure, std::nullopt});
  for (std::size_t i = 0; i < opt.n_samples; ++i) {
    for (auto kind : kAllChannelKinds) {
      const auto rho = random_state(ginibre, haar, rng);
      const auto rates = random_rates(rng, 0.0, 2.0, 0.15);
      const double tau = uniform(rng, 0.0, 2.5);
      const double tau_p = uniform(rng, 0.0, 2.5);
      const auto ctx = [&] {
        return std::string(to_string(kind)) + " " + describe(rates) + " tau=" + format_double(tau) +
               " tau'=" + format_double(tau_p);
      };
      tally.guarded([&] { tally.deviation(check_semigroup(kind, rates, tau, tau_p, rho, opt.composite), ctx); }, ctx);
    }
  }
  return tally.done();
}

SuiteResult suite_kraus_vs_lindblad(const VerifyOptions& opt) {
  Tally tally("kraus-vs-lindblad", 1e-6);
  Xoshiro256 rng(derive_seed(opt.seed, 6));
  StateSampler ginibre({derive_seed(opt.seed, 106), Ensemble::GinibreMixed, std::nullopt});
  StateSampler haar({derive_seed(opt.seed, 206), Ensemble::HaarPure, std::nullopt});
  for (std::size_t i = 0; i < opt.n_samples; ++i) {
    for (auto kind : kAllChannelKinds) {
      const auto rho = random_state(ginibre, haar, rng);
      const auto rates = random_rates(rng, 0.0, 2.0).restricted_to(kind);
      const double t = uniform(rng, 0.0, 5.0);
      const auto ctx = [&] { return std::string(to_string(kind)) + " " + describe(rates) + " t=" + format_double(t); };
      tally.guarded(
          [&] {
            const auto kraus = apply(build(kind, params_at(rates, t), opt), rho);
            const auto ode = integrate_lindblad(rho, rates, t);
            tally.deviation(max_entry_distance(kraus.matrix(), ode.matrix()), ctx);
          },
          ctx);
    }
  }
  return tally.done();
}

SuiteResult suite_closed_form(const VerifyOptions& opt) {
  Tally tally("closed-form-lambda", 1e-9);
  Xoshiro256 rng(derive_seed(opt.seed, 7));
  StateSampler sampler({derive_seed(opt.seed, 107), Ensemble::GinibreMixed, Subspace::I});

  const auto psi_plus = preset("bell-psi+");
  const NoiseRates phase_only{0.0, 0.0, 1.0, 1.0};
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const auto ctx = [&] { return "bell-psi+ phase anchor t=" + format_double(t); };
    tally.guarded(
        [&] {
          const double numeric = concurrence(evolve_state(ChannelKind::PhaseDamping, phase_only, t, psi_plus)).lambda_cap;
          tally.deviation(std::abs(numeric - std::exp(-2.0 * t)), ctx);
        },
        ctx);
  }

  for (std::size_t i = 0; i < opt.n_samples; ++i) {
    const auto rho = sampler.next();
    const auto kind = kAllChannelKinds[i % 3];
    const auto rates = random_rates(rng, 0.0, 2.0, 0.1);
    const double t = uniform(rng, 0.0, 5.0);
    const auto ctx = [&] { return std::string(to_string(kind)) + " " + describe(rates) + " t=" + format_double(t); };
    tally.guarded(
        [&] {
          const double closed = lambda_rhoI_closed_form(rho, rates, t, kind);
          const double numeric = concurrence(apply(build(kind, params_at(rates, t), opt), rho)).lambda_cap;
          tally.deviation(std::abs(closed - numeric), ctx);
          tally.check(closed >= 0.0, [&] { return "negative closed form at " + ctx(); });
        },
        ctx);
  }
  return tally.done();
}

SuiteResult suite_dephased_limit(const VerifyOptions& opt) {
  Tally tally("dephased-limit", 1e-12);
  Xoshiro256 rng(derive_seed(opt.seed, 8));
  StateSampler ginibre({derive_seed(opt.seed, 108), Ensemble::GinibreMixed, std::nullopt});
  StateSampler haar({derive_seed(opt.seed, 208), Ensemble::HaarPure, std::nullopt});
  for (std::size_t i = 0; i < opt.n_samples; ++i) {
    const auto rho = random_state(ginibre, haar, rng);
    const auto ctx = [&] { return "sample " + std::to_string(i); };
    tally.guarded(
        [&] {
          const double formula = lambda_dephased_limit(rho);
          tally.deviation(std::abs(formula - concurrence(diagonal_part(rho)).lambda_cap), ctx);
          const auto d = rho.diagonal();
          if (std::all_of(d.begin(), d.end(), [](double x) { return x > 1e-6; }))
            tally.check(formula < 0.0, [&] { return "non-negative limit with all diagonals > 1e-6, " + ctx(); });
        },
        ctx);
  }
  return tally.done();
}

namespace {

// Analytic verdict and numerical crossing search must agree; a reported
// crossing must also be a genuine sign change.
void theorem_case(Tally& tally, const DensityMatrix& rho, ChannelKind kind, const NoiseRates& rates,
                  const std::string& label) {
  const auto ctx = [&] { return label + " " + std::string(to_string(kind)) + " " + describe(rates); };
  tally.guarded(
      [&] {
        const auto verdict = predict_esd(rho, kind, rates);
        const auto found = esd_time(rho, kind, rates);
        const bool agree = (verdict.verdict == Verdict::EsdFree && found.outcome == EsdOutcome::NoCrossingWithinHorizon) ||
                           (verdict.verdict == Verdict::AbruptEsd && found.outcome == EsdOutcome::FiniteCrossing);
        tally.check(agree, [&] {
          return "predicted " + std::string(to_string(verdict.verdict)) + " but search gave outcome " +
                 std::to_string(static_cast<int>(found.outcome)) + " (lambda(T)=" +
                 format_double(found.lambda_at_horizon) + ") for " + ctx();
        });
        if (found.outcome == EsdOutcome::FiniteCrossing) {
          const double delta = 1e-6 * found.horizon;
          const double before = lambda_at(rho, kind, rates, found.t_star - delta);
          const double after = lambda_at(rho, kind, rates, found.t_star + delta);
          const double at = lambda_at(rho, kind, rates, found.t_star);
          tally.check(before > 0.0 && after < 0.0 && std::abs(at) <= kTolRoot, [&] {
            return "crossing at t*=" + format_double(found.t_star) + " not bracketed (" + format_double(before) + ", " +
                   format_double(at) + ", " + format_double(after) + ") for " + ctx();
          });
        }
      },
      ctx);
}

}  // namespace

SuiteResult suite_phase_theorem(const VerifyOptions& opt) {
  Tally tally("phase-theorem", 0.0);
  Xoshiro256 rng(derive_seed(opt.seed, 9));
  const std::size_t unconfined = (opt.n_samples + 1) / 2;
  const std::size_t confined = opt.n_samples / 2;

  StateSampler full({derive_seed(opt.seed, 109), Ensemble::GinibreMixed, std::nullopt});
  for (std::size_t i = 0; i < unconfined; ++i) {
    const auto rho = full.next_entangled();
    NoiseRates rates{0.0, 0.0, uniform(rng, 0.5, 1.5), uniform(rng, 0.5, 1.5)};
    theorem_case(tally, rho, ChannelKind::PhaseDamping, rates, "unconfined #" + std::to_string(i));
  }
  const Subspace subs[4] = {Subspace::I, Subspace::II, Subspace::III, Subspace::IV};
  std::vector<StateSampler> samplers;
  for (std::size_t s = 0; s < 4; ++s)
    samplers.emplace_back(SamplerConfig{derive_seed(opt.seed, 209 + s), Ensemble::GinibreMixed, subs[s]});
  for (std::size_t i = 0; i < confined; ++i) {
    const auto rho = samplers[i % 4].next_entangled();
    NoiseRates rates{0.0, 0.0, uniform(rng, 0.5, 1.5), uniform(rng, 0.5, 1.5)};
    theorem_case(tally, rho, ChannelKind::PhaseDamping, rates,
                 "subspace " + std::string(to_string(subs[i % 4])) + " #" + std::to_string(i));
  }
  return tally.done();
}

SuiteResult suite_composite_theorem(const VerifyOptions& opt) {
  Tally tally("composite-theorem", 0.0);
  Xoshiro256 rng(derive_seed(opt.seed, 10));
  const std::size_t unconfined = (opt.n_samples + 1) / 2;
  const std::size_t confined = opt.n_samples / 2;

  StateSampler full({derive_seed(opt.seed, 110), Ensemble::GinibreMixed, std::nullopt});
  StateSampler sub_i({derive_seed(opt.seed, 210), Ensemble::GinibreMixed, Subspace::I});
  for (std::size_t i = 0; i < unconfined + confined; ++i) {
    const bool in_i = i >= unconfined;
    const auto rho = in_i ? sub_i.next_entangled() : full.next_entangled();
    const auto rates = random_rates(rng, 0.5, 1.5);
    theorem_case(tally, rho, ChannelKind::Composite, rates,
                 (in_i ? "subspace I #" : "unconfined #") + std::to_string(i));
  }
  return tally.done();
}

SuiteResult suite_proof_step(const VerifyOptions& opt) {
  Tally tally("proof-step-diagonals", 1e-12);
  Xoshiro256 rng(derive_seed(opt.seed, 11));
  StateSampler full({derive_seed(opt.seed, 111), Ensemble::GinibreMixed, std::nullopt});
  const Subspace subs[3] = {Subspace::II, Subspace::III, Subspace::IV};
  std::vector<StateSampler> confined;
  for (std::size_t s = 0; s < 3; ++s)
    confined.emplace_back(SamplerConfig{derive_seed(opt.seed, 211 + s), Ensemble::GinibreMixed, subs[s]});

  for (std::size_t i = 0; i < opt.n_samples; ++i) {
    const auto rho = i % 2 == 0 ? full.next() : confined[(i / 2) % 3].next();
    NoiseRates rates{uniform(rng, 0.5, 1.5), uniform(rng, 0.5, 1.5), uniform(rng, 0.0, 1.5), uniform(rng, 0.0, 1.5)};
    const auto ctx = [&] { return "sample " + std::to_string(i) + " " + describe(rates); };
    if (!(rho.population(0) > kTolZero)) {
      tally.fail("sample without |up up> population, " + ctx());
      continue;
    }
    tally.guarded(
        [&] {
          // Populations only move under relaxation, so the grid spans 50
          // relaxation times. They decay like exp(-Gamma t): the tolerance cut
          // is only meaningful over a few lifetimes, strict positivity over all.
          const double horizon = esd_horizon(ChannelKind::AmplitudeDamping, rates);
          const double resolvable = 5.0 / std::max(rates.gamma1_a, rates.gamma1_b);
          for (int k = 0; k < 64; ++k) {
            const double tau = horizon * 1e-6 * std::pow(1e6, k / 63.0);
            const auto formula = diag_evolution_amp(rho, rates, tau);
            const auto channel = apply(opt.composite(params_at(rates, tau)), rho).diagonal();
            double dev = 0.0, sum = 0.0;
            for (std::size_t j = 0; j < 4; ++j) {
              dev = std::max(dev, std::abs(formula[j] - channel[j]));
              sum += formula[j];
            }
            const auto at = [&] { return ctx() + " tau=" + format_double(tau); };
            tally.deviation(dev, at);
            tally.deviation(std::abs(sum - 1.0), at);
            const double floor = tau <= resolvable ? kTolZero : 0.0;
            tally.check(std::all_of(formula.begin(), formula.end(), [&](double x) { return x > floor; }),
                        [&] { return "vanishing diagonal at " + at(); });
          }
        },
        ctx);
  }
  return tally.done();
}

std::optional<AdditivityWitness> find_additivity_violation(std::uint64_t seed, std::size_t max_samples,
                                                           const NoiseRates& rates) {
  StateSampler sampler({seed, Ensemble::GinibreMixed, Subspace::IV});
  for (std::size_t i = 0; i < max_samples; ++i) {
    const auto rho = sampler.next_entangled();
    auto phase = esd_time(rho, ChannelKind::PhaseDamping, rates);
    if (phase.outcome != EsdOutcome::NoCrossingWithinHorizon) continue;
    auto amplitude = esd_time(rho, ChannelKind::AmplitudeDamping, rates);
    if (amplitude.outcome != EsdOutcome::NoCrossingWithinHorizon) continue;
    auto composite = esd_time(rho, ChannelKind::Composite, rates);
    if (composite.outcome != EsdOutcome::FiniteCrossing) continue;
    return AdditivityWitness{i, rho, phase, amplitude, composite};
  }
  return std::nullopt;
}

SuiteResult suite_additivity(const VerifyOptions& opt) {
  Tally tally("additivity-violation", 0.0);
  const auto witness = find_additivity_violation(derive_seed(opt.seed, 12));
  tally.check(witness.has_value(), [] {
    return "no subspace-IV state among " + std::to_string(kAdditivitySearchSize) +
           " samples survives each noise alone but dies under both";
  });
  return tally.done();
}

VerifyReport run_verify(const VerifyOptions& opt) {
  VerifyReport report;
  for (auto suite : {suite_completeness, suite_kraus_reference, suite_trace_positivity, suite_factorization,
                     suite_semigroup, suite_kraus_vs_lindblad, suite_closed_form, suite_dephased_limit,
                     suite_phase_theorem, suite_composite_theorem, suite_proof_step, suite_additivity})
    report.suites.push_back(suite(opt));
  return report;
}

}  // namespace esd
