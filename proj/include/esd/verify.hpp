#pragma once

// Seeded invariant battery behind `esdsim verify`. Every suite draws from its
// own generator derived from the run seed, so suites are reproducible one by
// one and independent of the order they run in.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esd/channels.hpp"
#include "esd/dynamics.hpp"
#include "esd/qstate.hpp"

namespace esd {

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t n_samples = 200;
  /// Composite channel under test; swapped out by mutation tests.
  CompositeBuilder composite = kraus_composite;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double max_deviation = 0.0;  // for tolerance suites
  double tolerance = 0.0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;  // first few, human readable
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

SuiteResult suite_completeness(const VerifyOptions& opt);
/// Materialized composite operators against entries typed out from the decay factors.
SuiteResult suite_kraus_reference(const VerifyOptions& opt);
SuiteResult suite_trace_positivity(const VerifyOptions& opt);
SuiteResult suite_factorization(const VerifyOptions& opt);
SuiteResult suite_semigroup(const VerifyOptions& opt);
SuiteResult suite_kraus_vs_lindblad(const VerifyOptions& opt);
SuiteResult suite_closed_form(const VerifyOptions& opt);
SuiteResult suite_dephased_limit(const VerifyOptions& opt);
/// Half unconfined states, half split evenly over subspaces I..IV.
SuiteResult suite_phase_theorem(const VerifyOptions& opt);
/// Half unconfined states, half confined to subspace I.
SuiteResult suite_composite_theorem(const VerifyOptions& opt);
SuiteResult suite_proof_step(const VerifyOptions& opt);
SuiteResult suite_additivity(const VerifyOptions& opt);

VerifyReport run_verify(const VerifyOptions& opt);

struct AdditivityWitness {
  std::size_t sample_index = 0;
  DensityMatrix state;
  EsdTimeResult phase, amplitude, composite;
};

inline constexpr std::size_t kAdditivitySearchSize = 500;

/// First subspace-IV entangled state (of at most `max_samples`) that is free of
/// sudden death under each noise alone but dies abruptly under both.
std::optional<AdditivityWitness> find_additivity_violation(std::uint64_t seed,
                                                           std::size_t max_samples = kAdditivitySearchSize,
                                                           const NoiseRates& rates = {1.0, 1.0, 1.0, 1.0});

}  // namespace esd
