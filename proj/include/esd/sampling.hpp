#pragma once

// Reproducible random two-qubit states.
//
// The generator is xoshiro256** 1.0 (Blackman & Vigna) with its 256-bit state
// filled by four successive splitmix64 outputs of the 64-bit seed. Uniform
// doubles take the top 53 bits; Gaussian variates use the Marsaglia polar
// method, returning both values of each accepted pair in order.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "esd/classify.hpp"
#include "esd/linalg.hpp"
#include "esd/qstate.hpp"

namespace esd {

inline constexpr std::string_view kPrngId = "xoshiro256**-splitmix64";

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal.
  double gaussian();

 private:
  std::array<std::uint64_t, 4> s_{};
  std::optional<double> spare_;
};

enum class Ensemble { HaarPure, GinibreMixed };

struct SamplerConfig {
  std::uint64_t seed = 42;
  Ensemble ensemble = Ensemble::GinibreMixed;
  /// I..IV confine the state to the 3x3 block without that basis index.
  std::optional<Subspace> subspace;
};

/// Stateful source of random states; one instance per thread.
class StateSampler {
 public:
  explicit StateSampler(const SamplerConfig& config) : config_(config), rng_(config.seed) {}

  DensityMatrix next();
  /// Rejection-samples until concurrence exceeds `min_concurrence`.
  DensityMatrix next_entangled(double min_concurrence = 1e-3);

  Xoshiro256& rng() { return rng_; }
  const SamplerConfig& config() const { return config_; }

 private:
  Complex complex_gaussian();

  SamplerConfig config_;
  Xoshiro256 rng_;
};

std::vector<DensityMatrix> sample(const SamplerConfig& config, std::size_t n);
std::vector<DensityMatrix> sample_entangled(const SamplerConfig& config, std::size_t n, double min_concurrence = 1e-3);

}  // namespace esd
