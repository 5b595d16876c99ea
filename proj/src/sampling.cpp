#include "esd/sampling.hpp"

#include <bit>
#include <cmath>

#include "esd/entanglement.hpp"
#include "esd/errors.hpp"

namespace esd {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  SplitMix64 sm(seed);
  for (auto& word : s_) word = sm.next();
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Xoshiro256::gaussian() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  for (;;) {
    const double x = 2.0 * uniform() - 1.0;
    const double y = 2.0 * uniform() - 1.0;
    const double s = x * x + y * y;
    if (s >= 1.0 || s == 0.0) continue;
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = y * f;
    return x * f;
  }
}

Complex StateSampler::complex_gaussian() {
  const double re = rng_.gaussian();
  const double im = rng_.gaussian();
  return {re, im};
}

namespace {

// Basis indices kept by a subspace-confined draw.
std::vector<std::size_t> support(const std::optional<Subspace>& sub) {
  std::vector<std::size_t> idx;
  const std::size_t removed = sub && *sub != Subspace::None ? static_cast<std::size_t>(*sub) - 1 : 4;
  for (std::size_t i = 0; i < 4; ++i)
    if (i != removed) idx.push_back(i);
  return idx;
}

// Hermitian by construction: lower triangle mirrors the upper one.
Matrix4 hermitian_from_upper(const Matrix4& m) {
  Matrix4 out;
  for (std::size_t r = 0; r < 4; ++r) {
    out(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < 4; ++c) {
      out(r, c) = m(r, c);
      out(c, r) = std::conj(m(r, c));
    }
  }
  return out;
}

}  // namespace

DensityMatrix StateSampler::next() {
  const auto idx = support(config_.subspace);
  const std::size_t d = idx.size();

  Matrix4 m;
  if (config_.ensemble == Ensemble::HaarPure) {
    std::array<Complex, 4> psi{};
    double norm2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      psi[idx[k]] = complex_gaussian();
      norm2 += std::norm(psi[idx[k]]);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : psi) z *= inv;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = psi[r] * std::conj(psi[c]);
  } else {
    Matrix4 g;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) g(idx[r], c) = complex_gaussian();
    m = g * g.adjoint();
    const double tr = m.trace().real();
    m *= 1.0 / tr;
  }
  return validate(hermitian_from_upper(m));
}

DensityMatrix StateSampler::next_entangled(double min_concurrence) {
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto rho = next();
    if (concurrence(rho).concurrence > min_concurrence) return rho;
  }
  throw Error(ErrorCode::InternalChannelError, "no entangled sample found in " + std::to_string(kMaxAttempts) + " draws");
}

std::vector<DensityMatrix> sample(const SamplerConfig& config, std::size_t n) {
  StateSampler sampler(config);
  std::vector<DensityMatrix> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.next());
  return out;
}

std::vector<DensityMatrix> sample_entangled(const SamplerConfig& config, std::size_t n, double min_concurrence) {
  StateSampler sampler(config);
  std::vector<DensityMatrix> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.next_entangled(min_concurrence));
  return out;
}

}  // namespace esd
