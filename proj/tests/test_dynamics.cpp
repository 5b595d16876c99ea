#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "esd/classify.hpp"
#include "esd/dynamics.hpp"
#include "esd/errors.hpp"
#include "esd/sampling.hpp"
#include "support.hpp"

using namespace esd;

namespace {

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no esd::Error thrown";
  return ErrorCode::InternalChannelError;
}

}  // namespace

TEST(Evolve, SinglePointGrid) {
  const auto rho = preset("werner:p=0.7");
  const std::vector<double> grid{0.0};
  const auto traj = evolve(rho, ChannelKind::Composite, {1, 1, 1, 1}, grid);
  ASSERT_EQ(traj.states.size(), 1u);
  EXPECT_EQ(traj.states[0].matrix(), rho.matrix());
  EXPECT_EQ(traj.lambdas[0].lambda_cap, concurrence(rho).lambda_cap);
}

TEST(Evolve, BellPsiPlusPhase) {
  const std::vector<double> grid{0.0, std::log(2.0)};
  const auto traj = evolve(preset("bell-psi+"), ChannelKind::PhaseDamping, {0, 0, 1, 1}, grid);
  EXPECT_NEAR(traj.lambdas[1].lambda_cap, 0.25, 1e-12);
}

TEST(Evolve, BellPhiPlusCompositeDecreasesThroughZero) {
  // Lambda = e^{-3t} - e^{-t} + e^{-2t} falls until t = ln 3, then creeps
  // back towards zero from below.
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i * 0.01 * std::log(3.0));
  const auto traj = evolve(preset("bell-phi+"), ChannelKind::Composite, {1, 1, 1, 1}, grid);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_LT(traj.lambdas[i].lambda_cap, traj.lambdas[i - 1].lambda_cap);
  EXPECT_LT(traj.lambdas.back().lambda_cap, 0.0);
}

TEST(Evolve, RejectsBadGrids) {
  const auto rho = preset("bell-phi+");
  const std::vector<double> unsorted{0.0, 2.0, 1.0}, negative{-1.0, 0.0}, empty{};
  EXPECT_EQ(error_of([&] { evolve(rho, ChannelKind::Composite, {1, 1, 1, 1}, unsorted); }), ErrorCode::BadGrid);
  EXPECT_NE(error_of([&] { evolve(rho, ChannelKind::Composite, {1, 1, 1, 1}, negative); }),
            ErrorCode::InternalChannelError);
  EXPECT_EQ(error_of([&] { evolve(rho, ChannelKind::Composite, {1, 1, 1, 1}, empty); }), ErrorCode::BadGrid);
}

TEST(EsdTime, InitiallySeparable) {
  for (auto kind : kAllChannelKinds)
    EXPECT_EQ(esd_time(preset("mixed"), kind, {1, 1, 1, 1}).outcome, EsdOutcome::InitiallySeparable);
}

TEST(EsdTime, BellPsiPlusCompositeSurvives) {
  const auto r = esd_time(preset("bell-psi+"), ChannelKind::Composite, {1, 1, 1, 1});
  EXPECT_EQ(r.outcome, EsdOutcome::NoCrossingWithinHorizon);
  EXPECT_EQ(r.horizon, 50.0);
  // Exact value exp(-150) is far below double round-off of the 4x4 problem.
  EXPECT_NEAR(r.lambda_at_horizon, std::exp(-3 * r.horizon), 1e-12);
}

TEST(EsdTime, BellPhiPlusCompositeGoldenRatio) {
  // X state: Lambda = e^{-3t} - e^{-t}(1 - e^{-t}), zero at e^{-t} = 1/phi.
  const auto rho = preset("bell-phi+");
  const NoiseRates rates{1, 1, 1, 1};
  const auto r = esd_time(rho, ChannelKind::Composite, rates);
  ASSERT_EQ(r.outcome, EsdOutcome::FiniteCrossing);
  EXPECT_NEAR(r.t_star, std::log(std::numbers::phi), 1e-9);
  EXPECT_LE(std::abs(lambda_at(rho, ChannelKind::Composite, rates, r.t_star)), kTolRoot);
  EXPECT_EQ(predict_esd(rho, ChannelKind::Composite, rates).verdict, Verdict::AbruptEsd);

  // Independent route: the master equation crosses zero at the same time.
  const double before = concurrence(integrate_lindblad(rho, rates, r.t_star - 1e-4)).lambda_cap;
  const double after = concurrence(integrate_lindblad(rho, rates, r.t_star + 1e-4)).lambda_cap;
  EXPECT_GT(before, 0.0);
  EXPECT_LT(after, 0.0);
}

TEST(EsdTime, WernerUnderDephasing) {
  // Werner coherences decay as e^{-2 Gamma2 t}; ESD when p e^{-2t} = (1 - p) / 2.
  const double p = 0.9;
  const auto r = esd_time(preset("werner:p=0.9"), ChannelKind::PhaseDamping, {0, 0, 1, 1});
  ASSERT_EQ(r.outcome, EsdOutcome::FiniteCrossing);
  EXPECT_NEAR(r.t_star, 0.5 * std::log(2 * p / (1 - p)), 1e-9);
}

TEST(EsdTime, CrossingInvariants) {
  StateSampler sampler({19, Ensemble::GinibreMixed, std::nullopt});
  for (int i = 0; i < 40; ++i) {
    const auto rho = sampler.next_entangled();
    const NoiseRates rates{0.5 + i * 0.02, 1.0, 0.3, 0.8};
    const auto r = esd_time(rho, ChannelKind::Composite, rates);
    ASSERT_EQ(r.outcome, EsdOutcome::FiniteCrossing);
    const double d = 1e-6 * r.horizon;
    EXPECT_GT(lambda_at(rho, ChannelKind::Composite, rates, r.t_star - d), 0.0);
    EXPECT_LT(lambda_at(rho, ChannelKind::Composite, rates, r.t_star + d), 0.0);
    EXPECT_LE(std::abs(lambda_at(rho, ChannelKind::Composite, rates, r.t_star)), kTolRoot);
  }
}

TEST(EsdTime, UnderflowIsFlagged) {
  // Gamma1 = 2 against Gamma2 = 0.1: populations hit the subnormal range long
  // before the 500-unit horizon.
  const auto r = esd_time(preset("bell-psi+"), ChannelKind::Composite, {2, 2, 0.1, 0.1});
  EXPECT_EQ(r.outcome, EsdOutcome::NoCrossingWithinHorizon);
  EXPECT_TRUE(r.underflow);
  EXPECT_FALSE(esd_time(preset("bell-psi+"), ChannelKind::Composite, {1, 1, 1, 1}).underflow);
}

TEST(EsdTime, Horizon) {
  EXPECT_EQ(esd_horizon(ChannelKind::Composite, {2, 0.5, 1, 0}), 100.0);
  EXPECT_EQ(esd_horizon(ChannelKind::PhaseDamping, {0.1, 0.1, 2, 0}), 25.0);
  EXPECT_EQ(error_of([] { esd_horizon(ChannelKind::PhaseDamping, {1, 1, 0, 0}); }), ErrorCode::AllRatesZero);
  EXPECT_EQ(error_of([] { esd_time(preset("bell-phi+"), ChannelKind::AmplitudeDamping, {0, 0, 1, 1}); }),
            ErrorCode::AllRatesZero);
}

TEST(Lindblad, StationaryGround) {
  EXPECT_EQ(lindblad_rhs(preset("down-down").matrix(), {1.3, 0.4, 2.0, 0.7}).max_abs(), 0.0);
}

TEST(Lindblad, RelaxationRateOnA) {
  const auto d = lindblad_rhs(preset("up-up").matrix(), {1, 0, 0, 0});
  EXPECT_NEAR(d(0, 0).real(), -1.0, 1e-15);
  EXPECT_NEAR(d(2, 2).real(), 1.0, 1e-15);
  EXPECT_EQ(d(1, 1), Complex(0.0));
}

TEST(Lindblad, DephasingRate) {
  // Coherence between |up up> and |down down> flips both sigma_z signs.
  const auto d = lindblad_rhs(preset("bell-phi+").matrix(), {0, 0, 1, 0.5});
  EXPECT_NEAR(d(0, 3).real(), -(1 + 0.5) * 0.5, 1e-15);
  EXPECT_EQ(d(0, 0), Complex(0.0));
}

TEST(Lindblad, TracelessAndHermitian) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> rate(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const auto d = lindblad_rhs(test::random_density(gen).matrix(), {rate(gen), rate(gen), rate(gen), rate(gen)});
    EXPECT_LE(std::abs(d.trace()), 1e-14);
    EXPECT_LE(hermiticity_defect(d), 1e-15);
  }
}

TEST(Lindblad, IntegratorAgreesWithKraus) {
  const auto phi = preset("bell-phi+");
  EXPECT_EQ(integrate_lindblad(phi, {1, 1, 1, 1}, 0.0).matrix(), phi.matrix());
  EXPECT_LE(max_entry_distance(integrate_lindblad(phi, {1, 1, 1, 1}, 1.0).matrix(),
                               evolve_state(ChannelKind::Composite, {1, 1, 1, 1}, 1.0, phi).matrix()),
            1e-6);
  std::mt19937_64 gen(42);
  const auto rho = test::random_density(gen);
  EXPECT_LE(max_entry_distance(integrate_lindblad(rho, {0, 0, 0.7, 1.2}, 2.0).matrix(),
                               evolve_state(ChannelKind::PhaseDamping, {0, 0, 0.7, 1.2}, 2.0, rho).matrix()),
            1e-6);
  EXPECT_EQ(error_of([&] { integrate_lindblad(rho, {1, 1, 1, 1}, -1.0); }), ErrorCode::NegativeTime);
}
