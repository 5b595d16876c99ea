#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "esd/errors.hpp"
#include "esd/qstate.hpp"
#include "support.hpp"

using namespace esd;
using test::diag4;

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

TEST(Validate, MaximallyMixed) {
  const auto rho = validate(Matrix4::identity() * 0.25);
  EXPECT_DOUBLE_EQ(rho.purity(), 0.25);
}

TEST(Validate, ClassicalMixture) { EXPECT_NO_THROW(validate(diag4(0.5, 0, 0, 0.5))); }

TEST(Validate, CoherenceTooLarge) {
  auto m = diag4(0.5, 0, 0, 0.5);
  m(0, 3) = m(3, 0) = 0.6;
  EXPECT_EQ(error_of([&] { validate(m); }), ErrorCode::NotPositive);
}

TEST(Validate, NotHermitian) {
  auto m = diag4(0.5, 0, 0, 0.5);
  m(0, 3) = 0.1;
  EXPECT_EQ(error_of([&] { validate(m); }), ErrorCode::NotHermitian);
  m(3, 0) = Complex(0.1, 1e-11);
  EXPECT_EQ(error_of([&] { validate(m); }), ErrorCode::NotHermitian);
}

TEST(Validate, Trace) {
  EXPECT_EQ(error_of([] { validate(diag4(0.5, 0, 0, 0.6)); }), ErrorCode::TraceNotOne);
  EXPECT_NO_THROW(validate(diag4(0.5, 0, 0, 0.5 + 5e-13)));
}

TEST(Validate, PsdTolerance) {
  EXPECT_NO_THROW(validate(diag4(0.5 + 5e-11, 0.5, 0, -5e-11)));
  EXPECT_EQ(error_of([] { validate(diag4(0.5 + 1e-9, 0.5, 0, -1e-9)); }), ErrorCode::NotPositive);
}

TEST(Validate, NeverProjects) {
  const auto m = diag4(0.5 + 5e-11, 0.5, 0, -5e-11);
  EXPECT_EQ(validate(m).matrix(), m);
}

TEST(Preset, BellPsiPlus) {
  const auto rho = preset("bell-psi+");
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      const bool inner = (r == 1 || r == 2) && (c == 1 || c == 2);
      EXPECT_EQ(rho(r, c), Complex(inner ? 0.5 : 0.0)) << r << "," << c;
    }
}

TEST(Preset, BellFamilySigns) {
  EXPECT_EQ(preset("bell-phi+")(0, 3), Complex(0.5));
  EXPECT_EQ(preset("bell-phi-")(0, 3), Complex(-0.5));
  EXPECT_EQ(preset("bell-psi-")(1, 2), Complex(-0.5));
  EXPECT_EQ(preset("bell-phi+")(0, 0), Complex(0.5));
  EXPECT_EQ(preset("bell-phi+")(3, 3), Complex(0.5));
}

TEST(Preset, ProductAndMixed) {
  EXPECT_EQ(preset("up-up").matrix(), diag4(1, 0, 0, 0));
  EXPECT_EQ(preset("down-down").matrix(), diag4(0, 0, 0, 1));
  EXPECT_EQ(preset("mixed").matrix(), Matrix4::identity() * 0.25);
}

TEST(Preset, WernerEndpoints) {
  EXPECT_LE(max_entry_distance(preset("werner:p=1").matrix(), preset("bell-psi-").matrix()), 1e-16);
  EXPECT_LE(max_entry_distance(preset("werner:p=0").matrix(), preset("mixed").matrix()), 1e-16);
  const auto w = preset("werner:p=0.6");
  EXPECT_NEAR(w(0, 0).real(), 0.1, 1e-16);
  EXPECT_NEAR(w(1, 1).real(), 0.4, 1e-16);
  EXPECT_NEAR(w(1, 2).real(), -0.3, 1e-16);
}

TEST(Preset, Errors) {
  EXPECT_EQ(error_of([] { preset("bell"); }), ErrorCode::UnknownPreset);
  EXPECT_EQ(error_of([] { preset(""); }), ErrorCode::UnknownPreset);
  EXPECT_EQ(error_of([] { preset("werner:p=1.5"); }), ErrorCode::WernerParamOutOfRange);
  EXPECT_EQ(error_of([] { preset("werner:p=-0.1"); }), ErrorCode::WernerParamOutOfRange);
  EXPECT_NE(error_of([] { preset("werner:p=abc"); }), ErrorCode::InternalChannelError);
}

TEST(Preset, AllValidate) {
  for (const char* name : {"bell-phi+", "bell-phi-", "bell-psi+", "bell-psi-", "up-up", "down-down", "mixed",
                           "werner:p=0.3"}) {
    const auto rho = preset(name);
    EXPECT_NO_THROW(validate(rho.matrix())) << name;
  }
}

TEST(EigHermitian, Examples) {
  EXPECT_EQ(eig_hermitian(diag4(4, 1, 3, 2)).eigenvalues, (std::array<double, 4>{4, 3, 2, 1}));
  EXPECT_EQ(eig_hermitian(Matrix4::identity()).eigenvalues, (std::array<double, 4>{1, 1, 1, 1}));
  Matrix4 x;
  x(0, 1) = x(1, 0) = 1.0;
  const auto s = eig_hermitian(x, true);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues[3], -1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues[1], 0.0, 1e-15);
  ASSERT_TRUE(s.eigenvectors.has_value());
  EXPECT_NEAR(std::abs((*s.eigenvectors)(0, 0)), 1 / std::sqrt(2.0), 1e-15);
}

TEST(EigHermitian, RejectsNonHermitian) {
  Matrix4 m;
  m(0, 1) = 1.0;
  EXPECT_EQ(error_of([&] { eig_hermitian(m); }), ErrorCode::NotHermitian);
}

TEST(DensityMatrix, DiagonalPartAndPurity) {
  std::mt19937_64 gen(3);
  const auto rho = test::random_density(gen);
  const auto d = diagonal_part(rho);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(d(i, i), Complex(rho.population(i)));
  const auto pops = rho.diagonal();
  EXPECT_EQ(d.matrix().max_abs(), *std::max_element(pops.begin(), pops.end()));
  const auto e = test::to_eigen(rho.matrix());
  EXPECT_NEAR(rho.purity(), (e * e).trace().real(), 1e-15);
}
