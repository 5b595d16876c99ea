#include <gtest/gtest.h>

#include <algorithm>

#include "esd/errors.hpp"
#include "esd/linalg.hpp"
#include "support.hpp"

using namespace esd;
using esd::test::to_eigen;

TEST(Linalg, KronPlacesPartyAFirst) {
  Matrix2 a;
  a(1, 0) = 1.0;  // |down><up|
  const auto k = kron(a, Matrix2::identity());
  // |down, x><up, x| for both x
  EXPECT_EQ(k(2, 0), Complex(1.0));
  EXPECT_EQ(k(3, 1), Complex(1.0));
  EXPECT_DOUBLE_EQ(k.max_abs(), 1.0);
  EXPECT_EQ(std::abs(k(1, 0)), 0.0);
}

TEST(Linalg, MatrixArithmetic) {
  std::mt19937_64 gen(1);
  const auto a = test::random_hermitian(gen), b = test::random_hermitian(gen);
  const Eigen::Matrix4cd ea = to_eigen(a), eb = to_eigen(b);
  EXPECT_LE((to_eigen(a * b) - ea * eb).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((to_eigen(a + b) - (ea + eb)).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LE((to_eigen((a * b).adjoint()) - (ea * eb).adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(std::abs(a.trace() - ea.trace()), 0.0, 1e-14);
  EXPECT_EQ(hermiticity_defect(a), 0.0);
}

TEST(Linalg, JacobiDiagonalInput) {
  const auto e = jacobi_eigen<4>(Matrix4::diagonal({4.0, 1.0, 3.0, 2.0}), true);
  EXPECT_EQ(e.values, (std::array<double, 4>{4.0, 3.0, 2.0, 1.0}));
  EXPECT_EQ(e.sweeps, 0);
}

TEST(Linalg, JacobiPauliXBlock) {
  Matrix4 m;
  m(0, 1) = m(1, 0) = 1.0;
  const auto e = jacobi_eigen<4>(m, false);
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 0.0, 1e-15);
  EXPECT_NEAR(e.values[2], 0.0, 1e-15);
  EXPECT_NEAR(e.values[3], -1.0, 1e-15);
}

TEST(Linalg, JacobiMatchesEigenOnRandomHermitian) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = test::random_hermitian(gen);
    const auto e = jacobi_eigen<4>(m, true);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ref(to_eigen(m));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(e.values[std::size_t(i)], ref.eigenvalues()(3 - i), 1e-12);

    // A V = V D and V unitary.
    const Eigen::Matrix4cd v = to_eigen(e.vectors);
    Eigen::Matrix4cd d = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) d(i, i) = e.values[std::size_t(i)];
    EXPECT_LE((to_eigen(m) * v - v * d).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((v.adjoint() * v - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Linalg, JacobiDegenerateAndTiny) {
  const auto id = jacobi_eigen<4>(Matrix4::identity(), true);
  EXPECT_EQ(id.values, (std::array<double, 4>{1.0, 1.0, 1.0, 1.0}));

  // Widely separated scales keep relative accuracy on the small eigenvalue.
  Matrix4 m = Matrix4::diagonal({1.0, 1e-20, 0.5, 0.25});
  m(0, 2) = m(2, 0) = 1e-3;
  const auto e = jacobi_eigen<4>(m, false);
  EXPECT_EQ(e.values[3], 1e-20);
}

TEST(Linalg, SingularValuesMatchEigen) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Matrix4cd g = test::random_complex(gen);
    const auto s = singular_values(test::from_eigen(g));
    Eigen::JacobiSVD<Eigen::Matrix4cd> ref(g);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(s[std::size_t(i)], ref.singularValues()(i), 1e-12 * ref.singularValues()(0));
    EXPECT_TRUE(std::is_sorted(s.rbegin(), s.rend()));
  }
}

TEST(Linalg, SingularValuesRankDeficient) {
  std::mt19937_64 gen(12);
  for (int rank = 0; rank <= 4; ++rank) {
    const Eigen::Matrix4cd u = test::random_complex(gen).householderQr().householderQ();
    const Eigen::Matrix4cd v = test::random_complex(gen).householderQr().householderQ();
    Eigen::Vector4d sv(3.0, 2.0, 0.5, 0.1);
    for (int i = rank; i < 4; ++i) sv(i) = 0.0;
    const Eigen::Matrix4cd a = u * sv.cast<Complex>().asDiagonal() * v.adjoint();
    const auto s = singular_values(test::from_eigen(a));
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(s[std::size_t(i)], sv(i), 1e-14) << "rank " << rank;
  }
}

TEST(Linalg, SingularValuesZeroMatrix) {
  EXPECT_EQ(singular_values(Matrix4::zero()), (std::array<double, 4>{0, 0, 0, 0}));
}
