#include "esd/qstate.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "esd/errors.hpp"

namespace esd {

std::array<double, 4> DensityMatrix::diagonal() const {
  return {population(0), population(1), population(2), population(3)};
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

Spectrum eig_hermitian(const Matrix4& m, bool with_vectors) {
  const double defect = hermiticity_defect(m);
  if (defect > kTolHermitian)
    throw Error(ErrorCode::NotHermitian, "max |m_ij - conj(m_ji)| = " + std::to_string(defect));
  auto eig = jacobi_eigen(m, with_vectors);
  Spectrum s;
  s.eigenvalues = eig.values;
  if (with_vectors) s.eigenvectors = eig.vectors;
  return s;
}

DensityMatrix validate(const Matrix4& m) {
  const double herm = hermiticity_defect(m);
  if (herm > kTolHermitian)
    throw Error(ErrorCode::NotHermitian, "max |m_ij - conj(m_ji)| = " + std::to_string(herm));

  const double trace_err = std::abs(m.trace() - 1.0);
  if (trace_err > kTolTrace)
    throw Error(ErrorCode::TraceNotOne, "|tr(m) - 1| = " + std::to_string(trace_err));

  const double min_eig = jacobi_eigen(m, false).values[3];
  if (min_eig < -kTolPsd)
    throw Error(ErrorCode::NotPositive, "smallest eigenvalue = " + std::to_string(min_eig));

  return DensityMatrix(m);
}

namespace {

Matrix4 projector(const std::array<Complex, 4>& psi) {
  Matrix4 m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = psi[r] * std::conj(psi[c]);
  return m;
}

// Bell projectors written entrywise so that every entry is exactly +-1/2.
Matrix4 bell(std::size_t i, std::size_t j, double sign) {
  Matrix4 m;
  m(i, i) = 0.5;
  m(j, j) = 0.5;
  m(i, j) = 0.5 * sign;
  m(j, i) = 0.5 * sign;
  return m;
}

double parse_werner_p(std::string_view arg) {
  double p = 0.0;
  const auto* first = arg.data();
  const auto* last = arg.data() + arg.size();
  auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc{} || ptr != last || arg.empty())
    throw Error(ErrorCode::UnknownPreset, "cannot parse werner parameter '" + std::string(arg) + "'");
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorCode::WernerParamOutOfRange, "p = " + std::string(arg) + " is outside [0, 1]");
  return p;
}

}  // namespace

DensityMatrix preset(std::string_view name) {
  if (name == "bell-phi+") return validate(bell(0, 3, +1.0));
  if (name == "bell-phi-") return validate(bell(0, 3, -1.0));
  if (name == "bell-psi+") return validate(bell(1, 2, +1.0));
  if (name == "bell-psi-") return validate(bell(1, 2, -1.0));
  if (name == "up-up") return validate(projector({1.0, 0.0, 0.0, 0.0}));
  if (name == "down-down") return validate(projector({0.0, 0.0, 0.0, 1.0}));
  if (name == "mixed") return validate(Matrix4::identity() * 0.25);

  constexpr std::string_view werner_prefix = "werner:p=";
  if (name.starts_with(werner_prefix)) {
    const double p = parse_werner_p(name.substr(werner_prefix.size()));
    return validate(bell(1, 2, -1.0) * p + Matrix4::identity() * ((1.0 - p) / 4.0));
  }
  throw Error(ErrorCode::UnknownPreset, "no preset named '" + std::string(name) + "'");
}

DensityMatrix diagonal_part(const DensityMatrix& rho) {
  const auto d = rho.diagonal();
  return validate(Matrix4::diagonal({d[0], d[1], d[2], d[3]}));
}

}  // namespace esd
