#include "trigmom/nevanlinna.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <string>

#include "trigmom/numeric.hpp"
#include "trigmom/schur_linalg.hpp"

namespace trigmom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_disk(Complex zeta, const char* where) {
  if (!(std::abs(zeta) < 1.0))
    throw std::domain_error(std::string(where) +
                            ": zeta must lie in the open unit disk");
}

}  // namespace

SchurParameter::SchurParameter(std::vector<CMatrix> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(CMatrix(0, 0));
  const Eigen::Index rows = coeffs_[0].rows();
  const Eigen::Index cols = coeffs_[0].cols();
  for (const CMatrix& c : coeffs_)
    if (c.rows() != rows || c.cols() != cols)
      throw dimension_error("SchurParameter: coefficient shapes differ");
  if (rows == 0 || cols == 0) {
    coeffs_.resize(1);
    return;
  }
  if (coeffs_.size() == 1) {
    if (detail::op_norm(coeffs_[0]) > 1.0 + 1e-12)
      throw std::invalid_argument("SchurParameter: value is not a contraction");
    return;
  }
  const double r = 1.0 - 1e-6;
  for (int s = 0; s < 256; ++s) {
    const Complex z = std::polar(r, kTwoPi * s / 256.0);
    if (detail::op_norm((*this)(z)) > 1.0 + 1e-12)
      throw std::invalid_argument(
          "SchurParameter: contraction bound fails on the sample circle");
  }
}

SchurParameter SchurParameter::constant(CMatrix value) {
  std::vector<CMatrix> c;
  c.push_back(std::move(value));
  return SchurParameter(std::move(c));
}

SchurParameter SchurParameter::polynomial(std::vector<CMatrix> coefficients) {
  return SchurParameter(std::move(coefficients));
}

SchurParameter SchurParameter::empty() {
  return SchurParameter({CMatrix(0, 0)});
}

int SchurParameter::rows() const { return static_cast<int>(coeffs_[0].rows()); }
int SchurParameter::cols() const { return static_cast<int>(coeffs_[0].cols()); }

CMatrix SchurParameter::operator()(Complex zeta) const {
  CMatrix value = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;)
    value = coeffs_[k] + zeta * value;
  return value;
}

NevanlinnaCoefficients coefficients_at(const IsometryRep& ir, Complex zeta) {
  check_disk(zeta, "coefficients_at");
  const Eigen::Index r = ir.rank();

  // Resolvent of the compressed shift on the domain; a contraction, so the
  // solve is safe anywhere on the disk.
  const CMatrix K = resolvent_contraction(ir.TA, zeta, ir.TA_norm);

  NevanlinnaCoefficients nc;
  nc.zeta = zeta;
  nc.direct = 2.0 * (ir.DI.adjoint() * K * ir.DI) - ir.ps.ms.S[0];
  nc.out_map = -2.0 * zeta * (ir.DI.adjoint() * K * ir.DNR);
  nc.in_map = -zeta * (ir.NAD * K * ir.DI);
  nc.loop = -zeta * ir.NNR - (zeta * zeta) * (ir.NAD * K * ir.DNR);

  nc.dom_resolvent = ir.Q_D * K * ir.Q_D.adjoint();
  nc.dom_inject = -zeta * nc.dom_resolvent;
  const CMatrix p_dom = ir.Q_D * ir.Q_D.adjoint();
  nc.cross = -zeta * (CMatrix::Identity(r, r) - p_dom) * ir.A *
             nc.dom_resolvent;
  nc.defect_mix =
      -zeta * (CMatrix::Identity(r, r) - p_dom) + zeta * nc.cross;
  return nc;
}

HerglotzSample evaluate_M(const IsometryRep& ir, const SchurParameter& phi,
                          Complex zeta) {
  check_disk(zeta, "evaluate_M");
  const int m = ir.defect();
  if (phi.rows() != m || phi.cols() != m)
    throw dimension_error("evaluate_M: parameter must be " +
                          std::to_string(m) + "x" + std::to_string(m));
  const NevanlinnaCoefficients nc = coefficients_at(ir, zeta);

  CMatrix value;
  if (m == 0) {
    value = nc.direct;
  } else {
    const CMatrix phi_z = phi(zeta);
    const CMatrix lhs = CMatrix::Identity(m, m) + nc.loop * phi_z;
    Eigen::PartialPivLU<CMatrix> lu(lhs);
    const CMatrix x = lu.solve(nc.in_map);
    const double residual = (lhs * x - nc.in_map).norm();
    if (residual > 1e-9 * std::max(1.0, nc.in_map.norm()))
      throw numeric_error(
          "evaluate_M: loop inversion failed, internal inconsistency");
    value = nc.direct + nc.out_map * phi_z * x;
  }

  const double scale = std::max(1.0, detail::op_norm(value));
  if (detail::min_hermitian_eig(detail::hermitian_part(value)) <
      -1e-9 * scale)
    throw numeric_error(
        "evaluate_M: Hermitian part not PSD, internal inconsistency");
  return {zeta, std::move(value)};
}

HerglotzSample evaluate_M_resolvent(const IsometryRep& ir,
                                    const SchurParameter& phi, Complex zeta) {
  check_disk(zeta, "evaluate_M_resolvent");
  if (!phi.is_constant())
    throw std::invalid_argument(
        "evaluate_M_resolvent: parameter must be constant");
  const int m = ir.defect();
  if (phi.rows() != m || phi.cols() != m)
    throw dimension_error("evaluate_M_resolvent: parameter must be " +
                          std::to_string(m) + "x" + std::to_string(m));
  const CMatrix extension =
      ir.A + ir.Q_NR * phi(zeta) * ir.Q_ND.adjoint();
  const CMatrix resolvent = resolvent_contraction(extension, zeta);
  CMatrix value = 2.0 * (ir.embed_op.adjoint() * resolvent * ir.embed_op) -
                  ir.ps.ms.S[0];
  return {zeta, std::move(value)};
}

std::vector<CMatrix> taylor_moments(const IsometryRep& ir,
                                    const SchurParameter& phi, int n_max,
                                    double radius, int n_samples) {
  if (n_max < 0) throw std::invalid_argument("taylor_moments: n_max < 0");
  if (!(radius > 0.0 && radius < 1.0))
    throw std::invalid_argument("taylor_moments: radius must be in (0, 1)");
  if (n_samples < std::max(4, 4 * n_max) ||
      static_cast<int>(detail::next_pow2(static_cast<std::size_t>(
          n_samples))) != n_samples)
    throw std::invalid_argument(
        "taylor_moments: n_samples must be a power of two >= 4 * n_max");

  const int p = ir.ps.ms.p;
  std::vector<CMatrix> samples;
  samples.reserve(static_cast<std::size_t>(n_samples));
  for (int l = 0; l < n_samples; ++l) {
    const Complex z = std::polar(radius, kTwoPi * l / n_samples);
    samples.push_back(evaluate_M(ir, phi, z).M);
  }

  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    CMatrix c = CMatrix::Zero(p, p);
    for (int l = 0; l < n_samples; ++l)
      c += std::exp(Complex(0.0, -kTwoPi * n * l / n_samples)) * samples[l];
    c /= static_cast<double>(n_samples) * std::pow(radius, n);
    out.push_back(n == 0 ? c : CMatrix(0.5 * c));
  }
  return out;
}

int default_taylor_samples(int d) {
  return static_cast<int>(detail::next_pow2(
      static_cast<std::size_t>(std::max(256, 8 * (d + 1)))));
}

}  // namespace trigmom
