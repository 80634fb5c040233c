#include "trigmom/solutions.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "trigmom/numeric.hpp"

namespace trigmom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kClusterTol = 1e-8;
constexpr double kAtomDropTol = 1e-12;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod can return 2pi itself after the correction when t was a tiny
  // negative number.
  if (t >= kTwoPi) t = 0.0;
  return t;
}

// Mean angle of a cluster, computed on the unit circle so that members
// straddling the 0/2pi seam average correctly.
double circular_mean(const std::vector<double>& angles) {
  Complex sum = 0.0;
  for (double t : angles) sum += std::polar(1.0, t);
  return wrap_angle(std::arg(sum));
}

}  // namespace

AtomicMeasure canonical_solution(const IsometryRep& ir,
                                 const CMatrix& phi_unitary) {
  const int m = ir.defect();
  const int p = ir.ps.ms.p;
  if (phi_unitary.rows() != m || phi_unitary.cols() != m)
    throw dimension_error("canonical_solution: parameter must be " +
                          std::to_string(m) + "x" + std::to_string(m));
  if (m > 0) {
    const double gap = detail::op_norm(
        phi_unitary.adjoint() * phi_unitary - CMatrix::Identity(m, m));
    if (gap > 1e-10)
      throw std::invalid_argument(
          "canonical_solution: parameter is not unitary within 1e-10");
  }

  const Eigen::Index r = ir.rank();
  if (r == 0) return AtomicMeasure(p, {});

  const CMatrix U = ir.A + ir.Q_NR * phi_unitary * ir.Q_ND.adjoint();
  if (detail::op_norm(U.adjoint() * U - CMatrix::Identity(r, r)) > 1e-8)
    throw numeric_error(
        "canonical_solution: extended operator is not unitary, internal "
        "inconsistency");

  Eigen::ComplexSchur<CMatrix> schur(U);
  if (schur.info() != Eigen::Success)
    throw numeric_error("canonical_solution: Schur decomposition failed");
  // U is normal, so the triangular factor is diagonal up to roundoff and the
  // Schur vectors of an eigenvalue cluster span its eigenspace.
  const CMatrix& q = schur.matrixU();

  struct Indexed {
    double t;
    Eigen::Index i;
  };
  std::vector<Indexed> order;
  order.reserve(static_cast<std::size_t>(r));
  for (Eigen::Index i = 0; i < r; ++i)
    order.push_back({wrap_angle(std::arg(schur.matrixT()(i, i))), i});
  std::sort(order.begin(), order.end(),
            [](const Indexed& a, const Indexed& b) { return a.t < b.t; });

  std::vector<std::vector<Indexed>> clusters;
  for (const Indexed& e : order) {
    if (!clusters.empty() && e.t - clusters.back().back().t <= kClusterTol)
      clusters.back().push_back(e);
    else
      clusters.push_back({e});
  }
  // Angles just below 2pi belong with angles just above 0.
  if (clusters.size() > 1 &&
      clusters.front().front().t + kTwoPi - clusters.back().back().t <=
          kClusterTol) {
    auto& first = clusters.front();
    first.insert(first.end(), clusters.back().begin(), clusters.back().end());
    clusters.pop_back();
  }

  std::vector<AtomicMeasure::Atom> atoms;
  for (const auto& cluster : clusters) {
    CMatrix qc(r, static_cast<Eigen::Index>(cluster.size()));
    std::vector<double> angles;
    angles.reserve(cluster.size());
    for (std::size_t k = 0; k < cluster.size(); ++k) {
      qc.col(static_cast<Eigen::Index>(k)) = q.col(cluster[k].i);
      angles.push_back(cluster[k].t);
    }
    const CMatrix qi = qc.adjoint() * ir.embed_op;  // cluster x p
    CMatrix w = qi.adjoint() * qi;
    if (detail::op_norm(w) <= kAtomDropTol) continue;
    w = detail::hermitian_part(w);
    atoms.push_back({circular_mean(angles), std::move(w)});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.t < b.t; });
  return AtomicMeasure(p, std::move(atoms));
}

RVector uniform_grid(int n_cells) {
  if (n_cells < 1) throw std::invalid_argument("uniform_grid: need >= 1 cell");
  RVector grid(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i) grid(i) = kTwoPi * i / n_cells;
  grid(n_cells) = kTwoPi;
  return grid;
}

DistributionSamples recover_distribution(const IsometryRep& ir,
                                         const SchurParameter& phi,
                                         const RVector& grid, double radius,
                                         int threads) {
  if (!(radius > 0.0 && radius < 1.0))
    throw std::invalid_argument(
        "recover_distribution: radius must be in (0, 1)");
  const Eigen::Index cells = grid.size() - 1;
  if (cells < 1)
    throw std::invalid_argument("recover_distribution: grid too short");
  if (std::abs(grid(0)) > 1e-12 || std::abs(grid(cells) - kTwoPi) > 1e-12)
    throw std::invalid_argument(
        "recover_distribution: grid must span [0, 2pi]");
  double max_step = 0.0;
  for (Eigen::Index i = 0; i < cells; ++i) {
    const double step = grid(i + 1) - grid(i);
    if (!(step > 0.0))
      throw std::invalid_argument(
          "recover_distribution: grid must be strictly ascending");
    max_step = std::max(max_step, step);
  }
  if (max_step >= std::numbers::pi / 16.0)
    throw std::invalid_argument(
        "recover_distribution: grid resolution must be finer than pi/16");

  // Subintervals per cell: enough total points that the full-period
  // quadrature resolves the Poisson tail r^n, capped to keep extreme radii
  // from exploding the cost.
  const double needed = 48.0 / -std::log(radius);
  int refine = static_cast<int>(std::ceil(needed / static_cast<double>(cells)));
  refine = std::clamp(refine + (refine % 2), 16, 512);

  const std::size_t n_samples = static_cast<std::size_t>(cells) *
                                    static_cast<std::size_t>(refine) + 1;
  const int p = ir.ps.ms.p;

  // All sample angles, cell by cell; endpoints shared between cells.
  std::vector<double> theta(n_samples);
  for (Eigen::Index c = 0; c < cells; ++c) {
    const double a = grid(c);
    const double h = (grid(c + 1) - a) / refine;
    for (int s = 0; s < refine; ++s)
      theta[static_cast<std::size_t>(c) * refine + s] = a + h * s;
  }
  theta.back() = grid(cells);

  std::vector<CMatrix> integrand(n_samples);
  detail::parallel_for(n_samples, threads, [&](std::size_t i) {
    const Complex z = std::polar(radius, -theta[i]);
    integrand[i] = detail::hermitian_part(evaluate_M(ir, phi, z).M);
  });

  DistributionSamples ds;
  ds.grid = grid;
  ds.radius = radius;
  ds.values.resize(static_cast<std::size_t>(cells) + 1);
  ds.values[0] = CMatrix::Zero(p, p);
  const double scale = std::max(1.0, detail::op_norm(ir.ps.ms.S[0]));
  for (Eigen::Index c = 0; c < cells; ++c) {
    const double h = (grid(c + 1) - grid(c)) / refine;
    CMatrix acc = CMatrix::Zero(p, p);
    const std::size_t base = static_cast<std::size_t>(c) * refine;
    for (int s = 0; s < refine; s += 2)
      acc += integrand[base + s] + 4.0 * integrand[base + s + 1] +
             integrand[base + s + 2];
    const CMatrix increment =
        detail::hermitian_part(acc * (h / 3.0 / kTwoPi));
    if (detail::min_hermitian_eig(increment) < -1e-6 * scale)
      throw numeric_error(
          "recover_distribution: increment on [" + std::to_string(grid(c)) +
          ", " + std::to_string(grid(c + 1)) + "] is not PSD");
    ds.values[static_cast<std::size_t>(c) + 1] = detail::hermitian_part(
        ds.values[static_cast<std::size_t>(c)] + increment);
  }

  const double mass_gap =
      detail::op_norm(ds.values.back() - detail::hermitian_part(ir.ps.ms.S[0]));
  if (mass_gap > 0.05 * scale)
    throw numeric_error(
        "recover_distribution: recovered total mass is off by " +
        std::to_string(mass_gap) + "; radius/grid too aggressive");
  return ds;
}

std::vector<double> verify_solution(const AtomicMeasure& mu,
                                    const MomentSequence& ms) {
  if (mu.p != ms.p)
    throw dimension_error("verify_solution: dimension mismatch");
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(ms.d) + 1);
  for (int n = 0; n <= ms.d; ++n) {
    CMatrix s = CMatrix::Zero(mu.p, mu.p);
    for (const auto& atom : mu.atoms)
      s += std::exp(Complex(0.0, n * atom.t)) * atom.W;
    residuals.push_back(detail::op_norm(s - ms.S[static_cast<std::size_t>(n)]));
  }
  return residuals;
}

void save_distribution_csv(const DistributionSamples& ds, std::ostream& out) {
  const int p =
      ds.values.empty() ? 0 : static_cast<int>(ds.values.front().rows());
  out << "theta";
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      out << ",F[" << i << "][" << j << "].re,F[" << i << "][" << j << "].im";
  out << '\n';
  char buf[32];
  for (Eigen::Index k = 0; k < ds.grid.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", ds.grid(k));
    out << buf;
    const CMatrix& f = ds.values[static_cast<std::size_t>(k)];
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", f(i, j).real());
        out << ',' << buf;
        std::snprintf(buf, sizeof(buf), "%.17g", f(i, j).imag());
        out << ',' << buf;
      }
    out << '\n';
  }
}

}  // namespace trigmom
