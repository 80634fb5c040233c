#include "trigmom/testkit.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "trigmom/numeric.hpp"

namespace trigmom::testkit {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

CMatrix random_gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

AtomicMeasure random_atomic_measure(const GeneratorSpec& spec) {
  if (spec.p < 1 || spec.n_atoms < 1)
    throw std::invalid_argument("random_atomic_measure: p and atom count "
                                "must be >= 1");
  if (!(spec.min_separation > 0.0) ||
      spec.n_atoms * spec.min_separation >= kTwoPi)
    throw std::invalid_argument(
        "random_atomic_measure: separation infeasible for atom count");
  const int rank = spec.weight_rank < 0
                       ? spec.p
                       : std::min(spec.weight_rank, spec.p);

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  std::vector<double> angles(static_cast<std::size_t>(spec.n_atoms));
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 10000)
      throw numeric_error(
          "random_atomic_measure: could not place separated atoms");
    for (double& t : angles) t = uniform(rng);
    std::sort(angles.begin(), angles.end());
    bool ok = true;
    for (std::size_t i = 1; i < angles.size(); ++i)
      ok = ok && angles[i] - angles[i - 1] >= spec.min_separation;
    if (angles.size() > 1)
      ok = ok && angles.front() + kTwoPi - angles.back() >=
                     spec.min_separation;
    if (ok) break;
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<AtomicMeasure::Atom> atoms;
  atoms.reserve(angles.size());
  for (double t : angles) {
    CMatrix w = CMatrix::Zero(spec.p, spec.p);
    if (rank > 0) {
      CMatrix g(spec.p, rank);
      for (int i = 0; i < spec.p; ++i)
        for (int j = 0; j < rank; ++j)
          g(i, j) = Complex(normal(rng), normal(rng));
      w = g * g.adjoint();
    }
    atoms.push_back({t, detail::hermitian_part(w)});
  }
  return AtomicMeasure(spec.p, std::move(atoms));
}

CMatrix random_contraction(int m, std::uint64_t seed, bool boundary) {
  if (m < 1) throw std::invalid_argument("random_contraction: m must be >= 1");
  const CMatrix g = random_gaussian(m, m, seed);
  if (boundary) {
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the column phases so the factorization is the canonical one with
    // positive diagonal; Q is then Haar distributed.
    for (int j = 0; j < m; ++j) {
      const Complex rjj = r(j, j);
      if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
    }
    return q;
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  return g / (detail::op_norm(g) * (1.0 + uniform(rng)));
}

CMatrix brute_force_transform(const AtomicMeasure& mu, Complex zeta) {
  if (!(std::abs(zeta) < 1.0))
    throw std::domain_error("brute_force_transform: zeta must be in the disk");
  CMatrix m = CMatrix::Zero(mu.p, mu.p);
  for (const auto& atom : mu.atoms) {
    const Complex u = zeta * std::polar(1.0, atom.t);
    m += ((1.0 + u) / (1.0 - u)) * atom.W;
  }
  return m;
}

}  // namespace trigmom::testkit
