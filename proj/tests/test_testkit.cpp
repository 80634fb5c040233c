#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "trigmom/isometry.hpp"
#include "trigmom/numeric.hpp"
#include "trigmom/solutions.hpp"
#include "trigmom/testkit.hpp"

using namespace trigmom;
using trigmom_test::max_abs;
using trigmom_test::scalar1;

TEST_CASE("random_atomic_measure: rank profiles and separation") {
  {
    const auto mu = testkit::random_atomic_measure({2, 2, 3, 0, 0.2, 1});
    const MomentSequence ms = moments_from_measure(mu, 2);
    for (const CMatrix& s : ms.S) CHECK(max_abs(s) == 0.0);
  }
  {
    const auto mu = testkit::random_atomic_measure({1, 2, 1, 1, 0.2, 2});
    const ToeplitzForm tf = build_toeplitz(moments_from_measure(mu, 2));
    CHECK(factor_gram(tf).rank() == 1);
  }
  {
    const auto mu = testkit::random_atomic_measure({2, 2, 8, -1, 0.2, 3});
    const ToeplitzForm tf = build_toeplitz(moments_from_measure(mu, 2));
    CHECK(factor_gram(tf).rank() == 6);  // full (d+1)p
  }
  {
    const auto mu = testkit::random_atomic_measure({1, 1, 10, -1, 0.3, 4});
    for (std::size_t i = 1; i < mu.atoms.size(); ++i)
      CHECK(mu.atoms[i].t - mu.atoms[i - 1].t >= 0.3);
    CHECK(mu.atoms.front().t + 2.0 * std::numbers::pi - mu.atoms.back().t >=
          0.3);
  }
  CHECK_THROWS_AS(
      (void)testkit::random_atomic_measure({1, 1, 100, -1, 0.2, 5}),
      std::invalid_argument);
}

TEST_CASE("random_contraction: interior and boundary") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const CMatrix c = testkit::random_contraction(4, seed, false);
    CHECK(detail::op_norm(c) <= 1.0);
    const CMatrix u = testkit::random_contraction(4, seed, true);
    Eigen::JacobiSVD<CMatrix> svd(u);
    for (Eigen::Index i = 0; i < 4; ++i)
      CHECK(std::abs(svd.singularValues()(i) - 1.0) <= 1e-12);
  }
  // Deterministic in the seed.
  CHECK(max_abs(testkit::random_contraction(3, 9, true) -
                testkit::random_contraction(3, 9, true)) == 0.0);
}

TEST_CASE("brute_force_transform: hand values") {
  {
    const auto mu = testkit::random_atomic_measure({2, 2, 4, -1, 0.2, 6});
    const MomentSequence ms = moments_from_measure(mu, 1);
    CHECK(max_abs(testkit::brute_force_transform(mu, 0.0) - ms.S[0]) <=
          1e-13);
  }
  {
    const double t0 = 2.0;
    const AtomicMeasure mu(1, {{t0, scalar1(1.0)}});
    const Complex z(0.3, 0.1);
    const Complex u = z * std::exp(Complex(0.0, t0));
    CHECK(std::abs(testkit::brute_force_transform(mu, z)(0, 0) -
                   (1.0 + u) / (1.0 - u)) <= 1e-14);
  }
  {
    const AtomicMeasure mu(
        1, {{0.0, scalar1(0.5)}, {std::numbers::pi, scalar1(0.5)}});
    CHECK(std::abs(testkit::brute_force_transform(mu, 0.5)(0, 0) -
                   Complex(5.0 / 3.0)) <= 1e-14);
  }
}

TEST_CASE("end-to-end pipeline: measure to moments to canonical solution") {
  int configurations = 0;
  for (std::uint64_t seed = 1; configurations < 100; ++seed) {
    const int p = 1 + static_cast<int>(seed % 3);
    const int d = 1 + static_cast<int>((seed / 3) % 4);
    const int atoms = 1 + static_cast<int>(seed % 10);
    const auto mu =
        testkit::random_atomic_measure({p, d, atoms, -1, 0.1, seed});
    const MomentSequence ms = moments_from_measure(mu, d);
    const IsometryRep ir = build_isometry(factor_gram(build_toeplitz(ms)));
    const CMatrix phi =
        ir.defect() > 0
            ? testkit::random_contraction(ir.defect(), seed + 1000, true)
            : CMatrix(0, 0);
    const AtomicMeasure solution = canonical_solution(ir, phi);
    double scale = 1.0;
    for (const CMatrix& s : ms.S)
      scale = std::max(scale, detail::op_norm(s));
    for (double res : verify_solution(solution, ms))
      CHECK(res <= 1e-8 * scale);
    ++configurations;
  }
}
