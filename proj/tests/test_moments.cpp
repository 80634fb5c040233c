#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "test_util.hpp"
#include "trigmom/moments.hpp"
#include "trigmom/numeric.hpp"
#include "trigmom/testkit.hpp"

using namespace trigmom;
using trigmom_test::max_abs;
using trigmom_test::scalar1;
using trigmom_test::temp_path;
using trigmom_test::write_text;

namespace {

MomentSequence scalar_moments(std::vector<Complex> values) {
  std::vector<CMatrix> s;
  for (Complex v : values) s.push_back(scalar1(v.real(), v.imag()));
  return MomentSequence(1, static_cast<int>(values.size()) - 1, std::move(s));
}

}  // namespace

TEST_CASE("build_toeplitz: scalar examples") {
  {
    const ToeplitzForm tf = build_toeplitz(scalar_moments({1.0, 0.0}));
    CHECK(tf.T.rows() == 2);
    CHECK(tf.T(0, 0) == Complex(1.0));
    CHECK(tf.T(0, 1) == Complex(0.0));
    CHECK(tf.T(1, 0) == Complex(0.0));
    CHECK(tf.T(1, 1) == Complex(1.0));
  }
  {
    const ToeplitzForm tf = build_toeplitz(scalar_moments({1.0, 2.0}));
    CHECK(tf.T(0, 1) == Complex(2.0));
    CHECK(tf.T(1, 0) == Complex(2.0));
  }
}

TEST_CASE("build_toeplitz: block pattern matches the sesquilinear form") {
  // Brute-force oracle: the form evaluated on stacked basis vectors, with
  // negative-index moments expanded as adjoints in a separate loop.
  const int p = 2, d = 2;
  std::vector<CMatrix> s;
  s.push_back(detail::hermitian_part(testkit::random_gaussian(p, p, 7)) +
              3.0 * CMatrix::Identity(p, p));
  s.push_back(testkit::random_gaussian(p, p, 8));
  s.push_back(testkit::random_gaussian(p, p, 9));
  const MomentSequence ms(p, d, s);
  const ToeplitzForm tf = build_toeplitz(ms);

  for (int j = 0; j <= d; ++j)
    for (int k = 0; k <= d; ++k)
      for (int alpha = 0; alpha < p; ++alpha)
        for (int beta = 0; beta < p; ++beta) {
          const CMatrix s_jk =
              j >= k ? s[static_cast<std::size_t>(j - k)]
                     : CMatrix(s[static_cast<std::size_t>(k - j)].adjoint());
          const Complex form_value = s_jk(beta, alpha);
          CHECK(std::abs(tf.T(k * p + beta, j * p + alpha) - form_value) <=
                1e-15);
        }
}

TEST_CASE("build_toeplitz: output is exactly Hermitian") {
  const auto mu = testkit::random_atomic_measure({3, 3, 5, -1, 0.2, 42});
  const ToeplitzForm tf = build_toeplitz(moments_from_measure(mu, 3));
  for (Eigen::Index i = 0; i < tf.T.rows(); ++i)
    for (Eigen::Index j = 0; j < tf.T.cols(); ++j)
      CHECK(tf.T(i, j) == std::conj(tf.T(j, i)));
}

TEST_CASE("check_solvable: identity and indefinite scalar cases") {
  {
    const auto res = check_solvable(build_toeplitz(scalar_moments({1.0, 0.0})));
    CHECK(res.solvable);
    CHECK(res.lambda_min == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    const auto res = check_solvable(build_toeplitz(scalar_moments({1.0, 2.0})));
    CHECK_FALSE(res.solvable);
    CHECK(res.lambda_min == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("check_solvable: measure-generated forms are PSD") {
  const auto mu = testkit::random_atomic_measure({3, 4, 6, -1, 0.2, 11});
  for (int d = 1; d <= 4; ++d) {
    const ToeplitzForm tf = build_toeplitz(moments_from_measure(mu, d));
    const auto res = check_solvable(tf);
    CHECK(res.solvable);
    CHECK(res.lambda_min >= -tf.tol);
  }
}

TEST_CASE("moments_from_measure: point masses") {
  {
    const AtomicMeasure mu(1, {{0.0, scalar1(1.0)}});
    const MomentSequence ms = moments_from_measure(mu, 2);
    for (int n = 0; n <= 2; ++n)
      CHECK(std::abs(ms.S[n](0, 0) - Complex(1.0)) <= 1e-15);
  }
  {
    const AtomicMeasure mu(
        1, {{0.0, scalar1(0.5)}, {std::numbers::pi, scalar1(0.5)}});
    const MomentSequence ms = moments_from_measure(mu, 1);
    CHECK(std::abs(ms.S[0](0, 0) - Complex(1.0)) <= 1e-15);
    CHECK(std::abs(ms.S[1](0, 0)) <= 1e-15);
  }
  {
    const double t0 = 1.3;
    const AtomicMeasure mu(1, {{t0, scalar1(1.0)}});
    const MomentSequence ms = moments_from_measure(mu, 3);
    for (int n = 0; n <= 3; ++n)
      CHECK(std::abs(ms.S[n](0, 0) - std::exp(Complex(0.0, n * t0))) <=
            1e-15);
  }
}

TEST_CASE("moments_from_measure: linear in the weights") {
  const auto mu = testkit::random_atomic_measure({2, 3, 4, -1, 0.3, 5});
  std::vector<AtomicMeasure::Atom> doubled;
  for (const auto& a : mu.atoms) doubled.push_back({a.t, 2.0 * a.W});
  const AtomicMeasure mu2(mu.p, doubled);
  const MomentSequence ms = moments_from_measure(mu, 3);
  const MomentSequence ms2 = moments_from_measure(mu2, 3);
  for (int n = 0; n <= 3; ++n)
    CHECK(max_abs(ms2.S[n] - 2.0 * ms.S[n]) <= 1e-14);
}

TEST_CASE("moment accessor applies the adjoint convention") {
  std::vector<CMatrix> s{CMatrix::Identity(2, 2),
                         testkit::random_gaussian(2, 2, 3)};
  const MomentSequence ms(2, 1, s);
  CHECK(max_abs(ms.moment(-1) - CMatrix(s[1].adjoint())) == 0.0);
  CHECK_THROWS_AS((void)ms.moment(2), std::out_of_range);
}

TEST_CASE("moments JSON round trip") {
  const auto mu = testkit::random_atomic_measure({2, 2, 3, -1, 0.3, 77});
  const MomentSequence ms = moments_from_measure(mu, 2);
  const std::string path = temp_path("roundtrip_moments.json");
  save_moments(ms, path);
  const MomentSequence back = load_moments(path);
  REQUIRE(back.p == ms.p);
  REQUIRE(back.d == ms.d);
  for (int n = 0; n <= ms.d; ++n) CHECK(max_abs(back.S[n] - ms.S[n]) <= 1e-15);
}

TEST_CASE("measure JSON round trip") {
  const auto mu = testkit::random_atomic_measure({2, 2, 4, 1, 0.3, 78});
  const std::string path = temp_path("roundtrip_measure.json");
  save_measure(mu, path);
  const AtomicMeasure back = load_measure(path);
  REQUIRE(back.atoms.size() == mu.atoms.size());
  for (std::size_t m = 0; m < mu.atoms.size(); ++m) {
    CHECK(back.atoms[m].t == mu.atoms[m].t);
    CHECK(max_abs(back.atoms[m].W - mu.atoms[m].W) <= 1e-15);
  }
}

TEST_CASE("moments file errors are distinct") {
  const std::string path = temp_path("bad_moments.json");

  write_text(path, "{ not json");
  CHECK_THROWS_AS((void)load_moments(path), parse_error);

  write_text(path, R"({"p": 1, "moments": [[[ [1,0] ]]]})");
  CHECK_THROWS_AS((void)load_moments(path), parse_error);  // missing d

  // list length != d + 1
  write_text(path, R"({"p": 1, "d": 2, "moments": [[[ [1,0] ]], [[[2,0]]]]})");
  CHECK_THROWS_AS((void)load_moments(path), dimension_error);

  // non-square block
  write_text(path,
             R"({"p": 2, "d": 1, "moments": [
                  [[[1,0],[0,0]]],
                  [[[0,0],[0,0]]] ]})");
  CHECK_THROWS_AS((void)load_moments(path), dimension_error);

  // entry not a [re, im] pair
  write_text(path, R"({"p": 1, "d": 1, "moments": [[[ 1 ]], [[ [0,0] ]]]})");
  CHECK_THROWS_AS((void)load_moments(path), parse_error);
}

TEST_CASE("S_0 validation at construction") {
  CMatrix bad(2, 2);
  bad << Complex(1.0), Complex(0.5, 0.2), Complex(0.1), Complex(1.0);
  CHECK_THROWS_AS(
      MomentSequence(2, 1, {bad, CMatrix::Zero(2, 2)}),
      std::invalid_argument);

  CHECK_THROWS_AS(
      MomentSequence(1, 1, {scalar1(-1.0), scalar1(0.0)}),
      std::invalid_argument);

  CHECK_THROWS_AS(MomentSequence(1, 0, {scalar1(1.0)}), std::invalid_argument);

  CHECK_THROWS_AS(MomentSequence(1, 2, {scalar1(1.0), scalar1(0.0)}),
                  dimension_error);
}

TEST_CASE("AtomicMeasure validation") {
  CHECK_THROWS_AS(AtomicMeasure(1, {{1.0, scalar1(1.0)},
                                    {0.5, scalar1(1.0)}}),
                  std::invalid_argument);  // not ascending
  CHECK_THROWS_AS(AtomicMeasure(1, {{7.0, scalar1(1.0)}}),
                  std::invalid_argument);  // angle out of range
  CHECK_THROWS_AS(AtomicMeasure(1, {{1.0, scalar1(-1.0)}}),
                  std::invalid_argument);  // weight not PSD
  CHECK_NOTHROW(AtomicMeasure(1, {}));     // empty measure is the zero measure
}
