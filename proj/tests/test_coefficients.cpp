#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rmt/coefficients.hpp"
#include "rmt/distributions.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/errors.hpp"
#include "rmt/random.hpp"
#include "rmt/spectral.hpp"

using rmt::ChainDecomposition;
using rmt::RandomStream;
using rmt::RecursionCoefficients;

namespace {

RecursionCoefficients from_matrix(const rmt::TridiagonalMatrix& t) {
  return RecursionCoefficients(t.diag(), t.offdiag());
}

}  // namespace

TEST_CASE("recursion coefficient validation") {
  CHECK_THROWS_AS(RecursionCoefficients({1.0, 1.0}, {0.0}), rmt::parameter_error);
  CHECK_THROWS_AS(RecursionCoefficients({1.0, 1.0}, {-0.5}), rmt::parameter_error);
  CHECK_THROWS_AS(RecursionCoefficients({1.0, 1.0}, {0.5, 0.5}), rmt::parameter_error);
  CHECK_NOTHROW(RecursionCoefficients({1.0, 1.0}, {0.5}));
  CHECK_NOTHROW(RecursionCoefficients({1.0}, {}));
}

TEST_CASE("Lanczos recovers a matrix from its spectral measure") {
  RandomStream rng(246, 0);
  auto spec = rmt::EnsembleSpec::jacobi(2.0, 30, 40.0, 45.0);
  auto t = rmt::sample_tridiagonal(spec, rng);
  auto mu = rmt::spectral_measure(t);

  auto rc = rmt::lanczos_coefficients(mu, 30);
  REQUIRE(rc.depth() == 30);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(rc.d()[i] == doctest::Approx(t.diag()[i]).epsilon(1e-10));
  }
  for (std::size_t i = 0; i < 29; ++i) {
    CHECK(rc.c()[i] == doctest::Approx(t.offdiag()[i]).epsilon(1e-10));
  }

  // A shallower run reproduces the leading block.
  auto rc10 = rmt::lanczos_coefficients(mu, 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(rc10.d()[i] == doctest::Approx(t.diag()[i]).epsilon(1e-10));
  }

  CHECK_THROWS_AS(rmt::lanczos_coefficients(mu, 31), rmt::parameter_error);
  CHECK_THROWS_AS(rmt::lanczos_coefficients(mu, 0), rmt::parameter_error);

  auto back = rmt::matrix_from_coefficients(rc);
  CHECK(back.size() == 30);
  CHECK(back.diag()[7] == rc.d()[7]);
  CHECK(back.offdiag()[7] == rc.c()[7]);
}

TEST_CASE("z-chain of the Marchenko-Pastur matrix alternates 1, tau") {
  const double tau = 0.37;
  auto chain = rmt::z_decomposition(from_matrix(rmt::limit_matrix_mp(6, tau)));
  REQUIRE(chain.z.size() == 11);
  for (std::size_t j = 0; j < chain.z.size(); ++j) {
    double expect = (j % 2 == 0) ? 1.0 : tau;
    CHECK(chain.z[j] == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(chain.p.empty());
}

TEST_CASE("measures with negative support have no z-chain") {
  // The free walk matrix has eigenvalues on both sides of 0.
  CHECK_THROWS_AS(rmt::z_decomposition(from_matrix(rmt::limit_matrix_sc(4))),
                  rmt::support_error);
  CHECK_THROWS_AS(rmt::z_decomposition(RecursionCoefficients({-1.0, 2.0}, {0.5})),
                  rmt::support_error);
}

TEST_CASE("single atom chain") {
  rmt::DiscreteMeasure delta({0.5}, {1.0});
  auto rc = rmt::lanczos_coefficients(delta, 1);
  REQUIRE(rc.depth() == 1);
  CHECK(rc.d()[0] == doctest::Approx(0.5).epsilon(1e-15));
  auto chain = rmt::canonical_moments(rc);
  REQUIRE(chain.z.size() == 1);
  REQUIRE(chain.p.size() == 1);
  CHECK(chain.z[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(chain.p[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("canonical moments of the unit-interval free walk") {
  // Map the free walk onto [0,1]: diagonal 1/2, couplings 1/4.  Its canonical
  // moments are p_{2k-1} = 1/2 and p_{2k} = k / (2(k+1)).
  auto t = rmt::affine_transform(rmt::limit_matrix_sc(5), 0.25, -2.0);
  auto chain = rmt::canonical_moments(from_matrix(t));
  REQUIRE(chain.p.size() == 9);
  for (std::size_t j = 1; j <= 9; ++j) {
    double expect = (j % 2 == 1)
                        ? 0.5
                        : static_cast<double>(j / 2) / (2.0 * (j / 2 + 1.0));
    CHECK(chain.p[j - 1] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("canonical moments reject measures leaking past 1") {
  // MP(1) has support up to 4: p_1 = 1 exhausts the chain immediately.
  CHECK_THROWS_AS(rmt::canonical_moments(from_matrix(rmt::limit_matrix_mp(4, 1.0))),
                  rmt::support_error);
}

TEST_CASE("Jacobi chain recovery replays the sampling stream") {
  const std::size_t n = 8;
  const double beta = 2.0, a = 12.0, b = 15.0;
  const double bp = beta / 2.0;

  // Replay: the sampler draws p_1..p_{2n-1} in index order.
  RandomStream replay(2024, 5);
  std::vector<double> expected;
  for (std::size_t j = 1; j <= 2 * n - 1; ++j) {
    double alpha, betap;
    if (j % 2 == 1) {
      double k = static_cast<double>((j + 1) / 2);
      alpha = a - (k - 1.0) * bp;
      betap = b - (k - 1.0) * bp;
    } else {
      double k = static_cast<double>(j / 2);
      alpha = (static_cast<double>(n) - k) * bp;
      betap = a + b - (static_cast<double>(n) + k - 1.0) * bp;
    }
    expected.push_back(rmt::sample_beta(rmt::BetaParams(alpha, betap), replay));
  }

  RandomStream rng(2024, 5);
  auto t = rmt::sample_tridiagonal(rmt::EnsembleSpec::jacobi(beta, n, a, b), rng);
  auto chain = rmt::canonical_moments(
      rmt::lanczos_coefficients(rmt::spectral_measure(t), n));
  REQUIRE(chain.p.size() == 2 * n - 1);
  for (std::size_t j = 0; j < chain.p.size(); ++j) {
    CHECK(chain.p[j] == doctest::Approx(expected[j]).epsilon(1e-8));
  }
}

TEST_CASE("Laguerre chain recovery replays the sampling stream") {
  const std::size_t n = 6;
  const double beta = 2.0, a = 9.0;
  const double bp = beta / 2.0;

  RandomStream replay(77, 1);
  std::vector<double> expected;
  for (std::size_t j = 1; j <= 2 * n - 1; ++j) {
    double shape = (j % 2 == 1)
                       ? a - (static_cast<double>((j + 1) / 2) - 1.0) * bp
                       : (static_cast<double>(n) - static_cast<double>(j / 2)) * bp;
    expected.push_back(rmt::sample_gamma(rmt::GammaParams(shape), replay));
  }

  RandomStream rng(77, 1);
  auto t = rmt::sample_tridiagonal(rmt::EnsembleSpec::laguerre(beta, n, a), rng);
  auto chain = rmt::z_decomposition(
      rmt::lanczos_coefficients(rmt::spectral_measure(t), n));
  REQUIRE(chain.z.size() == 2 * n - 1);
  for (std::size_t j = 0; j < chain.z.size(); ++j) {
    CHECK(chain.z[j] ==
          doctest::Approx(expected[j]).epsilon(1e-7).scale(1.0 + expected[j]));
  }
}

TEST_CASE("coefficient serialization") {
  RecursionCoefficients rc({0.5, 0.75}, {0.25});
  std::string bare = rmt::coefficients_to_json(rc);
  CHECK(bare.find("\"d\"") != std::string::npos);
  CHECK(bare.find("\"c\"") != std::string::npos);
  CHECK(bare.find("\"z\"") == std::string::npos);

  auto chain = rmt::canonical_moments(rc);
  std::string full = rmt::coefficients_to_json(rc, &chain);
  CHECK(full.find("\"z\"") != std::string::npos);
  CHECK(full.find("\"p\"") != std::string::npos);
  CHECK(full.find("0.5") != std::string::npos);
}
