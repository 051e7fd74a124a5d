#include <doctest.h>

#include "entmono/roof.hpp"
#include "oracles.hpp"

using namespace entmono;

TEST_SUITE("roof") {
  TEST_CASE("isometry decompositions reproduce the state") {
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
      const DensityMatrix rho = random_mixed(Dims(2, 3), rng.uniform_int(1, 6), rng);
      const int r = numerical_rank(rho);
      const int n = r + rng.uniform_int(0, 3);
      const Matrix u = random_unitary(n, rng);
      const Decomposition d = decomposition_from_isometry(rho, u.leftCols(r));
      CHECK((d.reconstruct() - rho.matrix()).norm() < 1e-12);
      double total = 0.0;
      for (double w : d.weights) total += w;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("non-isometries are rejected") {
    Rng rng(1);
    const DensityMatrix rho = random_mixed(Dims(2, 2), 2, rng);
    CHECK_THROWS_AS(decomposition_from_isometry(rho, Matrix::Ones(3, 2)), ValidationError);
    CHECK_THROWS_AS(decomposition_from_isometry(rho, Matrix::Identity(3, 3)), DimensionError);
  }

  TEST_CASE("default term counts") {
    Rng rng(2);
    CHECK(default_roof_terms(random_mixed(Dims(2, 2), 2, rng)) == 4);
    CHECK(default_roof_terms(random_mixed(Dims(2, 3), 2, rng)) == 4);
    CHECK(default_roof_terms(random_mixed(Dims(2, 3), 6, rng)) == 8);
  }

  TEST_CASE("pure input returns the pure-state value") {
    Rng rng(3);
    const PureState psi = random_pure(Dims(2, 3), rng);
    const RoofResult r = roof_minimize(HFunction::entropy(), DensityMatrix::from_pure(psi), 4, 2, rng);
    CHECK(r.value == doctest::Approx(pure_measure(HFunction::entropy(), psi).value).epsilon(1e-10));
  }

  TEST_CASE("entanglement of formation matches Wootters") {
    Rng rng(4);
    for (int t = 0; t < 8; ++t) {
      const DensityMatrix rho = random_mixed(Dims(2, 2), rng.uniform_int(2, 4), rng);
      const double exact = oracle::eof_from_concurrence(oracle::wootters_concurrence(rho.matrix()));
      const RoofResult r = roof_minimize(HFunction::entropy(), rho, 4, 6, rng);
      CHECK(r.value >= exact - 1e-9);
      CHECK(r.value <= exact + 5e-3);
      CHECK((r.best.reconstruct() - rho.matrix()).norm() < 1e-10);
      CHECK(r.value == doctest::Approx(r.best.average(HFunction::entropy())).epsilon(1e-12));
    }
  }

  TEST_CASE("Werner state roof") {
    Rng rng(5);
    const DensityMatrix w(oracle::werner(0.9), Dims(2, 2));
    const double exact = oracle::eof_from_concurrence(0.85);
    const RoofResult r = roof_minimize(HFunction::entropy(), w, 4, 6, rng);
    CHECK(r.value >= exact - 1e-9);
    CHECK(r.value <= exact + 5e-3);
  }

  TEST_CASE("negativity roof dominates negativity") {
    Rng rng(6);
    for (int t = 0; t < 6; ++t) {
      const DensityMatrix rho = random_mixed(Dims(2, 2), rng.uniform_int(2, 4), rng);
      const RoofResult r = roof_minimize(HFunction::negativity(), rho, 4, 4, rng);
      CHECK(r.value >= negativity(rho).value - 1e-6);
    }
  }

  TEST_CASE("more terms never increase the value") {
    Rng rng(7);
    const DensityMatrix rho = random_mixed(Dims(2, 3), 2, rng);
    const std::uint64_t seed = 99;
    Rng a(seed);
    Rng b(seed);
    const double few = roof_minimize(HFunction::tangle(), rho, 2, 2, a).value;
    const double many = roof_minimize(HFunction::tangle(), rho, 4, 2, b).value;
    CHECK(many <= few + 1e-15);
  }

  TEST_CASE("deterministic given the seed") {
    Rng r0(8);
    const DensityMatrix rho = random_mixed(Dims(2, 2), 3, r0);
    Rng a(123);
    Rng b(123);
    CHECK(roof_minimize(HFunction::concurrence(), rho, 4, 2, a).value ==
          roof_minimize(HFunction::concurrence(), rho, 4, 2, b).value);
  }

  TEST_CASE("parameter errors") {
    Rng rng(9);
    const DensityMatrix rho = random_mixed(Dims(2, 2), 3, rng);
    CHECK_THROWS_AS(roof_minimize(HFunction::entropy(), rho, 2, 1, rng), ParameterError);
    CHECK_THROWS_AS(roof_minimize(HFunction::entropy(), rho, 4, 0, rng), ParameterError);
  }
}
