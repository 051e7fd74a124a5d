#include <doctest.h>

#include <numbers>

#include "entmono/measures.hpp"
#include "entmono/random.hpp"
#include "oracles.hpp"

using namespace entmono;

namespace {

PureState bell() { return PureState(oracle::bell_vector(), Dims(2, 2)); }

PureState product(const Dims& dims) {
  Vector v = Vector::Zero(dims.total());
  v(0) = 1.0;
  return PureState(v, dims);
}

std::vector<HFunction> all_h() {
  return {HFunction::entropy(),     HFunction::concurrence(), HFunction::g_concurrence(), HFunction::tangle(),
          HFunction::negativity(),  HFunction::renyi(0.5),    HFunction::renyi(1.0),     HFunction::tsallis(2.0),
          HFunction::tsallis(0.5)};
}

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("h-functions on the Bell state") {
    const PureState b = bell();
    CHECK(pure_measure(HFunction::entropy(), b).value == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
    CHECK(pure_measure(HFunction::concurrence(), b).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pure_measure(HFunction::tangle(), b).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pure_measure(HFunction::g_concurrence(), b).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pure_measure(HFunction::negativity(), b).value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pure_measure(HFunction::renyi(0.5), b).value == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
    // (1 - sum mu^q) / (q - 1) with mu = 1/2.
    CHECK(pure_measure(HFunction::tsallis(2.0), b).value == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("product states vanish for every h") {
    for (const Dims& d : {Dims(2, 2), Dims(2, 3), Dims(3, 3)})
      for (const HFunction& h : all_h()) CHECK(pure_measure(h, product(d)).value == 0.0);
  }

  TEST_CASE("h-function parameters") {
    CHECK_THROWS_AS(HFunction::renyi(0.0), ParameterError);
    CHECK_THROWS_AS(HFunction::renyi(1.5), ParameterError);
    CHECK_THROWS_AS(HFunction::tsallis(1.0), ParameterError);
    CHECK_THROWS_AS(HFunction::tsallis(-1.0), ParameterError);
    CHECK(HFunction::renyi(0.5).name() == "renyi:0.5");
    CHECK(HFunction::tsallis(2.0).name() == "tsallis:2");
  }

  TEST_CASE("pure measures agree with reduced-state spectra") {
    Rng rng(6);
    for (int t = 0; t < 50; ++t) {
      const Dims dims(rng.uniform_int(2, 3), rng.uniform_int(2, 3));
      const PureState psi = random_pure(dims, rng);
      const Matrix rho_a = oracle::ptrace_b(psi.amplitudes() * psi.amplitudes().adjoint(), dims.a(), dims.b());
      CHECK(pure_measure(HFunction::entropy(), psi).value == doctest::Approx(oracle::entropy(rho_a)).epsilon(1e-10));
      const double purity = (rho_a * rho_a).trace().real();
      CHECK(pure_measure(HFunction::tangle(), psi).value == doctest::Approx(2.0 * (1.0 - purity)).epsilon(1e-10));
    }
  }

  TEST_CASE("negativity and logarithmic negativity") {
    const DensityMatrix b = DensityMatrix::from_pure(bell());
    CHECK(negativity(b).value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(log_negativity(b).value == doctest::Approx(1.0).epsilon(1e-14));
    const DensityMatrix prod = DensityMatrix::from_pure(product(Dims(2, 3)));
    CHECK(std::abs(negativity(prod).value) < 1e-10);
    CHECK(std::abs(log_negativity(prod).value) < 1e-10);

    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.9, 1.0}) {
      const DensityMatrix w(oracle::werner(p), Dims(2, 2));
      const double expected = std::max(0.0, (3.0 * p - 1.0) / 4.0);
      CHECK(negativity(w).value == doctest::Approx(expected).epsilon(1e-12));
    }

    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
      const DensityMatrix rho = random_mixed(Dims(2, 3), rng.uniform_int(1, 6), rng);
      const double n = negativity(rho).value;
      CHECK(n == doctest::Approx(oracle::negativity(rho.matrix(), 2, 3)).epsilon(1e-10));
      // E_N = log2(1 + 2N)
      CHECK(log_negativity(rho).value == doctest::Approx(std::log2(1.0 + 2.0 * n)).epsilon(1e-12));
    }
  }

  TEST_CASE("separable states have zero negativity") {
    Rng rng(14);
    for (int t = 0; t < 50; ++t) {
      const DensityMatrix s = random_separable(Dims(2, 3), rng.uniform_int(1, 5), rng);
      CHECK(std::abs(negativity(s).value) < 1e-10);
    }
  }

  TEST_CASE("Wootters concurrence agrees with the eigenvalue oracle") {
    Rng rng(15);
    for (int t = 0; t < 200; ++t) {
      const DensityMatrix rho = random_mixed(Dims(2, 2), rng.uniform_int(1, 4), rng);
      const double c = wootters_concurrence(rho).value;
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      CHECK(c == doctest::Approx(oracle::wootters_concurrence(rho.matrix())).epsilon(1e-7));
      const double e = wootters_eof(rho).value;
      CHECK(e == doctest::Approx(oracle::eof_from_concurrence(c)).epsilon(1e-12));
      CHECK(e <= std::numbers::ln2 + 1e-15);
    }
  }

  TEST_CASE("Wootters on pure states matches the pure-state formula") {
    Rng rng(16);
    for (int t = 0; t < 100; ++t) {
      const PureState psi = random_pure(Dims(2, 2), rng);
      const DensityMatrix rho = DensityMatrix::from_pure(psi);
      CHECK(std::abs(wootters_eof(rho).value - pure_measure(HFunction::entropy(), psi).value) < 1e-10);
      CHECK(std::abs(wootters_concurrence(rho).value - pure_measure(HFunction::concurrence(), psi).value) < 1e-10);
    }
  }

  TEST_CASE("Werner state concurrence") {
    for (double p : {0.1, 0.4, 0.7, 0.9}) {
      const DensityMatrix w(oracle::werner(p), Dims(2, 2));
      CHECK(wootters_concurrence(w).value == doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 2.0)).epsilon(1e-10));
    }
  }

  TEST_CASE("Wootters requires two qubits") {
    Rng rng(1);
    CHECK_THROWS_AS(wootters_concurrence(random_mixed(Dims(2, 3), 2, rng)), DimensionError);
  }

  TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  }

  TEST_CASE("clip_measure") {
    CHECK(clip_measure(-5e-13) == 0.0);
    CHECK(clip_measure(-1e-6) == -1e-6);
    CHECK(clip_measure(0.25) == 0.25);
  }
}
