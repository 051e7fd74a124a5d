#include <doctest.h>

#include <numbers>

#include "entmono/verifier.hpp"
#include "oracles.hpp"

using namespace entmono;

namespace {

DensityMatrix bell_rho() { return DensityMatrix(oracle::bell_matrix(), Dims(2, 2)); }

DensityMatrix single(const Matrix& m) { return DensityMatrix(m, Dims(static_cast<int>(m.rows()), 1)); }

Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_SUITE("verifier") {
  TEST_CASE("measure ids") {
    CHECK(Measure::parse("eof").kind() == Measure::Kind::Eof);
    CHECK(Measure::parse("renyi:0.5").id() == "renyi:0.5");
    CHECK(Measure::parse("tsallis:2").h().name() == "tsallis:2");
    CHECK_THROWS_AS(Measure::parse("entropy-of-nothing"), ParameterError);
    CHECK_THROWS_AS(Measure::parse("renyi:abc"), ParameterError);
    CHECK_THROWS_AS(Measure::parse("renyi:2"), ParameterError);
    CHECK(Measure::parse("eof").log_based());
    CHECK_FALSE(Measure::parse("negativity").log_based());
  }

  TEST_CASE("measure evaluation routes") {
    Rng rng(71);
    const DensityMatrix b = bell_rho();
    for (const char* id : {"eof", "ree", "renyi:0.5"})
      CHECK(Measure::parse(id).evaluate(b, rng)->value == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
    CHECK(Measure::parse("log-negativity").evaluate(b, rng)->value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(Measure::parse("negativity-roof").evaluate(b, rng)->value == doctest::Approx(0.5).epsilon(1e-12));

    const DensityMatrix mixed = random_mixed(Dims(2, 3), 3, rng);
    CHECK_FALSE(Measure::parse("eof").evaluate(mixed, rng).has_value());
    CHECK(Measure::parse("eof").method_for(mixed) == Method::Roof);
    CHECK(Measure::parse("ree").method_for(mixed) == Method::Ree);
    CHECK(Measure::parse("negativity").evaluate(mixed, rng).has_value());
    const auto roof = Measure::parse("tangle").evaluate(mixed, rng, EvalOptions{.optimize = true, .roof_restarts = 2});
    REQUIRE(roof.has_value());
    CHECK(roof->method == Method::Roof);
    CHECK_THROWS_AS(Measure::parse("ree").evaluate(random_mixed(Dims(3, 6), 2, rng), rng), DimensionError);
    CHECK_THROWS_AS(Measure::parse("negativity").evaluate(random_mixed(Dims(2, 2, 2), 2, rng), rng), DimensionError);
  }

  TEST_CASE("monotone: projective measurement of the Bell state") {
    Rng rng(72);
    const VerificationReport r = check_monotone(Measure::parse("negativity"), bell_rho(), computational_measurement(2), rng);
    CHECK(r.lhs == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(r.rhs) < 1e-14);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.channel_class == ChannelClass::Tag::General);
    CHECK(r.tolerance == 1e-9);
  }

  TEST_CASE("monotone: unitary mixtures leave every measure unchanged") {
    Rng rng(73);
    for (const char* id : {"negativity", "log-negativity", "eof", "concurrence"}) {
      const DensityMatrix rho = random_mixed(Dims(2, 2), 3, rng);
      const LocalKrausChannel ch =
          unitary_mixture_channel({0.4, 0.6}, {random_unitary(2, rng), random_unitary(2, rng)}, Side::A);
      const VerificationReport r = check_monotone(Measure::parse(id), rho, ch, rng);
      CHECK(std::abs(r.gap) < 1e-9);
      CHECK(r.verdict == Verdict::Pass);
    }
  }

  TEST_CASE("monotone: Werner state under a random channel") {
    Rng rng(74);
    const DensityMatrix w(oracle::werner(0.9), Dims(2, 2));
    for (int t = 0; t < 20; ++t) {
      const VerificationReport r = check_monotone(Measure::parse("eof"), w, random_channel(2, 3, rng), rng);
      CHECK(r.gap >= -1e-9);
    }
  }

  TEST_CASE("monotone: optimizer measures are skipped unless enabled") {
    Rng rng(75);
    const DensityMatrix rho = random_mixed(Dims(2, 3), 3, rng);
    const VerificationReport r = check_monotone(Measure::parse("eof"), rho, random_channel(3, 2, rng), rng);
    CHECK(r.verdict == Verdict::Skipped);
    CHECK(r.metadata.at("rule") == "skip");
  }

  TEST_CASE("strict: general channel on pure states") {
    Rng rng(76);
    const LocalKrausChannel ch = random_channel(2, 2, rng);
    const StateSampler sampler = [](Rng& r) { return DensityMatrix::from_pure(random_pure(Dims(2, 2), r)); };
    const VerificationReport r = check_strict(Measure::parse("negativity"), sampler, ch, 100, rng);
    CHECK(r.check_id == "strict");
    CHECK(r.gap > kStrictFloor);
    CHECK(r.verdict == Verdict::Pass);
  }

  TEST_CASE("strict: unitary mixture on mixed states") {
    Rng rng(77);
    const LocalKrausChannel ch = unitary_mixture_channel({0.5, 0.5}, {random_unitary(2, rng), random_unitary(2, rng)});
    const StateSampler sampler = [](Rng& r) { return random_mixed(Dims(2, 2), 3, r); };
    const VerificationReport r = check_strict(Measure::parse("negativity"), sampler, ch, 50, rng);
    CHECK(r.check_id == "strict-mixture");
    CHECK(std::abs(r.gap) < 1e-9);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.metadata.at("converse") == "supported");
  }

  TEST_CASE("strict: product inputs are uninformative") {
    Rng rng(78);
    const LocalKrausChannel ch = random_channel(2, 2, rng);
    const StateSampler sampler = [](Rng& r) {
      const Vector a = random_unit_vector(2, r);
      const Vector b = random_unit_vector(2, r);
      return DensityMatrix::from_pure(PureState::normalized(oracle::kron(Matrix(a), Matrix(b)).col(0), Dims(2, 2)));
    };
    const VerificationReport r = check_strict(Measure::parse("eof"), sampler, ch, 20, rng);
    CHECK(std::abs(r.gap) < 1e-12);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.metadata.count("note") == 1);
  }

  TEST_CASE("concavity: classical mixing") {
    const VerificationReport r =
        check_strict_concavity(HFunction::entropy(), single(diag({1.0, 0.0})), single(diag({0.0, 1.0})), 0.5);
    CHECK(r.gap == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
    CHECK(r.verdict == Verdict::Pass);
  }

  TEST_CASE("concavity: tangle identity") {
    Rng rng(79);
    for (int t = 0; t < 50; ++t) {
      const DensityMatrix a = random_mixed(Dims(3, 1), rng.uniform_int(1, 3), rng);
      const DensityMatrix b = random_mixed(Dims(3, 1), rng.uniform_int(1, 3), rng);
      const double lambda = rng.uniform();
      const VerificationReport r = check_strict_concavity(HFunction::tangle(), a, b, lambda);
      const double dist = (a.matrix() - b.matrix()).norm();
      CHECK(std::abs(r.gap - 2.0 * lambda * (1.0 - lambda) * dist * dist) < 1e-10);
    }
  }

  TEST_CASE("concavity: equal states and skipped zone") {
    Rng rng(80);
    const DensityMatrix a = random_mixed(Dims(2, 1), 2, rng);
    const VerificationReport same = check_strict_concavity(HFunction::negativity(), a, a, 0.3);
    CHECK(std::abs(same.gap) <= 1e-10);
    CHECK(same.verdict == Verdict::Pass);

    const VerificationReport rank_deficient =
        check_strict_concavity(HFunction::g_concurrence(), single(diag({1.0, 0.0})), single(diag({0.5, 0.5})), 0.5);
    CHECK(rank_deficient.verdict == Verdict::Skipped);
    CHECK_THROWS_AS(check_strict_concavity(HFunction::entropy(), a, a, 1.0), ParameterError);
  }

  TEST_CASE("reduced-state condition on the Bell state") {
    const PureState b(oracle::bell_vector(), Dims(2, 2));
    const VerificationReport e = check_reduced_state_condition(HFunction::entropy(), b, computational_measurement(2));
    CHECK(std::abs(e.gap - std::numbers::ln2) < 1e-10);
    CHECK(e.verdict == Verdict::Pass);
    const VerificationReport n = check_reduced_state_condition(HFunction::negativity(), b, computational_measurement(2));
    CHECK(std::abs(n.gap - 0.5) < 1e-10);
  }

  TEST_CASE("reduced-state condition: unitary mixtures and product inputs") {
    Rng rng(81);
    const PureState psi = random_pure(Dims(2, 3), rng);
    const LocalKrausChannel mix = unitary_mixture_channel({0.2, 0.8}, {random_unitary(3, rng), random_unitary(3, rng)});
    const VerificationReport r = check_reduced_state_condition(HFunction::concurrence(), psi, mix);
    CHECK(std::abs(r.gap) < 1e-8);
    CHECK(r.verdict == Verdict::Pass);

    Vector v = Vector::Zero(6);
    v(4) = 1.0;
    const VerificationReport p =
        check_reduced_state_condition(HFunction::entropy(), PureState(v, Dims(2, 3)), random_channel(3, 3, rng));
    CHECK(p.verdict == Verdict::Pass);
    CHECK(p.metadata.count("note") == 1);

    CHECK_THROWS_AS(check_reduced_state_condition(HFunction::entropy(), psi, random_channel(2, 2, rng, Side::A)),
                    ParameterError);
  }

  TEST_CASE("monogamy product structure") {
    const PureState b(oracle::bell_vector(), Dims(2, 2));
    const VerificationReport r = check_monogamy_product(b, b, HFunction::entropy());
    CHECK(r.lhs == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
    CHECK(std::abs(r.gap) < 1e-9);
    CHECK(r.metadata.at("subchecks") == "pass");
    CHECK(r.verdict == Verdict::Pass);

    Vector z = Vector::Zero(4);
    z(0) = 1.0;
    const PureState prod(z, Dims(2, 2));
    const VerificationReport q = check_monogamy_product(prod, prod, HFunction::tangle());
    CHECK(q.lhs == 0.0);
    CHECK(q.verdict == Verdict::Pass);

    Rng rng(82);
    const VerificationReport arb = check_monogamy_product(b, random_pure(Dims(3, 2), rng), HFunction::negativity());
    CHECK(std::stod(arb.metadata.at("ac_negativity")) < 1e-9);
    CHECK(arb.verdict == Verdict::Pass);

    CHECK_THROWS_AS(check_monogamy_product(random_pure(Dims(4, 4), rng), random_pure(Dims(4, 4), rng), HFunction::entropy()),
                    DimensionError);
  }

  TEST_CASE("negativity decomposition") {
    const VerificationReport b = check_negativity_decomposition(bell_rho());
    CHECK(b.lhs == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::stod(b.metadata.at("orthogonality_plus_minus")) < 1e-12);
    CHECK(b.verdict == Verdict::Pass);

    const VerificationReport w = check_negativity_decomposition(DensityMatrix(oracle::werner(0.9), Dims(2, 2)));
    CHECK(std::abs(w.lhs - 0.425) < 1e-10);
    CHECK(w.verdict == Verdict::Pass);

    Rng rng(83);
    CHECK(check_negativity_decomposition(random_separable(Dims(2, 2), 3, rng)).verdict == Verdict::Skipped);
  }

  TEST_CASE("logarithmic negativity is not convex") {
    Rng rng(84);
    const VerificationReport r = check_logneg_nonconvexity(rng);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.gap > 1e-6);
    CHECK(r.metadata.at("control_violations") == "0");
    CHECK(r.metadata.count("witness_rho1") == 1);
  }

  TEST_CASE("relative entropy data processing") {
    Rng rng(85);
    const VerificationReport r = check_ree_data_processing(random_mixed(Dims(2, 2), 4, rng), random_mixed(Dims(2, 2), 4, rng),
                                                           random_channel(2, 3, rng));
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.gap >= -1e-9);
  }

  TEST_CASE("verdict recomputation") {
    VerificationReport r;
    r.lhs = 1.0;
    r.rhs = 1.0 + 1e-10;
    r.gap = r.lhs - r.rhs;
    r.tolerance = 1e-9;
    r.metadata["rule"] = "gap>=-tol";
    CHECK(recompute_verdict(r) == Verdict::Pass);
    r.tolerance = 0.0;
    CHECK(recompute_verdict(r) == Verdict::Fail);
    r.metadata["rule"] = "|gap|<tol&subchecks";
    r.tolerance = 1e-9;
    r.metadata["subchecks"] = "fail";
    CHECK(recompute_verdict(r) == Verdict::Fail);
    r.metadata["subchecks"] = "pass";
    CHECK(recompute_verdict(r) == Verdict::Pass);
    r.metadata["rule"] = "mystery";
    CHECK_THROWS_AS(recompute_verdict(r), ParameterError);
  }

  TEST_CASE("sweep configuration") {
    SweepConfig c = SweepConfig::defaults();
    CHECK_NOTHROW(c.validate());
    c.tolerances["monotone"] = -1.0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c.tolerances["monotone"] = std::nan("");
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c.tolerances.clear();
    c.checks = {"not-a-check"};
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = SweepConfig::defaults();
    c.measures = {"bogus"};
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = SweepConfig::defaults();
    c.trials = -1;
    CHECK_THROWS_AS(c.validate(), ParameterError);
  }

  TEST_CASE("sweep with zero trials is empty") {
    SweepConfig c = SweepConfig::defaults();
    c.trials = 0;
    CHECK(run_sweep(c).empty());
  }

  TEST_CASE("property: every sweep verdict is recomputable and gap = lhs - rhs") {
    SweepConfig c = SweepConfig::defaults();
    c.trials = 3;
    c.states_per_channel = 10;
    c.measures = {"negativity", "log-negativity", "eof", "concurrence", "tangle", "g-concurrence", "tsallis:2", "renyi:0.5"};
    const auto reports = run_sweep(c);
    CHECK_FALSE(reports.empty());
    for (const auto& r : reports) {
      CHECK(recompute_verdict(r) == r.verdict);
      if (r.verdict != Verdict::Skipped) CHECK(std::abs(r.gap - (r.lhs - r.rhs)) <= 1e-12);
      CHECK(r.verdict != Verdict::Fail);
    }
  }

  TEST_CASE("sweep determinism and JSON round trip") {
    SweepConfig c = SweepConfig::defaults();
    c.trials = 2;
    c.states_per_channel = 5;
    c.seed = 7;
    const auto a = run_sweep(c);
    const auto b = run_sweep(c);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(to_json_line(a[i]) == to_json_line(b[i]));
      const VerificationReport back = report_from_json_line(to_json_line(a[i]));
      CHECK(to_json_line(back) == to_json_line(a[i]));
    }
    c.seed = 8;
    const auto other = run_sweep(c);
    CHECK(to_json_line(other[0]) != to_json_line(a[0]));
  }

  TEST_CASE("tolerance overrides and base conversion") {
    SweepConfig c = SweepConfig::defaults();
    c.checks = {"monotone"};
    c.measures = {"eof"};
    c.dims = {{2, 2}};
    c.trials = 5;
    const auto nats = run_sweep(c);
    c.base = Base::Bits;
    const auto bits = run_sweep(c);
    for (std::size_t i = 0; i < nats.size(); ++i) {
      CHECK(bits[i].lhs == doctest::Approx(nats[i].lhs / std::numbers::ln2).epsilon(1e-14));
      CHECK(bits[i].metadata.at("units") == "bits");
      CHECK(bits[i].verdict == nats[i].verdict);
    }
    c.base = Base::Nats;
    c.tolerances["monotone"] = 0.5;
    for (const auto& r : run_sweep(c)) CHECK(r.tolerance == 0.5);
  }

  TEST_CASE("summary rows") {
    std::vector<VerificationReport> reports(3);
    for (int i = 0; i < 3; ++i) {
      reports[i].check_id = "monotone";
      reports[i].measure_id = "negativity";
      reports[i].gap = i;
      reports[i].verdict = i == 2 ? Verdict::Fail : Verdict::Pass;
    }
    const auto rows = summarize(reports);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].trials == 3);
    CHECK(rows[0].passes == 2);
    CHECK(rows[0].failures == 1);
    CHECK(rows[0].min_gap == 0.0);
    CHECK(rows[0].mean_gap == 1.0);
    CHECK(rows[0].max_gap == 2.0);
    const std::string csv = summary_csv(rows);
    CHECK(csv.rfind("check_id,measure_id,trials,passes,min_gap,mean_gap,max_gap\n", 0) == 0);
  }
}
