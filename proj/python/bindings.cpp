#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entmono/io.hpp"
#include "entmono/ree.hpp"
#include "entmono/roof.hpp"
#include "entmono/verifier.hpp"

namespace py = pybind11;
using namespace entmono;

namespace {

Dims make_dims(const std::vector<int>& d) {
  if (d.size() == 2) return Dims(d[0], d[1]);
  if (d.size() == 3) return Dims(d[0], d[1], d[2]);
  throw ParameterError("dims must have two or three entries");
}

DensityMatrix make_rho(const Matrix& m, const std::vector<int>& d) { return DensityMatrix(m, make_dims(d)); }

Side make_side(const std::string& s) {
  if (s == "A") return Side::A;
  if (s == "B") return Side::B;
  if (s == "C") return Side::C;
  throw ParameterError("side must be 'A', 'B' or 'C'");
}

HFunction make_h(const std::string& name) {
  if (name == "entropy") return HFunction::entropy();
  if (name == "concurrence") return HFunction::concurrence();
  if (name == "g-concurrence") return HFunction::g_concurrence();
  if (name == "tangle") return HFunction::tangle();
  if (name == "negativity") return HFunction::negativity();
  if (name.rfind("renyi:", 0) == 0) return HFunction::renyi(std::stod(name.substr(6)));
  if (name.rfind("tsallis:", 0) == 0) return HFunction::tsallis(std::stod(name.substr(8)));
  throw ParameterError("unknown h-function '" + name + "'");
}

py::dict report_dict(const VerificationReport& r) {
  return py::module_::import("json").attr("loads")(to_json_line(r));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entanglement measures, local Kraus channels and monotonicity checks";

  // Later registrations are tried first, so the base goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);

  m.def("partial_trace", [](const Matrix& rho, const std::vector<int>& dims, const std::string& keep) {
    return Matrix(partial_trace(make_rho(rho, dims), make_side(keep)).matrix());
  }, py::arg("rho"), py::arg("dims"), py::arg("keep") = "A");
  m.def("partial_transpose", [](const Matrix& rho, const std::vector<int>& dims, const std::string& side) {
    return partial_transpose(rho, make_dims(dims), make_side(side));
  }, py::arg("rho"), py::arg("dims"), py::arg("side") = "A");
  m.def("von_neumann_entropy", [](const Matrix& rho) { return von_neumann_entropy(rho); });
  m.def("relative_entropy", [](const Matrix& rho, const Matrix& sigma) { return relative_entropy(rho, sigma); });
  m.def("schmidt_coefficients", [](const Vector& psi, const std::vector<int>& dims) {
    return RealVector(schmidt_decompose(PureState(psi, make_dims(dims))).coefficients);
  });

  m.def("negativity", [](const Matrix& rho, const std::vector<int>& dims) {
    return negativity(make_rho(rho, dims)).value;
  });
  m.def("log_negativity", [](const Matrix& rho, const std::vector<int>& dims) {
    return log_negativity(make_rho(rho, dims)).value;
  });
  m.def("wootters_concurrence", [](const Matrix& rho) { return wootters_concurrence(make_rho(rho, {2, 2})).value; });
  m.def("wootters_eof", [](const Matrix& rho) { return wootters_eof(make_rho(rho, {2, 2})).value; });
  m.def("pure_measure", [](const std::string& h, const Vector& psi, const std::vector<int>& dims) {
    return pure_measure(make_h(h), PureState(psi, make_dims(dims))).value;
  }, py::arg("h"), py::arg("psi"), py::arg("dims"));
  m.def("h_value", [](const std::string& h, const Matrix& rho_a) { return h_eval(make_h(h), rho_a); });

  m.def("measure", [](const std::string& id, const Matrix& rho, const std::vector<int>& dims, bool optimize,
                      std::uint64_t seed) -> py::object {
    Rng rng(seed);
    EvalOptions opts;
    opts.optimize = optimize;
    const auto e = Measure::parse(id).evaluate(make_rho(rho, dims), rng, opts);
    if (!e) return py::none();
    return py::float_(e->value);
  }, py::arg("measure_id"), py::arg("rho"), py::arg("dims"), py::arg("optimize") = true, py::arg("seed") = 0);

  m.def("roof", [](const std::string& h, const Matrix& rho, const std::vector<int>& dims, int n_terms, int restarts,
                   std::uint64_t seed) {
    Rng rng(seed);
    const DensityMatrix state = make_rho(rho, dims);
    const RoofResult r = roof_minimize(make_h(h), state, n_terms > 0 ? n_terms : default_roof_terms(state), restarts, rng);
    std::vector<Vector> states;
    for (const auto& s : r.best.states) states.push_back(s.amplitudes());
    py::dict out;
    out["value"] = r.value;
    out["weights"] = r.best.weights;
    out["states"] = states;
    out["converged"] = r.converged;
    return out;
  }, py::arg("h"), py::arg("rho"), py::arg("dims"), py::arg("n_terms") = 0, py::arg("restarts") = 8,
     py::arg("seed") = 0);

  m.def("ree", [](const Matrix& rho, const std::vector<int>& dims, int max_iters, int restarts, std::uint64_t seed) {
    Rng rng(seed);
    const ReeResult r = ree_minimize(make_rho(rho, dims), max_iters, restarts, rng);
    py::dict out;
    out["value"] = r.value;
    out["closest_separable"] = Matrix(r.closest_separable.matrix());
    out["iterations"] = r.iterations;
    out["duality_gap_estimate"] = r.duality_gap_estimate;
    out["converged"] = r.converged;
    out["upper_bound_only"] = r.upper_bound_only;
    return out;
  }, py::arg("rho"), py::arg("dims"), py::arg("max_iters") = 2000, py::arg("restarts") = 8, py::arg("seed") = 0);

  m.def("random_pure", [](const std::vector<int>& dims, std::uint64_t seed) {
    Rng rng(seed);
    return Vector(random_pure(make_dims(dims), rng).amplitudes());
  }, py::arg("dims"), py::arg("seed") = 0);
  m.def("random_mixed", [](const std::vector<int>& dims, int rank, std::uint64_t seed) {
    Rng rng(seed);
    return Matrix(random_mixed(make_dims(dims), rank, rng).matrix());
  }, py::arg("dims"), py::arg("rank"), py::arg("seed") = 0);
  m.def("random_separable", [](const std::vector<int>& dims, int n_terms, std::uint64_t seed) {
    Rng rng(seed);
    return Matrix(random_separable(make_dims(dims), n_terms, rng).matrix());
  }, py::arg("dims"), py::arg("n_terms"), py::arg("seed") = 0);
  m.def("random_channel", [](int d, int n_kraus, std::uint64_t seed) {
    Rng rng(seed);
    return random_channel(d, n_kraus, rng).kraus();
  }, py::arg("d"), py::arg("n_kraus"), py::arg("seed") = 0);

  m.def("apply_channel", [](const std::vector<Matrix>& kraus, const std::string& side, const Matrix& rho,
                            const std::vector<int>& dims) {
    const OutcomeEnsemble ens = apply(LocalKrausChannel(make_side(side), kraus), make_rho(rho, dims));
    std::vector<std::pair<double, Matrix>> out;
    for (const auto& o : ens.outcomes) out.emplace_back(o.probability, o.state.matrix());
    return out;
  }, py::arg("kraus"), py::arg("side"), py::arg("rho"), py::arg("dims"));
  m.def("classify_channel", [](const std::vector<Matrix>& kraus, const std::string& side) {
    return to_string(classify(LocalKrausChannel(make_side(side), kraus)).tag);
  }, py::arg("kraus"), py::arg("side") = "B");

  m.def("check_monotone", [](const std::string& id, const Matrix& rho, const std::vector<int>& dims,
                             const std::vector<Matrix>& kraus, const std::string& side, bool optimize,
                             std::uint64_t seed) {
    Rng rng(seed);
    EvalOptions opts;
    opts.optimize = optimize;
    return report_dict(check_monotone(Measure::parse(id), make_rho(rho, dims),
                                      LocalKrausChannel(make_side(side), kraus), rng, opts));
  }, py::arg("measure_id"), py::arg("rho"), py::arg("dims"), py::arg("kraus"), py::arg("side") = "B",
     py::arg("optimize") = false, py::arg("seed") = 0);
  m.def("check_negativity_decomposition", [](const Matrix& rho, const std::vector<int>& dims) {
    return report_dict(check_negativity_decomposition(make_rho(rho, dims)));
  });

  m.def("run_sweep_jsonl", [](const std::vector<std::string>& checks, const std::vector<std::string>& measures,
                              const std::vector<std::pair<int, int>>& dims, int trials, int n_kraus, std::uint64_t seed,
                              const std::string& base, bool optimize, int states_per_channel) {
    SweepConfig c = SweepConfig::defaults();
    if (!checks.empty()) c.checks = checks;
    if (!measures.empty()) c.measures = measures;
    if (!dims.empty()) c.dims = dims;
    c.trials = trials;
    c.n_kraus = n_kraus;
    c.seed = seed;
    c.base = base_from_string(base);
    c.optimize = optimize;
    c.states_per_channel = states_per_channel;
    std::vector<std::string> lines;
    {
      py::gil_scoped_release release;
      for (const auto& r : run_sweep(c)) lines.push_back(to_json_line(r));
    }
    return lines;
  });
}
