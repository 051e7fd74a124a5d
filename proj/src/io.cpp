#include "entmono/io.hpp"

#include <cmath>
#include <fstream>

namespace entmono {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> complex_list(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump() << '\n';
}

}  // namespace

json to_json(const Dims& dims) {
  json j = json::array({dims.a(), dims.b()});
  if (dims.c()) j.push_back(*dims.c());
  return j;
}

json to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(complex_to_json(m(i, k)));
  return entries;
}

json to_json(const PureState& psi) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i)
    entries.push_back(complex_to_json(psi.amplitudes()(i)));
  return {{"dims", to_json(psi.dims())}, {"vector", std::move(entries)}};
}

json to_json(const DensityMatrix& rho) {
  return {{"dims", to_json(rho.dims())}, {"matrix", to_json(rho.matrix())}};
}

json to_json(const LocalKrausChannel& channel) {
  json kraus = json::array();
  for (const Matrix& m : channel.kraus()) kraus.push_back(to_json(m));
  return {{"side", to_string(channel.side())}, {"kraus", std::move(kraus)}};
}

Dims dims_from_json(const json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3) throw ParseError("dims must be [dA, dB] or [dA, dB, dC]");
  std::vector<int> d;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ParseError("dims entries must be integers");
    d.push_back(e.get<int>());
  }
  try {
    return d.size() == 2 ? Dims(d[0], d[1]) : Dims(d[0], d[1], d[2]);
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
}

Matrix square_matrix_from_json(const json& j) {
  const std::vector<Complex> entries = complex_list(j, "matrix");
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
  if (n * n != static_cast<Eigen::Index>(entries.size()) || n == 0) {
    throw ParseError("matrix entry count is not a nonzero perfect square");
  }
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = entries[i * n + k];
  return m;
}

State state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims")) throw ParseError("state document needs a \"dims\" field");
  const Dims dims = dims_from_json(j.at("dims"));
  const bool has_matrix = j.contains("matrix");
  const bool has_vector = j.contains("vector");
  if (has_matrix == has_vector) throw ParseError("state document needs exactly one of \"matrix\" or \"vector\"");
  if (has_vector) {
    const std::vector<Complex> entries = complex_list(j.at("vector"), "vector");
    Vector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
    return PureState(std::move(v), dims);
  }
  return DensityMatrix(square_matrix_from_json(j.at("matrix")), dims);
}

LocalKrausChannel channel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("side") || !j.contains("kraus")) {
    throw ParseError("channel document needs \"side\" and \"kraus\" fields");
  }
  const json& side_j = j.at("side");
  if (!side_j.is_string()) throw ParseError("side must be \"A\" or \"B\"");
  const std::string side = side_j.get<std::string>();
  if (side != "A" && side != "B") throw ParseError("side must be \"A\" or \"B\"");
  if (!j.at("kraus").is_array()) throw ParseError("kraus must be an array of matrices");
  std::vector<Matrix> kraus;
  for (const auto& m : j.at("kraus")) kraus.push_back(square_matrix_from_json(m));
  return LocalKrausChannel(side == "A" ? Side::A : Side::B, std::move(kraus));
}

State load_state(const std::string& path) { return state_from_json(parse_file(path)); }

void save_state(const std::string& path, const State& state) {
  std::visit([&](const auto& s) { write_file(path, to_json(s)); }, state);
}

LocalKrausChannel load_channel(const std::string& path) { return channel_from_json(parse_file(path)); }

void save_channel(const std::string& path, const LocalKrausChannel& channel) {
  write_file(path, to_json(channel));
}

DensityMatrix to_density(const State& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return DensityMatrix::from_pure(*psi);
  return std::get<DensityMatrix>(state);
}

}  // namespace entmono
