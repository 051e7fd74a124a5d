#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "entmono/locc.hpp"
#include "entmono/state.hpp"

namespace entmono {

/// State files:
///   {"dims": [dA, dB(, dC)], "matrix": [[re, im], ...]}  row-major density matrix
///   {"dims": [dA, dB(, dC)], "vector": [[re, im], ...]}  pure state
/// Channel files:
///   {"side": "A"|"B", "kraus": [[[re, im], ...], ...]}   each Kraus op row-major
/// Doubles are written with round-trip precision.
using State = std::variant<PureState, DensityMatrix>;

class ParseError : public Error {
 public:
  using Error::Error;
};

nlohmann::json to_json(const Dims& dims);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const LocalKrausChannel& channel);

Dims dims_from_json(const nlohmann::json& j);
/// Row-major complex entries of an n x n matrix.
Matrix square_matrix_from_json(const nlohmann::json& j);
/// Throws ParseError for malformed documents; invariant violations of a
/// well-formed document surface as ValidationError / DimensionError.
State state_from_json(const nlohmann::json& j);
LocalKrausChannel channel_from_json(const nlohmann::json& j);

State load_state(const std::string& path);
void save_state(const std::string& path, const State& state);
LocalKrausChannel load_channel(const std::string& path);
void save_channel(const std::string& path, const LocalKrausChannel& channel);

DensityMatrix to_density(const State& state);

}  // namespace entmono
