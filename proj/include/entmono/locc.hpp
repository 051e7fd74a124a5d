#pragma once

#include <string>
#include <vector>

#include "entmono/random.hpp"
#include "entmono/state.hpp"

namespace entmono {

/// Kraus family {M_k} acting on one side of a bipartite state, i.e. the maps
/// X -> (I x M_k) X (I x M_k)^dagger for side B. Completeness
/// ||sum M_k^dagger M_k - I||_F <= 1e-8 is checked on construction.
class LocalKrausChannel {
 public:
  LocalKrausChannel(Side side, std::vector<Matrix> kraus);

  Side side() const { return side_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  int local_dim() const { return static_cast<int>(kraus_.front().rows()); }
  /// ||sum M_k^dagger M_k - I||_F
  double completeness_residual() const;

  /// Full operator acting on a state with the given dims.
  Matrix embedded(std::size_t k, const Dims& dims) const;

 private:
  Side side_;
  std::vector<Matrix> kraus_;
};

struct Outcome {
  double probability;
  DensityMatrix state;
  int kraus_index;
};

/// Outcomes with probability below kOutcomeFloor are dropped and the rest
/// renormalized.
struct OutcomeEnsemble {
  std::vector<Outcome> outcomes;

  double total_probability() const;
  /// sum_k p_k sigma_k
  Matrix average() const;
};

inline constexpr double kOutcomeFloor = 1e-12;

struct ChannelClass {
  enum class Tag { LocalUnitary, MixtureOfLocalUnitaries, General };
  Tag tag = Tag::General;
  /// c_k with M_k^dagger M_k = c_k I, when the channel is a unitary mixture.
  std::vector<double> weights;
};

std::string to_string(ChannelClass::Tag tag);
ChannelClass::Tag channel_tag_from_string(const std::string& s);

OutcomeEnsemble apply(const LocalKrausChannel& channel, const DensityMatrix& rho);

ChannelClass classify(const LocalKrausChannel& channel);

/// Kraus operators are the d x d blocks of the first d columns of a Haar
/// unitary of size n_kraus * d.
LocalKrausChannel random_channel(int d, int n_kraus, Rng& rng, Side side = Side::B);

/// M_k = sqrt(w_k) U_k.
LocalKrausChannel unitary_mixture_channel(const std::vector<double>& weights,
                                          const std::vector<Matrix>& unitaries,
                                          Side side = Side::B);

/// Projective measurement in the computational basis of a d-dimensional side.
LocalKrausChannel computational_measurement(int d, Side side = Side::B);

bool is_unitary(const Matrix& u, double tolerance = 1e-10);

}  // namespace entmono
