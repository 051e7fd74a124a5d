#include "entmono/locc.hpp"

#include <cmath>

namespace entmono {

namespace {

constexpr double kCompletenessTolerance = 1e-8;
constexpr double kProportionalityTolerance = 1e-8;
// Kraus operators with Tr(M^dagger M) below this carry no weight.
constexpr double kNullKraus = 1e-12;

}  // namespace

LocalKrausChannel::LocalKrausChannel(Side side, std::vector<Matrix> kraus)
    : side_(side), kraus_(std::move(kraus)) {
  if (side_ == Side::C) throw ParameterError("local channels act on side A or B");
  if (kraus_.empty()) throw ParameterError("channel needs at least one Kraus operator");
  const Eigen::Index d = kraus_.front().rows();
  for (const Matrix& m : kraus_) {
    if (m.rows() != d || m.cols() != d) throw DimensionError("Kraus operators must be square and equal-sized");
  }
  if (completeness_residual() > kCompletenessTolerance) {
    throw ValidationError("Kraus operators violate completeness");
  }
}

double LocalKrausChannel::completeness_residual() const {
  const int d = local_dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& m : kraus_) sum += m.adjoint() * m;
  return (sum - Matrix::Identity(d, d)).norm();
}

Matrix LocalKrausChannel::embedded(std::size_t k, const Dims& dims) const {
  if (dims.tripartite()) throw DimensionError("local channels act on bipartite states");
  const int d = local_dim();
  if (dims.of(side_) != d) {
    throw DimensionError("channel dimension " + std::to_string(d) + " does not match side " +
                         to_string(side_) + " of " + to_string(dims));
  }
  if (side_ == Side::B) return kron(Matrix::Identity(dims.a(), dims.a()), kraus_.at(k));
  return kron(kraus_.at(k), Matrix::Identity(dims.b(), dims.b()));
}

double OutcomeEnsemble::total_probability() const {
  double total = 0.0;
  for (const auto& o : outcomes) total += o.probability;
  return total;
}

Matrix OutcomeEnsemble::average() const {
  if (outcomes.empty()) return {};
  const int d = outcomes.front().state.dim();
  Matrix avg = Matrix::Zero(d, d);
  for (const auto& o : outcomes) avg += o.probability * o.state.matrix();
  return avg;
}

std::string to_string(ChannelClass::Tag tag) {
  switch (tag) {
    case ChannelClass::Tag::LocalUnitary:
      return "LocalUnitary";
    case ChannelClass::Tag::MixtureOfLocalUnitaries:
      return "MixtureOfLocalUnitaries";
    case ChannelClass::Tag::General:
      return "General";
  }
  return "?";
}

ChannelClass::Tag channel_tag_from_string(const std::string& s) {
  if (s == "LocalUnitary") return ChannelClass::Tag::LocalUnitary;
  if (s == "MixtureOfLocalUnitaries") return ChannelClass::Tag::MixtureOfLocalUnitaries;
  if (s == "General") return ChannelClass::Tag::General;
  throw ParameterError("unknown channel class: " + s);
}

OutcomeEnsemble apply(const LocalKrausChannel& channel, const DensityMatrix& rho) {
  if (channel.completeness_residual() > kCompletenessTolerance) {
    throw ValidationError("Kraus operators violate completeness");
  }
  struct Raw {
    double p;
    Matrix m;
    int index;
  };
  std::vector<Raw> raw;
  double kept = 0.0;
  for (std::size_t k = 0; k < channel.kraus().size(); ++k) {
    const Matrix op = channel.embedded(k, rho.dims());
    Matrix out = op * rho.matrix() * op.adjoint();
    const double p = out.trace().real();
    if (p < kOutcomeFloor) continue;
    kept += p;
    raw.push_back({p, std::move(out), static_cast<int>(k)});
  }
  OutcomeEnsemble ensemble;
  for (auto& r : raw) {
    ensemble.outcomes.push_back({r.p / kept, DensityMatrix::normalized(r.m, rho.dims()), r.index});
  }
  return ensemble;
}

ChannelClass classify(const LocalKrausChannel& channel) {
  const int d = channel.local_dim();
  const Matrix id = Matrix::Identity(d, d);
  ChannelClass result;
  std::vector<Matrix> unitaries;
  for (const Matrix& m : channel.kraus()) {
    const Matrix mm = m.adjoint() * m;
    const double c = mm.trace().real() / d;
    if (c * d < kNullKraus) continue;
    if ((mm - c * id).norm() > kProportionalityTolerance) {
      return ChannelClass{ChannelClass::Tag::General, {}};
    }
    result.weights.push_back(c);
    unitaries.push_back(m / std::sqrt(c));
  }
  bool all_proportional = true;
  for (std::size_t k = 1; k < unitaries.size() && all_proportional; ++k) {
    const Complex phase = (unitaries[0].adjoint() * unitaries[k]).trace() / static_cast<double>(d);
    all_proportional = (unitaries[k] - phase * unitaries[0]).norm() <= kProportionalityTolerance;
  }
  result.tag = all_proportional ? ChannelClass::Tag::LocalUnitary
                                : ChannelClass::Tag::MixtureOfLocalUnitaries;
  return result;
}

LocalKrausChannel random_channel(int d, int n_kraus, Rng& rng, Side side) {
  if (n_kraus < 1) throw ParameterError("n_kraus must be >= 1");
  if (d < 1) throw ParameterError("channel dimension must be >= 1");
  const Matrix u = random_unitary(n_kraus * d, rng);
  std::vector<Matrix> kraus;
  kraus.reserve(n_kraus);
  for (int k = 0; k < n_kraus; ++k) kraus.push_back(u.block(k * d, 0, d, d));
  return LocalKrausChannel(side, std::move(kraus));
}

bool is_unitary(const Matrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() <= tolerance;
}

LocalKrausChannel unitary_mixture_channel(const std::vector<double>& weights,
                                          const std::vector<Matrix>& unitaries, Side side) {
  if (weights.size() != unitaries.size() || weights.empty()) {
    throw ParameterError("need one weight per unitary");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ParameterError("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw ParameterError("weights must sum to 1");
  std::vector<Matrix> kraus;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!is_unitary(unitaries[k])) throw ValidationError("mixture component is not unitary");
    kraus.push_back(std::sqrt(weights[k]) * unitaries[k]);
  }
  return LocalKrausChannel(side, std::move(kraus));
}

LocalKrausChannel computational_measurement(int d, Side side) {
  std::vector<Matrix> kraus;
  for (int k = 0; k < d; ++k) {
    Matrix p = Matrix::Zero(d, d);
    p(k, k) = 1.0;
    kraus.push_back(std::move(p));
  }
  return LocalKrausChannel(side, std::move(kraus));
}

}  // namespace entmono
