#include "entmono/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace entmono {

namespace {

std::string format_parameter(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

void require_two_qubits(const DensityMatrix& rho) {
  const Dims& d = rho.dims();
  if (d.tripartite() || d.a() != 2 || d.b() != 2) {
    throw DimensionError("Wootters formula needs a 2x2 state, got " + to_string(d));
  }
}

}  // namespace

HFunction HFunction::renyi(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("Renyi alpha must lie in (0, 1]");
  return HFunction(Kind::Renyi, alpha);
}

HFunction HFunction::tsallis(double q) {
  if (!(q > 0.0) || q == 1.0) throw ParameterError("Tsallis q must be > 0 and != 1");
  return HFunction(Kind::Tsallis, q);
}

std::string HFunction::name() const {
  switch (kind_) {
    case Kind::Entropy:
      return "entropy";
    case Kind::Concurrence:
      return "concurrence";
    case Kind::GConcurrence:
      return "g-concurrence";
    case Kind::Tangle:
      return "tangle";
    case Kind::NegativityH:
      return "negativity";
    case Kind::Renyi:
      return "renyi:" + format_parameter(parameter_);
    case Kind::Tsallis:
      return "tsallis:" + format_parameter(parameter_);
  }
  return "?";
}

double HFunction::from_spectrum(const RealVector& mu) const {
  RealVector s(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) s(i) = std::sqrt(std::max(0.0, mu(i)));
  return from_schmidt(s, static_cast<int>(mu.size()));
}

double HFunction::from_schmidt(const RealVector& s, int local_dim) const {
  double purity = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) purity += s(i) * s(i) * s(i) * s(i);
  double value = 0.0;
  switch (kind_) {
    case Kind::Entropy:
      for (Eigen::Index i = 0; i < s.size(); ++i) {
        const double mu = s(i) * s(i);
        if (mu > 0.0) value -= mu * std::log(mu);
      }
      break;
    case Kind::Concurrence:
      value = std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
      break;
    case Kind::Tangle:
      value = 2.0 * (1.0 - purity);
      break;
    case Kind::GConcurrence: {
      // The product runs over all local_dim eigenvalues; missing Schmidt
      // coefficients are zeros.
      if (local_dim <= 1 || s.size() < local_dim) return 0.0;
      double log_det = 0.0;
      for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (!(s(i) > 0.0)) return 0.0;
        log_det += 2.0 * std::log(s(i));
      }
      value = local_dim * std::exp(log_det / local_dim);
      break;
    }
    case Kind::NegativityH: {
      const double sum = s.sum();
      value = 0.5 * (sum * sum - 1.0);
      break;
    }
    case Kind::Renyi: {
      if (parameter_ == 1.0) return HFunction::entropy().from_schmidt(s, local_dim);
      double acc = 0.0;
      for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 0.0) acc += std::pow(s(i), 2.0 * parameter_);
      value = std::log(acc) / (1.0 - parameter_);
      break;
    }
    case Kind::Tsallis: {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 0.0) acc += std::pow(s(i), 2.0 * parameter_);
      value = (1.0 - acc) / (parameter_ - 1.0);
      break;
    }
  }
  return clip_measure(value);
}

double clip_measure(double value) { return (value < 0.0 && value >= -1e-12) ? 0.0 : value; }

double h_eval(const HFunction& h, const Matrix& rho_a) {
  return h.from_spectrum(clipped_eigenvalues(rho_a));
}

double h_eval(const HFunction& h, const DensityMatrix& rho_a) { return h_eval(h, rho_a.matrix()); }

double pure_measure_value(const HFunction& h, const Matrix& coefficients) {
  const int local_dim = static_cast<int>(coefficients.rows());
  if (coefficients.rows() == 2 && coefficients.cols() == 2) {
    // Closed-form singular values of a 2x2 matrix; the small one is taken
    // from |det| / s_max to keep full relative precision.
    const double frob2 = coefficients.squaredNorm();
    const double det = std::abs(coefficients(0, 0) * coefficients(1, 1) -
                                coefficients(0, 1) * coefficients(1, 0));
    const double disc = std::sqrt(std::max(0.0, frob2 * frob2 - 4.0 * det * det));
    const double s_max = std::sqrt(0.5 * (frob2 + disc));
    RealVector s(2);
    s << s_max, (s_max > 0.0 ? det / s_max : 0.0);
    return h.from_schmidt(s, local_dim);
  }
  Eigen::JacobiSVD<Matrix> svd(coefficients);
  return h.from_schmidt(svd.singularValues(), local_dim);
}

MeasureValue pure_measure(const HFunction& h, const PureState& psi) {
  if (psi.dims().tripartite()) throw DimensionError("pure_measure needs a bipartite state");
  return {pure_measure_value(h, psi.coefficient_matrix()), h.name(), {}};
}

MeasureValue negativity(const DensityMatrix& rho) {
  const double tn = trace_norm(partial_transpose(rho, Side::A));
  return {std::max(0.0, clip_measure(0.5 * (tn - 1.0))), "negativity", {{"trace_norm", tn}}};
}

MeasureValue log_negativity(const DensityMatrix& rho) {
  const double tn = trace_norm(partial_transpose(rho, Side::A));
  return {std::max(0.0, clip_measure(std::log2(tn))), "log-negativity", {{"trace_norm", tn}}};
}

MeasureValue wootters_concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho);
  // rho = W W^dagger with W = V sqrt(Lambda). The s_i are the singular values
  // of W^T (sigma_y x sigma_y) W, equivalently sqrt(eig(rho rho~)); this form
  // keeps near-zero s_i at O(eigenvalue) instead of O(sqrt(eigenvalue)).
  const Spectrum spec = hermitian_eigen(rho.matrix());
  Matrix w = spec.vectors;
  for (int i = 0; i < 4; ++i) {
    double mu = spec.values(i);
    if (mu < -tol::psd) throw ValidationError("operator is not positive semidefinite");
    w.col(i) *= std::sqrt(std::max(0.0, mu));
  }
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix tau = w.transpose() * yy * w;
  Eigen::JacobiSVD<Matrix> svd(tau);
  const RealVector s = svd.singularValues();  // descending
  const double c = std::max(0.0, s(0) - s(1) - s(2) - s(3));
  return {std::min(1.0, c), "concurrence", {}};
}

double binary_entropy(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log1p(-x);
  return h;
}

MeasureValue wootters_eof(const DensityMatrix& rho) {
  const double c = wootters_concurrence(rho).value;
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  return {clip_measure(binary_entropy(x)), "eof", {{"concurrence", c}}};
}

}  // namespace entmono
