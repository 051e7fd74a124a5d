#pragma once

#include <map>
#include <string>

#include "entmono/state.hpp"

namespace entmono {

/// Unitarily invariant function of a reduced state that defines a pure-state
/// entanglement measure through E(|psi><psi|) = h(Tr_B |psi><psi|).
class HFunction {
 public:
  enum class Kind { Entropy, Concurrence, GConcurrence, Tangle, NegativityH, Renyi, Tsallis };

  static HFunction entropy() { return HFunction(Kind::Entropy, 0.0); }
  static HFunction concurrence() { return HFunction(Kind::Concurrence, 0.0); }
  static HFunction g_concurrence() { return HFunction(Kind::GConcurrence, 0.0); }
  static HFunction tangle() { return HFunction(Kind::Tangle, 0.0); }
  static HFunction negativity() { return HFunction(Kind::NegativityH, 0.0); }
  /// alpha in (0, 1]; alpha = 1 is the von Neumann entropy.
  static HFunction renyi(double alpha);
  /// q > 0, q != 1.
  static HFunction tsallis(double q);

  Kind kind() const { return kind_; }
  double parameter() const { return parameter_; }
  std::string name() const;

  /// Value on a spectrum mu (eigenvalues of the reduced state, clipped >= 0).
  double from_spectrum(const RealVector& mu) const;
  /// Value on Schmidt coefficients s (mu = s^2). Square-root based kinds use
  /// s directly, which keeps product states exactly at zero.
  double from_schmidt(const RealVector& s, int local_dim) const;

 private:
  HFunction(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  Kind kind_;
  double parameter_;
};

struct MeasureValue {
  double value = 0.0;
  std::string measure_id;
  std::map<std::string, double> diagnostics;
};

/// Values in [-1e-12, 0) are set to 0; anything below is returned unchanged
/// so callers can see the violation.
double clip_measure(double value);

/// h applied to the whole matrix, treated as a single system.
double h_eval(const HFunction& h, const DensityMatrix& rho_a);
double h_eval(const HFunction& h, const Matrix& rho_a);

/// E(|psi><psi|) = h(Tr_B |psi><psi|), evaluated from the Schmidt coefficients.
MeasureValue pure_measure(const HFunction& h, const PureState& psi);
/// Same, for an unnormalized-free coefficient matrix psi(a, b).
double pure_measure_value(const HFunction& h, const Matrix& coefficients);

/// (||rho^{T_A}||_1 - 1) / 2.
MeasureValue negativity(const DensityMatrix& rho);
/// log2 ||rho^{T_A}||_1 = log2(1 + 2N).
MeasureValue log_negativity(const DensityMatrix& rho);

/// Two-qubit concurrence max(0, s1 - s2 - s3 - s4).
MeasureValue wootters_concurrence(const DensityMatrix& rho);
/// Two-qubit entanglement of formation in nats.
MeasureValue wootters_eof(const DensityMatrix& rho);
/// Binary entropy in nats.
double binary_entropy(double x);

}  // namespace entmono
