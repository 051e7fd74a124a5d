#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entmono {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

namespace tol {
inline constexpr double norm = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double herm = 1e-10;
inline constexpr double psd = 1e-9;
}  // namespace tol

enum class Side { A, B, C };

std::string to_string(Side side);

/// Local dimensions of a bipartite (A, B) or tripartite (A, B, C) system.
/// Basis index ordering is row-major Kronecker with A as the slowest factor:
/// index(a, b, c) = (a * dB + b) * dC + c.
class Dims {
 public:
  Dims(int a, int b);
  Dims(int a, int b, int c);

  int a() const { return a_; }
  int b() const { return b_; }
  std::optional<int> c() const { return c_; }
  bool tripartite() const { return c_.has_value(); }
  int total() const { return a_ * b_ * c_.value_or(1); }
  int of(Side side) const;
  std::vector<int> factors() const;

  bool operator==(const Dims&) const = default;

 private:
  int a_;
  int b_;
  std::optional<int> c_;
};

std::string to_string(const Dims& dims);

class PureState {
 public:
  /// Throws ValidationError unless the vector has unit norm within tol::norm.
  PureState(Vector amplitudes, Dims dims);

  /// Rescales to unit norm; throws on a zero vector.
  static PureState normalized(Vector amplitudes, Dims dims);

  const Vector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }

  /// Amplitudes reshaped to a dA x (dB*dC) coefficient matrix.
  Matrix coefficient_matrix() const;

 private:
  Vector amplitudes_;
  Dims dims_;
};

/// Hermitian, positive semidefinite, unit-trace operator. Invariants are
/// checked on construction; the stored matrix is kept bit-identical to the
/// input.
class DensityMatrix {
 public:
  DensityMatrix(Matrix matrix, Dims dims);

  static DensityMatrix from_pure(const PureState& psi);

  /// Hermitizes and divides by the trace before validating. Used for states
  /// produced by arithmetic that is exact only up to roundoff.
  static DensityMatrix normalized(const Matrix& matrix, Dims dims);

  const Matrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
  Dims dims_;
};

struct SchmidtForm {
  RealVector coefficients;  // nonincreasing
  Matrix left_vectors;      // columns |i_a>
  Matrix right_vectors;     // columns |i_b>
};

struct Spectrum {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

/// Eigendecomposition of the Hermitian part of m.
Spectrum hermitian_eigen(const Matrix& m);

/// Eigenvalues with entries in [-tol::psd, 0) set to zero. Throws
/// ValidationError for anything more negative.
RealVector clipped_eigenvalues(const Matrix& m);

Matrix kron(const Matrix& x, const Matrix& y);

/// Traces out one factor of a state whose factors have the given dimensions.
Matrix trace_out_factor(const Matrix& m, const std::vector<int>& factors, int traced);

/// Reduced state of a single subsystem. The result carries dims (d, 1).
DensityMatrix partial_trace(const DensityMatrix& rho, Side keep);

/// Removes one factor. A bipartite input yields dims (d_kept, 1); a
/// tripartite input yields the remaining two factors in their original order.
DensityMatrix trace_out(const DensityMatrix& rho, Side traced);

/// Transposes the block indices of one factor of a bipartite operator.
/// Entries are permuted, never recomputed, so applying it twice is exact.
Matrix partial_transpose(const Matrix& m, const Dims& dims, Side side);
Matrix partial_transpose(const DensityMatrix& rho, Side side = Side::A);

SchmidtForm schmidt_decompose(const PureState& psi);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Matrix& m);

/// -sum mu ln mu in nats.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const Matrix& rho);

/// Tr[rho (ln rho - ln sigma)] in nats. Returns +infinity when the support
/// of rho is not contained in the support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double relative_entropy(const Matrix& rho, const Matrix& sigma);

double frobenius_distance(const Matrix& x, const Matrix& y);

}  // namespace entmono
