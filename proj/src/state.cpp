#include "entmono/state.hpp"

#include <cmath>
#include <limits>

namespace entmono {

namespace {

// Eigenvalues of sigma at or below this are treated as exact zeros when
// deciding support inclusion.
constexpr double kKernelEigenvalue = 1e-14;
// Weight of rho on the kernel of sigma above which S(rho||sigma) diverges.
constexpr double kKernelWeight = 1e-12;

int product(const std::vector<int>& v) {
  int p = 1;
  for (int x : v) p *= x;
  return p;
}

}  // namespace

std::string to_string(Side side) {
  switch (side) {
    case Side::A:
      return "A";
    case Side::B:
      return "B";
    case Side::C:
      return "C";
  }
  return "?";
}

Dims::Dims(int a, int b) : a_(a), b_(b) {
  if (a < 1 || b < 1) throw ParameterError("dimensions must be >= 1");
}

Dims::Dims(int a, int b, int c) : a_(a), b_(b), c_(c) {
  if (a < 1 || b < 1 || c < 1) throw ParameterError("dimensions must be >= 1");
}

int Dims::of(Side side) const {
  switch (side) {
    case Side::A:
      return a_;
    case Side::B:
      return b_;
    case Side::C:
      if (!c_) throw DimensionError("state has no subsystem C");
      return *c_;
  }
  return 0;
}

std::vector<int> Dims::factors() const {
  if (c_) return {a_, b_, *c_};
  return {a_, b_};
}

std::string to_string(const Dims& dims) {
  std::string s = std::to_string(dims.a()) + "x" + std::to_string(dims.b());
  if (dims.c()) s += "x" + std::to_string(*dims.c());
  return s;
}

PureState::PureState(Vector amplitudes, Dims dims)
    : amplitudes_(std::move(amplitudes)), dims_(dims) {
  if (amplitudes_.size() != dims_.total()) {
    throw DimensionError("amplitude vector length " + std::to_string(amplitudes_.size()) +
                         " does not match dims " + to_string(dims_));
  }
  if (std::abs(amplitudes_.norm() - 1.0) > tol::norm) {
    throw ValidationError("pure state is not normalized");
  }
}

PureState PureState::normalized(Vector amplitudes, Dims dims) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw ValidationError("cannot normalize a zero vector");
  amplitudes /= n;
  return PureState(std::move(amplitudes), dims);
}

Matrix PureState::coefficient_matrix() const {
  const int rows = dims_.a();
  const int cols = dims_.total() / rows;
  Matrix psi(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) psi(i, j) = amplitudes_(i * cols + j);
  return psi;
}

DensityMatrix::DensityMatrix(Matrix matrix, Dims dims) : matrix_(std::move(matrix)), dims_(dims) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != dims_.total()) {
    throw DimensionError("matrix of size " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + " does not match dims " +
                         to_string(dims_));
  }
  if ((matrix_ - matrix_.adjoint()).norm() > tol::herm) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > tol::trace) {
    throw ValidationError("density matrix trace is not 1");
  }
  // Throws on eigenvalues below -tol::psd.
  clipped_eigenvalues(matrix_);
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint(), psi.dims());
}

DensityMatrix DensityMatrix::normalized(const Matrix& matrix, Dims dims) {
  Matrix h = 0.5 * (matrix + matrix.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw ValidationError("cannot normalize an operator with nonpositive trace");
  h /= tr;
  return DensityMatrix(std::move(h), dims);
}

Spectrum hermitian_eigen(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector clipped_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
  RealVector mu = solver.eigenvalues();
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu(i) < -tol::psd) throw ValidationError("operator is not positive semidefinite");
    if (mu(i) < 0.0) mu(i) = 0.0;
  }
  return mu;
}

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

Matrix trace_out_factor(const Matrix& m, const std::vector<int>& factors, int traced) {
  if (traced < 0 || traced >= static_cast<int>(factors.size())) {
    throw DimensionError("factor index out of range");
  }
  if (m.rows() != product(factors) || m.cols() != m.rows()) {
    throw DimensionError("matrix size inconsistent with factor dimensions");
  }
  // View the index as (outer, traced, inner).
  int outer = 1;
  for (int i = 0; i < traced; ++i) outer *= factors[i];
  int inner = 1;
  for (int i = traced + 1; i < static_cast<int>(factors.size()); ++i) inner *= factors[i];
  const int dt = factors[traced];
  const int d_out = outer * inner;

  Matrix out = Matrix::Zero(d_out, d_out);
  for (int o1 = 0; o1 < outer; ++o1)
    for (int i1 = 0; i1 < inner; ++i1)
      for (int o2 = 0; o2 < outer; ++o2)
        for (int i2 = 0; i2 < inner; ++i2) {
          Complex acc = 0.0;
          for (int t = 0; t < dt; ++t)
            acc += m((o1 * dt + t) * inner + i1, (o2 * dt + t) * inner + i2);
          out(o1 * inner + i1, o2 * inner + i2) = acc;
        }
  return out;
}

namespace {

int factor_index(const Dims& dims, Side side) {
  switch (side) {
    case Side::A:
      return 0;
    case Side::B:
      return 1;
    case Side::C:
      if (!dims.tripartite()) throw DimensionError("state has no subsystem C");
      return 2;
  }
  return -1;
}

}  // namespace

DensityMatrix trace_out(const DensityMatrix& rho, Side traced) {
  const Dims& dims = rho.dims();
  const std::vector<int> factors = dims.factors();
  const int idx = factor_index(dims, traced);
  Matrix reduced = trace_out_factor(rho.matrix(), factors, idx);
  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(factors.size()); ++i)
    if (i != idx) kept.push_back(factors[i]);
  const Dims out_dims = kept.size() == 2 ? Dims(kept[0], kept[1]) : Dims(kept[0], 1);
  return DensityMatrix::normalized(reduced, out_dims);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Side keep) {
  const Dims& dims = rho.dims();
  const std::vector<int> factors = dims.factors();
  const int keep_idx = factor_index(dims, keep);
  Matrix m = rho.matrix();
  std::vector<int> current = factors;
  // Trace out from the last factor backwards so indices stay valid.
  for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
    if (i == keep_idx) continue;
    m = trace_out_factor(m, current, i);
    current.erase(current.begin() + i);
  }
  return DensityMatrix::normalized(m, Dims(factors[keep_idx], 1));
}

Matrix partial_transpose(const Matrix& m, const Dims& dims, Side side) {
  if (dims.tripartite()) throw DimensionError("partial transpose needs a bipartite state");
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("matrix size inconsistent with dims " + to_string(dims));
  }
  if (side == Side::C) throw DimensionError("state has no subsystem C");
  const int da = dims.a();
  const int db = dims.b();
  Matrix out(m.rows(), m.cols());
  for (int a1 = 0; a1 < da; ++a1)
    for (int b1 = 0; b1 < db; ++b1)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) {
          const Complex v = m(a1 * db + b1, a2 * db + b2);
          if (side == Side::A)
            out(a2 * db + b1, a1 * db + b2) = v;
          else
            out(a1 * db + b2, a2 * db + b1) = v;
        }
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho, Side side) {
  return partial_transpose(rho.matrix(), rho.dims(), side);
}

SchmidtForm schmidt_decompose(const PureState& psi) {
  if (psi.dims().tripartite()) throw DimensionError("Schmidt decomposition needs a bipartite state");
  Eigen::JacobiSVD<Matrix> svd(psi.coefficient_matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtForm form;
  form.coefficients = svd.singularValues();
  form.left_vectors = svd.matrixU();
  // psi(a, b) = sum_i s_i U(a, i) conj(V(b, i)), so |i_b> = conj(V(:, i)).
  form.right_vectors = svd.matrixV().conjugate();
  return form;
}

double trace_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double von_neumann_entropy(const Matrix& rho) {
  const RealVector mu = clipped_eigenvalues(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (mu(i) > 0.0) s -= mu(i) * std::log(mu(i));
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double relative_entropy(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("relative entropy of operators with different sizes");
  }
  const double neg_entropy = -von_neumann_entropy(rho);
  const Spectrum sig = hermitian_eigen(sigma);
  const Matrix rho_in_sigma_basis = sig.vectors.adjoint() * rho * sig.vectors;
  double cross = 0.0;
  for (Eigen::Index j = 0; j < sig.values.size(); ++j) {
    const double nu = sig.values(j);
    const double weight = rho_in_sigma_basis(j, j).real();
    if (nu < -tol::psd) throw ValidationError("operator is not positive semidefinite");
    if (nu <= kKernelEigenvalue) {
      if (weight > kKernelWeight) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross -= weight * std::log(nu);
  }
  return std::max(0.0, neg_entropy + cross);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.dims() == sigma.dims())) throw DimensionError("relative entropy of states with different dims");
  return relative_entropy(rho.matrix(), sigma.matrix());
}

double frobenius_distance(const Matrix& x, const Matrix& y) { return (x - y).norm(); }

}  // namespace entmono
