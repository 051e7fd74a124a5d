#include "entmono/roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entmono {

namespace {

constexpr double kIsometryTolerance = 1e-8;
constexpr double kZeroWeight = 1e-14;

struct EigenBasis {
  Matrix scaled_rows;  // r x D, row i = sqrt(l_i) e_i^T
  int rank;
};

EigenBasis top_eigenbasis(const DensityMatrix& rho) {
  const Spectrum spec = hermitian_eigen(rho.matrix());
  const int d = rho.dim();
  int rank = 0;
  for (int i = 0; i < d; ++i)
    if (spec.values(i) > tol::psd) ++rank;
  EigenBasis basis{Matrix(rank, d), rank};
  // Largest eigenvalue first.
  for (int i = 0; i < rank; ++i) {
    const int src = d - 1 - i;
    basis.scaled_rows.row(i) = std::sqrt(spec.values(src)) * spec.vectors.col(src).transpose();
  }
  return basis;
}

// Thin Q factor with positive R diagonal, which makes the map X -> V smooth.
Matrix orthonormalize(const Matrix& x) {
  Eigen::HouseholderQR<Matrix> qr(x);
  Matrix q = qr.householderQ() * Matrix::Identity(x.rows(), x.cols());
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

class RoofObjective {
 public:
  RoofObjective(const HFunction& h, const EigenBasis& basis, const Dims& dims)
      : h_(h), basis_(basis), da_(dims.a()), db_(dims.b()) {}

  double operator()(const Matrix& isometry) const {
    const Matrix phi = isometry * basis_.scaled_rows;  // n x D
    double total_weight = 0.0;
    double value = 0.0;
    Matrix coeffs(da_, db_);
    for (Eigen::Index j = 0; j < phi.rows(); ++j) {
      const double p = phi.row(j).squaredNorm();
      if (p < kZeroWeight) continue;
      const double scale = 1.0 / std::sqrt(p);
      for (int a = 0; a < da_; ++a)
        for (int b = 0; b < db_; ++b) coeffs(a, b) = scale * phi(j, a * db_ + b);
      total_weight += p;
      value += p * pure_measure_value(h_, coeffs);
    }
    return value / total_weight;
  }

 private:
  const HFunction& h_;
  const EigenBasis& basis_;
  int da_;
  int db_;
};

struct StageResult {
  Matrix params;
  double value;
  bool converged;
};

// Coordinate perturbation descent on the real and imaginary parts of the
// unconstrained parameter matrix. One iteration is one sweep over all
// coordinates; each coordinate keeps its own step size.
StageResult coordinate_descent(const RoofObjective& objective, Matrix params, Rng& rng,
                               const RoofOptions& options) {
  const Eigen::Index n_coords = 2 * params.size();
  std::vector<double> steps(n_coords, options.initial_step);
  auto coordinate = [&params](Eigen::Index c) -> std::pair<Eigen::Index, bool> {
    return {c / 2, c % 2 == 1};
  };
  auto perturbed = [&](Eigen::Index c, double delta) {
    Matrix trial = params;
    auto [idx, imag] = coordinate(c);
    trial(idx) += imag ? Complex(0.0, delta) : Complex(delta, 0.0);
    return trial;
  };

  double value = objective(orthonormalize(params));
  int quiet = 0;
  bool converged = false;
  for (int it = 0; it < options.iterations; ++it) {
    const double before = value;
    for (Eigen::Index c = 0; c < n_coords; ++c) {
      const double delta = steps[c] * rng.normal();
      Matrix trial = perturbed(c, delta);
      double v = objective(orthonormalize(trial));
      if (v >= value) {
        trial = perturbed(c, -delta);
        v = objective(orthonormalize(trial));
      }
      if (v < value) {
        params = std::move(trial);
        value = v;
        steps[c] = std::min(steps[c] * 1.5, 1.0);
      } else {
        steps[c] *= 0.5;
      }
    }
    const double improvement = before - value;
    if (value == 0.0 || improvement <= options.rel_tol * std::max(std::abs(before), 1e-300)) {
      ++quiet;
    } else {
      quiet = 0;
    }
    if (quiet >= options.patience || value == 0.0) {
      converged = true;
      break;
    }
    if (*std::max_element(steps.begin(), steps.end()) < 1e-13) {
      converged = true;
      break;
    }
  }
  return {std::move(params), value, converged};
}

}  // namespace

Matrix Decomposition::reconstruct() const {
  if (states.empty()) return {};
  const Eigen::Index d = states.front().amplitudes().size();
  Matrix rho = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < states.size(); ++j) {
    const Vector& v = states[j].amplitudes();
    rho += weights[j] * (v * v.adjoint());
  }
  return rho;
}

double Decomposition::average(const HFunction& h) const {
  double value = 0.0;
  for (std::size_t j = 0; j < states.size(); ++j) {
    value += weights[j] * pure_measure_value(h, states[j].coefficient_matrix());
  }
  return value;
}

int numerical_rank(const DensityMatrix& rho) {
  const RealVector mu = clipped_eigenvalues(rho.matrix());
  return static_cast<int>((mu.array() > tol::psd).count());
}

int default_roof_terms(const DensityMatrix& rho) {
  const int r = numerical_rank(rho);
  const Dims& d = rho.dims();
  if (!d.tripartite() && d.a() == 2 && d.b() == 2) return std::max(r, 4);
  return std::max(r, std::min({r * r, 2 * r, 8}));
}

Decomposition decomposition_from_isometry(const DensityMatrix& rho, const Matrix& isometry) {
  if (rho.dims().tripartite()) throw DimensionError("convex roof needs a bipartite state");
  const EigenBasis basis = top_eigenbasis(rho);
  if (isometry.cols() != basis.rank) {
    throw DimensionError("isometry has " + std::to_string(isometry.cols()) +
                         " columns but rank(rho) = " + std::to_string(basis.rank));
  }
  if (isometry.rows() < isometry.cols()) throw DimensionError("isometry needs n >= rank rows");
  const Matrix gram = isometry.adjoint() * isometry;
  if ((gram - Matrix::Identity(gram.rows(), gram.cols())).norm() > kIsometryTolerance) {
    throw ValidationError("matrix is not an isometry");
  }
  const Matrix phi = isometry * basis.scaled_rows;
  Decomposition dec;
  double total = 0.0;
  for (Eigen::Index j = 0; j < phi.rows(); ++j) {
    const double p = phi.row(j).squaredNorm();
    if (p < kZeroWeight) continue;
    total += p;
    dec.weights.push_back(p);
    dec.states.push_back(PureState::normalized(phi.row(j).transpose(), rho.dims()));
  }
  for (double& w : dec.weights) w /= total;
  return dec;
}

RoofResult roof_minimize(const HFunction& h, const DensityMatrix& rho, int n_terms, int restarts,
                         Rng& rng, const RoofOptions& options) {
  if (rho.dims().tripartite()) throw DimensionError("convex roof needs a bipartite state");
  if (restarts < 1) throw ParameterError("restarts must be >= 1");
  const EigenBasis basis = top_eigenbasis(rho);
  const int r = basis.rank;
  if (n_terms < r) {
    throw ParameterError("n_terms = " + std::to_string(n_terms) + " is below rank(rho) = " +
                         std::to_string(r));
  }
  const std::uint64_t base = rng.next_u64();

  RoofResult result;
  if (r == 1) {
    result.best = decomposition_from_isometry(rho, Matrix::Identity(1, 1));
    result.value = result.best.average(h);
    result.restarts_used = 1;
    result.converged = true;
    return result;
  }

  const RoofObjective objective(h, basis, rho.dims());
  double best_value = std::numeric_limits<double>::infinity();
  Matrix best_isometry;
  bool best_converged = false;
  for (int k = 0; k < restarts; ++k) {
    Rng stream(base + static_cast<std::uint64_t>(k));
    Matrix params = k == 0 ? Matrix(Matrix::Identity(r, r)) : random_ginibre(r, r, stream);
    StageResult stage{params, 0.0, false};
    for (int m = r; m <= n_terms; ++m) {
      if (m > r) {
        Matrix grown = Matrix::Zero(m, r);
        grown.topRows(m - 1) = stage.params;
        stage.params = std::move(grown);
      }
      stage = coordinate_descent(objective, std::move(stage.params), stream, options);
    }
    if (stage.value < best_value) {
      best_value = stage.value;
      best_isometry = orthonormalize(stage.params);
      best_converged = stage.converged;
    }
  }
  result.best = decomposition_from_isometry(rho, best_isometry);
  result.value = result.best.average(h);
  result.restarts_used = restarts;
  result.converged = best_converged;
  return result;
}

}  // namespace entmono
