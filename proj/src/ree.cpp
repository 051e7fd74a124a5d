#include "entmono/ree.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <tuple>

namespace entmono {

namespace {

constexpr double kEigenFloor = 1e-14;
constexpr double kKernelWeight = 1e-12;
constexpr int kMaxTotalDim = 16;

// -Tr[rho ln sigma], +infinity when rho has weight on the kernel of sigma.
double cross_entropy(const Matrix& rho, const Matrix& sigma) {
  const Spectrum s = hermitian_eigen(sigma);
  const Matrix r = s.vectors.adjoint() * rho * s.vectors;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < s.values.size(); ++j) {
    const double nu = s.values(j);
    const double w = r(j, j).real();
    if (nu <= kEigenFloor) {
      if (w > kKernelWeight) return std::numeric_limits<double>::infinity();
      continue;
    }
    acc -= w * std::log(nu);
  }
  return acc;
}

// Minimizes a convex function on [0, upper]; returns (argmin, min). The
// endpoint `upper` is checked separately since the optimum often sits there.
template <class F>
std::pair<double, double> golden_section(F&& f, double upper, int iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0;
  double hi = upper;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int k = 0; k < iterations; ++k) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  std::pair<double, double> best = f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
  const double at_end = f(upper);
  if (at_end < best.second) best = {upper, at_end};
  return best;
}

Vector min_eigenvector(const Matrix& m, double& value) {
  const Spectrum s = hermitian_eigen(m);
  value = s.values(0);
  return s.vectors.col(0);
}

}  // namespace

Matrix relative_entropy_gradient(const Matrix& rho, const Matrix& sigma) {
  const Spectrum s = hermitian_eigen(sigma);
  const Eigen::Index d = s.values.size();
  RealVector mu(d);
  for (Eigen::Index i = 0; i < d; ++i) mu(i) = std::max(s.values(i), kEigenFloor);
  const Matrix r = s.vectors.adjoint() * rho * s.vectors;
  Matrix weighted(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      double l;
      const double diff = mu(i) - mu(j);
      if (std::abs(diff) > 1e-10 * std::max(mu(i), mu(j))) {
        l = (std::log(mu(i)) - std::log(mu(j))) / diff;
      } else {
        l = 2.0 / (mu(i) + mu(j));
      }
      weighted(i, j) = l * r(i, j);
    }
  return -(s.vectors * weighted * s.vectors.adjoint());
}

namespace {

// Alternating minimization of <a b|G|a b> from a starting A-vector; returns
// the product vector and its expectation.
std::pair<Vector, double> alternate(const Matrix& g, int da, int db, Vector a, int rounds) {
  Vector b(db);
  double value = std::numeric_limits<double>::infinity();
  for (int round = 0; round < rounds; ++round) {
    Matrix gb = Matrix::Zero(db, db);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j) gb += std::conj(a(i)) * a(j) * g.block(i * db, j * db, db, db);
    double vb;
    b = min_eigenvector(gb, vb);
    Matrix ga(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j) ga(i, j) = b.dot(g.block(i * db, j * db, db, db) * b);
    double va;
    a = min_eigenvector(ga, va);
    const double previous = value;
    value = va;
    if (std::abs(previous - value) <= 1e-15 * std::max(1.0, std::abs(value))) break;
  }
  Vector out(da * db);
  for (int i = 0; i < da; ++i) out.segment(i * db, db) = a(i) * b;
  return {out, value};
}

}  // namespace

Vector minimize_product_expectation(const Matrix& g, const Dims& dims, int starts, int rounds, Rng& rng,
                                    const std::vector<Vector>& warm) {
  const int da = dims.a();
  const int db = dims.b();
  double best = std::numeric_limits<double>::infinity();
  Vector best_vec;
  auto consider = [&](const Vector& a) {
    auto [v, value] = alternate(g, da, db, a, rounds);
    if (value < best) {
      best = value;
      best_vec = std::move(v);
    }
  };
  for (const Vector& w : warm) {
    // Leading A-factor of the (possibly entangled) vector.
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> c(w.data(), da, db);
    Eigen::JacobiSVD<Matrix> svd(Matrix(c), Eigen::ComputeThinU);
    consider(svd.matrixU().col(0));
  }
  for (int s = 0; s < starts; ++s) consider(random_unit_vector(da, rng));
  return best_vec;
}

ReeResult ree_minimize(const DensityMatrix& rho, int max_iters, int restarts, Rng& rng,
                       const ReeOptions& options) {
  const Dims& dims = rho.dims();
  if (dims.tripartite()) throw DimensionError("relative entropy of entanglement needs a bipartite state");
  if (dims.total() > kMaxTotalDim) {
    throw DimensionError("relative entropy of entanglement supports dA*dB <= 16, got " + to_string(dims));
  }
  if (max_iters < 0) throw ParameterError("max_iters must be >= 0");
  if (restarts < 1) throw ParameterError("restarts must be >= 1");

  const int d = dims.total();
  const Matrix& r = rho.matrix();
  const double neg_entropy = -von_neumann_entropy(r);
  auto objective = [&](const Matrix& sigma) { return neg_entropy + cross_entropy(r, sigma); };

  // Active set: sigma = sum_i w_i |v_i><v_i| over product vectors. I/d is the
  // uniform mixture of the computational product basis.
  std::vector<Vector> atoms;
  std::vector<double> weights;
  for (int i = 0; i < d; ++i) {
    atoms.push_back(Vector::Unit(d, i));
    weights.push_back(1.0 / d);
  }
  auto assemble = [&]() {
    Matrix sigma = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < atoms.size(); ++i) sigma += weights[i] * (atoms[i] * atoms[i].adjoint());
    return sigma;
  };

  Matrix sigma = assemble();
  double value = objective(sigma);
  std::vector<double> trace{value};
  double gap = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;

  for (int t = 0; t < max_iters; ++t) {
    const Matrix g = relative_entropy_gradient(r, sigma);
    const double at_sigma = (g * sigma).trace().real();
    std::vector<Vector> warm = atoms;
    warm.push_back(hermitian_eigen(g).vectors.col(0));
    const Vector v = minimize_product_expectation(g, dims, restarts, options.alternating_rounds, rng, warm);
    gap = at_sigma - v.dot(g * v).real();
    if (gap < options.gap_tolerance) {
      converged = true;
      break;
    }
    // Away candidate: the active atom with the largest directional derivative.
    std::size_t away = 0;
    double away_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const double score = atoms[i].dot(g * atoms[i]).real();
      if (score > away_score) {
        away_score = score;
        away = i;
      }
    }
    const double away_gap = away_score - at_sigma;
    const bool away_possible = weights[away] < 1.0 && away_gap > 0.0;

    auto search = [&](bool away_step) {
      Matrix direction;
      double max_step;
      if (away_step) {
        direction = sigma - atoms[away] * atoms[away].adjoint();
        max_step = weights[away] / (1.0 - weights[away]);
      } else {
        direction = v * v.adjoint() - sigma;
        max_step = 1.0;
      }
      const auto [step, f] = golden_section([&](double x) { return objective(sigma + x * direction); },
                                            max_step, options.line_search_iterations);
      return std::tuple{step, f, max_step};
    };

    bool use_away = away_possible && away_gap > gap;
    auto [gamma, next, max_step] = search(use_away);
    if (!(next < value) && away_possible) {
      use_away = !use_away;
      std::tie(gamma, next, max_step) = search(use_away);
    }
    ++iterations;
    if (!(next < value)) break;

    if (use_away) {
      for (double& w : weights) w *= 1.0 + gamma;
      weights[away] -= gamma;
      if (gamma >= max_step || weights[away] <= 1e-15) {
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(away));
        weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(away));
      }
    } else {
      for (double& w : weights) w *= 1.0 - gamma;
      std::size_t match = atoms.size();
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (std::norm(atoms[i].dot(v)) > 1.0 - 1e-13) match = i;
      if (match < atoms.size()) {
        weights[match] += gamma;
      } else {
        atoms.push_back(v);
        weights.push_back(gamma);
      }
      if (gamma >= 1.0) {
        atoms = {v};
        weights = {1.0};
      }
    }
    sigma = assemble();
    value = objective(sigma);
    trace.push_back(value);

    // Corrective pairwise steps inside the active set: shift weight from the
    // worst atom to the best one. No bilinear subproblem needed.
    for (int inner = 0; inner < options.corrective_steps && atoms.size() > 1; ++inner) {
      const Matrix gi = relative_entropy_gradient(r, sigma);
      std::size_t lo = 0;
      std::size_t hi = 0;
      double lo_score = std::numeric_limits<double>::infinity();
      double hi_score = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double score = atoms[i].dot(gi * atoms[i]).real();
        if (score < lo_score) {
          lo_score = score;
          lo = i;
        }
        if (score > hi_score) {
          hi_score = score;
          hi = i;
        }
      }
      if (lo == hi || hi_score - lo_score < 0.1 * options.gap_tolerance) break;
      const Matrix direction = atoms[lo] * atoms[lo].adjoint() - atoms[hi] * atoms[hi].adjoint();
      const double cap = weights[hi];
      const auto [step, f] = golden_section([&](double x) { return objective(sigma + x * direction); }, cap,
                                            options.line_search_iterations);
      if (!(f < value)) break;
      weights[lo] += step;
      weights[hi] -= step;
      if (step >= cap || weights[hi] <= 1e-15) {
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(hi));
        weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(hi));
      }
      sigma = assemble();
      value = objective(sigma);
      trace.push_back(value);
    }
  }

  DensityMatrix closest = DensityMatrix::normalized(sigma, dims);
  const double final_value = relative_entropy(rho, closest);
  const bool beyond_ppt = dims.a() * dims.b() > 6;
  return ReeResult{final_value, std::move(closest), iterations, gap, converged, beyond_ppt, std::move(trace)};
}

DataProcessingResult ree_data_processing_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                               const LocalKrausChannel& channel) {
  if (!(rho.dims() == sigma.dims())) throw DimensionError("rho and sigma have different dims");
  DataProcessingResult res;
  res.lhs = relative_entropy(rho, sigma);
  if (std::isinf(res.lhs)) {
    res.skipped = true;
    res.reason = "S(rho||sigma) is infinite";
    return res;
  }
  for (std::size_t k = 0; k < channel.kraus().size(); ++k) {
    const Matrix op = channel.embedded(k, rho.dims());
    const Matrix a = op * rho.matrix() * op.adjoint();
    const Matrix b = op * sigma.matrix() * op.adjoint();
    const double p = a.trace().real();
    const double q = b.trace().real();
    res.p.push_back(p);
    res.q.push_back(q);
    res.max_pq_difference = std::max(res.max_pq_difference, std::abs(p - q));
    if (p < kOutcomeFloor) continue;
    if (q < kOutcomeFloor) {
      res.skipped = true;
      res.reason = "outcome " + std::to_string(k) + " has p > 0 but q = 0";
      return res;
    }
    const double s = relative_entropy(Matrix(a / p), Matrix(b / q));
    if (std::isinf(s)) {
      res.skipped = true;
      res.reason = "outcome " + std::to_string(k) + " violates support inclusion";
      return res;
    }
    res.rhs += p * s + p * std::log(p / q);
  }
  res.gap = res.lhs - res.rhs;
  return res;
}

}  // namespace entmono
