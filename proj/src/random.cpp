#include "entmono/random.hpp"

#include <cmath>
#include <numbers>

namespace entmono {

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw ParameterError("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix random_ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

Matrix random_unitary(int d, Rng& rng) {
  if (d < 1) throw ParameterError("unitary dimension must be >= 1");
  Eigen::HouseholderQR<Matrix> qr(random_ginibre(d, d, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Vector random_unit_vector(int d, Rng& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

PureState random_pure(const Dims& dims, Rng& rng) {
  return PureState::normalized(random_unit_vector(dims.total(), rng), dims);
}

DensityMatrix random_mixed(const Dims& dims, int rank, Rng& rng) {
  if (rank < 1 || rank > dims.total()) {
    throw ParameterError("rank must be in [1, " + std::to_string(dims.total()) + "]");
  }
  const Matrix g = random_ginibre(dims.total(), rank, rng);
  return DensityMatrix::normalized(g * g.adjoint(), dims);
}

DensityMatrix random_separable(const Dims& dims, int n_terms, Rng& rng) {
  if (n_terms < 1) throw ParameterError("n_terms must be >= 1");
  std::vector<double> weights(n_terms);
  double total = 0.0;
  for (auto& w : weights) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    w = -std::log(u);
    total += w;
  }
  const int d = dims.total();
  Matrix rho = Matrix::Zero(d, d);
  for (int k = 0; k < n_terms; ++k) {
    Vector v = Vector::Ones(1);
    for (int f : dims.factors()) {
      const Vector local = random_unit_vector(f, rng);
      Vector next(v.size() * f);
      for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * f, f) = v(i) * local;
      v = std::move(next);
    }
    rho += (weights[k] / total) * (v * v.adjoint());
  }
  return DensityMatrix::normalized(rho, dims);
}

}  // namespace entmono
