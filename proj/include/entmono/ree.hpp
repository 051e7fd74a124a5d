#pragma once

#include <string>
#include <vector>

#include "entmono/locc.hpp"
#include "entmono/random.hpp"
#include "entmono/state.hpp"

namespace entmono {

struct ReeOptions {
  /// Frank-Wolfe stops once the duality-gap estimate falls below this.
  double gap_tolerance = 1e-4;
  /// Alternating eigenvector rounds per start in the linear subproblem.
  int alternating_rounds = 50;
  /// Golden-section iterations of the line search.
  int line_search_iterations = 60;
  /// Pairwise re-weighting steps within the active set after each outer step.
  int corrective_steps = 20;
};

struct ReeResult {
  double value = 0.0;
  DensityMatrix closest_separable;
  int iterations = 0;
  double duality_gap_estimate = 0.0;
  bool converged = false;
  /// Set for dims beyond 2x3. The iterate is separable by construction in all
  /// dims, but only up to 2x3 is it cross-checked against the PPT set.
  bool upper_bound_only = false;
  /// Objective after each accepted step, starting with the initial iterate.
  std::vector<double> trace;
};

/// Upper bound on min_{sigma separable} S(rho || sigma) by Frank-Wolfe over
/// convex hulls of product projectors, starting at I/d. `restarts` is the
/// number of random starts for the bilinear linear-minimization step.
ReeResult ree_minimize(const DensityMatrix& rho, int max_iters, int restarts, Rng& rng,
                       const ReeOptions& options = {});

/// Frechet derivative of sigma -> -Tr[rho ln sigma], as a Hermitian matrix G
/// with D f[Delta] = Tr[G Delta]. Eigenvalues of sigma are clipped at 1e-14.
Matrix relative_entropy_gradient(const Matrix& rho, const Matrix& sigma);

/// Product vector |a> x |b> minimizing <a b| G |a b> found by alternating
/// minimal-eigenvector updates from `starts` random initial vectors, plus one
/// start per `warm` vector (its leading Schmidt A-factor).
Vector minimize_product_expectation(const Matrix& g, const Dims& dims, int starts, int rounds, Rng& rng,
                                    const std::vector<Vector>& warm = {});

struct DataProcessingResult {
  double lhs = 0.0;  // S(rho || sigma)
  double rhs = 0.0;  // sum_i S(p_i rho_i || q_i sigma_i)
  double gap = 0.0;  // lhs - rhs
  std::vector<double> p;
  std::vector<double> q;
  double max_pq_difference = 0.0;
  bool skipped = false;
  std::string reason;
};

/// Evaluates both sides of sum_i S(p_i rho_i || q_i sigma_i) <= S(rho || sigma)
/// for the same local channel applied to rho and sigma. Outcomes are aligned by
/// Kraus index. A divergent term marks the result skipped.
DataProcessingResult ree_data_processing_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                               const LocalKrausChannel& channel);

}  // namespace entmono
