#pragma once

#include <vector>

#include "entmono/measures.hpp"
#include "entmono/random.hpp"
#include "entmono/state.hpp"

namespace entmono {

/// Pure-state ensemble {p_j, |psi_j>} of a density matrix.
struct Decomposition {
  std::vector<double> weights;
  std::vector<PureState> states;

  Matrix reconstruct() const;
  /// sum_j p_j E(|psi_j>)
  double average(const HFunction& h) const;
};

struct RoofResult {
  double value = 0.0;
  Decomposition best;
  int restarts_used = 0;
  bool converged = false;
};

struct RoofOptions {
  /// Coordinate sweeps per restart and per term count.
  int iterations = 500;
  /// Sweeps with relative improvement below rel_tol before declaring
  /// convergence.
  int patience = 50;
  double rel_tol = 1e-9;
  double initial_step = 0.25;
};

/// Number of eigenvalues above tol::psd.
int numerical_rank(const DensityMatrix& rho);

/// min(rank^2, 2 rank) capped at 8 (4 for two qubits), never below rank.
int default_roof_terms(const DensityMatrix& rho);

/// Maps an n x r isometry V to the ensemble |phi_j> = sum_i V_ji sqrt(l_i)|e_i>
/// over the top-r eigenpairs of rho. Zero-weight terms are dropped.
Decomposition decomposition_from_isometry(const DensityMatrix& rho, const Matrix& isometry);

/// Upper bound on the convex roof of h at rho: the best ensemble found by
/// derivative-free local search over isometries. Restart k draws from a
/// stream seeded with base + k, where base is taken from rng. Each restart
/// first optimizes rank(rho)-term ensembles and then grows one term at a time
/// up to n_terms, warm-started from the previous optimum, so the result never
/// increases with n_terms or restarts.
RoofResult roof_minimize(const HFunction& h, const DensityMatrix& rho, int n_terms, int restarts,
                         Rng& rng, const RoofOptions& options = {});

}  // namespace entmono
