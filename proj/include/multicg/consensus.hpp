#ifndef MULTICG_CONSENSUS_HPP_
#define MULTICG_CONSENSUS_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <ostream>
#include <vector>

#include "multicg/matrix.hpp"

namespace multicg {

using MatrixList = std::vector<Eigen::MatrixXd>;

struct SolverConfig {
  double alpha = 0.25;
  double tol = 1e-8;        // relative objective change
  std::size_t max_iter = 1000;
  double ridge = 0.0;       // added to O^T O in the M-step
  bool normalize_views = false;

  // Throws std::invalid_argument unless alpha > 0, tol > 0, max_iter >= 1
  // and ridge >= 0.
  void validate() const;
};

/// Consensus learning over m views: minimizes
///
///   f(O, M) = sum_i ||E_i - O M_i||_F^2 + alpha ||O||_F^2
///
/// by alternating exact minimization. With O fixed each M_i solves the
/// normal equations O^T O M_i = O^T E_i; with M fixed O solves
/// O (M M^T + alpha I) = E M^T for the concatenations E = [E_1 .. E_m],
/// M = [M_1 .. M_m]. O starts at the identity.
///
/// The penalty only constrains the scale of O, so f has infimum 0 and no
/// minimizer whenever the views are nonzero: successive sweeps shrink O
/// (roughly as 1/sqrt(iteration)) and grow M. The objective still decreases
/// monotonically, but slowly, and runs typically stop at max_iter.

/// sum_i ||E_i - O M_i||_F^2 + alpha ||O||_F^2, evaluated directly.
double objective(const Eigen::MatrixXd& O, const MatrixList& M,
                 const MatrixList& E, double alpha);

struct MStepResult {
  MatrixList M;
  bool used_min_norm = false;  // O^T O + ridge I was singular
};

/// Solves (O^T O + ridge I) M_i = O^T E_i for every view. When that system
/// is singular, falls back to the minimum-norm least-squares solution
/// pinv(O) E_i.
MStepResult update_M(const Eigen::MatrixXd& O, const MatrixList& E,
                     double ridge = 0.0);

/// O = (sum_i E_i M_i^T) (sum_i M_i M_i^T + alpha I)^{-1}. alpha > 0.
Eigen::MatrixXd update_O(const MatrixList& M, const MatrixList& E,
                         double alpha);

struct ConsensusResult {
  Eigen::MatrixXd O;
  MatrixList M;
  // objective_trace[0] is f(I, M_0) with M_0 the M-step solution for O = I;
  // entry k is f after sweep k.
  std::vector<double> objective_trace;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t min_norm_fallbacks = 0;
};

/// Hooks called after every M-step and O-step, e.g. to audit stationarity.
struct SolveObserver {
  std::function<void(std::size_t iter, const Eigen::MatrixXd& O,
                     const MatrixList& M)>
      after_m_step;
  std::function<void(std::size_t iter, const Eigen::MatrixXd& O,
                     const MatrixList& M)>
      after_o_step;
};

/// Runs the sweeps until |f_k - f_{k-1}| / max(1, f_{k-1}) < tol or
/// max_iter sweeps. Throws NumericalError on a non-finite objective.
ConsensusResult solve_multicg(const GraphSet& views, const SolverConfig& cfg,
                              const SolveObserver* observer = nullptr);

/// Same solver on raw matrices.
ConsensusResult solve_multicg(const MatrixList& views, const SolverConfig& cfg,
                              const SolveObserver* observer = nullptr);

/// O wrapped with the views' entity order.
CorrelationMatrix consensus_matrix(const GraphSet& views,
                                   const ConsensusResult& result,
                                   std::string indicator = {});

/// (1/m) sum_i w_i E_i. Weights must be non-negative and not all zero.
CorrelationMatrix simple_average(const GraphSet& views,
                                 const std::vector<double>& weights);
CorrelationMatrix simple_average(const GraphSet& views);  // w_i = 1

/// JSON document with the config, trace, O and every M_i.
void write_result_json(const GraphSet& views, const ConsensusResult& result,
                       const SolverConfig& cfg, std::ostream& out);

}  // namespace multicg

#endif  // MULTICG_CONSENSUS_HPP_
