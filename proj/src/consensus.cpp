#include "multicg/consensus.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "multicg/error.hpp"

namespace multicg {

namespace {

void check_conforming(const Eigen::MatrixXd& O, const MatrixList& E) {
  for (const auto& e : E) {
    if (e.rows() != O.rows() || e.cols() != O.cols()) {
      throw std::invalid_argument("view dimensions do not match O");
    }
  }
}

// Per-view z-score over all entries; constant views are only centred.
MatrixList normalized(const MatrixList& E) {
  MatrixList out;
  out.reserve(E.size());
  for (const auto& e : E) {
    const double mu = e.mean();
    Eigen::MatrixXd c = e.array() - mu;
    const double var = c.squaredNorm() / static_cast<double>(c.size());
    if (var > 0.0) c /= std::sqrt(var);
    out.push_back(std::move(c));
  }
  return out;
}

nlohmann::ordered_json to_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(ridge >= 0.0)) throw std::invalid_argument("ridge must be >= 0");
}

double objective(const Eigen::MatrixXd& O, const MatrixList& M,
                 const MatrixList& E, double alpha) {
  if (M.size() != E.size()) {
    throw std::invalid_argument("objective: view count mismatch");
  }
  check_conforming(O, E);
  check_conforming(O, M);
  double f = 0.0;
  for (std::size_t i = 0; i < E.size(); ++i) {
    f += (E[i] - O * M[i]).squaredNorm();
  }
  return f + alpha * O.squaredNorm();
}

MStepResult update_M(const Eigen::MatrixXd& O, const MatrixList& E,
                     double ridge) {
  check_conforming(O, E);
  const auto n = O.cols();
  MStepResult out;
  out.M.reserve(E.size());
  Eigen::MatrixXd gram = O.transpose() * O;
  gram.diagonal().array() += ridge;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  const bool usable = llt.info() == Eigen::Success &&
                      llt.rcond() > std::numeric_limits<double>::epsilon();
  if (usable) {
    // One solve shared by every view: M_i = (O^T O + ridge I)^{-1} O^T E_i.
    const Eigen::MatrixXd X = llt.solve(O.transpose());
    for (const auto& e : E) out.M.push_back(X * e);
    return out;
  }
  out.used_min_norm = true;
  if (ridge > 0.0) {
    // Positive ridge keeps gram definite in exact arithmetic; only
    // catastrophic scaling lands here.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
    for (const auto& e : E) out.M.push_back(cod.solve(O.transpose() * e));
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(O);
  for (const auto& e : E) {
    out.M.push_back(O.isZero(0.0) ? Eigen::MatrixXd::Zero(n, e.cols())
                                  : Eigen::MatrixXd(cod.solve(e)));
  }
  return out;
}

Eigen::MatrixXd update_O(const MatrixList& M, const MatrixList& E,
                         double alpha) {
  if (M.size() != E.size() || M.empty()) {
    throw std::invalid_argument("update_O: view count mismatch");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("update_O: alpha <= 0");
  const auto n = E.front().rows();
  // Concatenated form: E = [E_1 .. E_m], M = [M_1 .. M_m].
  const auto width = static_cast<Eigen::Index>(M.size()) * n;
  Eigen::MatrixXd Mc(n, width), Ec(n, width);
  for (std::size_t i = 0; i < M.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i) * n;
    Mc.middleCols(col, n) = M[i];
    Ec.middleCols(col, n) = E[i];
  }
  Eigen::MatrixXd system = alpha * Eigen::MatrixXd::Identity(n, n);
  system.noalias() += Mc * Mc.transpose();
  Eigen::MatrixXd rhs(n, n);
  rhs.noalias() = Ec * Mc.transpose();
  // O * system = rhs with system symmetric positive definite.
  Eigen::LLT<Eigen::MatrixXd> llt(system);
  return llt.solve(rhs.transpose()).transpose();
}

ConsensusResult solve_multicg(const MatrixList& views, const SolverConfig& cfg,
                              const SolveObserver* observer) {
  cfg.validate();
  if (views.empty()) throw std::invalid_argument("no views to solve");
  const MatrixList E = cfg.normalize_views ? normalized(views) : views;
  const auto n = E.front().rows();
  for (const auto& e : E) {
    if (e.rows() != n || e.cols() != n) {
      throw std::invalid_argument("views must be square and equal-sized");
    }
  }

  ConsensusResult result;
  result.O = Eigen::MatrixXd::Identity(n, n);
  auto step = update_M(result.O, E, cfg.ridge);
  result.objective_trace.push_back(objective(result.O, step.M, E, cfg.alpha));

  for (std::size_t iter = 1; iter <= cfg.max_iter; ++iter) {
    if (iter > 1) step = update_M(result.O, E, cfg.ridge);
    if (step.used_min_norm) ++result.min_norm_fallbacks;
    result.M = std::move(step.M);
    if (observer && observer->after_m_step) {
      observer->after_m_step(iter, result.O, result.M);
    }
    result.O = update_O(result.M, E, cfg.alpha);
    if (observer && observer->after_o_step) {
      observer->after_o_step(iter, result.O, result.M);
    }

    const double f = objective(result.O, result.M, E, cfg.alpha);
    if (!std::isfinite(f)) {
      throw NumericalError("non-finite objective at iteration " +
                           std::to_string(iter));
    }
    const double prev = result.objective_trace.back();
    result.objective_trace.push_back(f);
    result.iterations = iter;
    if (std::abs(f - prev) / std::max(1.0, prev) < cfg.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

ConsensusResult solve_multicg(const GraphSet& views, const SolverConfig& cfg,
                              const SolveObserver* observer) {
  MatrixList E;
  E.reserve(views.size());
  for (const auto& v : views) E.push_back(v.values);
  return solve_multicg(E, cfg, observer);
}

CorrelationMatrix consensus_matrix(const GraphSet& views,
                                   const ConsensusResult& result,
                                   std::string indicator) {
  return {FactorId::consensus(std::move(indicator)), views.order(), result.O,
          ValueDomain::kFree, 0};
}

CorrelationMatrix simple_average(const GraphSet& views,
                                 const std::vector<double>& weights) {
  if (weights.size() != views.size()) {
    throw std::invalid_argument("simple_average: " +
                                std::to_string(weights.size()) +
                                " weights for " + std::to_string(views.size()) +
                                " views");
  }
  bool any = false;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("simple_average: negative weight");
    }
    any = any || w > 0.0;
  }
  if (!any) throw std::invalid_argument("simple_average: all weights zero");
  const auto n = views.dimension();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < views.size(); ++i) {
    sum += weights[i] * views[i].values;
  }
  sum /= static_cast<double>(views.size());
  return {{FactorKind::kSimpleAverage, 0, {}}, views.order(), std::move(sum),
          ValueDomain::kFree, 0};
}

CorrelationMatrix simple_average(const GraphSet& views) {
  return simple_average(views, std::vector<double>(views.size(), 1.0));
}

void write_result_json(const GraphSet& views, const ConsensusResult& result,
                       const SolverConfig& cfg, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["config"] = {{"alpha", cfg.alpha},
                   {"tol", cfg.tol},
                   {"max_iter", cfg.max_iter},
                   {"ridge", cfg.ridge},
                   {"normalize_views", cfg.normalize_views}};
  doc["iterations"] = result.iterations;
  doc["converged"] = result.converged;
  doc["min_norm_fallbacks"] = result.min_norm_fallbacks;
  doc["objective_trace"] = result.objective_trace;
  doc["order"] = views.order();
  auto view_ids = nlohmann::ordered_json::array();
  for (const auto& v : views) view_ids.push_back(v.factor.stem());
  doc["views"] = view_ids;
  doc["O"] = to_json(result.O);
  auto ms = nlohmann::ordered_json::array();
  for (const auto& m : result.M) ms.push_back(to_json(m));
  doc["M"] = std::move(ms);
  out << doc.dump(1) << '\n';
}

}  // namespace multicg
