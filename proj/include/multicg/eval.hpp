#ifndef MULTICG_EVAL_HPP_
#define MULTICG_EVAL_HPP_

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "multicg/matrix.hpp"

namespace multicg {

/// For each entity, the indices of its peers ordered by |correlation|
/// descending; ties go to the lexicographically smaller symbol.
struct RankedLists {
  std::vector<std::string> order;
  std::vector<std::vector<std::size_t>> lists;

  std::vector<std::string> symbols_for(std::size_t entity) const;
};

RankedLists rank_rows(const CorrelationMatrix& m);

using GradeVector = std::vector<double>;

/// Grade of the candidate's rank-j peer: k - p + 1 when it sits at position
/// p <= k of the ideal list, else 0.
GradeVector relevance_grades(std::span<const std::size_t> candidate,
                             std::span<const std::size_t> ideal,
                             std::size_t k);

/// sum_j grades[j] / log2(j + 1), j 1-based.
double dcg_k(std::span<const double> grades);

/// avgDCG@k when the candidate ranking equals the ideal ranking.
double dcg_ceiling(std::size_t k);

struct EvalReport {
  std::size_t k = 0;
  std::string method;
  std::string truth;
  std::vector<std::string> order;
  std::vector<double> per_entity;
  double avg_dcg = 0.0;
};

/// Ranks both matrices, grades each candidate list against the truth list
/// and averages the DCG values. Throws InputError on order mismatch or
/// k > n - 1.
EvalReport avg_dcg(const CorrelationMatrix& candidate,
                   const CorrelationMatrix& truth, std::size_t k);

void write_report_json(const EvalReport& report, std::ostream& out);

/// avgDCG table: one row per method, one column per k.
struct ComparisonTable {
  std::string truth;
  std::vector<std::size_t> ks;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> values;  // [method][k]
};

ComparisonTable compare_methods(const std::vector<CorrelationMatrix>& methods,
                                const CorrelationMatrix& truth,
                                const std::vector<std::size_t>& ks);

/// `method,k=10,k=20,...` with values to 10 significant digits.
void write_comparison_csv(const ComparisonTable& table, std::ostream& out);

}  // namespace multicg

#endif  // MULTICG_EVAL_HPP_
