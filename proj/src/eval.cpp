#include "multicg/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "multicg/csv.hpp"
#include "multicg/error.hpp"

namespace multicg {

std::vector<std::string> RankedLists::symbols_for(std::size_t entity) const {
  std::vector<std::string> out;
  for (auto j : lists[entity]) out.push_back(order[j]);
  return out;
}

RankedLists rank_rows(const CorrelationMatrix& m) {
  const auto n = m.size();
  if (n < 2) throw InputError("ranking needs at least two entities");
  RankedLists ranked{m.order, {}};
  ranked.lists.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> peers;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) peers.push_back(j);
    }
    std::sort(peers.begin(), peers.end(), [&](std::size_t a, std::size_t b) {
      const double va = std::abs(m.values(i, a));
      const double vb = std::abs(m.values(i, b));
      if (va != vb) return va > vb;
      return m.order[a] < m.order[b];
    });
    ranked.lists.push_back(std::move(peers));
  }
  return ranked;
}

GradeVector relevance_grades(std::span<const std::size_t> candidate,
                             std::span<const std::size_t> ideal,
                             std::size_t k) {
  k = std::min({k, candidate.size(), ideal.size()});
  GradeVector grades(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    auto it = std::find(ideal.begin(), ideal.begin() + k, candidate[j]);
    if (it != ideal.begin() + k) {
      const auto p = static_cast<std::size_t>(it - ideal.begin()) + 1;
      grades[j] = static_cast<double>(k - p + 1);
    }
  }
  return grades;
}

double dcg_k(std::span<const double> grades) {
  double sum = 0.0;
  for (std::size_t j = 0; j < grades.size(); ++j) {
    sum += grades[j] / std::log2(static_cast<double>(j) + 2.0);
  }
  return sum;
}

double dcg_ceiling(std::size_t k) {
  GradeVector ideal(k);
  for (std::size_t j = 0; j < k; ++j) ideal[j] = static_cast<double>(k - j);
  return dcg_k(ideal);
}

EvalReport avg_dcg(const CorrelationMatrix& candidate,
                   const CorrelationMatrix& truth, std::size_t k) {
  if (candidate.order != truth.order) {
    throw InputError("entity order of " + candidate.factor.stem() +
                     " does not match " + truth.factor.stem());
  }
  const auto n = truth.size();
  if (k < 1 || k + 1 > n) {
    throw InputError("k=" + std::to_string(k) + " must be in [1, " +
                     std::to_string(n > 0 ? n - 1 : 0) + "]");
  }
  const auto lo = rank_rows(candidate);
  const auto lc = rank_rows(truth);
  EvalReport report{k, candidate.factor.label(), truth.factor.label(),
                    truth.order, {}, 0.0};
  report.per_entity.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    report.per_entity.push_back(
        dcg_k(relevance_grades(lo.lists[i], lc.lists[i], k)));
  }
  report.avg_dcg =
      std::accumulate(report.per_entity.begin(), report.per_entity.end(), 0.0) /
      static_cast<double>(n);
  return report;
}

void write_report_json(const EvalReport& report, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["method"] = report.method;
  doc["truth"] = report.truth;
  doc["k"] = report.k;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < report.order.size(); ++i) {
    per[report.order[i]] = report.per_entity[i];
  }
  doc["per_entity_dcg"] = std::move(per);
  doc["avg_dcg"] = report.avg_dcg;
  out << doc.dump(1) << '\n';
}

ComparisonTable compare_methods(const std::vector<CorrelationMatrix>& methods,
                                const CorrelationMatrix& truth,
                                const std::vector<std::size_t>& ks) {
  ComparisonTable table{truth.factor.stem(), ks, {}, {}};
  for (const auto& m : methods) {
    table.methods.push_back(m.factor.label());
    std::vector<double> row;
    for (auto k : ks) row.push_back(avg_dcg(m, truth, k).avg_dcg);
    table.values.push_back(std::move(row));
  }
  return table;
}

void write_comparison_csv(const ComparisonTable& table, std::ostream& out) {
  out << "method";
  for (auto k : table.ks) out << ",k=" << k;
  out << '\n';
  for (std::size_t r = 0; r < table.methods.size(); ++r) {
    out << csv::escape(table.methods[r]);
    for (double v : table.values[r]) out << ',' << csv::format_value(v);
    out << '\n';
  }
}

}  // namespace multicg
