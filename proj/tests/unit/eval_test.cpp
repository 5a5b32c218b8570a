#include "multicg/eval.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "multicg/error.hpp"

namespace multicg {
namespace {

CorrelationMatrix make(const std::vector<std::string>& order,
                       Eigen::MatrixXd values, std::string name = "m") {
  return {FactorId::named(std::move(name)), order, std::move(values),
          ValueDomain::kFree, 0};
}

std::vector<std::string> symbols(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, char('A' + i)));
  return out;
}

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  }
  return m;
}

// Independent avgDCG: rank by (-|v|, symbol) keys in an ordered map, look
// ideal positions up by symbol, discount with log(j+1)/log(2).
double avg_dcg_oracle(const CorrelationMatrix& cand,
                      const CorrelationMatrix& truth, std::size_t k) {
  const auto n = truth.size();
  auto ranking = [&](const Eigen::MatrixXd& v, std::size_t i) {
    std::map<std::pair<double, std::string>, std::string> keyed;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) keyed[{-std::fabs(v(i, j)), truth.order[j]}] = truth.order[j];
    }
    std::vector<std::string> out;
    for (auto& [key, sym] : keyed) out.push_back(sym);
    return out;
  };
  long double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto lo = ranking(cand.values, i);
    auto lc = ranking(truth.values, i);
    std::map<std::string, std::size_t> pos;
    for (std::size_t p = 0; p < k; ++p) pos[lc[p]] = p + 1;
    for (std::size_t j = 1; j <= k; ++j) {
      auto it = pos.find(lo[j - 1]);
      if (it == pos.end()) continue;
      total += static_cast<long double>(k - it->second + 1) /
               (std::log(static_cast<long double>(j + 1)) / std::log(2.0L));
    }
  }
  return static_cast<double>(total / n);
}

TEST(RankRowsTest, AbsoluteValueOrder) {
  Eigen::MatrixXd v(4, 4);
  v << 1, 0.9, -0.95, 0.1,
       0.9, 1, 0, 0,
       -0.95, 0, 1, 0,
       0.1, 0, 0, 1;
  auto r = rank_rows(make(symbols(4), v));
  EXPECT_EQ(r.symbols_for(0), (std::vector<std::string>{"C", "B", "D"}));
  EXPECT_EQ(r.symbols_for(1), (std::vector<std::string>{"A", "C", "D"}));
}

TEST(RankRowsTest, TiesGoToSmallerSymbol) {
  std::vector<std::string> order = {"ZZ", "MM", "AA", "QQ"};
  auto r = rank_rows(make(order, Eigen::MatrixXd::Constant(4, 4, 0.5)));
  EXPECT_EQ(r.symbols_for(0), (std::vector<std::string>{"AA", "MM", "QQ"}));
  EXPECT_EQ(r.symbols_for(2), (std::vector<std::string>{"MM", "QQ", "ZZ"}));
}

TEST(RankRowsTest, ListsArePeerPermutations) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto r = rank_rows(make(symbols(5), random_symmetric(rng, 5)));
    for (std::size_t i = 0; i < 5; ++i) {
      auto l = r.lists[i];
      std::sort(l.begin(), l.end());
      std::vector<std::size_t> expect;
      for (std::size_t j = 0; j < 5; ++j) {
        if (j != i) expect.push_back(j);
      }
      EXPECT_EQ(l, expect);
    }
  }
}

TEST(GradesTest, HandCases) {
  std::vector<std::size_t> ideal = {0, 1, 2, 3};
  EXPECT_EQ(relevance_grades(ideal, ideal, 3), (GradeVector{3, 2, 1}));
  std::vector<std::size_t> swapped = {1, 0, 3, 2};
  EXPECT_EQ(relevance_grades(swapped, ideal, 2), (GradeVector{1, 2}));
  std::vector<std::size_t> disjoint = {2, 3, 0, 1};
  EXPECT_EQ(relevance_grades(disjoint, ideal, 2), (GradeVector{0, 0}));
}

TEST(DcgTest, HandValues) {
  EXPECT_EQ(dcg_k(GradeVector{0, 0, 0}), 0.0);
  EXPECT_EQ(dcg_k(GradeVector{4}), 4.0);
  EXPECT_NEAR(dcg_k(GradeVector{3, 2, 1}), 4.7618595071429148742, 1e-14);
  EXPECT_NEAR(dcg_k(GradeVector{1, 2}), 2.2618595071429148742, 1e-14);
}

TEST(DcgTest, Ceilings) {
  EXPECT_NEAR(dcg_ceiling(3), 4.7618595071429148742, 1e-12);
  EXPECT_NEAR(dcg_ceiling(5), 10.271924937667157437, 1e-12);
  EXPECT_NEAR(dcg_ceiling(10), 29.966109248940598431, 1e-12);
}

TEST(DcgTest, IdealGradingIsMaximalOverPermutations) {
  for (std::size_t peers = 2; peers <= 6; ++peers) {
    std::vector<std::size_t> ideal(peers);
    std::iota(ideal.begin(), ideal.end(), 0);
    for (std::size_t k = 1; k <= peers; ++k) {
      const double best = dcg_k(relevance_grades(ideal, ideal, k));
      auto perm = ideal;
      do {
        EXPECT_LE(dcg_k(relevance_grades(perm, ideal, k)), best + 1e-12);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST(AvgDcgTest, SelfScoreIsCeiling) {
  std::mt19937_64 rng(2);
  auto t = make(symbols(10), random_symmetric(rng, 10));
  for (std::size_t k : {3u, 5u, 9u}) {
    EXPECT_NEAR(avg_dcg(t, t, k).avg_dcg, dcg_ceiling(k), 1e-10);
  }
}

TEST(AvgDcgTest, DisjointTopKScoresZero) {
  // Truth ranks each entity's neighbours on a ring; the candidate ranks the
  // far side first.
  const std::size_t n = 8;
  Eigen::MatrixXd truth = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd cand = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto d = std::min((i + n - j) % n, (j + n - i) % n);
      truth(i, j) = 1.0 / double(d);
      cand(i, j) = double(d);
    }
  }
  EXPECT_EQ(avg_dcg(make(symbols(n), cand), make(symbols(n), truth), 2).avg_dcg,
            0.0);
}

TEST(AvgDcgTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = make(symbols(6), random_symmetric(rng, 6));
    auto t = make(symbols(6), random_symmetric(rng, 6));
    for (std::size_t k = 1; k <= 5; ++k) {
      auto report = avg_dcg(c, t, k);
      EXPECT_NEAR(report.avg_dcg, avg_dcg_oracle(c, t, k), 1e-12);
      double mean = std::accumulate(report.per_entity.begin(),
                                    report.per_entity.end(), 0.0) / 6.0;
      EXPECT_DOUBLE_EQ(report.avg_dcg, mean);
    }
  }
}

TEST(AvgDcgTest, InvariantUnderJointPermutationAndScaling) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 7;
    auto cv = random_symmetric(rng, n), tv = random_symmetric(rng, n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::PermutationMatrix<Eigen::Dynamic> P(n);
    for (std::size_t i = 0; i < n; ++i) P.indices()[i] = perm[i];
    // Symbols travel with their rows so the tie rule is unaffected.
    auto sym = symbols(n);
    std::vector<std::string> psym(n);
    for (std::size_t i = 0; i < n; ++i) psym[perm[i]] = sym[i];
    Eigen::MatrixXd pc = P * cv * P.transpose(), pt = P * tv * P.transpose();
    for (std::size_t k = 1; k < n; ++k) {
      const double base = avg_dcg(make(sym, cv), make(sym, tv), k).avg_dcg;
      EXPECT_NEAR(avg_dcg(make(psym, pc), make(psym, pt), k).avg_dcg, base,
                  1e-12);
      EXPECT_NEAR(avg_dcg(make(sym, 3.5 * cv), make(sym, tv), k).avg_dcg, base,
                  1e-12);
    }
  }
}

TEST(AvgDcgTest, MonotoneInK) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = make(symbols(9), random_symmetric(rng, 9));
    auto t = make(symbols(9), random_symmetric(rng, 9));
    for (std::size_t k = 1; k < 8; ++k) {
      EXPECT_LE(avg_dcg(c, t, k).avg_dcg, avg_dcg(c, t, k + 1).avg_dcg + 1e-12);
    }
  }
}

TEST(AvgDcgTest, Errors) {
  std::mt19937_64 rng(6);
  auto t = make(symbols(4), random_symmetric(rng, 4));
  auto other = make({"A", "B", "D", "C"}, random_symmetric(rng, 4));
  EXPECT_THROW(avg_dcg(other, t, 2), InputError);
  EXPECT_THROW(avg_dcg(t, t, 0), InputError);
  EXPECT_THROW(avg_dcg(t, t, 4), InputError);
}

TEST(ReportTest, JsonAndTable) {
  std::mt19937_64 rng(7);
  auto t = make(symbols(5), random_symmetric(rng, 5), "truth");
  auto c = make(symbols(5), random_symmetric(rng, 5), "cand");
  auto report = avg_dcg(c, t, 3);
  std::ostringstream json;
  write_report_json(report, json);
  auto doc = nlohmann::json::parse(json.str());
  EXPECT_EQ(doc["k"], 3);
  EXPECT_EQ(doc["method"], "cand");
  EXPECT_EQ(doc["per_entity_dcg"].size(), 5u);
  EXPECT_EQ(doc["avg_dcg"].get<double>(), report.avg_dcg);

  auto table = compare_methods({c, t}, t, {1, 2, 4});
  ASSERT_EQ(table.values.size(), 2u);
  EXPECT_NEAR(table.values[1][2], dcg_ceiling(4), 1e-12);
  std::ostringstream csv;
  write_comparison_csv(table, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "method,k=1,k=2,k=4");
}

}  // namespace
}  // namespace multicg
