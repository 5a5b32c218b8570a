#ifndef MULTICG_MATRIX_HPP_
#define MULTICG_MATRIX_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace multicg {

enum class FactorKind {
  kTweetVolume,
  kRetweetVolume,
  kTweetLagged,
  kRetweetLagged,
  kCoTweet,
  kCoRetweet,
  kTradingVolume,
  kClosingPrice,
  kHistoricalVolatility,
  kConsensus,
  kSimpleAverage,
  kNamed,
};

/// Identifies what a matrix measures. `lag` is meaningful for the lagged
/// kinds only; `name` carries the tag of kConsensus (indicator) and kNamed
/// matrices.
struct FactorId {
  FactorKind kind = FactorKind::kNamed;
  int lag = 0;
  std::string name;

  static FactorId tweet_lagged(int lag);
  static FactorId retweet_lagged(int lag);
  static FactorId named(std::string name);
  static FactorId consensus(std::string indicator = {});

  /// File name stem: t, r, t_m2, t_p1, ct, cr, tv, cp, hv, sa, multicg[_x].
  std::string stem() const;
  /// Row label in comparison tables: SC_t, SC_t(-2), SA, multi-CG, ...
  std::string label() const;
  static std::optional<FactorId> from_stem(std::string_view stem);

  friend bool operator==(const FactorId&, const FactorId&) = default;
};

enum class ValueDomain {
  kPearson,  // entries in [-1, 1], unit diagonal
  kJaccard,  // entries in [0, 1], diagonal 0 or 1
  kFree,     // finite entries only
};

ValueDomain default_domain(FactorKind kind);

struct CorrelationMatrix {
  FactorId factor;
  std::vector<std::string> order;
  Eigen::MatrixXd values;
  ValueDomain domain = ValueDomain::kFree;
  std::size_t undefined_fills = 0;  // pairs whose correlation was undefined

  std::size_t size() const { return order.size(); }
};

/// Checks symmetry (kPearson/kJaccard only), range and the diagonal rule for
/// the matrix's domain. Returns a human-readable list of violations.
std::vector<std::string> find_violations(const CorrelationMatrix& m,
                                         double tol = 1e-12);

/// Ordered views over one shared entity order.
class GraphSet {
 public:
  explicit GraphSet(std::vector<CorrelationMatrix> views);

  std::size_t size() const { return views_.size(); }
  std::size_t dimension() const { return views_.front().size(); }
  const std::vector<std::string>& order() const { return views_.front().order; }
  const CorrelationMatrix& operator[](std::size_t i) const { return views_[i]; }
  const std::vector<CorrelationMatrix>& views() const { return views_; }
  auto begin() const { return views_.begin(); }
  auto end() const { return views_.end(); }

 private:
  std::vector<CorrelationMatrix> views_;
};

/// Comma-separated: header row and first column hold the symbols, cells use
/// 10 significant digits.
void write_matrix_csv(const CorrelationMatrix& m, std::ostream& out);
void write_matrix_csv(const CorrelationMatrix& m,
                      const std::filesystem::path& path);
CorrelationMatrix read_matrix_csv(std::istream& in, FactorId factor);
CorrelationMatrix read_matrix_csv(const std::filesystem::path& path,
                                  FactorId factor);

}  // namespace multicg

#endif  // MULTICG_MATRIX_HPP_
