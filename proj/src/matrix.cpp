#include "multicg/matrix.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "multicg/csv.hpp"
#include "multicg/error.hpp"

namespace multicg {

namespace {

std::string lag_suffix(int lag) {
  return (lag < 0 ? "_m" : "_p") + std::to_string(std::abs(lag));
}

std::string signed_lag(int lag) {
  return (lag < 0 ? "(-" : "(+") + std::to_string(std::abs(lag)) + ")";
}

std::optional<int> parse_lag(std::string_view s) {
  if (s.size() < 3 || s[0] != '_' || (s[1] != 'm' && s[1] != 'p')) {
    return std::nullopt;
  }
  int v = 0;
  for (char c : s.substr(2)) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  if (v == 0) return std::nullopt;
  return s[1] == 'm' ? -v : v;
}

std::string describe(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

FactorId FactorId::tweet_lagged(int lag) {
  return {FactorKind::kTweetLagged, lag, {}};
}
FactorId FactorId::retweet_lagged(int lag) {
  return {FactorKind::kRetweetLagged, lag, {}};
}
FactorId FactorId::named(std::string name) {
  return {FactorKind::kNamed, 0, std::move(name)};
}
FactorId FactorId::consensus(std::string indicator) {
  return {FactorKind::kConsensus, 0, std::move(indicator)};
}

std::string FactorId::stem() const {
  switch (kind) {
    case FactorKind::kTweetVolume: return "t";
    case FactorKind::kRetweetVolume: return "r";
    case FactorKind::kTweetLagged: return "t" + lag_suffix(lag);
    case FactorKind::kRetweetLagged: return "r" + lag_suffix(lag);
    case FactorKind::kCoTweet: return "ct";
    case FactorKind::kCoRetweet: return "cr";
    case FactorKind::kTradingVolume: return "tv";
    case FactorKind::kClosingPrice: return "cp";
    case FactorKind::kHistoricalVolatility: return "hv";
    case FactorKind::kSimpleAverage: return "sa";
    case FactorKind::kConsensus:
      return name.empty() ? "multicg" : "multicg_" + name;
    case FactorKind::kNamed: return name;
  }
  return name;
}

std::string FactorId::label() const {
  switch (kind) {
    case FactorKind::kTweetLagged: return "SC_t" + signed_lag(lag);
    case FactorKind::kRetweetLagged: return "SC_r" + signed_lag(lag);
    case FactorKind::kTweetVolume:
    case FactorKind::kRetweetVolume:
    case FactorKind::kCoTweet:
    case FactorKind::kCoRetweet:
      return "SC_" + stem();
    case FactorKind::kTradingVolume: return "TV";
    case FactorKind::kClosingPrice: return "CP";
    case FactorKind::kHistoricalVolatility: return "HV";
    case FactorKind::kSimpleAverage: return "SA";
    case FactorKind::kConsensus: return "multi-CG";
    case FactorKind::kNamed: return name;
  }
  return name;
}

std::optional<FactorId> FactorId::from_stem(std::string_view stem) {
  if (stem == "t") return FactorId{FactorKind::kTweetVolume, 0, {}};
  if (stem == "r") return FactorId{FactorKind::kRetweetVolume, 0, {}};
  if (stem == "ct") return FactorId{FactorKind::kCoTweet, 0, {}};
  if (stem == "cr") return FactorId{FactorKind::kCoRetweet, 0, {}};
  if (stem == "tv") return FactorId{FactorKind::kTradingVolume, 0, {}};
  if (stem == "cp") return FactorId{FactorKind::kClosingPrice, 0, {}};
  if (stem == "hv") return FactorId{FactorKind::kHistoricalVolatility, 0, {}};
  if (stem == "sa") return FactorId{FactorKind::kSimpleAverage, 0, {}};
  if (stem == "multicg") return consensus();
  if (stem.starts_with("multicg_")) {
    return consensus(std::string(stem.substr(8)));
  }
  if (stem.size() > 1 && (stem[0] == 't' || stem[0] == 'r')) {
    if (auto lag = parse_lag(stem.substr(1))) {
      return stem[0] == 't' ? tweet_lagged(*lag) : retweet_lagged(*lag);
    }
  }
  return std::nullopt;
}

ValueDomain default_domain(FactorKind kind) {
  switch (kind) {
    case FactorKind::kCoTweet:
    case FactorKind::kCoRetweet:
      return ValueDomain::kJaccard;
    case FactorKind::kConsensus:
    case FactorKind::kSimpleAverage:
    case FactorKind::kNamed:
      return ValueDomain::kFree;
    default:
      return ValueDomain::kPearson;
  }
}

std::vector<std::string> find_violations(const CorrelationMatrix& m,
                                         double tol) {
  std::vector<std::string> out;
  const auto n = m.order.size();
  if (static_cast<std::size_t>(m.values.rows()) != n ||
      static_cast<std::size_t>(m.values.cols()) != n) {
    out.push_back("dimension does not match entity order");
    return out;
  }
  const std::string tag = m.factor.stem() + ": ";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m.values(i, j);
      if (!std::isfinite(v)) {
        out.push_back(tag + "non-finite entry " + describe(i, j));
        continue;
      }
      if (m.domain == ValueDomain::kFree) continue;
      if (j > i && std::abs(v - m.values(j, i)) > tol) {
        out.push_back(tag + "asymmetric at " + describe(i, j));
      }
      const double lo = m.domain == ValueDomain::kPearson ? -1.0 : 0.0;
      if (v < lo - tol || v > 1.0 + tol) {
        out.push_back(tag + "out of range at " + describe(i, j));
      }
    }
    if (m.domain == ValueDomain::kPearson && m.values(i, i) != 1.0) {
      out.push_back(tag + "diagonal not 1 at " + describe(i, i));
    }
    if (m.domain == ValueDomain::kJaccard && m.values(i, i) != 0.0 &&
        m.values(i, i) != 1.0) {
      out.push_back(tag + "diagonal not 0/1 at " + describe(i, i));
    }
  }
  return out;
}

GraphSet::GraphSet(std::vector<CorrelationMatrix> views)
    : views_(std::move(views)) {
  if (views_.empty()) throw InputError("graph set needs at least one matrix");
  const auto& order = views_.front().order;
  for (const auto& v : views_) {
    if (v.order != order) {
      throw InputError("matrix " + v.factor.stem() +
                       " does not share the entity order of " +
                       views_.front().factor.stem());
    }
    if (static_cast<std::size_t>(v.values.rows()) != order.size() ||
        static_cast<std::size_t>(v.values.cols()) != order.size()) {
      throw InputError("matrix " + v.factor.stem() + " has wrong dimension");
    }
  }
}

void write_matrix_csv(const CorrelationMatrix& m, std::ostream& out) {
  for (const auto& s : m.order) out << ',' << csv::escape(s);
  out << '\n';
  for (std::size_t i = 0; i < m.order.size(); ++i) {
    out << csv::escape(m.order[i]);
    for (std::size_t j = 0; j < m.order.size(); ++j) {
      out << ',' << csv::format_value(m.values(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const CorrelationMatrix& m,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_matrix_csv(m, out);
}

CorrelationMatrix read_matrix_csv(std::istream& in, FactorId factor) {
  const std::string where = "matrix " + factor.stem();
  auto header = csv::next_line(in);
  if (!header) throw InputError(where + " is empty");
  auto cols = csv::split_line(*header);
  CorrelationMatrix m;
  m.order.assign(cols.begin() + 1, cols.end());
  const auto n = m.order.size();
  if (n == 0) throw InputError(where + " has no entities");
  m.values.resize(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto line = csv::next_line(in);
    if (!line) throw InputError(where + " has too few rows");
    auto fields = csv::split_line(*line);
    if (fields.size() != n + 1 || fields[0] != m.order[i]) {
      throw InputError(where + ": row " + std::to_string(i + 1) +
                       " does not match header");
    }
    for (std::size_t j = 0; j < n; ++j) {
      auto v = csv::parse_double(fields[j + 1]);
      if (!v) throw InputError(where + ": bad value '" + fields[j + 1] + "'");
      m.values(i, j) = *v;
    }
  }
  if (csv::next_line(in)) throw InputError(where + " has extra rows");
  m.domain = default_domain(factor.kind);
  m.factor = std::move(factor);
  return m;
}

CorrelationMatrix read_matrix_csv(const std::filesystem::path& path,
                                  FactorId factor) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_matrix_csv(in, std::move(factor));
}

}  // namespace multicg
