#include "multicg/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "json.hpp"
#include "multicg/csv.hpp"
#include "multicg/error.hpp"

namespace multicg {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)); }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)); }

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

// Parses one corpus line; nullopt when the line is malformed.
std::optional<MentionRecord> parse_record(const std::string& line) {
  auto json = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (json.is_discarded() || !json.is_object()) return std::nullopt;
  auto id = json.find("id");
  auto created = json.find("created_at");
  auto text = json.find("text");
  auto retweeted = json.find("retweeted");
  if (id == json.end() || !id->is_string() || created == json.end() ||
      !created->is_string() || text == json.end() || !text->is_string() ||
      retweeted == json.end() || !retweeted->is_boolean()) {
    return std::nullopt;
  }
  auto ts = parse_timestamp(created->get_ref<const std::string&>());
  if (!ts) return std::nullopt;
  MentionRecord record;
  record.doc_id = id->get<std::string>();
  if (record.doc_id.empty()) return std::nullopt;
  record.timestamp = *ts;
  record.text = text->get<std::string>();
  record.is_retweet = retweeted->get<bool>();
  return record;
}

}  // namespace

bool is_valid_symbol(std::string_view symbol) {
  return !symbol.empty() && symbol.size() <= 6 &&
         std::all_of(symbol.begin(), symbol.end(), is_upper);
}

EntityCatalog::EntityCatalog(std::vector<Entity> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw InputError("entity catalog is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& symbol = entries_[i].symbol;
    if (!is_valid_symbol(symbol)) {
      throw InputError("invalid catalog symbol '" + symbol + "'");
    }
    if (!index_.emplace(symbol, i).second) {
      throw InputError("duplicate catalog symbol '" + symbol + "'");
    }
  }
}

EntityCatalog EntityCatalog::load(std::istream& in) {
  auto header = csv::next_line(in);
  if (!header) throw InputError("catalog is empty");
  std::vector<Entity> entries;
  while (auto line = csv::next_line(in)) {
    auto fields = csv::split_line(*line);
    if (fields.size() != 3) {
      throw InputError("catalog row '" + *line + "' needs 3 fields");
    }
    entries.push_back({fields[0], fields[1], fields[2]});
  }
  return EntityCatalog(std::move(entries));
}

EntityCatalog EntityCatalog::load(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return load(in);
}

std::vector<std::string> EntityCatalog::symbols() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.symbol);
  return out;
}

std::optional<std::size_t> EntityCatalog::index_of(
    std::string_view symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string_view to_string(PostKind kind) {
  return kind == PostKind::kTweet ? "tweet" : "retweet";
}

std::set<std::string> extract_mentions(std::string_view text,
                                       const EntityCatalog& catalog) {
  std::set<std::string> found;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '$') continue;
    if (i > 0 && !is_space(text[i - 1]) && !is_punct(text[i - 1])) continue;
    std::size_t j = i + 1;
    while (j < text.size() && is_upper(text[j])) ++j;
    std::size_t len = j - i - 1;
    if (len == 0 || len > 6) continue;
    if (j < text.size() && is_alnum(text[j])) continue;
    std::string_view symbol = text.substr(i + 1, len);
    if (catalog.contains(symbol)) found.emplace(symbol);
  }
  return found;
}

CorpusParseResult parse_mention_corpus(std::istream& in,
                                       const EntityCatalog& catalog) {
  CorpusParseResult result;
  std::unordered_set<std::string> seen;
  while (auto line = csv::next_line(in)) {
    auto record = parse_record(*line);
    if (!record || seen.count(record->doc_id) > 0) {
      ++result.rejected_lines;
      continue;
    }
    seen.insert(record->doc_id);
    record->mentions = extract_mentions(record->text, catalog);
    if (record->mentions.empty()) {
      ++result.dropped_no_mention;
      continue;
    }
    result.records.push_back(std::move(*record));
  }
  if (result.records.empty()) {
    throw InputError("empty corpus: no record mentions a catalog entity (" +
                     std::to_string(result.rejected_lines) + " rejected, " +
                     std::to_string(result.dropped_no_mention) + " dropped)");
  }
  return result;
}

CorpusParseResult parse_mention_corpus(const std::filesystem::path& path,
                                       const EntityCatalog& catalog) {
  auto in = open_or_throw(path);
  return parse_mention_corpus(in, catalog);
}

void write_mention_corpus(const std::vector<MentionRecord>& records,
                          std::ostream& out) {
  for (const auto& r : records) {
    nlohmann::ordered_json line;
    line["id"] = r.doc_id;
    line["created_at"] = format_timestamp(r.timestamp);
    line["text"] = r.text;
    line["retweeted"] = r.is_retweet;
    out << line.dump() << '\n';
  }
}

SeriesTable build_daily_series(const std::vector<MentionRecord>& records,
                               const EntityCatalog& catalog,
                               const TimeWindow& window, PostKind kind) {
  SeriesTable table;
  for (const auto& e : catalog.entries()) {
    table.emplace(e.symbol,
                  DailySeries{e.symbol, kind, window,
                              std::vector<double>(window.length(), 0.0)});
  }
  for (const auto& r : records) {
    Date day = Date::of(r.timestamp);
    if (r.kind() != kind || !window.contains(day)) continue;
    for (const auto& symbol : r.mentions) {
      auto it = table.find(symbol);
      if (it != table.end()) it->second.values[window.offset(day)] += 1.0;
    }
  }
  return table;
}

MentionSetTable build_mention_sets(const std::vector<MentionRecord>& records,
                                   const EntityCatalog& catalog,
                                   const TimeWindow& window, PostKind kind) {
  MentionSetTable table{kind, window, {}};
  for (const auto& e : catalog.entries()) table.sets[e.symbol];
  for (const auto& r : records) {
    if (r.kind() != kind || !window.contains(Date::of(r.timestamp))) continue;
    for (const auto& symbol : r.mentions) {
      auto it = table.sets.find(symbol);
      if (it != table.sets.end()) it->second.insert(r.doc_id);
    }
  }
  return table;
}

MarketSeries load_market_series(std::istream& in, const std::string& symbol) {
  if (!csv::next_line(in)) {
    throw InputError("market data for " + symbol + " is empty");
  }
  struct Row {
    Date date;
    double close;
    double volume;
  };
  std::vector<Row> rows;
  while (auto line = csv::next_line(in)) {
    auto fields = csv::split_line(*line);
    if (fields.size() != 3) {
      throw InputError("market data for " + symbol + ": malformed row '" +
                       *line + "'");
    }
    Date date = Date::parse(fields[0]);
    auto close = csv::parse_double(fields[1]);
    auto volume = csv::parse_double(fields[2]);
    if (!close || !volume) {
      throw InputError("market data for " + symbol + ": malformed row '" +
                       *line + "'");
    }
    if (*close <= 0.0) {
      throw InputError("market data for " + symbol + ": non-positive close on " +
                       date.to_string());
    }
    if (*volume < 0.0) {
      throw InputError("market data for " + symbol + ": negative volume on " +
                       date.to_string());
    }
    rows.push_back({date, *close, *volume});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });
  MarketSeries series{symbol, {}, {}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].date == rows[i - 1].date) {
      throw InputError("market data for " + symbol + ": duplicate date " +
                       rows[i].date.to_string());
    }
    series.dates.push_back(rows[i].date);
    series.close.push_back(rows[i].close);
    series.volume.push_back(rows[i].volume);
  }
  return series;
}

std::map<std::string, MarketSeries> load_market_directory(
    const std::filesystem::path& dir, const EntityCatalog& catalog) {
  std::map<std::string, MarketSeries> out;
  for (const auto& e : catalog.entries()) {
    auto path = dir / (e.symbol + ".csv");
    std::ifstream in(path);
    if (!in) {
      throw InputError("missing market data for " + e.symbol + " (" +
                       path.string() + ")");
    }
    out.emplace(e.symbol, load_market_series(in, e.symbol));
  }
  return out;
}

}  // namespace multicg
