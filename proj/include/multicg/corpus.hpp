#ifndef MULTICG_CORPUS_HPP_
#define MULTICG_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "multicg/date.hpp"

namespace multicg {

struct Entity {
  std::string symbol;
  std::string name;
  std::string industry;
};

/// The ordered set of entities under study. Position in the catalog is the
/// row/column index of every correlation matrix built from it.
class EntityCatalog {
 public:
  explicit EntityCatalog(std::vector<Entity> entries);

  /// Reads a `symbol,name,industry` table with a header row.
  static EntityCatalog load(std::istream& in);
  static EntityCatalog load(const std::filesystem::path& path);

  std::size_t size() const { return entries_.size(); }
  const Entity& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Entity>& entries() const { return entries_; }
  std::vector<std::string> symbols() const;

  std::optional<std::size_t> index_of(std::string_view symbol) const;
  bool contains(std::string_view symbol) const {
    return index_of(symbol).has_value();
  }

 private:
  std::vector<Entity> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// True for 1-6 uppercase ASCII letters.
bool is_valid_symbol(std::string_view symbol);

enum class PostKind { kTweet, kRetweet };

std::string_view to_string(PostKind kind);

struct MentionRecord {
  std::string doc_id;
  Timestamp timestamp;
  std::string text;
  bool is_retweet = false;
  std::set<std::string> mentions;

  PostKind kind() const {
    return is_retweet ? PostKind::kRetweet : PostKind::kTweet;
  }
  friend bool operator==(const MentionRecord&, const MentionRecord&) = default;
};

struct CorpusParseResult {
  std::vector<MentionRecord> records;
  std::size_t rejected_lines = 0;     // malformed or duplicate id
  std::size_t dropped_no_mention = 0; // valid but no catalog cashtag
};

/// Symbols s such that `$s` occurs in text as a cashtag and s is in the
/// catalog. A cashtag is `$` followed by 1-6 uppercase letters; the `$` must
/// be at the start of text or after whitespace or punctuation, and the
/// letters must be followed by end of text or a non-alphanumeric character.
std::set<std::string> extract_mentions(std::string_view text,
                                       const EntityCatalog& catalog);

/// Parses one JSON object per line with fields `id`, `created_at`, `text`,
/// `retweeted`. Bad lines are counted, not fatal. Throws InputError when no
/// record survives.
CorpusParseResult parse_mention_corpus(std::istream& in,
                                       const EntityCatalog& catalog);
CorpusParseResult parse_mention_corpus(const std::filesystem::path& path,
                                       const EntityCatalog& catalog);

/// Canonical line format read back by parse_mention_corpus.
void write_mention_corpus(const std::vector<MentionRecord>& records,
                          std::ostream& out);

struct DailySeries {
  std::string entity;
  PostKind kind = PostKind::kTweet;
  TimeWindow window;
  std::vector<double> values;
};

using SeriesTable = std::map<std::string, DailySeries>;

/// Per-entity daily counts of records of the given kind. Tweets and
/// retweets are disjoint kinds. Every catalog entity gets a series.
SeriesTable build_daily_series(const std::vector<MentionRecord>& records,
                               const EntityCatalog& catalog,
                               const TimeWindow& window, PostKind kind);

struct MentionSetTable {
  PostKind kind = PostKind::kTweet;
  TimeWindow window;
  std::map<std::string, std::set<std::string>> sets;  // symbol -> doc ids
};

MentionSetTable build_mention_sets(const std::vector<MentionRecord>& records,
                                   const EntityCatalog& catalog,
                                   const TimeWindow& window, PostKind kind);

struct MarketSeries {
  std::string entity;
  std::vector<Date> dates;
  std::vector<double> close;
  std::vector<double> volume;
};

/// Reads a `date,close,volume` table with a header. Rows are sorted by date.
/// Throws InputError on a non-positive close, negative volume, duplicate
/// date or malformed row.
MarketSeries load_market_series(std::istream& in, const std::string& symbol);

/// Loads `<dir>/<SYMBOL>.csv` for every catalog entity.
std::map<std::string, MarketSeries> load_market_directory(
    const std::filesystem::path& dir, const EntityCatalog& catalog);

}  // namespace multicg

#endif  // MULTICG_CORPUS_HPP_
