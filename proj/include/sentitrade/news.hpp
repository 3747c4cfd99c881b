#pragma once

#include "sentitrade/core.hpp"
#include "sentitrade/market_data.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentitrade {

enum class NewsSource { DowJones, Benzinga, Barron, MarketWatch, WSJ };
enum class SentimentModel { GPT2, FinBERT };

std::string_view to_string(NewsSource s) noexcept;
std::string_view to_string(SentimentModel m) noexcept;
/// Case-insensitive; tolerates spaces and the "Barron's" spelling.
NewsSource parse_news_source(std::string_view text);
SentimentModel parse_sentiment_model(std::string_view text);

struct NewsArticle {
	std::optional<DateTime> timestamp; ///< absent when the feed row had no date
	NewsSource source = NewsSource::DowJones;
	std::string title;
	std::string text;
};

struct SentimentRecord {
	DateTime timestamp;
	NewsSource source = NewsSource::DowJones;
	SentimentModel model = SentimentModel::GPT2;
	Signal label = Signal::Neutral;
	std::optional<double> score;
};

struct SentimentKey {
	NewsSource source = NewsSource::DowJones;
	SentimentModel model = SentimentModel::GPT2;

	std::string name() const; ///< e.g. "GPT2 DowJones"
	friend auto operator<=>(const SentimentKey &, const SentimentKey &) = default;
};

struct DailySentiment {
	Date trading_day;
	SentimentKey key;
	Signal label = Signal::Neutral;
	std::array<int, 3> vote_counts{}; ///< indexed by label + 1
	Signal first_label = Signal::Neutral;

	int count(Signal s) const { return vote_counts[static_cast<std::size_t>(to_int(s) + 1)]; }
};

/// Sorted set of session dates.
class TradingCalendar {
public:
	TradingCalendar() = default;
	explicit TradingCalendar(std::vector<Date> dates);
	static TradingCalendar from_prices(const PriceSeries &prices);

	bool empty() const noexcept { return dates_.empty(); }
	std::size_t size() const noexcept { return dates_.size(); }
	const std::vector<Date> &dates() const noexcept { return dates_; }
	const Date &operator[](std::size_t i) const { return dates_[i]; }
	bool contains(Date d) const;
	std::optional<std::size_t> position(Date d) const;
	std::optional<Date> on_or_after(Date d) const;
	std::optional<Date> after(Date d) const;

private:
	std::vector<Date> dates_;
};

// --- text cleaning -----------------------------------------------------------

struct CleaningRules {
	std::vector<std::string> boilerplate_markers{"Copyright", "Photo by", "Write to "};
	std::vector<std::string> drop_keywords{"Amundi S&P 500"};
};

/// Cuts at the earliest boilerplate marker, collapses whitespace runs to one space
/// and trims the ends.
std::string clean_article(std::string_view raw, const CleaningRules &rules = {});

/// True when title or text mentions a drop keyword (non-news rows).
bool is_non_news(const NewsArticle &article, const CleaningRules &rules = {});

/// First date in the text written as "May 10, 2024", "2024-05-10" or "05/10/2024".
std::optional<Date> extract_embedded_date(std::string_view raw);

/// Drops non-news rows, cleans text, and fills a missing timestamp from the date
/// embedded in the body (00:00 ET). Rows with no date at all are dropped.
std::vector<NewsArticle> preprocess_articles(std::vector<NewsArticle> articles, const CleaningRules &rules = {});

// --- calendar alignment and voting --------------------------------------------

/// Maps an ET timestamp to the session whose return it can inform.
/// Articles at or after 16:00 roll to the next session, weekends and holidays to
/// the next session on the calendar.
Date assign_trading_day(const DateTime &ts, const TradingCalendar &calendar);

/// Mode vote over one (day, source, model) group. Ties resolve to the label of
/// the chronologically first record when it is among the tied classes, else 0.
DailySentiment vote_daily(std::span<const SentimentRecord> records, Date trading_day);

/// Groups records by (trading day, source, model) and votes each group.
/// Output is ordered by key, then day.
std::vector<DailySentiment> aggregate_daily(std::span<const SentimentRecord> records, const TradingCalendar &calendar);

struct SentimentCell {
	Signal label = Signal::Neutral;
	bool missing = true;

	friend bool operator==(const SentimentCell &, const SentimentCell &) = default;
};

struct AlignedRow {
	Date trading_day;                 ///< day whose return class is predicted
	std::optional<Date> sentiment_day; ///< trading_day shifted back by the lag
	Signal return_class = Signal::Neutral;
	std::map<SentimentKey, SentimentCell> sentiment;
};

struct AlignedDataset {
	int lag = 1;
	std::vector<SentimentKey> keys;
	std::vector<AlignedRow> rows;

	/// Sentiment of one key as a signal dated by trading_day.
	SignalSeries sentiment_signals(const SentimentKey &key) const;
};

inline constexpr int kDefaultLag = 1;

/// One row per class day. Sentiment from calendar position p - k is paired with
/// the class at position p; days without any articles are neutral and flagged.
AlignedDataset join_sentiment_returns(std::span<const DailySentiment> daily, const ClassSeries &classes, int lag,
                                      const TradingCalendar &calendar);

// --- file contracts ------------------------------------------------------------

/// `timestamp_et,source,title,text`
std::vector<NewsArticle> parse_news_csv(std::string_view text);
std::string write_news_csv(std::span<const NewsArticle> articles);

/// `timestamp_et,source,model,label,score` (score may be empty)
std::vector<SentimentRecord> parse_sentiment_csv(std::string_view text);
std::string write_sentiment_csv(std::span<const SentimentRecord> records);

/// `date,source,model,label,n_neg,n_neu,n_pos,first_label`
std::string write_daily_sentiment_csv(std::span<const DailySentiment> daily);
std::vector<DailySentiment> parse_daily_sentiment_csv(std::string_view text);

} // namespace sentitrade
