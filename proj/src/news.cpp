#include "sentitrade/news.hpp"

#include "sentitrade/csv.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace sentitrade {

namespace {

std::string normalize_token(std::string_view text) {
	std::string out;
	for (char c : text) {
		if (std::isalnum(static_cast<unsigned char>(c))) {
			out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
		}
	}
	return out;
}

bool is_space(char c) {
	return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

unsigned month_from_name(std::string_view name) {
	static constexpr std::string_view kMonths[] = {"jan", "feb", "mar", "apr", "may", "jun",
	                                               "jul", "aug", "sep", "oct", "nov", "dec"};
	const std::string key = normalize_token(name.substr(0, 3));
	for (unsigned i = 0; i < 12; ++i) {
		if (key == kMonths[i]) {
			return i + 1;
		}
	}
	return 0;
}

std::optional<Date> make_date(int y, unsigned m, unsigned d) {
	std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
	if (!ymd.ok()) {
		return std::nullopt;
	}
	return Date{std::chrono::sys_days{ymd}};
}

struct DatePattern {
	std::regex re;
	// builds a date from the match, or nullopt for impossible dates
	std::optional<Date> (*build)(const std::smatch &);
};

const std::vector<DatePattern> &date_patterns() {
	static const std::vector<DatePattern> patterns = [] {
		std::vector<DatePattern> p;
		p.push_back({std::regex(R"(\b(Jan(?:uary)?|Feb(?:ruary)?|Mar(?:ch)?|Apr(?:il)?|May|June?|July?|Aug(?:ust)?|)"
		                        R"(Sep(?:t(?:ember)?)?|Oct(?:ober)?|Nov(?:ember)?|Dec(?:ember)?)\.? (\d{1,2}),? (\d{4})\b)"),
		             [](const std::smatch &m) {
			             return make_date(std::stoi(m[3].str()), month_from_name(m[1].str()),
			                              static_cast<unsigned>(std::stoi(m[2].str())));
		             }});
		p.push_back({std::regex(R"(\b(\d{4})-(\d{2})-(\d{2})(?!\d))"), [](const std::smatch &m) {
			             return make_date(std::stoi(m[1].str()), static_cast<unsigned>(std::stoi(m[2].str())),
			                              static_cast<unsigned>(std::stoi(m[3].str())));
		             }});
		p.push_back({std::regex(R"(\b(\d{1,2})/(\d{1,2})/(\d{4})(?!\d))"), [](const std::smatch &m) {
			             return make_date(std::stoi(m[3].str()), static_cast<unsigned>(std::stoi(m[1].str())),
			                              static_cast<unsigned>(std::stoi(m[2].str())));
		             }});
		return p;
	}();
	return patterns;
}

std::string_view label_text(Signal s) {
	switch (s) {
	case Signal::Negative: return "-1";
	case Signal::Neutral: return "0";
	case Signal::Positive: return "1";
	}
	return "0";
}

Signal parse_label(std::string_view text, std::size_t row) {
	auto v = csv::parse_int(text);
	if (!v || *v < -1 || *v > 1) {
		throw Error(ErrorKind::Malformed, "label must be -1, 0 or 1, got '" + std::string(text) + "'", row);
	}
	return static_cast<Signal>(*v);
}

} // namespace

std::string_view to_string(NewsSource s) noexcept {
	switch (s) {
	case NewsSource::DowJones: return "DowJones";
	case NewsSource::Benzinga: return "Benzinga";
	case NewsSource::Barron: return "Barron";
	case NewsSource::MarketWatch: return "MarketWatch";
	case NewsSource::WSJ: return "WSJ";
	}
	return "?";
}

std::string_view to_string(SentimentModel m) noexcept {
	return m == SentimentModel::GPT2 ? "GPT2" : "FinBERT";
}

NewsSource parse_news_source(std::string_view text) {
	const std::string key = normalize_token(text);
	if (key == "dowjones") return NewsSource::DowJones;
	if (key == "benzinga") return NewsSource::Benzinga;
	if (key == "barron" || key == "barrons") return NewsSource::Barron;
	if (key == "marketwatch") return NewsSource::MarketWatch;
	if (key == "wsj" || key == "wallstreetjournal") return NewsSource::WSJ;
	throw Error(ErrorKind::Malformed, "unknown news source '" + std::string(text) + "'");
}

SentimentModel parse_sentiment_model(std::string_view text) {
	const std::string key = normalize_token(text);
	if (key == "gpt2" || key == "gpt") return SentimentModel::GPT2;
	if (key == "finbert") return SentimentModel::FinBERT;
	throw Error(ErrorKind::Malformed, "unknown sentiment model '" + std::string(text) + "'");
}

std::string SentimentKey::name() const {
	return std::string(to_string(model)) + " " + std::string(to_string(source));
}

// --- calendar ------------------------------------------------------------------

TradingCalendar::TradingCalendar(std::vector<Date> dates) : dates_(std::move(dates)) {
	std::sort(dates_.begin(), dates_.end());
	dates_.erase(std::unique(dates_.begin(), dates_.end()), dates_.end());
}

TradingCalendar TradingCalendar::from_prices(const PriceSeries &prices) {
	return TradingCalendar{prices.dates()};
}

bool TradingCalendar::contains(Date d) const {
	return std::binary_search(dates_.begin(), dates_.end(), d);
}

std::optional<std::size_t> TradingCalendar::position(Date d) const {
	auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
	if (it == dates_.end() || *it != d) {
		return std::nullopt;
	}
	return static_cast<std::size_t>(it - dates_.begin());
}

std::optional<Date> TradingCalendar::on_or_after(Date d) const {
	auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
	if (it == dates_.end()) {
		return std::nullopt;
	}
	return *it;
}

std::optional<Date> TradingCalendar::after(Date d) const {
	auto it = std::upper_bound(dates_.begin(), dates_.end(), d);
	if (it == dates_.end()) {
		return std::nullopt;
	}
	return *it;
}

// --- text cleaning -----------------------------------------------------------

std::string clean_article(std::string_view raw, const CleaningRules &rules) {
	std::size_t cut = raw.size();
	for (const auto &marker : rules.boilerplate_markers) {
		if (marker.empty()) {
			continue;
		}
		cut = std::min(cut, raw.find(marker));
	}
	raw = raw.substr(0, cut);

	std::string out;
	out.reserve(raw.size());
	bool pending_space = false;
	for (char c : raw) {
		if (is_space(c)) {
			pending_space = !out.empty();
			continue;
		}
		if (pending_space) {
			out.push_back(' ');
			pending_space = false;
		}
		out.push_back(c);
	}
	return out;
}

bool is_non_news(const NewsArticle &article, const CleaningRules &rules) {
	for (const auto &kw : rules.drop_keywords) {
		if (!kw.empty() && (article.title.find(kw) != std::string::npos || article.text.find(kw) != std::string::npos)) {
			return true;
		}
	}
	return false;
}

std::optional<Date> extract_embedded_date(std::string_view raw) {
	const std::string text(raw);
	std::optional<Date> best;
	std::ptrdiff_t best_pos = -1;
	for (const auto &pattern : date_patterns()) {
		for (auto it = std::sregex_iterator(text.begin(), text.end(), pattern.re); it != std::sregex_iterator(); ++it) {
			const auto pos = it->position(0);
			if (best_pos >= 0 && pos >= best_pos) {
				break;
			}
			if (auto d = pattern.build(*it)) {
				best = d;
				best_pos = pos;
				break;
			}
		}
	}
	return best;
}

std::vector<NewsArticle> preprocess_articles(std::vector<NewsArticle> articles, const CleaningRules &rules) {
	std::vector<NewsArticle> out;
	out.reserve(articles.size());
	for (auto &a : articles) {
		if (is_non_news(a, rules)) {
			continue;
		}
		if (!a.timestamp) {
			auto embedded = extract_embedded_date(a.text);
			if (!embedded) {
				embedded = extract_embedded_date(a.title);
			}
			if (!embedded) {
				continue;
			}
			a.timestamp = DateTime{*embedded, 0};
		}
		a.text = clean_article(a.text, rules);
		out.push_back(std::move(a));
	}
	return out;
}

// --- alignment -------------------------------------------------------------------

Date assign_trading_day(const DateTime &ts, const TradingCalendar &calendar) {
	if (calendar.empty()) {
		throw Error(ErrorKind::EmptyInput, "trading calendar is empty");
	}
	if (ts.date < calendar[0].plus_days(-7) || ts.date > calendar[calendar.size() - 1].plus_days(7)) {
		throw Error(ErrorKind::BeyondCalendar, ts.str() + " lies outside the calendar span");
	}
	constexpr int kMarketClose = 16 * 60;
	const auto day = ts.minute_of_day >= kMarketClose ? calendar.after(ts.date) : calendar.on_or_after(ts.date);
	if (!day) {
		throw Error(ErrorKind::BeyondCalendar, "no trading day on or after " + ts.str());
	}
	return *day;
}

DailySentiment vote_daily(std::span<const SentimentRecord> records, Date trading_day) {
	if (records.empty()) {
		throw Error(ErrorKind::EmptyGroup, "no sentiment records for " + trading_day.iso());
	}
	DailySentiment out;
	out.trading_day = trading_day;
	out.key = {records.front().source, records.front().model};

	const SentimentRecord *first = &records.front();
	for (const auto &r : records) {
		if (r.source != out.key.source || r.model != out.key.model) {
			throw Error(ErrorKind::Malformed, "vote group mixes sources or models");
		}
		++out.vote_counts[static_cast<std::size_t>(to_int(r.label) + 1)];
		if (r.timestamp < first->timestamp) {
			first = &r;
		}
	}
	out.first_label = first->label;

	const int best = *std::max_element(out.vote_counts.begin(), out.vote_counts.end());
	int n_best = 0;
	Signal mode = Signal::Neutral;
	for (int v = -1; v <= 1; ++v) {
		if (out.vote_counts[static_cast<std::size_t>(v + 1)] == best) {
			++n_best;
			mode = static_cast<Signal>(v);
		}
	}
	if (n_best == 1) {
		out.label = mode;
	} else {
		out.label = out.count(out.first_label) == best ? out.first_label : Signal::Neutral;
	}
	return out;
}

std::vector<DailySentiment> aggregate_daily(std::span<const SentimentRecord> records, const TradingCalendar &calendar) {
	std::map<std::pair<SentimentKey, Date>, std::vector<SentimentRecord>> groups;
	for (const auto &r : records) {
		const Date day = assign_trading_day(r.timestamp, calendar);
		groups[{SentimentKey{r.source, r.model}, day}].push_back(r);
	}
	std::vector<DailySentiment> out;
	out.reserve(groups.size());
	for (const auto &[key, group] : groups) {
		out.push_back(vote_daily(group, key.second));
	}
	return out;
}

AlignedDataset join_sentiment_returns(std::span<const DailySentiment> daily, const ClassSeries &classes, int lag,
                                      const TradingCalendar &calendar) {
	if (lag < 0 || lag > 2) {
		throw Error(ErrorKind::LagOutOfRange, "lag must be 0, 1 or 2, got " + std::to_string(lag));
	}
	std::map<SentimentKey, std::map<Date, Signal>> by_key;
	for (const auto &d : daily) {
		by_key[d.key][d.trading_day] = d.label;
	}

	AlignedDataset out;
	out.lag = lag;
	for (const auto &[key, _] : by_key) {
		out.keys.push_back(key);
	}
	out.rows.reserve(classes.size());
	for (const auto &[day, cls] : classes) {
		const auto pos = calendar.position(day);
		if (!pos) {
			throw Error(ErrorKind::BeyondCalendar, "class day " + day.iso() + " is not on the calendar");
		}
		AlignedRow row;
		row.trading_day = day;
		row.return_class = cls;
		if (*pos >= static_cast<std::size_t>(lag)) {
			row.sentiment_day = calendar[*pos - static_cast<std::size_t>(lag)];
		}
		for (const auto &[key, days] : by_key) {
			SentimentCell cell;
			if (row.sentiment_day) {
				if (auto it = days.find(*row.sentiment_day); it != days.end()) {
					cell = {it->second, false};
				}
			}
			row.sentiment.emplace(key, cell);
		}
		out.rows.push_back(std::move(row));
	}
	return out;
}

SignalSeries AlignedDataset::sentiment_signals(const SentimentKey &key) const {
	SignalSeries out;
	out.source = key.name();
	out.entries.reserve(rows.size());
	for (const auto &row : rows) {
		auto it = row.sentiment.find(key);
		out.entries.push_back({row.trading_day, it == row.sentiment.end() ? Signal::Neutral : it->second.label});
	}
	return out;
}

// --- file contracts ------------------------------------------------------------

std::vector<NewsArticle> parse_news_csv(std::string_view text) {
	const auto rows = csv::parse(text);
	if (rows.empty()) {
		throw Error(ErrorKind::MissingColumn, "news file has no header", 0);
	}
	const csv::Header header(rows.front());
	const auto c_ts = header.index("timestamp_et");
	const auto c_src = header.index("source");
	const auto c_title = header.index("title");
	const auto c_text = header.index("text");
	std::vector<NewsArticle> out;
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto &row = rows[r];
		if (row.size() < rows.front().size()) {
			throw Error(ErrorKind::Malformed, "too few fields", r);
		}
		NewsArticle a;
		if (!row[c_ts].empty()) {
			a.timestamp = DateTime::parse(row[c_ts]);
			if (!a.timestamp) {
				throw Error(ErrorKind::Malformed, "bad timestamp '" + row[c_ts] + "'", r);
			}
		}
		try {
			a.source = parse_news_source(row[c_src]);
		} catch (const Error &e) {
			throw Error(ErrorKind::Malformed, e.what(), r);
		}
		a.title = row[c_title];
		a.text = row[c_text];
		out.push_back(std::move(a));
	}
	return out;
}

std::string write_news_csv(std::span<const NewsArticle> articles) {
	std::string out = "timestamp_et,source,title,text\n";
	for (const auto &a : articles) {
		out += csv::join({a.timestamp ? a.timestamp->str() : std::string{}, std::string(to_string(a.source)), a.title,
		                  a.text});
		out += '\n';
	}
	return out;
}

std::vector<SentimentRecord> parse_sentiment_csv(std::string_view text) {
	const auto rows = csv::parse(text);
	if (rows.empty()) {
		throw Error(ErrorKind::MissingColumn, "sentiment file has no header", 0);
	}
	const csv::Header header(rows.front());
	const auto c_ts = header.index("timestamp_et");
	const auto c_src = header.index("source");
	const auto c_model = header.index("model");
	const auto c_label = header.index("label");
	const auto c_score = header.find("score");
	std::vector<SentimentRecord> out;
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto &row = rows[r];
		if (row.size() < rows.front().size()) {
			throw Error(ErrorKind::Malformed, "too few fields", r);
		}
		SentimentRecord rec;
		auto ts = DateTime::parse(row[c_ts]);
		if (!ts) {
			throw Error(ErrorKind::Malformed, "bad timestamp '" + row[c_ts] + "'", r);
		}
		rec.timestamp = *ts;
		try {
			rec.source = parse_news_source(row[c_src]);
			rec.model = parse_sentiment_model(row[c_model]);
		} catch (const Error &e) {
			throw Error(ErrorKind::Malformed, e.what(), r);
		}
		rec.label = parse_label(row[c_label], r);
		if (c_score && !row[*c_score].empty()) {
			auto s = csv::parse_double(row[*c_score]);
			if (!s || *s < 0.0 || *s > 1.0) {
				throw Error(ErrorKind::Malformed, "score must lie in [0,1]", r);
			}
			rec.score = *s;
		}
		out.push_back(rec);
	}
	return out;
}

std::string write_sentiment_csv(std::span<const SentimentRecord> records) {
	std::string out = "timestamp_et,source,model,label,score\n";
	for (const auto &r : records) {
		out += csv::join({r.timestamp.str(), std::string(to_string(r.source)), std::string(to_string(r.model)),
		                  std::string(label_text(r.label)), r.score ? csv::format_double(*r.score) : std::string{}});
		out += '\n';
	}
	return out;
}

std::string write_daily_sentiment_csv(std::span<const DailySentiment> daily) {
	std::string out = "date,source,model,label,n_neg,n_neu,n_pos,first_label\n";
	for (const auto &d : daily) {
		out += csv::join({d.trading_day.iso(), std::string(to_string(d.key.source)), std::string(to_string(d.key.model)),
		                  std::string(label_text(d.label)), std::to_string(d.vote_counts[0]),
		                  std::to_string(d.vote_counts[1]), std::to_string(d.vote_counts[2]),
		                  std::string(label_text(d.first_label))});
		out += '\n';
	}
	return out;
}

std::vector<DailySentiment> parse_daily_sentiment_csv(std::string_view text) {
	const auto rows = csv::parse(text);
	if (rows.empty()) {
		throw Error(ErrorKind::MissingColumn, "daily sentiment file has no header", 0);
	}
	const csv::Header header(rows.front());
	const auto c_date = header.index("date");
	const auto c_src = header.index("source");
	const auto c_model = header.index("model");
	const auto c_label = header.index("label");
	const auto c_neg = header.index("n_neg");
	const auto c_neu = header.index("n_neu");
	const auto c_pos = header.index("n_pos");
	const auto c_first = header.index("first_label");
	std::vector<DailySentiment> out;
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto &row = rows[r];
		DailySentiment d;
		auto date = Date::parse(row.at(c_date));
		if (!date) {
			throw Error(ErrorKind::Malformed, "bad date", r);
		}
		d.trading_day = *date;
		d.key = {parse_news_source(row.at(c_src)), parse_sentiment_model(row.at(c_model))};
		d.label = parse_label(row.at(c_label), r);
		d.first_label = parse_label(row.at(c_first), r);
		std::size_t i = 0;
		for (auto c : {c_neg, c_neu, c_pos}) {
			auto n = csv::parse_int(row.at(c));
			if (!n || *n < 0) {
				throw Error(ErrorKind::Malformed, "bad vote count", r);
			}
			d.vote_counts[i++] = static_cast<int>(*n);
		}
		out.push_back(d);
	}
	return out;
}

} // namespace sentitrade
