#include "sentitrade/market_data.hpp"

#include "sentitrade/csv.hpp"

#include <algorithm>

namespace sentitrade {

namespace {

void validate_bar(const PriceBar &b, std::size_t row) {
	if (b.open < 0.0 || b.high < 0.0 || b.low < 0.0 || b.close < 0.0 || b.adj_close <= 0.0) {
		throw Error(ErrorKind::NegativePrice, "prices must be non-negative and adj_close positive", row);
	}
	if (b.volume < 0) {
		throw Error(ErrorKind::NegativePrice, "negative volume", row);
	}
	if (b.low > b.high || b.open < b.low || b.open > b.high || b.close < b.low || b.close > b.high) {
		throw Error(ErrorKind::InconsistentBar, "expected low <= open,close <= high", row);
	}
}

void validate_order(const std::vector<PriceBar> &bars, std::size_t i, std::size_t row) {
	if (i == 0) {
		return;
	}
	if (bars[i].date == bars[i - 1].date) {
		throw Error(ErrorKind::DuplicateDate, "duplicate date " + bars[i].date.iso(), row);
	}
	if (bars[i].date < bars[i - 1].date) {
		throw Error(ErrorKind::NonMonotonicDate, bars[i].date.iso() + " follows " + bars[i - 1].date.iso(), row);
	}
}

} // namespace

PriceSeries::PriceSeries(std::vector<PriceBar> bars) : bars_(std::move(bars)) {
	for (std::size_t i = 0; i < bars_.size(); ++i) {
		validate_bar(bars_[i], i + 1);
		validate_order(bars_, i, i + 1);
	}
}

std::vector<Date> PriceSeries::dates() const {
	std::vector<Date> out;
	out.reserve(bars_.size());
	for (const auto &b : bars_) {
		out.push_back(b.date);
	}
	return out;
}

std::vector<double> PriceSeries::adj_closes() const {
	std::vector<double> out;
	out.reserve(bars_.size());
	for (const auto &b : bars_) {
		out.push_back(b.adj_close);
	}
	return out;
}

std::vector<double> PriceSeries::closes() const {
	std::vector<double> out;
	out.reserve(bars_.size());
	for (const auto &b : bars_) {
		out.push_back(b.close);
	}
	return out;
}

std::vector<double> PriceSeries::volumes() const {
	std::vector<double> out;
	out.reserve(bars_.size());
	for (const auto &b : bars_) {
		out.push_back(static_cast<double>(b.volume));
	}
	return out;
}

PriceSeries PriceSeries::slice(Date from, Date to) const {
	std::vector<PriceBar> out;
	for (const auto &b : bars_) {
		if (b.date >= from && b.date <= to) {
			out.push_back(b);
		}
	}
	return PriceSeries{std::move(out)};
}

void Thresholds::validate() const {
	if (!(negative < 0.0 && 0.0 < positive)) {
		throw Error(ErrorKind::InvalidThresholds, "require negative < 0 < positive");
	}
}

PriceSeries parse_price_csv(std::string_view text) {
	const auto rows = csv::parse(text);
	if (rows.empty()) {
		throw Error(ErrorKind::MissingColumn, "price file has no header", 0);
	}
	const csv::Header header(rows.front());
	const std::size_t c_date = header.index("date");
	const std::size_t c_open = header.index("open");
	const std::size_t c_high = header.index("high");
	const std::size_t c_low = header.index("low");
	const std::size_t c_close = header.index("close");
	const std::size_t c_adj = header.index("adj_close");
	const std::size_t c_vol = header.index("volume");
	const std::size_t width = rows.front().size();

	std::vector<PriceBar> bars;
	bars.reserve(rows.size() - 1);
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto &row = rows[r];
		if (row.size() < width) {
			throw Error(ErrorKind::Malformed, "expected " + std::to_string(width) + " fields", r);
		}
		auto number = [&](std::size_t col) {
			auto v = csv::parse_double(row[col]);
			if (!v) {
				throw Error(ErrorKind::Malformed, "unparsable number '" + row[col] + "'", r);
			}
			return *v;
		};
		auto date = Date::parse(row[c_date]);
		if (!date) {
			throw Error(ErrorKind::Malformed, "unparsable date '" + row[c_date] + "'", r);
		}
		auto volume = csv::parse_int(row[c_vol]);
		if (!volume) {
			throw Error(ErrorKind::Malformed, "unparsable volume '" + row[c_vol] + "'", r);
		}
		PriceBar bar{*date, number(c_open), number(c_high), number(c_low), number(c_close), number(c_adj), *volume};
		bars.push_back(bar);
		validate_bar(bars.back(), r);
		validate_order(bars, bars.size() - 1, r);
	}
	return PriceSeries{std::move(bars)};
}

std::string write_price_csv(const PriceSeries &prices) {
	std::string out = "date,open,high,low,close,adj_close,volume\n";
	for (const auto &b : prices.bars()) {
		out += b.date.iso();
		for (double v : {b.open, b.high, b.low, b.close, b.adj_close}) {
			out += ',';
			out += csv::format_double(v);
		}
		out += ',' + std::to_string(b.volume) + '\n';
	}
	return out;
}

ReturnSeries compute_returns(const PriceSeries &prices) {
	if (prices.size() < 2) {
		throw Error(ErrorKind::TooShort, "need at least two bars to compute returns");
	}
	ReturnSeries out;
	out.reserve(prices.size() - 1);
	for (std::size_t i = 1; i < prices.size(); ++i) {
		const double prev = prices[i - 1].adj_close;
		out.push_back({prices[i].date, (prices[i].adj_close - prev) / prev});
	}
	return out;
}

Signal classify_return(double r, const Thresholds &thresholds) {
	if (r > thresholds.positive) {
		return Signal::Positive;
	}
	if (r < thresholds.negative) {
		return Signal::Negative;
	}
	return Signal::Neutral;
}

ClassSeries label_returns(const ReturnSeries &returns, const Thresholds &thresholds) {
	thresholds.validate();
	ClassSeries out;
	out.reserve(returns.size());
	for (const auto &[date, r] : returns) {
		out.push_back({date, classify_return(r, thresholds)});
	}
	return out;
}

std::vector<double> values_of(const ReturnSeries &returns) {
	std::vector<double> out;
	out.reserve(returns.size());
	for (const auto &e : returns) {
		out.push_back(e.value);
	}
	return out;
}

} // namespace sentitrade
