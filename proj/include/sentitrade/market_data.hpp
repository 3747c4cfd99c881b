#pragma once

#include "sentitrade/core.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentitrade {

struct PriceBar {
	Date date;
	double open = 0.0;
	double high = 0.0;
	double low = 0.0;
	double close = 0.0;
	double adj_close = 0.0;
	std::int64_t volume = 0;

	friend bool operator==(const PriceBar &, const PriceBar &) = default;
};

/// Daily bars with strictly increasing dates. The set of dates present is the
/// trading calendar; nothing else defines a session.
class PriceSeries {
public:
	PriceSeries() = default;
	/// Validates every bar and the date ordering; throws on violation.
	explicit PriceSeries(std::vector<PriceBar> bars);

	const std::vector<PriceBar> &bars() const noexcept { return bars_; }
	std::size_t size() const noexcept { return bars_.size(); }
	bool empty() const noexcept { return bars_.empty(); }
	const PriceBar &operator[](std::size_t i) const { return bars_[i]; }

	std::vector<Date> dates() const;
	std::vector<double> adj_closes() const;
	std::vector<double> closes() const;
	std::vector<double> volumes() const;

	/// Bars with from <= date <= to.
	PriceSeries slice(Date from, Date to) const;

private:
	std::vector<PriceBar> bars_;
};

using ReturnSeries = std::vector<Dated<double>>;
using ClassSeries = std::vector<Dated<Signal>>;

/// Class boundaries for returns and forecasts. Values on a boundary are neutral.
struct Thresholds {
	double positive = 0.01;
	double negative = -0.01;

	void validate() const;
	friend bool operator==(const Thresholds &, const Thresholds &) = default;
};

/// +1% / -1%, shared by return labeling and forecast mapping.
inline constexpr Thresholds kDefaultThresholds{};

/// Parses `date,open,high,low,close,adj_close,volume` (extra columns ignored).
PriceSeries parse_price_csv(std::string_view text);
std::string write_price_csv(const PriceSeries &prices);

/// Simple returns of the adjusted close, dated by the later bar.
ReturnSeries compute_returns(const PriceSeries &prices);

Signal classify_return(double r, const Thresholds &thresholds);
ClassSeries label_returns(const ReturnSeries &returns, const Thresholds &thresholds = kDefaultThresholds);

std::vector<double> values_of(const ReturnSeries &returns);

} // namespace sentitrade
