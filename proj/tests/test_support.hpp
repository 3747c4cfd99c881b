#pragma once

#include "sentitrade/core.hpp"
#include "sentitrade/csv.hpp"
#include "sentitrade/market_data.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace test_support {

inline std::filesystem::path fixture(const std::string &name) {
	return std::filesystem::path(SENTITRADE_FIXTURES) / name;
}

inline std::string read_fixture(const std::string &name) {
	return sentitrade::csv::read_file(fixture(name));
}

/// Consecutive weekdays starting at 2024-01-01.
inline std::vector<sentitrade::Date> weekdays(std::size_t n, sentitrade::Date start = sentitrade::Date(2024, 1, 1)) {
	std::vector<sentitrade::Date> out;
	for (sentitrade::Date d = start; out.size() < n; d = d.plus_days(1)) {
		if (!d.is_weekend()) {
			out.push_back(d);
		}
	}
	return out;
}

/// Bars whose close and adj_close equal `closes`, with a symmetric 1% envelope.
inline sentitrade::PriceSeries bars_from_closes(const std::vector<double> &closes, std::vector<double> volumes = {}) {
	const auto dates = weekdays(closes.size());
	std::vector<sentitrade::PriceBar> bars;
	for (std::size_t i = 0; i < closes.size(); ++i) {
		sentitrade::PriceBar b;
		b.date = dates[i];
		b.open = closes[i];
		b.close = closes[i];
		b.adj_close = closes[i];
		b.high = closes[i] * 1.01;
		b.low = closes[i] * 0.99;
		b.volume = volumes.empty() ? 1000000 : static_cast<std::int64_t>(volumes[i]);
		bars.push_back(b);
	}
	return sentitrade::PriceSeries(std::move(bars));
}

inline std::vector<double> random_walk(std::mt19937_64 &rng, std::size_t n, double start = 100.0, double vol = 0.01) {
	std::normal_distribution<double> step(0.0, vol);
	std::vector<double> out{start};
	while (out.size() < n) {
		out.push_back(out.back() * (1.0 + step(rng)));
	}
	return out;
}

} // namespace test_support
