#pragma once

// Second implementations used as test oracles. They are written for clarity,
// not speed, and deliberately share no code with the library.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// EMA with SMA seed, written in incremental form e += a * (x - e).
/// Inputs may begin with NaN warm-up values, which are skipped.
inline std::vector<double> ema(const std::vector<double> &x, int n) {
	std::vector<double> out(x.size(), kNaN);
	std::size_t start = 0;
	while (start < x.size() && std::isnan(x[start])) {
		++start;
	}
	if (x.size() < start + static_cast<std::size_t>(n)) {
		return out;
	}
	double sum = 0.0;
	for (int i = 0; i < n; ++i) {
		sum += x[start + static_cast<std::size_t>(i)];
	}
	double e = sum / n;
	const double a = 2.0 / (n + 1.0);
	std::size_t t = start + static_cast<std::size_t>(n) - 1;
	out[t] = e;
	for (++t; t < x.size(); ++t) {
		e += a * (x[t] - e);
		out[t] = e;
	}
	return out;
}

struct Macd {
	std::vector<double> line, signal, hist;
};

inline Macd macd_from_emas(const std::vector<double> &fast, const std::vector<double> &slow, int signal) {
	Macd m;
	for (std::size_t t = 0; t < fast.size(); ++t) {
		m.line.push_back(std::isnan(fast[t]) || std::isnan(slow[t]) ? kNaN : fast[t] - slow[t]);
	}
	m.signal = ema(m.line, signal);
	for (std::size_t t = 0; t < fast.size(); ++t) {
		m.hist.push_back(std::isnan(m.signal[t]) ? kNaN : m.line[t] - m.signal[t]);
	}
	return m;
}

inline Macd macd(const std::vector<double> &close, int fast, int slow, int signal) {
	return macd_from_emas(ema(close, fast), ema(close, slow), signal);
}

inline Macd vw_macd(const std::vector<double> &close, const std::vector<double> &volume, int fast, int slow, int signal) {
	std::vector<double> pv;
	for (std::size_t t = 0; t < close.size(); ++t) {
		pv.push_back(close[t] * volume[t]);
	}
	auto vwema = [&](int n) {
		const auto num = ema(pv, n);
		const auto den = ema(volume, n);
		std::vector<double> out;
		for (std::size_t t = 0; t < close.size(); ++t) {
			out.push_back(std::isnan(den[t]) ? kNaN : num[t] / den[t]);
		}
		return out;
	};
	return macd_from_emas(vwema(fast), vwema(slow), signal);
}

inline int sign_of_sum(const std::vector<int> &components) {
	int s = 0;
	for (int c : components) {
		s += c;
	}
	return (s > 0) - (s < 0);
}

struct State {
	double cash, shares, price, value;
};

/// Literal replay of the all-in/all-out rules: the signal acted on at day t is
/// signals[t] (same day) or signals[t-1] (next day).
inline std::vector<State> replay(const std::vector<double> &prices, const std::vector<int> &signals, double capital,
                                 bool next_day) {
	std::vector<State> out;
	double c = capital;
	double s = 0.0;
	for (std::size_t t = 0; t < prices.size(); ++t) {
		int act = 0;
		if (!next_day) {
			act = signals[t];
		} else if (t > 0) {
			act = signals[t - 1];
		}
		const double p = prices[t];
		if (act == 1 && c > 0) {
			s = c / p;
			c = 0;
		}
		if (act == -1 && s > 0) {
			c = s * p;
			s = 0;
		}
		out.push_back({c, s, p, c + s * p});
	}
	return out;
}

} // namespace oracle
