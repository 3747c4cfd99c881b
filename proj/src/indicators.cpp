#include "sentitrade/indicators.hpp"

#include <algorithm>
#include <cctype>

namespace sentitrade::indicators {

namespace {

std::size_t first_defined(std::span<const double> xs) {
	std::size_t i = 0;
	while (i < xs.size() && !defined(xs[i])) {
		++i;
	}
	return i;
}

Signal compare(double a, double b) {
	return a > b ? Signal::Positive : (a < b ? Signal::Negative : Signal::Neutral);
}

void check_macd_params(const MacdParams &p) {
	if (p.fast < 1 || p.slow < 1 || p.signal < 1) {
		throw Error(ErrorKind::Config, "MACD periods must be positive");
	}
}

SignalSeries state_signals(const MacdOutput &m, std::span<const Date> dates, std::string source) {
	SignalSeries out{std::move(source), {}};
	for (std::size_t t = 0; t < dates.size(); ++t) {
		if (defined(m.macd_line[t]) && defined(m.signal_line[t])) {
			out.entries.push_back({dates[t], compare(m.macd_line[t], m.signal_line[t])});
		}
	}
	return out;
}

SignalSeries cross_signals(const MacdOutput &m, std::span<const Date> dates, std::string source) {
	SignalSeries out{std::move(source), {}};
	for (std::size_t t = 1; t < dates.size(); ++t) {
		const double prev = m.histogram[t - 1];
		const double cur = m.histogram[t];
		if (!defined(prev) || !defined(cur)) {
			continue;
		}
		Signal s = Signal::Neutral;
		if (prev <= 0.0 && cur > 0.0) {
			s = Signal::Positive;
		} else if (prev >= 0.0 && cur < 0.0) {
			s = Signal::Negative;
		}
		out.entries.push_back({dates[t], s});
	}
	return out;
}

void check_aligned(std::size_t n, std::span<const Date> dates) {
	if (dates.size() != n) {
		throw Error(ErrorKind::WindowMismatch, "dates do not align with indicator output");
	}
}

} // namespace

std::vector<double> ema(std::span<const double> series, int period) {
	if (period < 1) {
		throw Error(ErrorKind::Config, "EMA period must be >= 1");
	}
	std::vector<double> out(series.size(), kUndefined);
	const std::size_t start = first_defined(series);
	const auto n = static_cast<std::size_t>(period);
	if (series.size() - start < n) {
		throw Error(ErrorKind::PeriodTooLong,
		            "EMA period " + std::to_string(period) + " exceeds " + std::to_string(series.size() - start) + " values");
	}
	double seed = 0.0;
	for (std::size_t i = start; i < start + n; ++i) {
		seed += series[i];
	}
	seed /= static_cast<double>(n);
	const double alpha = 2.0 / (static_cast<double>(period) + 1.0);
	std::size_t t = start + n - 1;
	out[t] = seed;
	for (++t; t < series.size(); ++t) {
		out[t] = alpha * series[t] + (1.0 - alpha) * out[t - 1];
	}
	return out;
}

MacdOutput macd(std::span<const double> close, const MacdParams &params) {
	check_macd_params(params);
	if (close.size() < static_cast<std::size_t>(std::max(params.fast, params.slow) + params.signal)) {
		throw Error(ErrorKind::SeriesTooShort, "MACD needs at least slow + signal bars");
	}
	const auto fast = ema(close, params.fast);
	const auto slow = ema(close, params.slow);
	MacdOutput out;
	out.macd_line.assign(close.size(), kUndefined);
	for (std::size_t t = 0; t < close.size(); ++t) {
		if (defined(fast[t]) && defined(slow[t])) {
			out.macd_line[t] = fast[t] - slow[t];
		}
	}
	out.signal_line = ema(out.macd_line, params.signal);
	out.histogram.assign(close.size(), kUndefined);
	for (std::size_t t = 0; t < close.size(); ++t) {
		if (defined(out.signal_line[t])) {
			out.histogram[t] = out.macd_line[t] - out.signal_line[t];
		}
	}
	return out;
}

VwMacdOutput vw_macd(std::span<const double> close, std::span<const double> volume, const MacdParams &params) {
	check_macd_params(params);
	if (close.size() != volume.size()) {
		throw Error(ErrorKind::WindowMismatch, "close and volume lengths differ");
	}
	if (close.size() < static_cast<std::size_t>(std::max(params.fast, params.slow) + params.signal)) {
		throw Error(ErrorKind::SeriesTooShort, "VW MACD needs at least slow + signal bars");
	}
	std::vector<double> weighted(close.size());
	for (std::size_t t = 0; t < close.size(); ++t) {
		if (volume[t] < 0.0) {
			throw Error(ErrorKind::NegativePrice, "negative volume", t + 1);
		}
		weighted[t] = close[t] * volume[t];
	}
	auto vwema = [&](int n) {
		const auto num = ema(weighted, n);
		const auto den = ema(volume, n);
		std::vector<double> out(close.size(), kUndefined);
		for (std::size_t t = 0; t < close.size(); ++t) {
			if (!defined(den[t])) {
				continue;
			}
			if (den[t] == 0.0) {
				throw Error(ErrorKind::ZeroVolumeWindow, "volume EMA is zero at index " + std::to_string(t));
			}
			out[t] = num[t] / den[t];
		}
		return out;
	};

	VwMacdOutput out;
	out.vwema_fast = vwema(params.fast);
	out.vwema_slow = vwema(params.slow);
	auto &m = out.macd;
	m.macd_line.assign(close.size(), kUndefined);
	for (std::size_t t = 0; t < close.size(); ++t) {
		if (defined(out.vwema_fast[t]) && defined(out.vwema_slow[t])) {
			m.macd_line[t] = out.vwema_fast[t] - out.vwema_slow[t];
		}
	}
	m.signal_line = ema(m.macd_line, params.signal);
	m.histogram.assign(close.size(), kUndefined);
	for (std::size_t t = 0; t < close.size(); ++t) {
		if (defined(m.signal_line[t])) {
			m.histogram[t] = m.macd_line[t] - m.signal_line[t];
		}
	}
	return out;
}

SarOutput parabolic_sar(const PriceSeries &bars, const SarParams &params) {
	const std::size_t n = bars.size();
	if (n < 2) {
		throw Error(ErrorKind::SeriesTooShort, "parabolic SAR needs at least two bars");
	}
	if (!(params.alpha0 > 0.0 && params.alpha_step >= 0.0 && params.alpha_max >= params.alpha0)) {
		throw Error(ErrorKind::Config, "SAR requires 0 < alpha0 <= alpha_max and alpha_step >= 0");
	}
	SarOutput out;
	out.sar.resize(n);
	out.extreme_point.resize(n);
	out.alpha.resize(n);
	out.trend.resize(n);
	out.close = bars.closes();
	out.dates = bars.dates();
	out.signals.source = "sar";

	Trend trend = bars[1].close >= bars[0].close ? Trend::Up : Trend::Down;
	double sar = trend == Trend::Up ? bars[0].low : bars[0].high;
	double ep = trend == Trend::Up ? bars[0].high : bars[0].low;
	double alpha = params.alpha0;
	out.sar[0] = sar;
	out.extreme_point[0] = ep;
	out.alpha[0] = alpha;
	out.trend[0] = trend;

	for (std::size_t t = 1; t < n; ++t) {
		const auto &bar = bars[t];
		// SAR_prev + alpha * (EP - SAR_prev); identical algebra for both trends
		double next = sar + alpha * (ep - sar);
		if (trend == Trend::Up) {
			next = std::min(next, bars[t - 1].low);
			if (t >= 2) {
				next = std::min(next, bars[t - 2].low);
			}
			if (bar.low < next) {
				trend = Trend::Down;
				next = ep;
				ep = bar.low;
				alpha = params.alpha0;
			} else if (bar.high > ep) {
				ep = bar.high;
				alpha = std::min(alpha + params.alpha_step, params.alpha_max);
			}
		} else {
			next = std::max(next, bars[t - 1].high);
			if (t >= 2) {
				next = std::max(next, bars[t - 2].high);
			}
			if (bar.high > next) {
				trend = Trend::Up;
				next = ep;
				ep = bar.high;
				alpha = params.alpha0;
			} else if (bar.low < ep) {
				ep = bar.low;
				alpha = std::min(alpha + params.alpha_step, params.alpha_max);
			}
		}
		sar = next;
		out.sar[t] = sar;
		out.extreme_point[t] = ep;
		out.alpha[t] = alpha;
		out.trend[t] = trend;
		out.signals.entries.push_back({bar.date, bar.close > sar ? Signal::Positive : Signal::Negative});
	}
	return out;
}

SignalSeries dual_macd(std::span<const Date> dates, std::span<const double> close, const MacdParams &short_cfg,
                       const MacdParams &long_cfg) {
	check_aligned(close.size(), dates);
	const auto s = macd(close, short_cfg);
	const auto l = macd(close, long_cfg);
	SignalSeries out{"dual_macd", {}};
	for (std::size_t t = 0; t < close.size(); ++t) {
		const double hs = s.histogram[t];
		const double hl = l.histogram[t];
		if (!defined(hs) || !defined(hl)) {
			continue;
		}
		Signal sig = Signal::Neutral;
		if (hs > 0.0 && hl > 0.0) {
			sig = Signal::Positive;
		} else if (hs < 0.0 && hl < 0.0) {
			sig = Signal::Negative;
		}
		out.entries.push_back({dates[t], sig});
	}
	return out;
}

SignalRule parse_signal_rule(std::string_view text) {
	std::string key;
	for (char c : text) {
		key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
	}
	if (key == "macd_state") return SignalRule::MacdState;
	if (key == "macd_cross") return SignalRule::MacdCross;
	if (key == "sar_side") return SignalRule::SarSide;
	if (key == "vw_state") return SignalRule::VwState;
	if (key == "vw_price_level") return SignalRule::VwPriceLevel;
	if (key == "passthrough") return SignalRule::Passthrough;
	throw Error(ErrorKind::UnknownRule, "unknown signal rule '" + std::string(text) + "'");
}

std::string_view to_string(SignalRule rule) noexcept {
	switch (rule) {
	case SignalRule::MacdState: return "macd_state";
	case SignalRule::MacdCross: return "macd_cross";
	case SignalRule::SarSide: return "sar_side";
	case SignalRule::VwState: return "vw_state";
	case SignalRule::VwPriceLevel: return "vw_price_level";
	case SignalRule::Passthrough: return "passthrough";
	}
	return "?";
}

SignalSeries signalize(const IndicatorOutput &output, SignalRule rule, std::span<const Date> dates,
                       std::span<const double> close, std::string source) {
	auto mismatch = [&] {
		return Error(ErrorKind::UnknownRule,
		             "rule '" + std::string(to_string(rule)) + "' does not apply to this indicator output");
	};

	if (const auto *m = std::get_if<MacdOutput>(&output)) {
		check_aligned(m->macd_line.size(), dates);
		if (rule == SignalRule::MacdState) return state_signals(*m, dates, std::move(source));
		if (rule == SignalRule::MacdCross) return cross_signals(*m, dates, std::move(source));
		throw mismatch();
	}
	if (const auto *vw = std::get_if<VwMacdOutput>(&output)) {
		check_aligned(vw->macd.macd_line.size(), dates);
		if (rule == SignalRule::VwState || rule == SignalRule::MacdState) {
			return state_signals(vw->macd, dates, std::move(source));
		}
		if (rule == SignalRule::MacdCross) return cross_signals(vw->macd, dates, std::move(source));
		if (rule == SignalRule::VwPriceLevel) {
			check_aligned(close.size(), dates);
			SignalSeries out{std::move(source), {}};
			for (std::size_t t = 0; t < dates.size(); ++t) {
				if (defined(vw->vwema_slow[t])) {
					out.entries.push_back({dates[t], close[t] > vw->vwema_slow[t] ? Signal::Positive : Signal::Negative});
				}
			}
			return out;
		}
		throw mismatch();
	}
	if (const auto *sar = std::get_if<SarOutput>(&output)) {
		if (rule != SignalRule::SarSide) throw mismatch();
		SignalSeries out = sar->signals;
		out.source = std::move(source);
		return out;
	}
	const auto &series = std::get<SignalSeries>(output);
	if (rule != SignalRule::Passthrough) throw mismatch();
	SignalSeries out = series;
	out.source = std::move(source);
	return out;
}

} // namespace sentitrade::indicators
