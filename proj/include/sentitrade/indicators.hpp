#pragma once

#include "sentitrade/core.hpp"
#include "sentitrade/market_data.hpp"

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sentitrade::indicators {

/// Marker for indices where an indicator is not yet defined (warm-up).
inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

inline bool defined(double v) noexcept { return v == v; }

/// Exponential moving average with weight 2/(n+1), seeded by the simple mean of
/// the first n defined inputs. Leading undefined inputs are skipped; output has
/// the input's length with undefined warm-up entries.
std::vector<double> ema(std::span<const double> series, int period);

struct MacdParams {
	int fast = 12;
	int slow = 26;
	int signal = 9;

	friend bool operator==(const MacdParams &, const MacdParams &) = default;
};

inline constexpr MacdParams kShortMacd{12, 26, 9};
inline constexpr MacdParams kLongMacd{19, 39, 9};

struct MacdOutput {
	std::vector<double> macd_line;
	std::vector<double> signal_line;
	std::vector<double> histogram;
};

MacdOutput macd(std::span<const double> close, const MacdParams &params = kShortMacd);

struct VwMacdOutput {
	MacdOutput macd;
	std::vector<double> vwema_fast;
	std::vector<double> vwema_slow;
};

/// MACD over volume-weighted EMAs: ema(close*volume, n) / ema(volume, n).
VwMacdOutput vw_macd(std::span<const double> close, std::span<const double> volume, const MacdParams &params = kShortMacd);

struct SarParams {
	double alpha0 = 0.02;
	double alpha_step = 0.02;
	double alpha_max = 0.2;
};

enum class Trend { Up, Down };

struct SarOutput {
	std::vector<double> sar;
	std::vector<double> extreme_point;
	std::vector<double> alpha;
	std::vector<Trend> trend;
	std::vector<double> close;
	std::vector<Date> dates;
	SignalSeries signals; ///< +1 when close > SAR, else -1; from the second bar on
};

/// Wilder's parabolic stop-and-reverse. The first bar initializes the trend from
/// the direction of the first close-to-close move; SAR never enters the prior two
/// bars' range.
SarOutput parabolic_sar(const PriceSeries &bars, const SarParams &params = {});

/// +1 where both configurations' histograms are positive, -1 where both are
/// negative, 0 otherwise. Emitted from the first index where both are defined.
SignalSeries dual_macd(std::span<const Date> dates, std::span<const double> close, const MacdParams &short_cfg = kShortMacd,
                       const MacdParams &long_cfg = kLongMacd);

enum class SignalRule { MacdState, MacdCross, SarSide, VwState, VwPriceLevel, Passthrough };

SignalRule parse_signal_rule(std::string_view text);
std::string_view to_string(SignalRule rule) noexcept;

using IndicatorOutput = std::variant<MacdOutput, VwMacdOutput, SarOutput, SignalSeries>;

/// Maps indicator state to {-1,0,+1}. `dates` and `close` align with the
/// indicator's input; entries are emitted only where the rule is defined.
/// Throws Error{UnknownRule} when the rule does not apply to the output type.
SignalSeries signalize(const IndicatorOutput &output, SignalRule rule, std::span<const Date> dates,
                       std::span<const double> close, std::string source);

} // namespace sentitrade::indicators
