#pragma once

#include "sentitrade/core.hpp"
#include "sentitrade/indicators.hpp"
#include "sentitrade/market_data.hpp"
#include "sentitrade/news.hpp"
#include "sentitrade/strategy.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sentitrade {

// --- configuration document --------------------------------------------------------

/// Value in the configuration file: quoted string, number, boolean or a
/// single-line array of strings/numbers.
struct ConfigValue {
	using Scalar = std::variant<std::string, double, bool>;
	std::variant<std::string, double, bool, std::vector<Scalar>> value;
	std::size_t line = 0;
};

/// Flat view of the file keyed by "section.key".
using ConfigDocument = std::map<std::string, ConfigValue>;

/// Parses the TOML subset we use: `# comments`, `[section]` headers and
/// `key = value` lines. Throws Error{Config} with the line number on anything else.
ConfigDocument parse_config_document(std::string_view text);

// --- run configuration --------------------------------------------------------------

struct IndicatorConfig {
	indicators::MacdParams macd = indicators::kShortMacd;
	indicators::MacdParams dual_long = indicators::kLongMacd;
	indicators::SarParams sar;
	indicators::SignalRule macd_rule = indicators::SignalRule::MacdState;
	indicators::SignalRule vw_rule = indicators::SignalRule::VwState;
};

struct ForecastConfig {
	std::vector<std::string> models{"arima(1,0,0)", "ets(add,none,none)", "prophet(cp=25,fourier=5:3,lambda=0.5)"};
	std::size_t min_train = 200;
	int refit_every = 1;
};

struct RunConfig {
	std::filesystem::path prices;
	std::optional<std::filesystem::path> sentiment;
	std::optional<std::filesystem::path> news;
	std::optional<Date> from; ///< first test day; defaults to the second price bar
	std::optional<Date> to;   ///< last test day; defaults to the last price bar
	int lag = kDefaultLag;
	Thresholds thresholds = kDefaultThresholds;
	IndicatorConfig indicators;
	ForecastConfig forecast;
	SimulationConfig simulation;
	std::filesystem::path out_dir = "reports";
	std::string run_id = "default";
	std::uint64_t seed = 0;

	/// Throws Error{Config} / Error{LagOutOfRange} / Error{InvalidThresholds}.
	void validate() const;
	/// Stable `key = value` listing of every setting (paths by file name only).
	std::string canonical() const;
	std::filesystem::path run_dir() const { return out_dir / run_id; }
};

/// Applies a parsed document over the defaults. Relative paths resolve against
/// `base_dir`. Unknown keys are errors.
RunConfig config_from_document(const ConfigDocument &doc, const std::filesystem::path &base_dir);
RunConfig load_config(const std::filesystem::path &path);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string stable_hash(std::string_view text);

} // namespace sentitrade
