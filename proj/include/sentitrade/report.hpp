#pragma once

#include "sentitrade/core.hpp"
#include "sentitrade/market_data.hpp"
#include "sentitrade/strategy.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentitrade {

// --- accuracy --------------------------------------------------------------------

struct AccuracyScore {
	double accuracy = 0.0;
	std::size_t matches = 0;
	std::size_t days = 0;
};

/// Fraction of days present in both inputs where the signal equals the class.
/// Throws Error{NoOverlap} when no date is shared.
AccuracyScore score_accuracy(const SignalSeries &signals, const ClassSeries &truth);
double classification_accuracy(const SignalSeries &signals, const ClassSeries &truth);

struct AccuracyRow {
	std::string signal_source; ///< "sentiment", "indicator" or "forecast"
	std::string model;         ///< GPT2 / FinBERT / MACD / ARIMA ...
	std::string news_source;   ///< empty for non-sentiment rows
	double accuracy = 0.0;
	std::size_t n_days = 0;
};

struct AccuracyReport {
	std::vector<AccuracyRow> rows;

	/// `signal_source,model,news_source,accuracy,n_days`
	std::string csv() const;
};

// --- returns table ---------------------------------------------------------------

struct StrategyRun {
	std::string row;    ///< strategy descriptor, e.g. "VW MACD + ARIMA"
	std::string column; ///< signal stream the row is combined with, e.g. "GPT2 DowJones"
	EquityCurve curve;
};

inline constexpr std::string_view kBenchmarkRow = "Buy and hold";

struct ReturnsTable {
	std::vector<std::string> rows;    ///< sorted
	std::vector<std::string> columns; ///< sorted
	std::map<std::pair<std::string, std::string>, double> cells;
	double benchmark = 0.0;

	std::optional<double> at(const std::string &row, const std::string &column) const;
	/// `strategy,<columns...>` with full-precision fractions; benchmark row last.
	std::string csv() const;
	/// Aligned text with percentages at two decimals; "-" marks an absent cell.
	std::string text() const;
};

/// Every run must cover exactly the benchmark's dates (Error{WindowMismatch}).
ReturnsTable build_returns_table(std::span<const StrategyRun> runs, const EquityCurve &benchmark);

// --- plot exports ---------------------------------------------------------------

struct PlotSeries {
	std::string name;
	std::vector<Dated<double>> points;

	friend bool operator==(const PlotSeries &, const PlotSeries &) = default;
};

/// Long format `series,date,value`, series in the given order.
std::string plot_csv(std::span<const PlotSeries> series);
/// Inverse of plot_csv; series appear in order of first occurrence.
std::vector<PlotSeries> parse_plot_csv(std::string_view text);

/// Static line chart: axes with min/max labels, one polyline per series and a
/// legend in series order. Byte-deterministic.
std::string render_svg(std::span<const PlotSeries> series, std::string_view title, std::string_view y_label);

/// Writes the CSV and SVG renderings. Throws Error{EmptyInput} when there is no
/// series or any series has no points.
void export_plot_data(std::span<const PlotSeries> series, const std::filesystem::path &csv_path,
                      const std::filesystem::path &svg_path, std::string_view title, std::string_view y_label);

} // namespace sentitrade
