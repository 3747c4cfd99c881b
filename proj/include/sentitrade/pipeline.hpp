#pragma once

#include "sentitrade/config.hpp"
#include "sentitrade/core.hpp"
#include "sentitrade/market_data.hpp"
#include "sentitrade/strategy.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentitrade::pipeline {

enum class Stage { Ingest, Label, Signals, Backtest, Evaluate, Report, All };

Stage parse_stage(std::string_view name);
std::string_view to_string(Stage stage) noexcept;

/// Runs one stage against `config.run_dir()`. Every stage reads only the files
/// earlier stages wrote there (plus the raw inputs for `ingest`).
void run_stage(Stage stage, const RunConfig &config);

void ingest(const RunConfig &config);
void label(const RunConfig &config);
void signals(const RunConfig &config);
void backtest(const RunConfig &config);
void evaluate(const RunConfig &config);
void report(const RunConfig &config);

struct Window {
	Date from;
	Date to;
};

/// Defaults to the second bar through the last; throws Error{Config} when the
/// window leaves the price data or holds fewer than two bars.
Window resolve_window(const RunConfig &config, const PriceSeries &prices);

// --- stage file contracts ------------------------------------------------------------

/// `date,return,class`
std::string write_returns_csv(const ReturnSeries &returns, const ClassSeries &classes);
struct LabeledReturns {
	ReturnSeries returns;
	ClassSeries classes;
};
LabeledReturns parse_returns_csv(std::string_view text);

struct ComponentSignal {
	Date date;
	std::string component; ///< "MACD", "ARIMA", "GPT2 DowJones", ...
	std::string kind;      ///< "indicator", "forecast" or "sentiment"
	Signal signal = Signal::Neutral;
	bool missing = false; ///< undefined that day; traded as 0

	friend bool operator==(const ComponentSignal &, const ComponentSignal &) = default;
};

/// `date,component,kind,signal,missing`
std::string write_signals_csv(std::span<const ComponentSignal> rows);
std::vector<ComponentSignal> parse_signals_csv(std::string_view text);

struct CurveRecord {
	std::string row;
	std::string column;
	EquityCurve curve;
};

/// `row,column,date,cash,shares,price,value,return`
std::string write_equity_curves_csv(std::span<const CurveRecord> curves);
std::vector<CurveRecord> parse_equity_curves_csv(std::string_view text, double initial_capital);

} // namespace sentitrade::pipeline
