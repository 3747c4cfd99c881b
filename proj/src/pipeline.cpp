#include "sentitrade/pipeline.hpp"

#include "sentitrade/csv.hpp"
#include "sentitrade/forecast/walk_forward.hpp"
#include "sentitrade/indicators.hpp"
#include "sentitrade/news.hpp"
#include "sentitrade/report.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

namespace sentitrade::pipeline {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kPricesFile = "prices.csv";
constexpr std::string_view kNewsFile = "news_clean.csv";
constexpr std::string_view kDailyFile = "daily_sentiment.csv";
constexpr std::string_view kReturnsFile = "returns.csv";
constexpr std::string_view kSignalsFile = "signals.csv";
constexpr std::string_view kForecastsFile = "forecasts.csv";
constexpr std::string_view kDiagnosticsFile = "forecast_diagnostics.txt";
constexpr std::string_view kCurvesFile = "equity_curves.csv";

constexpr std::string_view kNoSentiment = "No sentiment";

std::string read_stage_file(const RunConfig &config, std::string_view name, std::string_view producer) {
	const fs::path path = config.run_dir() / name;
	if (!fs::exists(path)) {
		throw Error(ErrorKind::Io, "missing " + path.string() + " (run '" + std::string(producer) + "' first)");
	}
	return csv::read_file(path);
}

void write_stage_file(const RunConfig &config, std::string_view name, std::string_view content) {
	csv::write_file(config.run_dir() / name, content);
}

PriceSeries stage_prices(const RunConfig &config) {
	return parse_price_csv(read_stage_file(config, kPricesFile, "ingest"));
}

Signal parse_signal_field(const std::string &text, std::size_t row) {
	auto v = csv::parse_int(text);
	if (!v || *v < -1 || *v > 1) {
		throw Error(ErrorKind::Malformed, "signal must be -1, 0 or 1, got '" + text + "'", row);
	}
	return signal_from_int(static_cast<int>(*v));
}

std::string signal_text(Signal s) {
	return std::to_string(to_int(s));
}

bool in_window(Date d, const Window &w) {
	return w.from <= d && d <= w.to;
}

/// Entries of `series` on each window day; absent days become missing zeros.
void emit(std::vector<ComponentSignal> &out, const SignalSeries &series, const std::string &kind,
          std::span<const Date> days, const std::set<Date> &missing_days = {}) {
	std::map<Date, Signal> lookup;
	for (const auto &e : series.entries) {
		lookup[e.date] = e.value;
	}
	for (const Date &d : days) {
		auto it = lookup.find(d);
		const bool missing = it == lookup.end() || missing_days.contains(d);
		out.push_back({d, series.source, kind, missing ? Signal::Neutral : it->second, missing});
	}
}

struct Components {
	std::vector<std::string> indicator;
	std::vector<std::string> forecast;
	std::vector<std::string> sentiment;
	std::map<std::string, std::map<Date, Signal>> values;
	std::vector<Date> days;
};

Components group_components(std::span<const ComponentSignal> rows) {
	Components c;
	std::set<Date> days;
	for (const auto &r : rows) {
		auto &list = r.kind == "indicator" ? c.indicator : (r.kind == "forecast" ? c.forecast : c.sentiment);
		if (r.kind != "indicator" && r.kind != "forecast" && r.kind != "sentiment") {
			throw Error(ErrorKind::Malformed, "unknown component kind '" + r.kind + "'");
		}
		if (std::find(list.begin(), list.end(), r.component) == list.end()) {
			list.push_back(r.component);
		}
		c.values[r.component][r.date] = r.signal;
		days.insert(r.date);
	}
	c.days.assign(days.begin(), days.end());
	return c;
}

struct RunSpec {
	std::string row;
	std::string column;
	std::vector<std::string> components;
};

/// Every row is combined with one sentiment stream (the column): each single
/// indicator or forecaster, every sentiment stream (itself alone on the diagonal)
/// and every indicator x forecaster pair.
std::vector<RunSpec> strategy_grid(const Components &c) {
	std::vector<RunSpec> runs;
	std::vector<std::string> columns = c.sentiment;
	const bool has_sentiment = !columns.empty();
	if (!has_sentiment) {
		columns.emplace_back(kNoSentiment);
	}
	for (const auto &col : columns) {
		std::vector<std::string> base;
		if (has_sentiment) {
			base.push_back(col);
		}
		auto with = [&](std::vector<std::string> extra) {
			auto all = base;
			all.insert(all.end(), extra.begin(), extra.end());
			return all;
		};
		for (const auto &i : c.indicator) {
			runs.push_back({i, col, with({i})});
		}
		for (const auto &f : c.forecast) {
			runs.push_back({f, col, with({f})});
		}
		for (const auto &s : c.sentiment) {
			runs.push_back({s, col, s == col ? base : with({s})});
		}
		for (const auto &i : c.indicator) {
			for (const auto &f : c.forecast) {
				runs.push_back({i + " + " + f, col, with({i, f})});
			}
		}
	}
	return runs;
}

} // namespace

Stage parse_stage(std::string_view name) {
	if (name == "ingest") return Stage::Ingest;
	if (name == "label") return Stage::Label;
	if (name == "signals") return Stage::Signals;
	if (name == "backtest") return Stage::Backtest;
	if (name == "evaluate") return Stage::Evaluate;
	if (name == "report") return Stage::Report;
	if (name == "all") return Stage::All;
	throw Error(ErrorKind::Config, "unknown subcommand '" + std::string(name) + "'");
}

std::string_view to_string(Stage stage) noexcept {
	switch (stage) {
	case Stage::Ingest: return "ingest";
	case Stage::Label: return "label";
	case Stage::Signals: return "signals";
	case Stage::Backtest: return "backtest";
	case Stage::Evaluate: return "evaluate";
	case Stage::Report: return "report";
	case Stage::All: return "all";
	}
	return "all";
}

Window resolve_window(const RunConfig &config, const PriceSeries &prices) {
	if (prices.size() < 2) {
		throw Error(ErrorKind::TooShort, "need at least two price bars");
	}
	Window w{config.from.value_or(prices[1].date), config.to.value_or(prices[prices.size() - 1].date)};
	if (w.from < prices[0].date || prices[prices.size() - 1].date < w.to) {
		throw Error(ErrorKind::Config, "window " + w.from.iso() + ".." + w.to.iso() + " leaves the price data (" +
		                                   prices[0].date.iso() + ".." + prices[prices.size() - 1].date.iso() + ")");
	}
	if (prices.slice(w.from, w.to).size() < 2) {
		throw Error(ErrorKind::Config, "window " + w.from.iso() + ".." + w.to.iso() + " holds fewer than two sessions");
	}
	return w;
}

// --- stages ----------------------------------------------------------------------------

void ingest(const RunConfig &config) {
	const auto prices = parse_price_csv(csv::read_file(config.prices));
	resolve_window(config, prices);
	write_stage_file(config, kPricesFile, write_price_csv(prices));

	if (config.news) {
		auto articles = preprocess_articles(parse_news_csv(csv::read_file(*config.news)));
		write_stage_file(config, kNewsFile, write_news_csv(articles));
	}
	if (config.sentiment) {
		const auto records = parse_sentiment_csv(csv::read_file(*config.sentiment));
		const auto daily = aggregate_daily(records, TradingCalendar::from_prices(prices));
		write_stage_file(config, kDailyFile, write_daily_sentiment_csv(daily));
	}
}

void label(const RunConfig &config) {
	const auto prices = stage_prices(config);
	const auto returns = compute_returns(prices);
	write_stage_file(config, kReturnsFile, write_returns_csv(returns, label_returns(returns, config.thresholds)));
}

void signals(const RunConfig &config) {
	namespace ind = indicators;
	const auto prices = stage_prices(config);
	const auto labeled = parse_returns_csv(read_stage_file(config, kReturnsFile, "label"));
	const Window window = resolve_window(config, prices);
	const auto dates = prices.dates();
	const auto close = prices.closes();
	std::vector<Date> days;
	for (const Date &d : dates) {
		if (in_window(d, window)) {
			days.push_back(d);
		}
	}

	std::vector<ComponentSignal> rows;
	const auto &ic = config.indicators;
	emit(rows, ind::signalize(ind::macd(close, ic.macd), ic.macd_rule, dates, close, "MACD"), "indicator", days);
	emit(rows, ind::signalize(ind::vw_macd(close, prices.volumes(), ic.macd), ic.vw_rule, dates, close, "VW MACD"),
	     "indicator", days);
	emit(rows, ind::signalize(ind::parabolic_sar(prices, ic.sar), ind::SignalRule::SarSide, dates, close, "SAR"),
	     "indicator", days);
	auto dual = ind::dual_macd(dates, close, ic.macd, ic.dual_long);
	dual.source = "Dual MACD";
	emit(rows, dual, "indicator", days);

	std::string forecast_csv = "date,model,forecast,actual\n";
	std::string diagnostics;
	std::map<Date, double> actual;
	for (const auto &r : labeled.returns) {
		actual[r.date] = r.value;
	}
	for (const auto &text : config.forecast.models) {
		const auto spec = forecast::parse_model_spec(text);
		forecast::WalkForwardOptions options;
		options.min_train = config.forecast.min_train;
		options.refit_every = config.forecast.refit_every;
		options.thresholds = std::cref(config.thresholds);
		const auto result = forecast::walk_forward_signals(labeled.returns, spec, window.from, window.to, options);
		const std::set<Date> failed(result.failed_days.begin(), result.failed_days.end());
		emit(rows, result.signals, "forecast", days, failed);
		for (const auto &f : result.forecasts) {
			forecast_csv += csv::join({f.date.iso(), result.signals.source, csv::format_double(f.point_forecast),
			                           csv::format_double(actual.at(f.date))});
			forecast_csv += '\n';
		}
		for (const auto &d : result.diagnostics) {
			diagnostics += result.signals.source + ' ' + d + '\n';
		}
	}

	if (config.sentiment) {
		const auto daily = parse_daily_sentiment_csv(read_stage_file(config, kDailyFile, "ingest"));
		const auto aligned =
		    join_sentiment_returns(daily, labeled.classes, config.lag, TradingCalendar::from_prices(prices));
		for (const auto &key : aligned.keys) {
			std::map<Date, SentimentCell> cells;
			for (const auto &row : aligned.rows) {
				auto it = row.sentiment.find(key);
				if (it != row.sentiment.end()) {
					cells[row.trading_day] = it->second;
				}
			}
			for (const Date &d : days) {
				auto it = cells.find(d);
				const bool missing = it == cells.end() || it->second.missing;
				rows.push_back({d, key.name(), "sentiment", missing ? Signal::Neutral : it->second.label, missing});
			}
		}
	}

	write_stage_file(config, kSignalsFile, write_signals_csv(rows));
	write_stage_file(config, kForecastsFile, forecast_csv);
	write_stage_file(config, kDiagnosticsFile, diagnostics);
}

void backtest(const RunConfig &config) {
	const auto prices = stage_prices(config);
	const Window window = resolve_window(config, prices);
	const auto bars = prices.slice(window.from, window.to);
	const auto components = group_components(parse_signals_csv(read_stage_file(config, kSignalsFile, "signals")));
	if (components.days != bars.dates()) {
		throw Error(ErrorKind::SignalPriceMismatch, "signals.csv does not cover the price window " + window.from.iso() +
		                                                ".." + window.to.iso());
	}

	std::vector<CurveRecord> curves;
	curves.push_back({std::string(kBenchmarkRow), "", buy_and_hold(bars, config.simulation.initial_capital)});
	const std::string settings = config.canonical();
	for (const auto &run : strategy_grid(components)) {
		std::vector<CombinedSignal> combined;
		combined.reserve(components.days.size());
		for (const Date &d : components.days) {
			std::map<std::string, Signal> parts;
			for (const auto &name : run.components) {
				parts[name] = components.values.at(name).at(d);
			}
			combined.push_back(combine_signals(parts, d));
		}
		auto curve = simulate(bars, combined, config.simulation);
		const std::string hash = stable_hash(run.row + '\n' + run.column + '\n' + settings);
		csv::write_file(config.run_dir() / "runs" / (hash + ".csv"), write_equity_curve_csv(curve));
		curves.push_back({run.row, run.column, std::move(curve)});
	}
	write_stage_file(config, kCurvesFile, write_equity_curves_csv(curves));
}

void evaluate(const RunConfig &config) {
	const auto labeled = parse_returns_csv(read_stage_file(config, kReturnsFile, "label"));
	const auto rows = parse_signals_csv(read_stage_file(config, kSignalsFile, "signals"));
	const auto curves =
	    parse_equity_curves_csv(read_stage_file(config, kCurvesFile, "backtest"), config.simulation.initial_capital);
	const auto components = group_components(rows);
	if (components.days.empty()) {
		throw Error(ErrorKind::EmptyInput, "signals.csv holds no rows");
	}
	const Window window{components.days.front(), components.days.back()};

	ClassSeries truth;
	for (const auto &c : labeled.classes) {
		if (in_window(c.date, window)) {
			truth.push_back(c);
		}
	}
	if (truth.empty()) {
		throw Error(ErrorKind::NoOverlap, "no labeled return inside the test window");
	}

	AccuracyReport accuracy;
	std::vector<std::string> skipped;
	auto score = [&](const std::string &name, const std::string &kind) {
		SignalSeries s{name, {}};
		for (const auto &r : rows) {
			if (r.component == name && !r.missing) {
				s.entries.push_back({r.date, r.signal});
			}
		}
		try {
			const auto result = score_accuracy(s, truth);
			AccuracyRow row{kind, name, "", result.accuracy, result.days};
			if (kind == "sentiment") {
				const auto space = name.find(' ');
				row.model = name.substr(0, space);
				row.news_source = space == std::string::npos ? "" : name.substr(space + 1);
			}
			accuracy.rows.push_back(row);
		} catch (const Error &e) {
			if (e.kind() != ErrorKind::NoOverlap) {
				throw;
			}
			skipped.push_back(name);
		}
	};
	for (const auto &name : components.sentiment) score(name, "sentiment");
	for (const auto &name : components.indicator) score(name, "indicator");
	for (const auto &name : components.forecast) score(name, "forecast");
	{
		std::size_t neutral = 0;
		for (const auto &c : truth) {
			neutral += c.value == Signal::Neutral ? 1 : 0;
		}
		accuracy.rows.push_back({"baseline", "always neutral", "",
		                         static_cast<double>(neutral) / static_cast<double>(truth.size()), truth.size()});
	}
	write_stage_file(config, "accuracy.csv", accuracy.csv());

	const EquityCurve *benchmark = nullptr;
	std::vector<StrategyRun> runs;
	for (const auto &c : curves) {
		if (c.row == kBenchmarkRow && c.column.empty()) {
			benchmark = &c.curve;
		} else {
			runs.push_back({c.row, c.column, c.curve});
		}
	}
	if (!benchmark) {
		throw Error(ErrorKind::Malformed, "equity_curves.csv has no benchmark curve");
	}
	const auto table = build_returns_table(runs, *benchmark);
	write_stage_file(config, "returns_table.csv", table.csv());
	write_stage_file(config, "returns_table.txt", table.text());

	std::string meta = "# run metadata\n";
	meta += config.canonical();
	meta += "window_first = " + window.from.iso() + "\n";
	meta += "window_last = " + window.to.iso() + "\n";
	meta += "accuracy_protocol = state signal against the same-day realized class over the test window; days a "
	        "component is undefined are excluded (reconstruction)\n";
	meta += "return_definition = mark-to-market (cash + shares * price - capital) / capital\n";
	meta += "sentiment_alignment = class at session p paired with sentiment of session p - lag\n";
	std::string names;
	for (const auto &s : skipped) {
		names += (names.empty() ? "" : "; ") + s;
	}
	meta += "unscored_components = " + names + "\n";
	meta += "cash_only_returns =";
	for (const auto &c : curves) {
		meta += "\n  " + (c.column.empty() ? c.row : c.row + " | " + c.column) + " = " +
		        csv::format_double(cash_only_return(c.curve));
	}
	meta += '\n';
	write_stage_file(config, "metadata.txt", meta);
}

void report(const RunConfig &config) {
	const auto labeled = parse_returns_csv(read_stage_file(config, kReturnsFile, "label"));
	const auto curves =
	    parse_equity_curves_csv(read_stage_file(config, kCurvesFile, "backtest"), config.simulation.initial_capital);
	const auto forecast_rows = csv::parse(read_stage_file(config, kForecastsFile, "signals"));
	if (curves.empty()) {
		throw Error(ErrorKind::EmptyInput, "equity_curves.csv holds no curves");
	}
	const auto window_days = curves.front().curve.dates();
	const Window window{window_days.front(), window_days.back()};

	std::vector<PlotSeries> fig1{{"Actual", {}}};
	for (const auto &r : labeled.returns) {
		if (in_window(r.date, window)) {
			fig1.front().points.push_back(r);
		}
	}
	if (!forecast_rows.empty()) {
		const csv::Header header(forecast_rows.front());
		const auto c_date = header.index("date");
		const auto c_model = header.index("model");
		const auto c_value = header.index("forecast");
		std::map<std::string, std::size_t> index;
		for (std::size_t r = 1; r < forecast_rows.size(); ++r) {
			const auto &row = forecast_rows[r];
			const auto value = csv::parse_double(row.at(c_value));
			if (!value) {
				throw Error(ErrorKind::Malformed, "bad forecast value", r);
			}
			auto [it, fresh] = index.emplace(row.at(c_model), fig1.size());
			if (fresh) {
				fig1.push_back({row.at(c_model), {}});
			}
			fig1[it->second].points.push_back({Date::from_iso(row.at(c_date)), *value});
		}
	}
	if (fig1.front().points.empty()) {
		fig1.erase(fig1.begin());
	}
	export_plot_data(fig1, config.run_dir() / "fig1_forecasts.csv", config.run_dir() / "fig1.svg",
	                 "Actual vs forecast daily returns", "return");

	// benchmark plus the five best strategies by final value
	std::vector<const CurveRecord *> ranked;
	const CurveRecord *benchmark = nullptr;
	for (const auto &c : curves) {
		if (c.row == kBenchmarkRow && c.column.empty()) {
			benchmark = &c;
		} else {
			ranked.push_back(&c);
		}
	}
	std::stable_sort(ranked.begin(), ranked.end(), [](const CurveRecord *a, const CurveRecord *b) {
		const double va = a->curve.states.back().value;
		const double vb = b->curve.states.back().value;
		if (va != vb) {
			return va > vb;
		}
		return std::tie(a->row, a->column) < std::tie(b->row, b->column);
	});
	std::vector<PlotSeries> fig2;
	auto add_curve = [&](const CurveRecord &c) {
		PlotSeries s{c.column.empty() ? c.row : c.row + " | " + c.column, {}};
		for (const auto &st : c.curve.states) {
			s.points.push_back({st.date, st.value});
		}
		fig2.push_back(std::move(s));
	};
	if (benchmark) {
		add_curve(*benchmark);
	}
	for (std::size_t i = 0; i < ranked.size() && i < 5; ++i) {
		add_curve(*ranked[i]);
	}
	export_plot_data(fig2, config.run_dir() / "fig2_curves.csv", config.run_dir() / "fig2.svg", "Portfolio value",
	                 "value");
}

void run_stage(Stage stage, const RunConfig &config) {
	config.validate();
	switch (stage) {
	case Stage::Ingest: ingest(config); break;
	case Stage::Label: label(config); break;
	case Stage::Signals: signals(config); break;
	case Stage::Backtest: backtest(config); break;
	case Stage::Evaluate: evaluate(config); break;
	case Stage::Report: report(config); break;
	case Stage::All:
		ingest(config);
		label(config);
		signals(config);
		backtest(config);
		evaluate(config);
		report(config);
		break;
	}
}

// --- file contracts -----------------------------------------------------------------------

std::string write_returns_csv(const ReturnSeries &returns, const ClassSeries &classes) {
	if (returns.size() != classes.size()) {
		throw Error(ErrorKind::WindowMismatch, "returns and classes differ in length");
	}
	std::string out = "date,return,class\n";
	for (std::size_t i = 0; i < returns.size(); ++i) {
		if (returns[i].date != classes[i].date) {
			throw Error(ErrorKind::WindowMismatch, "returns and classes are not date-aligned");
		}
		out += csv::join({returns[i].date.iso(), csv::format_double(returns[i].value), signal_text(classes[i].value)});
		out += '\n';
	}
	return out;
}

LabeledReturns parse_returns_csv(std::string_view text) {
	const auto rows = csv::parse(text);
	if (rows.empty()) {
		throw Error(ErrorKind::MissingColumn, "returns file has no header", 0);
	}
	const csv::Header header(rows.front());
	const auto c_date = header.index("date");
	const auto c_ret = header.index("return");
	const auto c_class = header.index("class");
	LabeledReturns out;
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto &row = rows[r];
		if (row.size() <= std::max({c_date, c_ret, c_class})) {
			throw Error(ErrorKind::Malformed, "short row", r);
		}
		const auto date = Date::parse(row[c_date]);
		const auto value = csv::parse_double(row[c_ret]);
		if (!date || !value) {
			throw Error(ErrorKind::Malformed, "bad date or return", r);
		}
		out.returns.push_back({*date, *value});
		out.classes.push_back({*date, parse_signal_field(row[c_class], r)});
	}
	return out;
}

std::string write_signals_csv(std::span<const ComponentSignal> rows) {
	std::string out = "date,component,kind,signal,missing\n";
	for (const auto &r : rows) {
		out += csv::join({r.date.iso(), r.component, r.kind, signal_text(r.signal), r.missing ? "1" : "0"});
		out += '\n';
	}
	return out;
}

std::vector<ComponentSignal> parse_signals_csv(std::string_view text) {
	const auto rows = csv::parse(text);
	if (rows.empty()) {
		throw Error(ErrorKind::MissingColumn, "signals file has no header", 0);
	}
	const csv::Header header(rows.front());
	const std::size_t cols[] = {header.index("date"), header.index("component"), header.index("kind"),
	                            header.index("signal"), header.index("missing")};
	std::vector<ComponentSignal> out;
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto &row = rows[r];
		if (row.size() <= *std::max_element(std::begin(cols), std::end(cols))) {
			throw Error(ErrorKind::Malformed, "short row", r);
		}
		const auto date = Date::parse(row[cols[0]]);
		if (!date) {
			throw Error(ErrorKind::Malformed, "bad date '" + row[cols[0]] + "'", r);
		}
		const std::string &missing = row[cols[4]];
		if (missing != "0" && missing != "1") {
			throw Error(ErrorKind::Malformed, "missing flag must be 0 or 1", r);
		}
		out.push_back({*date, row[cols[1]], row[cols[2]], parse_signal_field(row[cols[3]], r), missing == "1"});
	}
	return out;
}

std::string write_equity_curves_csv(std::span<const CurveRecord> curves) {
	std::string out = "row,column,date,cash,shares,price,value,return\n";
	for (const auto &c : curves) {
		for (const auto &s : c.curve.states) {
			csv::Row line{c.row, c.column, s.date.iso()};
			for (double v : {s.cash, s.shares, s.price, s.value, s.cumulative_return}) {
				line.push_back(csv::format_double(v));
			}
			out += csv::join(line) + '\n';
		}
	}
	return out;
}

std::vector<CurveRecord> parse_equity_curves_csv(std::string_view text, double initial_capital) {
	const auto rows = csv::parse(text);
	if (rows.empty()) {
		throw Error(ErrorKind::MissingColumn, "equity curves file has no header", 0);
	}
	const csv::Header header(rows.front());
	const auto c_row = header.index("row");
	const auto c_col = header.index("column");
	const auto c_date = header.index("date");
	const std::size_t nums[] = {header.index("cash"), header.index("shares"), header.index("price"),
	                            header.index("value"), header.index("return")};
	std::vector<CurveRecord> out;
	std::map<std::pair<std::string, std::string>, std::size_t> index;
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto &row = rows[r];
		if (row.size() < rows.front().size()) {
			throw Error(ErrorKind::Malformed, "short row", r);
		}
		PortfolioState s;
		const auto date = Date::parse(row[c_date]);
		if (!date) {
			throw Error(ErrorKind::Malformed, "bad date", r);
		}
		s.date = *date;
		double *fields[] = {&s.cash, &s.shares, &s.price, &s.value, &s.cumulative_return};
		for (std::size_t i = 0; i < 5; ++i) {
			const auto v = csv::parse_double(row[nums[i]]);
			if (!v) {
				throw Error(ErrorKind::Malformed, "bad number", r);
			}
			*fields[i] = *v;
		}
		auto [it, fresh] = index.emplace(std::pair{row[c_row], row[c_col]}, out.size());
		if (fresh) {
			out.push_back({row[c_row], row[c_col], EquityCurve{initial_capital, {}}});
		}
		out[it->second].curve.states.push_back(s);
	}
	return out;
}

} // namespace sentitrade::pipeline
