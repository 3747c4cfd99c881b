#include "sentitrade/cli.hpp"

#include "sentitrade/config.hpp"
#include "sentitrade/core.hpp"
#include "sentitrade/pipeline.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sentitrade::cli {

namespace {

struct Overrides {
	std::string config;
	std::string prices;
	std::string sentiment;
	std::string news;
	std::string from;
	std::string to;
	std::optional<int> lag;
	std::string execution;
	std::optional<double> capital;
	std::optional<std::uint64_t> seed;
	std::string out;
	std::string run_id;
};

RunConfig build_config(const Overrides &o) {
	RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
	if (!o.prices.empty()) cfg.prices = o.prices;
	if (!o.sentiment.empty()) cfg.sentiment = o.sentiment;
	if (!o.news.empty()) cfg.news = o.news;
	if (!o.from.empty()) cfg.from = Date::from_iso(o.from);
	if (!o.to.empty()) cfg.to = Date::from_iso(o.to);
	if (o.lag) cfg.lag = *o.lag;
	if (!o.execution.empty()) cfg.simulation.execution = parse_execution(o.execution);
	if (o.capital) cfg.simulation.initial_capital = *o.capital;
	if (o.seed) cfg.seed = *o.seed;
	if (!o.out.empty()) cfg.out_dir = o.out;
	if (!o.run_id.empty()) cfg.run_id = o.run_id;
	return cfg;
}

int exit_code(ErrorKind kind) {
	switch (category_of(kind)) {
	case ErrorCategory::Config: return 1;
	case ErrorCategory::Data: return 2;
	case ErrorCategory::Numerical: return 3;
	}
	return 1;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
	CLI::App app{"Daily-bar backtester fusing news sentiment, technical indicators and forecasts.", "sentitrade"};
	app.require_subcommand(1, 1);

	Overrides o;
	app.add_option("--config", o.config, "Configuration file (key = value tables)");
	app.add_option("--prices", o.prices, "Price CSV: date,open,high,low,close,adj_close,volume");
	app.add_option("--sentiment", o.sentiment, "Sentiment CSV: timestamp_et,source,model,label,score");
	app.add_option("--news", o.news, "News CSV: timestamp_et,source,title,text");
	app.add_option("--from", o.from, "First test day (YYYY-MM-DD)");
	app.add_option("--to", o.to, "Last test day (YYYY-MM-DD)");
	app.add_option("--lag", o.lag, "Sentiment lag in sessions (0, 1 or 2)");
	app.add_option("--execution", o.execution, "same_day or next_day");
	app.add_option("--capital", o.capital, "Initial capital");
	app.add_option("--seed", o.seed, "Random seed recorded with the run");
	app.add_option("--out", o.out, "Output root; files go to <out>/<run-id>/");
	app.add_option("--run-id", o.run_id, "Run directory name");

	const std::vector<std::pair<std::string, std::string>> commands{
	    {"ingest", "Validate inputs, clean news and vote daily sentiment"},
	    {"label", "Compute returns and their three-way classes"},
	    {"signals", "Indicator, forecast and lagged sentiment signals over the test window"},
	    {"backtest", "Simulate every strategy plus buy-and-hold from signals.csv"},
	    {"evaluate", "Accuracy table, returns table and run metadata"},
	    {"report", "Figure data and SVG charts"},
	    {"all", "Every stage in order"},
	};
	for (const auto &[name, help] : commands) {
		app.add_subcommand(name, help)->fallthrough();
	}

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
			return app.exit(e, out, err);
		}
		err << "sentitrade: " << e.what() << '\n';
		return 1;
	}

	try {
		const auto stage = pipeline::parse_stage(app.get_subcommands().front()->get_name());
		const RunConfig cfg = build_config(o);
		pipeline::run_stage(stage, cfg);
		out << "sentitrade " << pipeline::to_string(stage) << ": wrote " << cfg.run_dir().string() << '\n';
		return 0;
	} catch (const Error &e) {
		err << "sentitrade: " << to_string(e.kind()) << ": " << e.what();
		if (e.row()) {
			err << " (row " << *e.row() << ')';
		}
		err << '\n';
		return exit_code(e.kind());
	} catch (const std::exception &e) {
		err << "sentitrade: internal error: " << e.what() << '\n';
		return 3;
	}
}

} // namespace sentitrade::cli
