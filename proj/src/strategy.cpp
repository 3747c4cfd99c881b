#include "sentitrade/strategy.hpp"

#include "sentitrade/csv.hpp"

#include <cctype>

namespace sentitrade {

namespace {

void record(EquityCurve &curve, Date date, double cash, double shares, double price, Signal executed, bool traded) {
	PortfolioState s;
	s.date = date;
	s.cash = cash;
	s.shares = shares;
	s.price = price;
	s.value = cash + shares * price;
	s.cumulative_return = (s.value - curve.initial_capital) / curve.initial_capital;
	s.executed = executed;
	s.traded = traded;
	curve.states.push_back(s);
}

void check_capital(double c0) {
	if (!(c0 > 0.0)) {
		throw Error(ErrorKind::Config, "initial capital must be positive");
	}
}

} // namespace

Signal combine_signals(std::span<const Signal> components) noexcept {
	int sum = 0;
	for (Signal s : components) {
		sum += to_int(s);
	}
	return sum > 0 ? Signal::Positive : (sum < 0 ? Signal::Negative : Signal::Neutral);
}

Signal combine_signals(std::span<const int> components) {
	std::vector<Signal> checked;
	checked.reserve(components.size());
	for (int v : components) {
		checked.push_back(signal_from_int(v));
	}
	return combine_signals(std::span<const Signal>(checked));
}

CombinedSignal combine_signals(const std::map<std::string, Signal> &components, Date date) {
	std::vector<Signal> values;
	values.reserve(components.size());
	for (const auto &[_, s] : components) {
		values.push_back(s);
	}
	return {date, components, combine_signals(std::span<const Signal>(values))};
}

std::vector<CombinedSignal> combine_series(std::span<const SignalSeries> sources, std::span<const Date> days) {
	std::vector<std::map<Date, Signal>> lookup;
	lookup.reserve(sources.size());
	for (const auto &src : sources) {
		std::map<Date, Signal> m;
		for (const auto &e : src.entries) {
			m[e.date] = e.value;
		}
		lookup.push_back(std::move(m));
	}
	std::vector<CombinedSignal> out;
	out.reserve(days.size());
	for (const Date &day : days) {
		std::map<std::string, Signal> components;
		for (std::size_t i = 0; i < sources.size(); ++i) {
			auto it = lookup[i].find(day);
			components[sources[i].source] = it == lookup[i].end() ? Signal::Neutral : it->second;
		}
		out.push_back(combine_signals(components, day));
	}
	return out;
}

Execution parse_execution(std::string_view text) {
	std::string key;
	for (char c : text) {
		key.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
	}
	if (key == "same_day") return Execution::SameDay;
	if (key == "next_day") return Execution::NextDay;
	throw Error(ErrorKind::Config, "execution must be same_day or next_day, got '" + std::string(text) + "'");
}

std::string_view to_string(Execution e) noexcept {
	return e == Execution::SameDay ? "same_day" : "next_day";
}

std::vector<Date> EquityCurve::dates() const {
	std::vector<Date> out;
	out.reserve(states.size());
	for (const auto &s : states) {
		out.push_back(s.date);
	}
	return out;
}

EquityCurve simulate(const PriceSeries &window, std::span<const CombinedSignal> signals, const SimulationConfig &config) {
	if (signals.size() != window.size()) {
		throw Error(ErrorKind::SignalPriceMismatch, std::to_string(signals.size()) + " signals for " +
		                                                std::to_string(window.size()) + " price bars");
	}
	std::vector<Signal> plain;
	plain.reserve(signals.size());
	for (std::size_t t = 0; t < signals.size(); ++t) {
		if (signals[t].date != window[t].date) {
			throw Error(ErrorKind::SignalPriceMismatch,
			            "signal dated " + signals[t].date.iso() + " against bar " + window[t].date.iso(), t + 1);
		}
		plain.push_back(signals[t].combined);
	}
	return simulate(window, std::span<const Signal>(plain), config);
}

EquityCurve simulate(const PriceSeries &window, std::span<const Signal> signals, const SimulationConfig &config) {
	check_capital(config.initial_capital);
	if (signals.size() != window.size()) {
		throw Error(ErrorKind::SignalPriceMismatch, std::to_string(signals.size()) + " signals for " +
		                                                std::to_string(window.size()) + " price bars");
	}
	if (config.cost < 0.0 || config.cost >= 1.0) {
		throw Error(ErrorKind::Config, "cost must lie in [0, 1)");
	}
	EquityCurve curve;
	curve.initial_capital = config.initial_capital;
	curve.states.reserve(window.size());

	double cash = config.initial_capital;
	double shares = 0.0;
	for (std::size_t t = 0; t < window.size(); ++t) {
		const double price = window[t].adj_close;
		Signal act = signals[t];
		if (config.execution == Execution::NextDay) {
			act = t == 0 ? Signal::Neutral : signals[t - 1];
		}
		bool traded = false;
		if (act == Signal::Positive && cash > 0.0) {
			shares = cash * (1.0 - config.cost) / price;
			cash = 0.0;
			traded = true;
		} else if (act == Signal::Negative && shares > 0.0) {
			cash = shares * price * (1.0 - config.cost);
			shares = 0.0;
			traded = true;
		}
		record(curve, window[t].date, cash, shares, price, act, traded);
	}
	return curve;
}

EquityCurve buy_and_hold(const PriceSeries &window, double initial_capital) {
	check_capital(initial_capital);
	if (window.size() < 2) {
		throw Error(ErrorKind::TooShort, "buy-and-hold needs at least two bars");
	}
	EquityCurve curve;
	curve.initial_capital = initial_capital;
	const double shares = initial_capital / window[0].adj_close;
	for (std::size_t t = 0; t < window.size(); ++t) {
		record(curve, window[t].date, 0.0, shares, window[t].adj_close, t == 0 ? Signal::Positive : Signal::Neutral, t == 0);
	}
	return curve;
}

double strategy_return(const EquityCurve &curve) {
	if (curve.states.empty()) {
		throw Error(ErrorKind::EmptyInput, "equity curve is empty");
	}
	return (curve.states.back().value - curve.initial_capital) / curve.initial_capital;
}

double cash_only_return(const EquityCurve &curve) {
	if (curve.states.empty()) {
		throw Error(ErrorKind::EmptyInput, "equity curve is empty");
	}
	return (curve.states.back().cash - curve.initial_capital) / curve.initial_capital;
}

std::string write_equity_curve_csv(const EquityCurve &curve) {
	std::string out = "date,cash,shares,price,value,return\n";
	for (const auto &s : curve.states) {
		out += s.date.iso();
		for (double v : {s.cash, s.shares, s.price, s.value, s.cumulative_return}) {
			out += ',';
			out += csv::format_double(v);
		}
		out += '\n';
	}
	return out;
}

EquityCurve parse_equity_curve_csv(std::string_view text, double initial_capital) {
	const auto rows = csv::parse(text);
	if (rows.empty()) {
		throw Error(ErrorKind::MissingColumn, "equity curve has no header", 0);
	}
	const csv::Header header(rows.front());
	const std::size_t cols[] = {header.index("cash"), header.index("shares"), header.index("price"),
	                            header.index("value"), header.index("return")};
	const std::size_t c_date = header.index("date");
	EquityCurve curve;
	curve.initial_capital = initial_capital;
	for (std::size_t r = 1; r < rows.size(); ++r) {
		PortfolioState s;
		s.date = Date::from_iso(rows[r].at(c_date));
		double *fields[] = {&s.cash, &s.shares, &s.price, &s.value, &s.cumulative_return};
		for (std::size_t i = 0; i < 5; ++i) {
			auto v = csv::parse_double(rows[r].at(cols[i]));
			if (!v) {
				throw Error(ErrorKind::Malformed, "bad number in equity curve", r);
			}
			*fields[i] = *v;
		}
		curve.states.push_back(s);
	}
	return curve;
}

} // namespace sentitrade
