#include "sentitrade/forecast/walk_forward.hpp"

#include "sentitrade/csv.hpp"

#include <cctype>
#include <cmath>
#include <optional>

namespace sentitrade::forecast {

namespace {

std::string strip(std::string_view text) {
	std::string out;
	for (char c : text) {
		if (!std::isspace(static_cast<unsigned char>(c))) {
			out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
		}
	}
	return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
	std::vector<std::string> out;
	std::string cur;
	for (char c : text) {
		if (c == sep) {
			out.push_back(cur);
			cur.clear();
		} else {
			cur.push_back(c);
		}
	}
	out.push_back(cur);
	return out;
}

[[noreturn]] void bad_spec(std::string_view text, const std::string &why) {
	throw Error(ErrorKind::Config, "bad model spec '" + std::string(text) + "': " + why);
}

int spec_int(std::string_view original, const std::string &field) {
	auto v = csv::parse_int(field);
	if (!v || *v < 0 || *v > 1000) {
		bad_spec(original, "expected a small non-negative integer, got '" + field + "'");
	}
	return static_cast<int>(*v);
}

double spec_double(std::string_view original, const std::string &field) {
	auto v = csv::parse_double(field);
	if (!v) {
		bad_spec(original, "expected a number, got '" + field + "'");
	}
	return *v;
}

ComponentType component(std::string_view original, const std::string &field) {
	if (field == "none" || field == "n") return ComponentType::None;
	if (field == "add" || field == "a") return ComponentType::Additive;
	if (field == "mul" || field == "m") return ComponentType::Multiplicative;
	bad_spec(original, "component must be none, add or mul");
}

/// A fitted model plus how to forecast the next value from an updated history.
struct Fitted {
	std::variant<ArimaModel, EtsModel, ProphetLiteModel> model;

	double next(std::span<const double> history) const {
		if (const auto *a = std::get_if<ArimaModel>(&model)) {
			return arima_forecast(*a, history);
		}
		if (const auto *e = std::get_if<EtsModel>(&model)) {
			const auto refreshed = ets_filter(history, e->spec, e->smoothing, e->initial);
			return ets_forecast(refreshed, 1);
		}
		return prophet_lite_forecast(std::get<ProphetLiteModel>(model), static_cast<double>(history.size()));
	}
};

Fitted fit(const ModelSpec &spec, std::span<const double> history) {
	if (const auto *a = std::get_if<ArimaSpec>(&spec)) {
		return {a->select_by_aic ? arima_select(history) : arima_fit(history, a->order)};
	}
	if (const auto *e = std::get_if<EtsSpec>(&spec)) {
		return {ets_fit(history, *e)};
	}
	return {prophet_lite_fit(history, std::get<ProphetSpec>(spec))};
}

} // namespace

ModelSpec parse_model_spec(std::string_view text) {
	const std::string s = strip(text);
	const auto open = s.find('(');
	if (open == std::string::npos || s.back() != ')') {
		bad_spec(text, "expected name(args)");
	}
	const std::string name = s.substr(0, open);
	const std::string inner = s.substr(open + 1, s.size() - open - 2);
	const auto args = inner.empty() ? std::vector<std::string>{} : split(inner, ',');

	if (name == "arima") {
		if (args.size() == 1 && args[0] == "auto") {
			return ArimaSpec{{1, 0, 0}, true};
		}
		if (args.size() != 3) {
			bad_spec(text, "arima takes (p,d,q) or (auto)");
		}
		return ArimaSpec{{spec_int(text, args[0]), spec_int(text, args[1]), spec_int(text, args[2])}, false};
	}
	if (name == "ets") {
		if (args.size() != 3 && args.size() != 4) {
			bad_spec(text, "ets takes (error,trend,season[,period])");
		}
		EtsSpec spec;
		if (args[0] == "add" || args[0] == "a") {
			spec.error = ErrorType::Additive;
		} else if (args[0] == "mul" || args[0] == "m") {
			spec.error = ErrorType::Multiplicative;
		} else {
			bad_spec(text, "error must be add or mul");
		}
		spec.trend = component(text, args[1]);
		spec.season = component(text, args[2]);
		if (args.size() == 4) {
			spec.period = spec_int(text, args[3]);
		}
		if (spec.seasonal() && spec.period < 2) {
			bad_spec(text, "seasonal ets needs a period >= 2");
		}
		return spec;
	}
	if (name == "prophet") {
		ProphetSpec spec;
		for (const auto &arg : args) {
			const auto eq = arg.find('=');
			if (eq == std::string::npos) {
				bad_spec(text, "prophet arguments are key=value");
			}
			const std::string key = arg.substr(0, eq);
			const std::string value = arg.substr(eq + 1);
			if (key == "cp" || key == "changepoints") {
				spec.n_changepoints = spec_int(text, value);
			} else if (key == "lambda" || key == "ridge") {
				spec.ridge = spec_double(text, value);
			} else if (key == "fourier") {
				spec.fourier.clear();
				if (value != "none") {
					for (const auto &block : split(value, '|')) {
						const auto colon = block.find(':');
						if (colon == std::string::npos) {
							bad_spec(text, "fourier blocks are PERIOD:ORDER");
						}
						spec.fourier.push_back(
						    {spec_double(text, block.substr(0, colon)), spec_int(text, block.substr(colon + 1))});
					}
				}
			} else {
				bad_spec(text, "unknown prophet key '" + key + "'");
			}
		}
		return spec;
	}
	bad_spec(text, "unknown model '" + name + "'");
}

std::string to_string(const ModelSpec &spec) {
	if (const auto *a = std::get_if<ArimaSpec>(&spec)) {
		if (a->select_by_aic) {
			return "arima(auto)";
		}
		return "arima(" + std::to_string(a->order.p) + ',' + std::to_string(a->order.d) + ',' +
		       std::to_string(a->order.q) + ')';
	}
	if (const auto *e = std::get_if<EtsSpec>(&spec)) {
		return e->str();
	}
	return std::get<ProphetSpec>(spec).str();
}

std::string model_family(const ModelSpec &spec) {
	switch (spec.index()) {
	case 0: return "ARIMA";
	case 1: return "ETS";
	default: return "Prophet";
	}
}

WalkForwardResult walk_forward_signals(const ReturnSeries &returns, const ModelSpec &spec, Date from, Date to,
                                       const WalkForwardOptions &options) {
	if (options.refit_every < 1) {
		throw Error(ErrorKind::Config, "refit_every must be >= 1");
	}
	const Thresholds &thresholds = options.thresholds.get();
	thresholds.validate();

	WalkForwardResult out;
	out.signals.source = model_family(spec);
	const auto values = values_of(returns);
	const std::string tag = to_string(spec);

	std::optional<Fitted> current;
	std::size_t since_fit = 0;
	bool first = true;
	for (std::size_t i = 0; i < returns.size(); ++i) {
		const Date day = returns[i].date;
		if (day < from || day > to) {
			continue;
		}
		if (first && i < options.min_train) {
			throw Error(ErrorKind::InsufficientHistory, "only " + std::to_string(i) + " returns precede " + day.iso() +
			                                                 ", need " + std::to_string(options.min_train));
		}
		first = false;
		const std::span<const double> history(values.data(), i);

		if (!current || since_fit >= static_cast<std::size_t>(options.refit_every)) {
			since_fit = 0;
			try {
				current = fit(spec, history);
			} catch (const Error &e) {
				current.reset();
				out.failed_days.push_back(day);
				out.diagnostics.push_back(day.iso() + ": " + e.what());
				out.signals.entries.push_back({day, Signal::Neutral});
				continue;
			}
		}
		++since_fit;

		double forecast = 0.0;
		try {
			forecast = current->next(history);
		} catch (const Error &e) {
			out.failed_days.push_back(day);
			out.diagnostics.push_back(day.iso() + ": " + e.what());
			out.signals.entries.push_back({day, Signal::Neutral});
			continue;
		}
		if (!std::isfinite(forecast)) {
			out.failed_days.push_back(day);
			out.diagnostics.push_back(day.iso() + ": non-finite forecast");
			out.signals.entries.push_back({day, Signal::Neutral});
			continue;
		}
		out.forecasts.push_back({day, forecast, tag});
		out.signals.entries.push_back({day, classify_return(forecast, thresholds)});
	}
	return out;
}

} // namespace sentitrade::forecast
