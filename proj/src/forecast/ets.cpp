#include "sentitrade/forecast/ets.hpp"

#include "sentitrade/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sentitrade::forecast {

namespace {

constexpr int kNonSeasonalWindow = 10;

std::string_view component_name(ComponentType c) {
	switch (c) {
	case ComponentType::None: return "none";
	case ComponentType::Additive: return "add";
	case ComponentType::Multiplicative: return "mul";
	}
	return "?";
}

double mean_of(std::span<const double> xs) {
	return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Level combined with trend h steps ahead.
double trended(double level, double trend, ComponentType type, int h) {
	switch (type) {
	case ComponentType::None: return level;
	case ComponentType::Additive: return level + static_cast<double>(h) * trend;
	case ComponentType::Multiplicative: return level * std::pow(trend, h);
	}
	return level;
}

double seasonalize(double base, double s, ComponentType type) {
	switch (type) {
	case ComponentType::None: return base;
	case ComponentType::Additive: return base + s;
	case ComponentType::Multiplicative: return base * s;
	}
	return base;
}

double deseasonalize(double y, double s, ComponentType type) {
	switch (type) {
	case ComponentType::None: return y;
	case ComponentType::Additive: return y - s;
	case ComponentType::Multiplicative: return y / s;
	}
	return y;
}

void validate(std::span<const double> series, const EtsSpec &spec) {
	if (spec.seasonal() && spec.period < 2) {
		throw Error(ErrorKind::Config, "seasonal ETS needs period >= 2");
	}
	const std::size_t m = spec.seasonal() ? static_cast<std::size_t>(spec.period) : 0;
	if (series.size() < 10 + 2 * m) {
		throw Error(ErrorKind::TooShort, "ETS needs at least 10 + 2m observations");
	}
	if (spec.needs_positive_data()) {
		for (double v : series) {
			if (!(v > 0.0)) {
				throw Error(ErrorKind::NonPositiveData, "multiplicative ETS components need strictly positive data");
			}
		}
	}
}

double objective_of(const EtsModel &model, std::span<const double> series) {
	double sum = 0.0;
	for (std::size_t t = 0; t < series.size(); ++t) {
		const double yhat = model.fitted[t];
		double r = 0.0;
		if (model.spec.error == ErrorType::Additive) {
			r = series[t] - yhat;
		} else {
			if (!(yhat > 0.0)) {
				return std::numeric_limits<double>::infinity();
			}
			r = series[t] / yhat - 1.0;
		}
		sum += r * r;
	}
	return std::isfinite(sum) ? sum : std::numeric_limits<double>::infinity();
}

} // namespace

bool EtsSpec::needs_positive_data() const noexcept {
	return error == ErrorType::Multiplicative || trend == ComponentType::Multiplicative ||
	       season == ComponentType::Multiplicative;
}

std::string EtsSpec::str() const {
	std::string out = "ets(";
	out += error == ErrorType::Additive ? "add" : "mul";
	out += ',';
	out += component_name(trend);
	out += ',';
	out += component_name(season);
	if (seasonal()) {
		out += ',' + std::to_string(period);
	}
	out += ')';
	return out;
}

EtsState ets_initial_state(std::span<const double> series, const EtsSpec &spec) {
	EtsState state;
	if (!spec.seasonal()) {
		const std::size_t w = std::min<std::size_t>(kNonSeasonalWindow, series.size());
		const auto window = series.first(w);
		const double mean = mean_of(window);
		const double center = (static_cast<double>(w) + 1.0) / 2.0; // steps from t=-1 to the window centre
		switch (spec.trend) {
		case ComponentType::None:
			state.level = mean;
			break;
		case ComponentType::Additive:
			state.trend = w > 1 ? (window[w - 1] - window[0]) / static_cast<double>(w - 1) : 0.0;
			state.level = mean - state.trend * center;
			break;
		case ComponentType::Multiplicative:
			state.trend = w > 1 ? std::pow(window[w - 1] / window[0], 1.0 / static_cast<double>(w - 1)) : 1.0;
			state.level = mean / std::pow(state.trend, center);
			break;
		}
		return state;
	}

	const auto m = static_cast<std::size_t>(spec.period);
	const double c1 = mean_of(series.first(m));
	const double c2 = mean_of(series.subspan(m, m));
	const double mid = (static_cast<double>(m) - 1.0) / 2.0;
	auto trend_at = [&](std::size_t i) {
		const double offset = static_cast<double>(i) - mid;
		switch (spec.trend) {
		case ComponentType::Additive: return c1 + state.trend * offset;
		case ComponentType::Multiplicative: return c1 * std::pow(state.trend, offset);
		case ComponentType::None: break;
		}
		return 0.5 * (c1 + c2);
	};
	switch (spec.trend) {
	case ComponentType::None:
		state.level = 0.5 * (c1 + c2);
		break;
	case ComponentType::Additive:
		state.trend = (c2 - c1) / static_cast<double>(m);
		state.level = c1 - state.trend * (mid + 1.0);
		break;
	case ComponentType::Multiplicative:
		state.trend = std::pow(c2 / c1, 1.0 / static_cast<double>(m));
		state.level = c1 / std::pow(state.trend, mid + 1.0);
		break;
	}
	state.season.assign(m, 0.0);
	for (std::size_t j = 0; j < m; ++j) {
		double acc = 0.0;
		for (std::size_t k = 0; k < 2; ++k) {
			const std::size_t i = j + k * m;
			acc += spec.season == ComponentType::Additive ? series[i] - trend_at(i) : series[i] / trend_at(i);
		}
		state.season[j] = acc / 2.0;
	}
	const double avg = mean_of(state.season);
	for (double &s : state.season) {
		s = spec.season == ComponentType::Additive ? s - avg : s / avg;
	}
	return state;
}

EtsModel ets_filter(std::span<const double> series, const EtsSpec &spec, const EtsSmoothing &smoothing,
                    const EtsState &initial) {
	EtsModel model;
	model.spec = spec;
	model.smoothing = smoothing;
	model.initial = initial;
	model.fitted.reserve(series.size());
	model.residuals.reserve(series.size());

	const double a = smoothing.alpha;
	const double b = smoothing.beta;
	const double g = smoothing.gamma;
	EtsState st = initial;
	for (double y : series) {
		const double base = trended(st.level, st.trend, spec.trend, 1);
		const double s_old = spec.seasonal() ? st.season.front() : 0.0;
		const double yhat = seasonalize(base, s_old, spec.season);
		model.fitted.push_back(yhat);
		model.residuals.push_back(spec.error == ErrorType::Additive ? y - yhat : y / yhat);

		const double level = a * deseasonalize(y, s_old, spec.season) + (1.0 - a) * base;
		switch (spec.trend) {
		case ComponentType::None:
			break;
		case ComponentType::Additive:
			st.trend = b * (level - st.level) + (1.0 - b) * st.trend;
			break;
		case ComponentType::Multiplicative:
			st.trend = b * (level / st.level) + (1.0 - b) * st.trend;
			break;
		}
		if (spec.seasonal()) {
			const double s_new = g * deseasonalize(y, base, spec.season) + (1.0 - g) * s_old;
			st.season.erase(st.season.begin());
			st.season.push_back(s_new);
		}
		st.level = level;
	}
	model.final_state = std::move(st);
	model.objective = objective_of(model, series);
	return model;
}

EtsModel ets_fit(std::span<const double> series, const EtsSpec &spec) {
	validate(series, spec);
	const EtsState initial = ets_initial_state(series, spec);
	const bool has_trend = spec.trend != ComponentType::None;
	const bool has_season = spec.seasonal();

	auto to_smoothing = [&](const std::vector<double> &x) {
		EtsSmoothing s;
		std::size_t i = 0;
		s.alpha = std::clamp(x[i++], 0.0, 1.0);
		s.beta = has_trend ? std::clamp(x[i++], 0.0, 1.0) : 0.0;
		s.gamma = has_season ? std::clamp(x[i++], 0.0, 1.0) : 0.0;
		return s;
	};
	auto cost = [&](const std::vector<double> &x) {
		return ets_filter(series, spec, to_smoothing(x), initial).objective;
	};

	std::vector<double> grid;
	for (int k = 0; k < 50; ++k) {
		grid.push_back(0.01 + 0.02 * k);
	}
	const std::vector<double> single{0.0};
	const auto &betas = has_trend ? grid : single;
	const auto &gammas = has_season ? grid : single;

	std::vector<double> best_x;
	double best = std::numeric_limits<double>::infinity();
	for (double alpha : grid) {
		for (double beta : betas) {
			for (double gamma : gammas) {
				std::vector<double> x{alpha};
				if (has_trend) x.push_back(beta);
				if (has_season) x.push_back(gamma);
				const double c = cost(x);
				if (c < best) {
					best = c;
					best_x = std::move(x);
				}
			}
		}
	}
	if (best_x.empty()) {
		throw Error(ErrorKind::NonConvergence, "no finite ETS objective on the smoothing grid");
	}

	optimize::NelderMeadOptions nm;
	nm.initial_step = 0.02;
	nm.max_iterations = 500;
	nm.x_tolerance = 1e-6;
	nm.f_tolerance = 1e-12;
	const auto refined = optimize::nelder_mead(cost, best_x, nm);
	const auto &chosen = refined.value < best ? refined.x : best_x;
	return ets_filter(series, spec, to_smoothing(chosen), initial);
}

double ets_forecast(const EtsModel &model, int h) {
	if (h < 1) {
		throw Error(ErrorKind::Config, "forecast horizon must be >= 1");
	}
	const auto &st = model.final_state;
	const double base = trended(st.level, st.trend, model.spec.trend, h);
	if (!model.spec.seasonal()) {
		return base;
	}
	if (st.season.empty()) {
		throw Error(ErrorKind::Config, "seasonal ETS model has no seasonal state");
	}
	const std::size_t m = st.season.size();
	const double s = st.season[static_cast<std::size_t>(h - 1) % m];
	return seasonalize(base, s, model.spec.season);
}

} // namespace sentitrade::forecast
