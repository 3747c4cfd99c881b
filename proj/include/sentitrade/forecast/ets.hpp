#pragma once

#include "sentitrade/core.hpp"

#include <span>
#include <string>
#include <vector>

namespace sentitrade::forecast {

enum class ErrorType { Additive, Multiplicative };
enum class ComponentType { None, Additive, Multiplicative };

struct EtsSpec {
	ErrorType error = ErrorType::Additive;
	ComponentType trend = ComponentType::None;
	ComponentType season = ComponentType::None;
	int period = 0; ///< seasonal period m; ignored without a seasonal component

	bool seasonal() const noexcept { return season != ComponentType::None; }
	bool needs_positive_data() const noexcept;
	std::string str() const; ///< "ets(add,add,none)" / "ets(mul,none,mul,4)"

	friend bool operator==(const EtsSpec &, const EtsSpec &) = default;
};

struct EtsSmoothing {
	double alpha = 0.5;
	double beta = 0.0;
	double gamma = 0.0;
};

/// Level, trend and the last m seasonal states (oldest first).
struct EtsState {
	double level = 0.0;
	double trend = 0.0; ///< additive: slope, multiplicative: growth ratio
	std::vector<double> season;
};

struct EtsModel {
	EtsSpec spec;
	EtsSmoothing smoothing;
	EtsState initial;
	EtsState final_state;
	std::vector<double> fitted;    ///< one-step predictions over the fit window
	std::vector<double> residuals; ///< y - yhat (additive error) or y / yhat (multiplicative)
	double objective = 0.0;
};

/// Initial states from the first 2m observations (10 without seasonality):
/// level = window mean anchored one step before the first observation,
/// trend = mean first difference (or per-step ratio), seasonal indices from
/// detrended cycle means.
EtsState ets_initial_state(std::span<const double> series, const EtsSpec &spec);

/// Runs the smoothing recursions with fixed parameters and initial state.
EtsModel ets_filter(std::span<const double> series, const EtsSpec &spec, const EtsSmoothing &smoothing,
                    const EtsState &initial);

/// Grid search over alpha, beta, gamma in {0.01, 0.03, ..., 0.99} followed by a
/// bounded Nelder-Mead refinement. Additive error minimizes the sum of squared
/// y - yhat, multiplicative error the sum of squared y / yhat - 1.
EtsModel ets_fit(std::span<const double> series, const EtsSpec &spec);

/// h-step point forecast from the model's final state.
double ets_forecast(const EtsModel &model, int h = 1);

} // namespace sentitrade::forecast
