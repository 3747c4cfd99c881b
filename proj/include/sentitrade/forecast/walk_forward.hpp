#pragma once

#include "sentitrade/core.hpp"
#include "sentitrade/forecast/arima.hpp"
#include "sentitrade/forecast/ets.hpp"
#include "sentitrade/forecast/prophet.hpp"
#include "sentitrade/market_data.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sentitrade::forecast {

struct ArimaSpec {
	ArimaOrder order{1, 0, 0};
	bool select_by_aic = false; ///< "arima(auto)": AIC grid over p,q in {0,1,2}, d in {0,1}

	friend bool operator==(const ArimaSpec &, const ArimaSpec &) = default;
};

using ModelSpec = std::variant<ArimaSpec, EtsSpec, ProphetSpec>;

/// Grammar (whitespace ignored):
///   arima(P,D,Q) | arima(auto)
///   ets(ERR,TREND,SEASON[,PERIOD])  with ERR in {add,mul}, TREND/SEASON in {none,add,mul}
///   prophet([cp=N][,fourier=P:N|P:N...|none][,lambda=X])
ModelSpec parse_model_spec(std::string_view text);
std::string to_string(const ModelSpec &spec);
/// "ARIMA", "ETS" or "Prophet".
std::string model_family(const ModelSpec &spec);

struct ForecastResult {
	Date date;
	double point_forecast = 0.0;
	std::string model;
};

struct WalkForwardOptions {
	int refit_every = 1;
	std::size_t min_train = 200;
	std::reference_wrapper<const Thresholds> thresholds = std::cref(kDefaultThresholds);
};

struct WalkForwardResult {
	SignalSeries signals;
	std::vector<ForecastResult> forecasts; ///< days whose fit failed are absent
	std::vector<Date> failed_days;
	std::vector<std::string> diagnostics;
};

/// For every return dated inside [from, to]: fit on all returns strictly before
/// that day (refitting every `refit_every` days, expanding window), forecast it,
/// and map the forecast to a class with the labeling thresholds. A failed fit
/// yields signal 0 and a diagnostic.
WalkForwardResult walk_forward_signals(const ReturnSeries &returns, const ModelSpec &spec, Date from, Date to,
                                       const WalkForwardOptions &options = {});

} // namespace sentitrade::forecast
