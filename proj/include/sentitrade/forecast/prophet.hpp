#pragma once

#include "sentitrade/core.hpp"

#include <span>
#include <string>
#include <vector>

namespace sentitrade::forecast {

struct FourierSpec {
	double period = 5.0; ///< in trading days
	int order = 3;

	friend bool operator==(const FourierSpec &, const FourierSpec &) = default;
};

struct ProphetSpec {
	int n_changepoints = 25;
	std::vector<FourierSpec> fourier{FourierSpec{5.0, 3}};
	double ridge = 0.5;              ///< penalty on changepoint slope deltas
	double changepoint_range = 0.8; ///< changepoints spread over this leading fraction of history

	std::string str() const; ///< "prophet(cp=25,fourier=5:3,lambda=0.5)"
	friend bool operator==(const ProphetSpec &, const ProphetSpec &) = default;
};

struct FourierTerms {
	FourierSpec spec;
	std::vector<double> a; ///< cosine coefficients, n = 1..N
	std::vector<double> b; ///< sine coefficients
};

/// Piecewise-linear trend plus Fourier seasonality; no holiday term.
/// All time arguments are trading-day indices (0 = first training day).
struct ProphetLiteModel {
	ProphetSpec spec;
	double k = 0.0; ///< base growth rate per trading day
	double m = 0.0; ///< offset
	std::vector<double> changepoints;
	std::vector<double> deltas;
	std::vector<double> gammas; ///< -s_j * delta_j, keeps the trend continuous
	std::vector<FourierTerms> seasonality;
	std::size_t n_train = 0;
	bool rank_deficient = false; ///< design was singular; solved by pseudo-inverse
	std::vector<double> fitted;
	std::vector<Date> train_dates; ///< empty when fitted on bare values

	double trend(double t) const;
	double seasonal(double t) const;
	double operator()(double t) const { return trend(t) + seasonal(t); }
};

/// Ridge-regularized least squares on [1, t, (t - s_j)_+, cos/sin ...].
/// Observations sit at t = 0, 1, ..., n-1.
ProphetLiteModel prophet_lite_fit(std::span<const double> values, const ProphetSpec &spec = {});

/// Same fit, with the training dates kept so forecasts can be addressed by date.
ProphetLiteModel prophet_lite_fit(std::span<const Date> dates, std::span<const double> values,
                                  const ProphetSpec &spec = {});

/// Value at trading-day index t (t >= 0). Beyond the training range the trend
/// continues at its final-segment slope.
double prophet_lite_forecast(const ProphetLiteModel &model, double t);

/// Forecast addressed by date; the model must have been fitted with dates.
/// `calendar` supplies the sessions after the training window (may be empty).
double prophet_lite_forecast(const ProphetLiteModel &model, Date date, std::span<const Date> calendar = {});

/// Position of `date` on the session list `sessions`. Dates past the end are
/// extrapolated in weekdays. Throws for dates before the first session or
/// in-range dates that are not sessions.
double trading_day_index(std::span<const Date> sessions, Date date);

} // namespace sentitrade::forecast
