#pragma once

#include "sentitrade/core.hpp"

#include <span>
#include <vector>

namespace sentitrade::forecast {

/// Applies the first difference `d` times; the result is `d` shorter.
std::vector<double> difference(std::span<const double> series, int d);

/// Last value of each difference order 0..d-1 at the end of `series`; what
/// undifference() needs to rebuild the level that follows.
std::vector<double> difference_anchors(std::span<const double> series, int d);

/// Inverse of difference(): rebuilds a series from its d-th differences and the
/// first value of each lower-order difference (heads[k] = (Δ^k y)[0]).
std::vector<double> undifference(std::span<const double> diffed, std::span<const double> heads);

struct ArimaOrder {
	int p = 1;
	int d = 0;
	int q = 0;

	friend bool operator==(const ArimaOrder &, const ArimaOrder &) = default;
};

struct ArimaModel {
	ArimaOrder order;
	std::vector<double> phi;   ///< AR coefficients, lag 1 first
	std::vector<double> theta; ///< MA coefficients, lag 1 first
	double intercept = 0.0;    ///< mean of the differenced series
	double sigma2 = 0.0;       ///< CSS / number of conditioned residuals
	double css = 0.0;
	std::size_t n_effective = 0;
	bool stationary = true; ///< all AR roots outside the unit circle
	int iterations = 0;
};

struct ArimaFitOptions {
	int max_iterations = 2000;
};

/// Conditional-sum-of-squares residuals of the centered ARMA recursion on
/// `centered` (already differenced, mean removed). The first p residuals are
/// conditioned away and pre-sample errors are zero.
std::vector<double> css_residuals(std::span<const double> centered, std::span<const double> phi,
                                  std::span<const double> theta);

/// Fits ARIMA(p,d,q) by minimizing the conditional sum of squares with a
/// Nelder-Mead search started from all-zero coefficients.
ArimaModel arima_fit(std::span<const double> series, const ArimaOrder &order = {}, const ArimaFitOptions &options = {});

/// One-step-ahead conditional expectation given the full history (original
/// scale). Future shocks are zero.
double arima_forecast(const ArimaModel &model, std::span<const double> history);

/// Akaike criterion on the CSS fit: n log(sigma2) + 2 (p + q + 1).
double arima_aic(const ArimaModel &model);

/// Fits every order in the grid p,q in {0,1,2}, d in {0,1} and keeps the lowest AIC.
/// Orders whose fit throws are skipped.
ArimaModel arima_select(std::span<const double> series, const ArimaFitOptions &options = {});

/// True when every root of 1 - phi_1 z - ... - phi_p z^p lies outside the unit circle.
bool ar_is_stationary(std::span<const double> phi);

} // namespace sentitrade::forecast
