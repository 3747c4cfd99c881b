#include "sentitrade/forecast/arima.hpp"

#include "sentitrade/optimize.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numeric>

namespace sentitrade::forecast {

std::vector<double> difference(std::span<const double> series, int d) {
	if (d < 0) {
		throw Error(ErrorKind::Config, "difference order must be >= 0");
	}
	if (series.size() <= static_cast<std::size_t>(d)) {
		throw Error(ErrorKind::TooShort, "series too short to difference " + std::to_string(d) + " times");
	}
	std::vector<double> out(series.begin(), series.end());
	for (int k = 0; k < d; ++k) {
		for (std::size_t i = 0; i + 1 < out.size(); ++i) {
			out[i] = out[i + 1] - out[i];
		}
		out.pop_back();
	}
	return out;
}

std::vector<double> difference_anchors(std::span<const double> series, int d) {
	std::vector<double> anchors;
	std::vector<double> cur(series.begin(), series.end());
	for (int k = 0; k < d; ++k) {
		if (cur.empty()) {
			throw Error(ErrorKind::InsufficientHistory, "history too short for differencing");
		}
		anchors.push_back(cur.back());
		cur = difference(cur, 1);
	}
	return anchors;
}

std::vector<double> undifference(std::span<const double> diffed, std::span<const double> heads) {
	std::vector<double> out(diffed.begin(), diffed.end());
	for (std::size_t k = heads.size(); k-- > 0;) {
		std::vector<double> up;
		up.reserve(out.size() + 1);
		up.push_back(heads[k]);
		for (double v : out) {
			up.push_back(up.back() + v);
		}
		out = std::move(up);
	}
	return out;
}

std::vector<double> css_residuals(std::span<const double> centered, std::span<const double> phi,
                                  std::span<const double> theta) {
	const std::size_t p = phi.size();
	const std::size_t q = theta.size();
	const std::size_t n = centered.size();
	std::vector<double> e(n, 0.0);
	for (std::size_t t = p; t < n; ++t) {
		double pred = 0.0;
		for (std::size_t i = 0; i < p; ++i) {
			pred += phi[i] * centered[t - i - 1];
		}
		for (std::size_t j = 0; j < q && j < t; ++j) {
			pred += theta[j] * e[t - j - 1];
		}
		e[t] = centered[t] - pred;
	}
	return e;
}

bool ar_is_stationary(std::span<const double> phi) {
	const auto p = static_cast<Eigen::Index>(phi.size());
	if (p == 0) {
		return true;
	}
	Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
	for (Eigen::Index i = 0; i < p; ++i) {
		companion(0, i) = phi[static_cast<std::size_t>(i)];
	}
	for (Eigen::Index i = 1; i < p; ++i) {
		companion(i, i - 1) = 1.0;
	}
	Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
	for (Eigen::Index i = 0; i < p; ++i) {
		if (std::abs(solver.eigenvalues()[i]) >= 1.0) {
			return false;
		}
	}
	return true;
}

ArimaModel arima_fit(std::span<const double> series, const ArimaOrder &order, const ArimaFitOptions &options) {
	if (order.p < 0 || order.d < 0 || order.q < 0) {
		throw Error(ErrorKind::Config, "ARIMA orders must be non-negative");
	}
	if (series.size() < static_cast<std::size_t>(50 + order.p + order.q + order.d)) {
		throw Error(ErrorKind::TooShort, "ARIMA fit needs at least 50 + p + q + d observations");
	}
	const auto diffed = difference(series, order.d);
	const double mean = std::accumulate(diffed.begin(), diffed.end(), 0.0) / static_cast<double>(diffed.size());
	std::vector<double> centered(diffed.size());
	for (std::size_t i = 0; i < diffed.size(); ++i) {
		centered[i] = diffed[i] - mean;
	}

	const auto p = static_cast<std::size_t>(order.p);
	const auto q = static_cast<std::size_t>(order.q);
	auto css = [&](const std::vector<double> &x) {
		const std::span<const double> all(x);
		const auto e = css_residuals(centered, all.first(p), all.subspan(p, q));
		double s = 0.0;
		for (std::size_t t = p; t < e.size(); ++t) {
			s += e[t] * e[t];
		}
		return s;
	};

	optimize::NelderMeadOptions nm;
	nm.max_iterations = options.max_iterations;
	nm.f_tolerance = 1e-12;
	nm.x_tolerance = 1e-7;
	const auto result = optimize::nelder_mead(css, std::vector<double>(p + q, 0.0), nm);
	if (!result.converged) {
		throw Error(ErrorKind::NonConvergence,
		            "CSS simplex search did not converge in " + std::to_string(options.max_iterations) + " iterations");
	}

	ArimaModel model;
	model.order = order;
	model.phi.assign(result.x.begin(), result.x.begin() + static_cast<std::ptrdiff_t>(p));
	model.theta.assign(result.x.begin() + static_cast<std::ptrdiff_t>(p), result.x.end());
	model.intercept = mean;
	model.css = result.value;
	model.n_effective = centered.size() - p;
	model.sigma2 = model.css / static_cast<double>(model.n_effective);
	model.stationary = ar_is_stationary(model.phi);
	model.iterations = result.iterations;
	return model;
}

double arima_forecast(const ArimaModel &model, std::span<const double> history) {
	const auto p = static_cast<std::size_t>(model.order.p);
	const auto q = static_cast<std::size_t>(model.order.q);
	const auto d = static_cast<std::size_t>(model.order.d);
	if (history.size() < std::max(p, q) + d || history.size() <= d) {
		throw Error(ErrorKind::InsufficientHistory, "history shorter than max(p,q) + d");
	}
	const auto diffed = difference(history, model.order.d);
	std::vector<double> centered(diffed.size());
	for (std::size_t i = 0; i < diffed.size(); ++i) {
		centered[i] = diffed[i] - model.intercept;
	}
	const auto e = css_residuals(centered, model.phi, model.theta);
	const std::size_t n = centered.size();
	double next = 0.0;
	for (std::size_t i = 0; i < p; ++i) {
		next += model.phi[i] * centered[n - i - 1];
	}
	for (std::size_t j = 0; j < q && j < n; ++j) {
		next += model.theta[j] * e[n - j - 1];
	}
	double level = next + model.intercept;
	for (double anchor : difference_anchors(history, model.order.d)) {
		level += anchor;
	}
	return level;
}

double arima_aic(const ArimaModel &model) {
	const double n = static_cast<double>(model.n_effective);
	const double sigma2 = std::max(model.sigma2, std::numeric_limits<double>::min());
	return n * std::log(sigma2) + 2.0 * static_cast<double>(model.order.p + model.order.q + 1);
}

ArimaModel arima_select(std::span<const double> series, const ArimaFitOptions &options) {
	std::optional<ArimaModel> best;
	double best_aic = std::numeric_limits<double>::infinity();
	for (int d = 0; d <= 1; ++d) {
		for (int p = 0; p <= 2; ++p) {
			for (int q = 0; q <= 2; ++q) {
				try {
					auto m = arima_fit(series, {p, d, q}, options);
					const double aic = arima_aic(m);
					if (aic < best_aic) {
						best_aic = aic;
						best = std::move(m);
					}
				} catch (const Error &) {
					// orders that cannot be fitted simply drop out of the grid
				}
			}
		}
	}
	if (!best) {
		throw Error(ErrorKind::NonConvergence, "no ARIMA order in the grid could be fitted");
	}
	return *best;
}

} // namespace sentitrade::forecast
