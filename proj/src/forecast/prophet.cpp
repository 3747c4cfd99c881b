#include "sentitrade/forecast/prophet.hpp"

#include "sentitrade/csv.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sentitrade::forecast {

std::string ProphetSpec::str() const {
	std::string out = "prophet(cp=" + std::to_string(n_changepoints) + ",fourier=";
	for (std::size_t i = 0; i < fourier.size(); ++i) {
		if (i) {
			out += '|';
		}
		out += csv::format_double(fourier[i].period) + ':' + std::to_string(fourier[i].order);
	}
	if (fourier.empty()) {
		out += "none";
	}
	out += ",lambda=" + csv::format_double(ridge) + ')';
	return out;
}

double ProphetLiteModel::trend(double t) const {
	double slope = k;
	double offset = m;
	for (std::size_t j = 0; j < changepoints.size(); ++j) {
		if (t >= changepoints[j]) {
			slope += deltas[j];
			offset += gammas[j];
		}
	}
	return slope * t + offset;
}

double ProphetLiteModel::seasonal(double t) const {
	double s = 0.0;
	for (const auto &block : seasonality) {
		for (std::size_t n = 1; n <= block.a.size(); ++n) {
			const double w = 2.0 * std::numbers::pi * static_cast<double>(n) * t / block.spec.period;
			s += block.a[n - 1] * std::cos(w) + block.b[n - 1] * std::sin(w);
		}
	}
	return s;
}

ProphetLiteModel prophet_lite_fit(std::span<const double> values, const ProphetSpec &spec) {
	if (spec.n_changepoints < 0 || spec.ridge < 0.0 || !(spec.changepoint_range > 0.0 && spec.changepoint_range <= 1.0)) {
		throw Error(ErrorKind::Config, "invalid Prophet-lite settings");
	}
	int fourier_cols = 0;
	for (const auto &f : spec.fourier) {
		if (f.order < 1 || !(f.period > 0.0)) {
			throw Error(ErrorKind::Config, "Fourier blocks need order >= 1 and period > 0");
		}
		fourier_cols += 2 * f.order;
	}
	const std::size_t n = values.size();
	if (n < 2 || n < static_cast<std::size_t>(2 * (spec.n_changepoints + fourier_cols))) {
		throw Error(ErrorKind::TooShort, "Prophet-lite needs at least 2 * (changepoints + 2 * sum N) observations");
	}

	ProphetLiteModel model;
	model.spec = spec;
	model.n_train = n;

	// changepoints at evenly spaced observation indices over the leading history
	const auto history = static_cast<std::size_t>(std::floor(static_cast<double>(n) * spec.changepoint_range));
	const auto n_cp = static_cast<std::size_t>(spec.n_changepoints);
	for (std::size_t j = 0; j < n_cp && history >= 2; ++j) {
		const double pos = static_cast<double>(j + 1) * static_cast<double>(history - 1) / static_cast<double>(n_cp);
		model.changepoints.push_back(std::round(pos));
	}
	const std::size_t n_hinge = model.changepoints.size();

	const double t_scale = std::max(1.0, static_cast<double>(n - 1));
	double y_scale = 0.0;
	for (double v : values) {
		y_scale = std::max(y_scale, std::fabs(v));
	}
	if (y_scale == 0.0) {
		y_scale = 1.0;
	}

	const auto cols = static_cast<Eigen::Index>(2 + n_hinge + static_cast<std::size_t>(fourier_cols));
	const auto rows = static_cast<Eigen::Index>(n + n_hinge);
	Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, cols);
	Eigen::VectorXd target = Eigen::VectorXd::Zero(rows);
	for (std::size_t i = 0; i < n; ++i) {
		const auto r = static_cast<Eigen::Index>(i);
		const double t = static_cast<double>(i);
		const double ts = t / t_scale;
		design(r, 0) = 1.0;
		design(r, 1) = ts;
		for (std::size_t j = 0; j < n_hinge; ++j) {
			design(r, static_cast<Eigen::Index>(2 + j)) = std::max(0.0, ts - model.changepoints[j] / t_scale);
		}
		auto c = static_cast<Eigen::Index>(2 + n_hinge);
		for (const auto &f : spec.fourier) {
			for (int h = 1; h <= f.order; ++h) {
				const double w = 2.0 * std::numbers::pi * h * t / f.period;
				design(r, c++) = std::cos(w);
				design(r, c++) = std::sin(w);
			}
		}
		target(r) = values[i] / y_scale;
	}
	const double root_ridge = std::sqrt(spec.ridge);
	for (std::size_t j = 0; j < n_hinge; ++j) {
		design(static_cast<Eigen::Index>(n + j), static_cast<Eigen::Index>(2 + j)) = root_ridge;
	}

	Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
	cod.setThreshold(1e-10); // aliased Fourier columns differ only by rounding
	cod.compute(design);
	const Eigen::VectorXd beta = cod.solve(target);
	model.rank_deficient = cod.rank() < cols;

	model.m = beta(0) * y_scale;
	model.k = beta(1) * y_scale / t_scale;
	for (std::size_t j = 0; j < n_hinge; ++j) {
		const double delta = beta(static_cast<Eigen::Index>(2 + j)) * y_scale / t_scale;
		model.deltas.push_back(delta);
		model.gammas.push_back(-model.changepoints[j] * delta);
	}
	auto c = static_cast<Eigen::Index>(2 + n_hinge);
	for (const auto &f : spec.fourier) {
		FourierTerms terms{f, {}, {}};
		for (int h = 1; h <= f.order; ++h) {
			terms.a.push_back(beta(c++) * y_scale);
			terms.b.push_back(beta(c++) * y_scale);
		}
		model.seasonality.push_back(std::move(terms));
	}

	model.fitted.reserve(n);
	for (std::size_t i = 0; i < n; ++i) {
		model.fitted.push_back(model(static_cast<double>(i)));
	}
	return model;
}

ProphetLiteModel prophet_lite_fit(std::span<const Date> dates, std::span<const double> values, const ProphetSpec &spec) {
	if (dates.size() != values.size()) {
		throw Error(ErrorKind::WindowMismatch, "dates and values lengths differ");
	}
	for (std::size_t i = 1; i < dates.size(); ++i) {
		if (!(dates[i - 1] < dates[i])) {
			throw Error(ErrorKind::NonMonotonicDate, "training dates must increase", i + 1);
		}
	}
	auto model = prophet_lite_fit(values, spec);
	model.train_dates.assign(dates.begin(), dates.end());
	return model;
}

double prophet_lite_forecast(const ProphetLiteModel &model, double t) {
	if (t < 0.0) {
		throw Error(ErrorKind::Config, "forecast index precedes the training window");
	}
	return model(t);
}

double trading_day_index(std::span<const Date> sessions, Date date) {
	if (sessions.empty() || date < sessions.front()) {
		throw Error(ErrorKind::BeyondCalendar, "date " + date.iso() + " precedes the session list");
	}
	auto it = std::lower_bound(sessions.begin(), sessions.end(), date);
	if (it != sessions.end()) {
		if (*it != date) {
			throw Error(ErrorKind::BeyondCalendar, date.iso() + " is not a session");
		}
		return static_cast<double>(it - sessions.begin());
	}
	double index = static_cast<double>(sessions.size() - 1);
	for (Date d = sessions.back().plus_days(1); d <= date; d = d.plus_days(1)) {
		if (!d.is_weekend()) {
			index += 1.0;
		}
	}
	return index;
}

double prophet_lite_forecast(const ProphetLiteModel &model, Date date, std::span<const Date> calendar) {
	if (model.train_dates.empty()) {
		throw Error(ErrorKind::Config, "model was fitted without dates");
	}
	std::vector<Date> sessions = model.train_dates;
	for (const Date &d : calendar) {
		if (d > sessions.back()) {
			sessions.push_back(d);
		}
	}
	return model(trading_day_index(sessions, date));
}

} // namespace sentitrade::forecast
