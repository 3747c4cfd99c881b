#include "sentitrade/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sentitrade::optimize {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double> &)> &objective,
                             std::vector<double> start, const NelderMeadOptions &options) {
	const std::size_t n = start.size();
	auto eval = [&](const std::vector<double> &x) {
		const double v = objective(x);
		return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
	};

	NelderMeadResult result;
	if (n == 0) {
		result.x = std::move(start);
		result.value = eval(result.x);
		result.converged = true;
		return result;
	}

	std::vector<std::vector<double>> simplex(n + 1, start);
	for (std::size_t i = 0; i < n; ++i) {
		const double step = start[i] != 0.0 ? options.initial_step * std::max(1.0, std::fabs(start[i])) : options.initial_step;
		simplex[i + 1][i] += step;
	}
	std::vector<double> values(n + 1);
	for (std::size_t i = 0; i <= n; ++i) {
		values[i] = eval(simplex[i]);
	}

	std::vector<std::size_t> order(n + 1);
	std::vector<double> centroid(n);
	auto point = [&](double coef, const std::vector<double> &worst) {
		std::vector<double> p(n);
		for (std::size_t j = 0; j < n; ++j) {
			p[j] = centroid[j] + coef * (worst[j] - centroid[j]);
		}
		return p;
	};

	int iter = 0;
	for (; iter < options.max_iterations; ++iter) {
		std::iota(order.begin(), order.end(), 0);
		std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
		const std::size_t best = order.front();
		const std::size_t worst = order.back();
		const std::size_t second_worst = order[n - 1];

		double extent = 0.0;
		for (std::size_t i = 0; i <= n; ++i) {
			for (std::size_t j = 0; j < n; ++j) {
				extent = std::max(extent, std::fabs(simplex[i][j] - simplex[best][j]));
			}
		}
		const double spread = values[worst] - values[best];
		if (std::isfinite(spread) && spread <= options.f_tolerance * (std::fabs(values[best]) + options.f_tolerance) &&
		    extent <= options.x_tolerance) {
			result.converged = true;
			break;
		}

		std::fill(centroid.begin(), centroid.end(), 0.0);
		for (std::size_t i = 0; i <= n; ++i) {
			if (i == worst) {
				continue;
			}
			for (std::size_t j = 0; j < n; ++j) {
				centroid[j] += simplex[i][j] / static_cast<double>(n);
			}
		}

		const auto reflected = point(-1.0, simplex[worst]);
		const double f_reflected = eval(reflected);
		if (f_reflected < values[best]) {
			const auto expanded = point(-2.0, simplex[worst]);
			const double f_expanded = eval(expanded);
			if (f_expanded < f_reflected) {
				simplex[worst] = expanded;
				values[worst] = f_expanded;
			} else {
				simplex[worst] = reflected;
				values[worst] = f_reflected;
			}
			continue;
		}
		if (f_reflected < values[second_worst]) {
			simplex[worst] = reflected;
			values[worst] = f_reflected;
			continue;
		}
		const bool outside = f_reflected < values[worst];
		const auto contracted = outside ? point(-0.5, simplex[worst]) : point(0.5, simplex[worst]);
		const double f_contracted = eval(contracted);
		if (f_contracted < (outside ? f_reflected : values[worst])) {
			simplex[worst] = contracted;
			values[worst] = f_contracted;
			continue;
		}
		for (std::size_t i = 0; i <= n; ++i) {
			if (i == best) {
				continue;
			}
			for (std::size_t j = 0; j < n; ++j) {
				simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
			}
			values[i] = eval(simplex[i]);
		}
	}

	const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
	result.x = simplex[best];
	result.value = values[best];
	result.iterations = iter;
	return result;
}

} // namespace sentitrade::optimize
