#pragma once

#include <functional>
#include <vector>

namespace sentitrade::optimize {

struct NelderMeadOptions {
	int max_iterations = 2000;
	double initial_step = 0.1;
	/// Converged when the simplex's value spread and its extent both fall below these.
	double f_tolerance = 1e-14;
	double x_tolerance = 1e-9;
};

struct NelderMeadResult {
	std::vector<double> x;
	double value = 0.0;
	int iterations = 0;
	bool converged = false;
};

/// Derivative-free downhill simplex with the standard reflection (1),
/// expansion (2), contraction (0.5) and shrink (0.5) coefficients.
/// Deterministic for a given start point. Non-finite objective values are
/// treated as +infinity.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double> &)> &objective,
                             std::vector<double> start, const NelderMeadOptions &options = {});

} // namespace sentitrade::optimize
