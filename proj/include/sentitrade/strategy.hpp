#pragma once

#include "sentitrade/core.hpp"
#include "sentitrade/market_data.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentitrade {

/// Sign of the component sum: +1 buy, -1 sell, 0 hold.
Signal combine_signals(std::span<const Signal> components) noexcept;
/// Integer overload; throws Error{InvalidComponent} for values outside {-1,0,1}.
Signal combine_signals(std::span<const int> components);

struct CombinedSignal {
	Date date;
	std::map<std::string, Signal> components;
	Signal combined = Signal::Neutral;
};

CombinedSignal combine_signals(const std::map<std::string, Signal> &components, Date date);

/// Combines several sources on each of `days`. A source without an entry on a
/// day contributes 0.
std::vector<CombinedSignal> combine_series(std::span<const SignalSeries> sources, std::span<const Date> days);

enum class Execution {
	SameDay, ///< the day-t signal trades at the day-t close
	NextDay, ///< the day-t close executes the signal of day t-1
};

Execution parse_execution(std::string_view text);
std::string_view to_string(Execution e) noexcept;

inline constexpr double kDefaultCapital = 10000.0;

struct SimulationConfig {
	double initial_capital = kDefaultCapital;
	Execution execution = Execution::NextDay;
	double cost = 0.0; ///< proportional cost per trade
};

struct PortfolioState {
	Date date;
	double cash = 0.0;
	double shares = 0.0;
	double price = 0.0;
	double value = 0.0;
	double cumulative_return = 0.0;
	Signal executed = Signal::Neutral; ///< signal acted on at this close
	bool traded = false;

	friend bool operator==(const PortfolioState &, const PortfolioState &) = default;
};

struct EquityCurve {
	double initial_capital = kDefaultCapital;
	std::vector<PortfolioState> states;

	std::vector<Date> dates() const;
};

/// All-in/all-out replay at the adjusted close. Signals must carry exactly the
/// window's dates. Every day records the post-trade state marked to market.
EquityCurve simulate(const PriceSeries &window, std::span<const CombinedSignal> signals, const SimulationConfig &config = {});
EquityCurve simulate(const PriceSeries &window, std::span<const Signal> signals, const SimulationConfig &config = {});

/// Buys with all capital at the first close and never trades again.
EquityCurve buy_and_hold(const PriceSeries &window, double initial_capital = kDefaultCapital);

/// (V_final - C0) / C0 with V marked to market.
double strategy_return(const EquityCurve &curve);

/// Literal cash-only figure (C_final - C0) / C0; -100% while fully invested.
double cash_only_return(const EquityCurve &curve);

/// `date,cash,shares,price,value,return`
std::string write_equity_curve_csv(const EquityCurve &curve);
EquityCurve parse_equity_curve_csv(std::string_view text, double initial_capital = kDefaultCapital);

} // namespace sentitrade
