#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sentitrade {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorKind {
	// configuration / usage
	Config,
	InvalidThresholds,
	LagOutOfRange,
	UnknownRule,
	InvalidComponent,
	// data
	Io,
	MissingColumn,
	Malformed,
	DuplicateDate,
	NonMonotonicDate,
	NegativePrice,
	InconsistentBar,
	TooShort,
	BeyondCalendar,
	EmptyGroup,
	PeriodTooLong,
	SeriesTooShort,
	InsufficientHistory,
	NonPositiveData,
	SignalPriceMismatch,
	NoOverlap,
	WindowMismatch,
	EmptyInput,
	// numerical
	ZeroVolumeWindow,
	NonConvergence,
	RankDeficient,
};

enum class ErrorCategory { Config, Data, Numerical };

ErrorCategory category_of(ErrorKind kind) noexcept;
std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `row` is the 1-based data row for parse errors.
class Error : public std::runtime_error {
public:
	Error(ErrorKind kind, const std::string &message, std::optional<std::size_t> row = std::nullopt);

	ErrorKind kind() const noexcept { return kind_; }
	std::optional<std::size_t> row() const noexcept { return row_; }

private:
	ErrorKind kind_;
	std::optional<std::size_t> row_;
};

// ---------------------------------------------------------------------------
// Calendar dates and Eastern-Time timestamps
// ---------------------------------------------------------------------------

class Date {
public:
	constexpr Date() = default;
	constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
	Date(int year, unsigned month, unsigned day);

	/// Parses `YYYY-MM-DD`; nullopt when malformed or not a real calendar day.
	static std::optional<Date> parse(std::string_view text);
	/// Same as parse() but throws Error{Malformed}.
	static Date from_iso(std::string_view text);

	std::chrono::sys_days days() const noexcept { return days_; }
	std::chrono::year_month_day ymd() const noexcept { return std::chrono::year_month_day{days_}; }
	bool is_weekend() const noexcept;
	Date plus_days(int n) const noexcept { return Date{days_ + std::chrono::days{n}}; }
	std::string iso() const;

	friend constexpr auto operator<=>(const Date &, const Date &) = default;

private:
	std::chrono::sys_days days_{};
};

/// Wall-clock timestamp in US Eastern Time. No zone conversion is ever applied.
struct DateTime {
	Date date;
	int minute_of_day = 0; ///< 0..1439

	/// Accepts `YYYY-MM-DD`, `YYYY-MM-DD HH:MM[:SS]` and `YYYY-MM-DDTHH:MM[:SS]`.
	static std::optional<DateTime> parse(std::string_view text);
	static DateTime from_string(std::string_view text);
	std::string str() const;

	friend constexpr auto operator<=>(const DateTime &, const DateTime &) = default;
};

// ---------------------------------------------------------------------------
// Discrete signals
// ---------------------------------------------------------------------------

/// Three-way direction used for return classes, sentiment labels and trading signals.
enum class Signal : std::int8_t { Negative = -1, Neutral = 0, Positive = 1 };

constexpr int to_int(Signal s) noexcept { return static_cast<int>(s); }

/// Throws Error{InvalidComponent} when `v` is outside {-1, 0, 1}.
Signal signal_from_int(int v);

constexpr Signal sign_of(double v) noexcept {
	return v > 0.0 ? Signal::Positive : (v < 0.0 ? Signal::Negative : Signal::Neutral);
}

template <class T>
struct Dated {
	Date date;
	T value;

	friend bool operator==(const Dated &, const Dated &) = default;
};

/// Dated sequence of signals from one named source.
struct SignalSeries {
	std::string source;
	std::vector<Dated<Signal>> entries;

	std::size_t size() const noexcept { return entries.size(); }
	friend bool operator==(const SignalSeries &, const SignalSeries &) = default;
};

} // namespace sentitrade
