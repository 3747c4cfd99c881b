#include "sentitrade/core.hpp"

#include <charconv>
#include <cstdio>

namespace sentitrade {

ErrorCategory category_of(ErrorKind kind) noexcept {
	switch (kind) {
	case ErrorKind::Config:
	case ErrorKind::InvalidThresholds:
	case ErrorKind::LagOutOfRange:
	case ErrorKind::UnknownRule:
	case ErrorKind::InvalidComponent:
		return ErrorCategory::Config;
	case ErrorKind::ZeroVolumeWindow:
	case ErrorKind::NonConvergence:
	case ErrorKind::RankDeficient:
		return ErrorCategory::Numerical;
	default:
		return ErrorCategory::Data;
	}
}

std::string_view to_string(ErrorKind kind) noexcept {
	switch (kind) {
	case ErrorKind::Config: return "Config";
	case ErrorKind::InvalidThresholds: return "InvalidThresholds";
	case ErrorKind::LagOutOfRange: return "LagOutOfRange";
	case ErrorKind::UnknownRule: return "UnknownRule";
	case ErrorKind::InvalidComponent: return "InvalidComponent";
	case ErrorKind::Io: return "Io";
	case ErrorKind::MissingColumn: return "MissingColumn";
	case ErrorKind::Malformed: return "Malformed";
	case ErrorKind::DuplicateDate: return "DuplicateDate";
	case ErrorKind::NonMonotonicDate: return "NonMonotonicDate";
	case ErrorKind::NegativePrice: return "NegativePrice";
	case ErrorKind::InconsistentBar: return "InconsistentBar";
	case ErrorKind::TooShort: return "TooShort";
	case ErrorKind::BeyondCalendar: return "BeyondCalendar";
	case ErrorKind::EmptyGroup: return "EmptyGroup";
	case ErrorKind::PeriodTooLong: return "PeriodTooLong";
	case ErrorKind::SeriesTooShort: return "SeriesTooShort";
	case ErrorKind::InsufficientHistory: return "InsufficientHistory";
	case ErrorKind::NonPositiveData: return "NonPositiveData";
	case ErrorKind::SignalPriceMismatch: return "SignalPriceMismatch";
	case ErrorKind::NoOverlap: return "NoOverlap";
	case ErrorKind::WindowMismatch: return "WindowMismatch";
	case ErrorKind::EmptyInput: return "EmptyInput";
	case ErrorKind::ZeroVolumeWindow: return "ZeroVolumeWindow";
	case ErrorKind::NonConvergence: return "NonConvergence";
	case ErrorKind::RankDeficient: return "RankDeficient";
	}
	return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string &message, std::optional<std::size_t> row) {
	std::string out{to_string(kind)};
	if (row) {
		out += " at row " + std::to_string(*row);
	}
	out += ": ";
	out += message;
	return out;
}

template <class Int>
bool parse_fixed(std::string_view text, Int &out) {
	if (text.empty()) {
		return false;
	}
	for (char c : text) {
		if (c < '0' || c > '9') {
			return false;
		}
	}
	auto res = std::from_chars(text.data(), text.data() + text.size(), out);
	return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

} // namespace

Error::Error(ErrorKind kind, const std::string &message, std::optional<std::size_t> row)
    : std::runtime_error(decorate(kind, message, row)), kind_(kind), row_(row) {}

Date::Date(int year, unsigned month, unsigned day) {
	std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
	if (!ymd.ok()) {
		throw Error(ErrorKind::Malformed, "invalid calendar date");
	}
	days_ = std::chrono::sys_days{ymd};
}

std::optional<Date> Date::parse(std::string_view text) {
	if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
		return std::nullopt;
	}
	int y = 0;
	unsigned m = 0;
	unsigned d = 0;
	if (!parse_fixed(text.substr(0, 4), y) || !parse_fixed(text.substr(5, 2), m) ||
	    !parse_fixed(text.substr(8, 2), d)) {
		return std::nullopt;
	}
	std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
	if (!ymd.ok()) {
		return std::nullopt;
	}
	return Date{std::chrono::sys_days{ymd}};
}

Date Date::from_iso(std::string_view text) {
	auto d = parse(text);
	if (!d) {
		throw Error(ErrorKind::Malformed, "invalid date '" + std::string(text) + "'");
	}
	return *d;
}

bool Date::is_weekend() const noexcept {
	const std::chrono::weekday wd{days_};
	return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

std::string Date::iso() const {
	const auto ymd = this->ymd();
	char buf[16];
	std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
	              static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
	return buf;
}

std::optional<DateTime> DateTime::parse(std::string_view text) {
	if (text.size() < 10) {
		return std::nullopt;
	}
	auto date = Date::parse(text.substr(0, 10));
	if (!date) {
		return std::nullopt;
	}
	if (text.size() == 10) {
		return DateTime{*date, 0};
	}
	if (text[10] != ' ' && text[10] != 'T') {
		return std::nullopt;
	}
	auto clock = text.substr(11);
	if (clock.size() != 5 && clock.size() != 8) {
		return std::nullopt;
	}
	int hh = 0;
	int mm = 0;
	int ss = 0;
	if (clock[2] != ':' || !parse_fixed(clock.substr(0, 2), hh) || !parse_fixed(clock.substr(3, 2), mm)) {
		return std::nullopt;
	}
	if (clock.size() == 8 && (clock[5] != ':' || !parse_fixed(clock.substr(6, 2), ss))) {
		return std::nullopt;
	}
	if (hh > 23 || mm > 59 || ss > 59) {
		return std::nullopt;
	}
	return DateTime{*date, hh * 60 + mm};
}

DateTime DateTime::from_string(std::string_view text) {
	auto dt = parse(text);
	if (!dt) {
		throw Error(ErrorKind::Malformed, "invalid timestamp '" + std::string(text) + "'");
	}
	return *dt;
}

std::string DateTime::str() const {
	char buf[32];
	std::snprintf(buf, sizeof buf, " %02d:%02d:00", minute_of_day / 60, minute_of_day % 60);
	return date.iso() + buf;
}

Signal signal_from_int(int v) {
	if (v < -1 || v > 1) {
		throw Error(ErrorKind::InvalidComponent, "signal value " + std::to_string(v) + " outside {-1,0,1}");
	}
	return static_cast<Signal>(v);
}

} // namespace sentitrade
