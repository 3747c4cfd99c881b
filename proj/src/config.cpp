#include "sentitrade/config.hpp"

#include "sentitrade/csv.hpp"
#include "sentitrade/forecast/walk_forward.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

namespace sentitrade {

namespace {

[[noreturn]] void config_error(std::size_t line, const std::string &what) {
	throw Error(ErrorKind::Config, "config line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
		s.remove_prefix(1);
	}
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
		s.remove_suffix(1);
	}
	return s;
}

bool is_bare_key(std::string_view s) {
	if (s.empty()) {
		return false;
	}
	for (char c : s) {
		if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) {
			return false;
		}
	}
	return true;
}

/// Reads one scalar starting at `pos`; advances past it.
ConfigValue::Scalar read_scalar(std::string_view s, std::size_t &pos, std::size_t line) {
	if (pos < s.size() && s[pos] == '"') {
		std::string out;
		++pos;
		while (pos < s.size() && s[pos] != '"') {
			if (s[pos] == '\\' && pos + 1 < s.size()) {
				const char e = s[pos + 1];
				out.push_back(e == 'n' ? '\n' : (e == 't' ? '\t' : e));
				pos += 2;
			} else {
				out.push_back(s[pos++]);
			}
		}
		if (pos >= s.size()) {
			config_error(line, "unterminated string");
		}
		++pos;
		return out;
	}
	const std::size_t start = pos;
	while (pos < s.size() && s[pos] != ',' && s[pos] != ']' && !std::isspace(static_cast<unsigned char>(s[pos]))) {
		++pos;
	}
	const std::string_view token = s.substr(start, pos - start);
	if (token == "true") return true;
	if (token == "false") return false;
	std::string digits;
	for (char c : token) {
		if (c != '_') {
			digits.push_back(c);
		}
	}
	auto v = csv::parse_double(digits);
	if (!v || token.empty()) {
		config_error(line, "expected a string, number or boolean, got '" + std::string(token) + "'");
	}
	return *v;
}

void skip_space(std::string_view s, std::size_t &pos) {
	while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
		++pos;
	}
}

/// Drops a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view s) {
	bool quoted = false;
	for (std::size_t i = 0; i < s.size(); ++i) {
		if (s[i] == '\\' && quoted) {
			++i;
		} else if (s[i] == '"') {
			quoted = !quoted;
		} else if (s[i] == '#' && !quoted) {
			return s.substr(0, i);
		}
	}
	return s;
}

// --- typed accessors ------------------------------------------------------------------

std::string type_name(const ConfigValue &v) {
	switch (v.value.index()) {
	case 0: return "string";
	case 1: return "number";
	case 2: return "boolean";
	default: return "array";
	}
}

const std::string &as_string(const std::string &key, const ConfigValue &v) {
	if (const auto *s = std::get_if<std::string>(&v.value)) {
		return *s;
	}
	config_error(v.line, key + " must be a string, got " + type_name(v));
}

double as_number(const std::string &key, const ConfigValue &v) {
	if (const auto *d = std::get_if<double>(&v.value)) {
		return *d;
	}
	config_error(v.line, key + " must be a number, got " + type_name(v));
}

long long as_integer(const std::string &key, const ConfigValue &v) {
	const double d = as_number(key, v);
	if (d != std::floor(d) || std::fabs(d) > 9.0e15) {
		config_error(v.line, key + " must be an integer");
	}
	return static_cast<long long>(d);
}

std::vector<double> as_numbers(const std::string &key, const ConfigValue &v, std::size_t count) {
	const auto *items = std::get_if<std::vector<ConfigValue::Scalar>>(&v.value);
	if (!items || items->size() != count) {
		config_error(v.line, key + " must be an array of " + std::to_string(count) + " numbers");
	}
	std::vector<double> out;
	for (const auto &item : *items) {
		const auto *d = std::get_if<double>(&item);
		if (!d) {
			config_error(v.line, key + " must hold numbers only");
		}
		out.push_back(*d);
	}
	return out;
}

std::vector<std::string> as_strings(const std::string &key, const ConfigValue &v) {
	const auto *items = std::get_if<std::vector<ConfigValue::Scalar>>(&v.value);
	if (!items) {
		config_error(v.line, key + " must be an array of strings");
	}
	std::vector<std::string> out;
	for (const auto &item : *items) {
		const auto *s = std::get_if<std::string>(&item);
		if (!s) {
			config_error(v.line, key + " must hold strings only");
		}
		out.push_back(*s);
	}
	return out;
}

indicators::MacdParams macd_params(const std::string &key, const ConfigValue &v) {
	const auto n = as_numbers(key, v, 3);
	for (double x : n) {
		if (x != std::floor(x) || x < 1 || x > 10000) {
			config_error(v.line, key + " periods must be positive integers");
		}
	}
	return {static_cast<int>(n[0]), static_cast<int>(n[1]), static_cast<int>(n[2])};
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p) {
	const std::filesystem::path path(p);
	return path.is_absolute() || base.empty() ? path : base / path;
}

} // namespace

ConfigDocument parse_config_document(std::string_view text) {
	ConfigDocument doc;
	std::string section;
	std::size_t line_no = 0;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		const auto nl = text.find('\n', pos);
		const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
		pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
		++line_no;

		const std::string_view line = trim(strip_comment(raw));
		if (line.empty()) {
			continue;
		}
		if (line.front() == '[') {
			if (line.back() != ']') {
				config_error(line_no, "unterminated section header");
			}
			const auto name = trim(line.substr(1, line.size() - 2));
			if (!is_bare_key(name)) {
				config_error(line_no, "bad section name '" + std::string(name) + "'");
			}
			section = std::string(name);
			continue;
		}
		const auto eq = line.find('=');
		if (eq == std::string_view::npos) {
			config_error(line_no, "expected key = value");
		}
		const auto key = trim(line.substr(0, eq));
		if (!is_bare_key(key)) {
			config_error(line_no, "bad key '" + std::string(key) + "'");
		}
		const auto rhs = trim(line.substr(eq + 1));
		ConfigValue value;
		value.line = line_no;
		std::size_t p = 0;
		if (!rhs.empty() && rhs.front() == '[') {
			std::vector<ConfigValue::Scalar> items;
			p = 1;
			skip_space(rhs, p);
			while (p < rhs.size() && rhs[p] != ']') {
				items.push_back(read_scalar(rhs, p, line_no));
				skip_space(rhs, p);
				if (p < rhs.size() && rhs[p] == ',') {
					++p;
					skip_space(rhs, p);
				} else if (p < rhs.size() && rhs[p] != ']') {
					config_error(line_no, "expected ',' or ']' in array");
				}
			}
			if (p >= rhs.size()) {
				config_error(line_no, "unterminated array");
			}
			++p;
			value.value = std::move(items);
		} else {
			std::visit([&](auto &&s) { value.value = s; }, read_scalar(rhs, p, line_no));
		}
		skip_space(rhs, p);
		if (p != rhs.size()) {
			config_error(line_no, "unexpected text after value");
		}
		const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
		if (!doc.emplace(full, std::move(value)).second) {
			config_error(line_no, "duplicate key '" + full + "'");
		}
	}
	return doc;
}

RunConfig config_from_document(const ConfigDocument &doc, const std::filesystem::path &base_dir) {
	RunConfig cfg;
	for (const auto &[key, v] : doc) {
		if (key == "data.prices") {
			cfg.prices = resolve(base_dir, as_string(key, v));
		} else if (key == "data.sentiment") {
			cfg.sentiment = resolve(base_dir, as_string(key, v));
		} else if (key == "data.news") {
			cfg.news = resolve(base_dir, as_string(key, v));
		} else if (key == "window.from") {
			cfg.from = Date::from_iso(as_string(key, v));
		} else if (key == "window.to") {
			cfg.to = Date::from_iso(as_string(key, v));
		} else if (key == "labels.lag") {
			cfg.lag = static_cast<int>(as_integer(key, v));
		} else if (key == "labels.positive") {
			cfg.thresholds.positive = as_number(key, v);
		} else if (key == "labels.negative") {
			cfg.thresholds.negative = as_number(key, v);
		} else if (key == "indicators.macd") {
			cfg.indicators.macd = macd_params(key, v);
		} else if (key == "indicators.dual_long") {
			cfg.indicators.dual_long = macd_params(key, v);
		} else if (key == "indicators.sar") {
			const auto n = as_numbers(key, v, 3);
			cfg.indicators.sar = {n[0], n[1], n[2]};
		} else if (key == "indicators.macd_rule") {
			cfg.indicators.macd_rule = indicators::parse_signal_rule(as_string(key, v));
		} else if (key == "indicators.vw_rule") {
			cfg.indicators.vw_rule = indicators::parse_signal_rule(as_string(key, v));
		} else if (key == "forecast.models") {
			cfg.forecast.models = as_strings(key, v);
		} else if (key == "forecast.min_train") {
			const auto n = as_integer(key, v);
			if (n < 1) {
				config_error(v.line, "forecast.min_train must be positive");
			}
			cfg.forecast.min_train = static_cast<std::size_t>(n);
		} else if (key == "forecast.refit_every") {
			cfg.forecast.refit_every = static_cast<int>(as_integer(key, v));
		} else if (key == "backtest.execution") {
			cfg.simulation.execution = parse_execution(as_string(key, v));
		} else if (key == "backtest.capital") {
			cfg.simulation.initial_capital = as_number(key, v);
		} else if (key == "backtest.cost") {
			cfg.simulation.cost = as_number(key, v);
		} else if (key == "run.out") {
			cfg.out_dir = resolve(base_dir, as_string(key, v));
		} else if (key == "run.id") {
			cfg.run_id = as_string(key, v);
		} else if (key == "run.seed") {
			const auto n = as_integer(key, v);
			if (n < 0) {
				config_error(v.line, "run.seed must be non-negative");
			}
			cfg.seed = static_cast<std::uint64_t>(n);
		} else {
			config_error(v.line, "unknown key '" + key + "'");
		}
	}
	return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
	std::string text;
	try {
		text = csv::read_file(path);
	} catch (const Error &e) {
		throw Error(ErrorKind::Config, std::string("cannot read config: ") + e.what());
	}
	try {
		return config_from_document(parse_config_document(text), path.parent_path());
	} catch (const Error &e) {
		throw Error(e.kind(), path.string() + ": " + e.what());
	}
}

void RunConfig::validate() const {
	if (prices.empty()) {
		throw Error(ErrorKind::Config, "no price file given (--prices or data.prices)");
	}
	if (lag < 0 || lag > 2) {
		throw Error(ErrorKind::LagOutOfRange, "lag must be 0, 1 or 2, got " + std::to_string(lag));
	}
	thresholds.validate();
	if (from && to && *to < *from) {
		throw Error(ErrorKind::Config, "window ends before it starts");
	}
	if (!(simulation.initial_capital > 0.0) || !std::isfinite(simulation.initial_capital)) {
		throw Error(ErrorKind::Config, "capital must be positive");
	}
	if (simulation.cost < 0.0 || simulation.cost >= 1.0) {
		throw Error(ErrorKind::Config, "cost must lie in [0, 1)");
	}
	if (forecast.refit_every < 1) {
		throw Error(ErrorKind::Config, "forecast.refit_every must be >= 1");
	}
	const auto &sar = indicators.sar;
	if (!(sar.alpha0 > 0.0 && sar.alpha_step >= 0.0 && sar.alpha_max >= sar.alpha0)) {
		throw Error(ErrorKind::Config, "SAR parameters need 0 < alpha0 <= alpha_max and step >= 0");
	}
	std::set<std::string> families;
	for (const auto &m : forecast.models) {
		if (!families.insert(forecast::model_family(forecast::parse_model_spec(m))).second) {
			throw Error(ErrorKind::Config, "at most one model per family (ARIMA, ETS, Prophet)");
		}
	}
	if (run_id.empty() || run_id.find_first_of("/\\") != std::string::npos || run_id == "." || run_id == "..") {
		throw Error(ErrorKind::Config, "run id must be a plain directory name");
	}
}

std::string RunConfig::canonical() const {
	auto macd_text = [](const indicators::MacdParams &p) {
		return std::to_string(p.fast) + "/" + std::to_string(p.slow) + "/" + std::to_string(p.signal);
	};
	std::string out;
	auto line = [&](std::string_view k, const std::string &v) {
		out += k;
		out += " = ";
		out += v;
		out += '\n';
	};
	line("prices", prices.filename().string());
	line("sentiment", sentiment ? sentiment->filename().string() : "");
	line("news", news ? news->filename().string() : "");
	line("from", from ? from->iso() : "");
	line("to", to ? to->iso() : "");
	line("lag", std::to_string(lag));
	line("threshold_positive", csv::format_double(thresholds.positive));
	line("threshold_negative", csv::format_double(thresholds.negative));
	line("macd", macd_text(indicators.macd));
	line("dual_long", macd_text(indicators.dual_long));
	line("sar", csv::format_double(indicators.sar.alpha0) + "/" + csv::format_double(indicators.sar.alpha_step) + "/" +
	                csv::format_double(indicators.sar.alpha_max));
	line("macd_rule", std::string(indicators::to_string(indicators.macd_rule)));
	line("vw_rule", std::string(indicators::to_string(indicators.vw_rule)));
	std::string models;
	for (const auto &m : forecast.models) {
		models += (models.empty() ? "" : "; ") + m;
	}
	line("models", models);
	line("min_train", std::to_string(forecast.min_train));
	line("refit_every", std::to_string(forecast.refit_every));
	line("execution", std::string(to_string(simulation.execution)));
	line("capital", csv::format_double(simulation.initial_capital));
	line("cost", csv::format_double(simulation.cost));
	line("run_id", run_id);
	line("seed", std::to_string(seed));
	return out;
}

std::string stable_hash(std::string_view text) {
	std::uint64_t h = 14695981039346656037ULL;
	for (unsigned char c : text) {
		h ^= c;
		h *= 1099511628211ULL;
	}
	char buf[17];
	std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
	return buf;
}

} // namespace sentitrade
