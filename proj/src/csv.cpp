#include "sentitrade/csv.hpp"

#include "sentitrade/core.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sentitrade::csv {

std::vector<Row> parse(std::string_view text) {
	if (text.substr(0, 3) == "\xEF\xBB\xBF") {
		text.remove_prefix(3);
	}
	std::vector<Row> rows;
	Row row;
	std::string field;
	bool in_quotes = false;
	bool field_started = false;

	auto end_row = [&] {
		if (field_started || !row.empty()) {
			row.push_back(std::move(field));
			rows.push_back(std::move(row));
		}
		row.clear();
		field.clear();
		field_started = false;
	};

	for (std::size_t i = 0; i < text.size(); ++i) {
		const char c = text[i];
		if (in_quotes) {
			if (c == '"') {
				if (i + 1 < text.size() && text[i + 1] == '"') {
					field.push_back('"');
					++i;
				} else {
					in_quotes = false;
				}
			} else {
				field.push_back(c);
			}
			continue;
		}
		switch (c) {
		case '"':
			in_quotes = true;
			field_started = true;
			break;
		case ',':
			row.push_back(std::move(field));
			field.clear();
			field_started = true;
			break;
		case '\r':
			if (i + 1 < text.size() && text[i + 1] == '\n') {
				++i;
			}
			end_row();
			break;
		case '\n':
			end_row();
			break;
		default:
			field.push_back(c);
			field_started = true;
		}
	}
	if (in_quotes) {
		throw Error(ErrorKind::Malformed, "unterminated quoted field", rows.size());
	}
	end_row();
	return rows;
}

Header::Header(const Row &names) : names_(names) {}

std::optional<std::size_t> Header::find(std::string_view name) const {
	for (std::size_t i = 0; i < names_.size(); ++i) {
		if (names_[i] == name) {
			return i;
		}
	}
	return std::nullopt;
}

std::size_t Header::index(std::string_view name) const {
	auto idx = find(name);
	if (!idx) {
		throw Error(ErrorKind::MissingColumn, "missing column '" + std::string(name) + "'", 0);
	}
	return *idx;
}

std::string escape(std::string_view field) {
	if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
		return std::string(field);
	}
	std::string out = "\"";
	for (char c : field) {
		if (c == '"') {
			out += "\"\"";
		} else {
			out.push_back(c);
		}
	}
	out.push_back('"');
	return out;
}

std::string join(const Row &fields) {
	std::string out;
	for (std::size_t i = 0; i < fields.size(); ++i) {
		if (i) {
			out.push_back(',');
		}
		out += escape(fields[i]);
	}
	return out;
}

std::string format_double(double v) {
	if (v == 0.0) {
		return "0"; // folds -0
	}
	char buf[64];
	auto res = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
	std::string out = buf;
	// "-0.00" is not a value anyone wants in a table
	if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
		out.erase(0, 1);
	}
	return out;
}

std::optional<double> parse_double(std::string_view text) {
	while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
		text.remove_prefix(1);
	}
	while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
		text.remove_suffix(1);
	}
	if (!text.empty() && text.front() == '+') {
		text.remove_prefix(1);
	}
	if (text.empty()) {
		return std::nullopt;
	}
	double v = 0.0;
	auto res = std::from_chars(text.data(), text.data() + text.size(), v);
	if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
		return std::nullopt;
	}
	return v;
}

std::optional<long long> parse_int(std::string_view text) {
	if (!text.empty() && text.front() == '+') {
		text.remove_prefix(1);
	}
	long long v = 0;
	auto res = std::from_chars(text.data(), text.data() + text.size(), v);
	if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
		// volumes are sometimes exported as "123.0"
		auto d = parse_double(text);
		if (d && std::floor(*d) == *d && std::fabs(*d) < 9.0e18) {
			return static_cast<long long>(*d);
		}
		return std::nullopt;
	}
	return v;
}

std::string read_file(const std::filesystem::path &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
	}
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_file(const std::filesystem::path &path, std::string_view content) {
	if (path.has_parent_path()) {
		std::filesystem::create_directories(path.parent_path());
	}
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out) {
		throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
	}
	out.write(content.data(), static_cast<std::streamsize>(content.size()));
	if (!out) {
		throw Error(ErrorKind::Io, "short write to '" + path.string() + "'");
	}
}

} // namespace sentitrade::csv
