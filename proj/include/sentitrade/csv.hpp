#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentitrade::csv {

using Row = std::vector<std::string>;

/// RFC-4180 reader: quoted fields may hold commas, CR/LF and doubled quotes.
/// LF and CRLF line endings are both accepted; a trailing newline is optional.
/// Completely empty lines are skipped. A UTF-8 BOM at the start is dropped.
std::vector<Row> parse(std::string_view text);

/// Column lookup over a header row. Throws Error{MissingColumn} for absent names.
class Header {
public:
	explicit Header(const Row &names);
	std::size_t index(std::string_view name) const;
	std::optional<std::size_t> find(std::string_view name) const;

private:
	Row names_;
};

/// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);
std::string join(const Row &fields);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);
/// Fixed-point text with `decimals` places.
std::string format_fixed(double v, int decimals);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::string read_file(const std::filesystem::path &path);
/// Writes atomically enough for our purposes: creates parent directories, truncates.
void write_file(const std::filesystem::path &path, std::string_view content);

} // namespace sentitrade::csv
