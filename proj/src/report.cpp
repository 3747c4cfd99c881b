#include "sentitrade/report.hpp"

#include "sentitrade/csv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace sentitrade {

AccuracyScore score_accuracy(const SignalSeries &signals, const ClassSeries &truth) {
	std::map<Date, Signal> classes;
	for (const auto &c : truth) {
		classes[c.date] = c.value;
	}
	std::map<Date, Signal> predicted;
	for (const auto &s : signals.entries) {
		predicted[s.date] = s.value;
	}
	AccuracyScore score;
	for (const auto &[date, signal] : predicted) {
		auto it = classes.find(date);
		if (it == classes.end()) {
			continue;
		}
		++score.days;
		if (it->second == signal) {
			++score.matches;
		}
	}
	if (score.days == 0) {
		throw Error(ErrorKind::NoOverlap, "signal '" + signals.source + "' shares no date with the return classes");
	}
	score.accuracy = static_cast<double>(score.matches) / static_cast<double>(score.days);
	return score;
}

double classification_accuracy(const SignalSeries &signals, const ClassSeries &truth) {
	return score_accuracy(signals, truth).accuracy;
}

std::string AccuracyReport::csv() const {
	std::string out = "signal_source,model,news_source,accuracy,n_days\n";
	for (const auto &r : rows) {
		out += csv::join({r.signal_source, r.model, r.news_source, csv::format_double(r.accuracy), std::to_string(r.n_days)});
		out += '\n';
	}
	return out;
}

// --- returns table ---------------------------------------------------------------

std::optional<double> ReturnsTable::at(const std::string &row, const std::string &column) const {
	auto it = cells.find({row, column});
	if (it == cells.end()) {
		return std::nullopt;
	}
	return it->second;
}

std::string ReturnsTable::csv() const {
	csv::Row header{"strategy"};
	header.insert(header.end(), columns.begin(), columns.end());
	std::string out = csv::join(header) + '\n';
	for (const auto &row : rows) {
		csv::Row line{row};
		for (const auto &col : columns) {
			auto v = at(row, col);
			line.push_back(v ? csv::format_double(*v) : "");
		}
		out += csv::join(line) + '\n';
	}
	csv::Row bench{std::string(kBenchmarkRow)};
	for (std::size_t i = 0; i < columns.size(); ++i) {
		bench.push_back(csv::format_double(benchmark));
	}
	if (columns.empty()) {
		bench.push_back(csv::format_double(benchmark));
	}
	out += csv::join(bench) + '\n';
	return out;
}

std::string ReturnsTable::text() const {
	auto percent = [](double v) { return csv::format_fixed(v * 100.0, 2) + "%"; };

	std::vector<std::vector<std::string>> grid;
	std::vector<std::string> header{"Strategy"};
	header.insert(header.end(), columns.begin(), columns.end());
	grid.push_back(header);
	for (const auto &row : rows) {
		std::vector<std::string> line{row};
		for (const auto &col : columns) {
			auto v = at(row, col);
			line.push_back(v ? percent(*v) : "-");
		}
		grid.push_back(line);
	}
	std::vector<std::string> bench{std::string(kBenchmarkRow)};
	for (std::size_t i = 0; i < std::max<std::size_t>(columns.size(), 1); ++i) {
		bench.push_back(percent(benchmark));
	}
	grid.push_back(bench);

	std::vector<std::size_t> width(grid.back().size(), 0);
	for (const auto &line : grid) {
		for (std::size_t c = 0; c < line.size(); ++c) {
			width[c] = std::max(width[c], line[c].size());
		}
	}
	std::string out;
	for (std::size_t r = 0; r < grid.size(); ++r) {
		const auto &line = grid[r];
		for (std::size_t c = 0; c < line.size(); ++c) {
			const std::string pad(width[c] - line[c].size(), ' ');
			if (c == 0) {
				out += line[c] + pad;
			} else {
				out += "  " + pad + line[c];
			}
		}
		out += '\n';
		if (r == 0 || r + 2 == grid.size()) {
			std::size_t total = 0;
			for (std::size_t c = 0; c < width.size(); ++c) {
				total += width[c] + (c ? 2 : 0);
			}
			out += std::string(total, '-') + '\n';
		}
	}
	return out;
}

ReturnsTable build_returns_table(std::span<const StrategyRun> runs, const EquityCurve &benchmark) {
	const auto window = benchmark.dates();
	if (window.empty()) {
		throw Error(ErrorKind::EmptyInput, "benchmark curve is empty");
	}
	ReturnsTable table;
	table.benchmark = strategy_return(benchmark);
	std::set<std::string> rows;
	std::set<std::string> columns;
	for (const auto &run : runs) {
		if (run.curve.dates() != window) {
			throw Error(ErrorKind::WindowMismatch, "run '" + run.row + "' / '" + run.column +
			                                           "' does not cover the benchmark window");
		}
		if (!table.cells.emplace(std::pair{run.row, run.column}, strategy_return(run.curve)).second) {
			throw Error(ErrorKind::Config, "duplicate run '" + run.row + "' / '" + run.column + "'");
		}
		rows.insert(run.row);
		columns.insert(run.column);
	}
	table.rows.assign(rows.begin(), rows.end());
	table.columns.assign(columns.begin(), columns.end());
	return table;
}

// --- plot exports ---------------------------------------------------------------

std::string plot_csv(std::span<const PlotSeries> series) {
	std::string out = "series,date,value\n";
	for (const auto &s : series) {
		for (const auto &p : s.points) {
			out += csv::join({s.name, p.date.iso(), csv::format_double(p.value)});
			out += '\n';
		}
	}
	return out;
}

std::vector<PlotSeries> parse_plot_csv(std::string_view text) {
	const auto rows = csv::parse(text);
	if (rows.empty()) {
		throw Error(ErrorKind::MissingColumn, "plot CSV has no header", 0);
	}
	const csv::Header header(rows.front());
	const std::size_t c_series = header.index("series");
	const std::size_t c_date = header.index("date");
	const std::size_t c_value = header.index("value");
	std::vector<PlotSeries> out;
	std::map<std::string, std::size_t> index;
	for (std::size_t r = 1; r < rows.size(); ++r) {
		const auto &row = rows[r];
		if (row.size() <= std::max({c_series, c_date, c_value})) {
			throw Error(ErrorKind::Malformed, "short row in plot CSV", r);
		}
		auto date = Date::parse(row[c_date]);
		auto value = csv::parse_double(row[c_value]);
		if (!date || !value) {
			throw Error(ErrorKind::Malformed, "bad date or value in plot CSV", r);
		}
		auto [it, inserted] = index.emplace(row[c_series], out.size());
		if (inserted) {
			out.push_back({row[c_series], {}});
		}
		out[it->second].points.push_back({*date, *value});
	}
	return out;
}

namespace {

std::string xml_escape(std::string_view text) {
	std::string out;
	for (char c : text) {
		switch (c) {
		case '&': out += "&amp;"; break;
		case '<': out += "&lt;"; break;
		case '>': out += "&gt;"; break;
		case '"': out += "&quot;"; break;
		default: out.push_back(c);
		}
	}
	return out;
}

std::string num(double v) {
	return csv::format_fixed(v, 2);
}

void require_points(std::span<const PlotSeries> series) {
	if (series.empty()) {
		throw Error(ErrorKind::EmptyInput, "nothing to plot");
	}
	for (const auto &s : series) {
		if (s.points.empty()) {
			throw Error(ErrorKind::EmptyInput, "series '" + s.name + "' has no points");
		}
	}
}

constexpr std::array<std::string_view, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

} // namespace

std::string render_svg(std::span<const PlotSeries> series, std::string_view title, std::string_view y_label) {
	require_points(series);

	constexpr double width = 760.0;
	constexpr double height = 420.0;
	constexpr double left = 80.0;
	constexpr double right = 200.0;
	constexpr double top = 40.0;
	constexpr double bottom = 50.0;
	const double plot_w = width - left - right;
	const double plot_h = height - top - bottom;

	std::set<Date> all_dates;
	double lo = INFINITY;
	double hi = -INFINITY;
	for (const auto &s : series) {
		for (const auto &p : s.points) {
			all_dates.insert(p.date);
			if (std::isfinite(p.value)) {
				lo = std::min(lo, p.value);
				hi = std::max(hi, p.value);
			}
		}
	}
	if (!(lo <= hi)) {
		lo = -1.0;
		hi = 1.0;
	}
	if (hi - lo < 1e-12) {
		const double pad = std::max(1.0, std::fabs(hi)) * 0.01;
		lo -= pad;
		hi += pad;
	}
	const std::vector<Date> dates(all_dates.begin(), all_dates.end());
	const double span_x = std::max<double>(1.0, static_cast<double>(dates.size() - 1));
	auto x_of = [&](Date d) {
		const auto pos = std::lower_bound(dates.begin(), dates.end(), d) - dates.begin();
		return left + plot_w * static_cast<double>(pos) / span_x;
	};
	auto y_of = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

	std::string out;
	out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
	       "\" viewBox=\"0 0 " + num(width) + ' ' + num(height) + "\">\n";
	out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
	out += "<text x=\"" + num(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
	       xml_escape(title) + "</text>\n";
	// axes
	out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top + plot_h) +
	       "\" stroke=\"black\"/>\n";
	out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" +
	       num(top + plot_h) + "\" stroke=\"black\"/>\n";
	const std::string label_attrs = " font-family=\"sans-serif\" font-size=\"11\"";
	out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(top + 4) + "\" text-anchor=\"end\"" + label_attrs + ">" +
	       csv::format_fixed(hi, 4) + "</text>\n";
	out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(top + plot_h) + "\" text-anchor=\"end\"" + label_attrs + ">" +
	       csv::format_fixed(lo, 4) + "</text>\n";
	out += "<text x=\"" + num(left) + "\" y=\"" + num(top + plot_h + 18) + "\" text-anchor=\"start\"" + label_attrs + ">" +
	       dates.front().iso() + "</text>\n";
	out += "<text x=\"" + num(left + plot_w) + "\" y=\"" + num(top + plot_h + 18) + "\" text-anchor=\"end\"" +
	       label_attrs + ">" + dates.back().iso() + "</text>\n";
	out += "<text x=\"18\" y=\"" + num(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
	       num(top + plot_h / 2) + ")\"" + label_attrs + ">" + xml_escape(y_label) + "</text>\n";

	for (std::size_t i = 0; i < series.size(); ++i) {
		const auto colour = kPalette[i % kPalette.size()];
		out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
		bool first = true;
		for (const auto &p : series[i].points) {
			if (!std::isfinite(p.value)) {
				continue;
			}
			if (!first) {
				out += ' ';
			}
			first = false;
			out += num(x_of(p.date)) + ',' + num(y_of(p.value));
		}
		out += "\"/>\n";
		const double ly = top + 10.0 + 18.0 * static_cast<double>(i);
		const double lx = left + plot_w + 16.0;
		out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" + num(ly) +
		       "\" stroke=\"" + std::string(colour) + "\" stroke-width=\"2\"/>\n";
		out += "<text class=\"legend\" x=\"" + num(lx + 26) + "\" y=\"" + num(ly + 4) + "\"" + label_attrs + ">" +
		       xml_escape(series[i].name) + "</text>\n";
	}
	out += "</svg>\n";
	return out;
}

void export_plot_data(std::span<const PlotSeries> series, const std::filesystem::path &csv_path,
                      const std::filesystem::path &svg_path, std::string_view title, std::string_view y_label) {
	require_points(series);
	csv::write_file(csv_path, plot_csv(series));
	csv::write_file(svg_path, render_svg(series, title, y_label));
}

} // namespace sentitrade
