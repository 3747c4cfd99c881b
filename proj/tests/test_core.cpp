#include "test_support.hpp"

#include "sentitrade/config.hpp"
#include "sentitrade/core.hpp"
#include "sentitrade/csv.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

using namespace sentitrade;

TEST_CASE("dates parse, validate and print ISO") {
	CHECK(Date::parse("2024-05-10")->iso() == "2024-05-10");
	CHECK_FALSE(Date::parse("2024-02-30"));
	CHECK_FALSE(Date::parse("2024-5-10"));
	CHECK_FALSE(Date::parse("yesterday"));
	CHECK(Date::parse("2024-02-29"));
	CHECK_THROWS_AS(Date::from_iso("2023-02-29"), Error);
	CHECK(Date(2024, 5, 11).is_weekend());
	CHECK_FALSE(Date(2024, 5, 13).is_weekend());
	CHECK(Date(2024, 5, 10).plus_days(3) == Date(2024, 5, 13));
	CHECK(Date(2024, 5, 10) < Date(2024, 5, 13));
}

TEST_CASE("timestamps accept date, space and T forms") {
	auto a = DateTime::parse("2024-05-14 16:30");
	auto b = DateTime::parse("2024-05-14T16:30:59");
	auto c = DateTime::parse("2024-05-14");
	REQUIRE(a);
	REQUIRE(b);
	REQUIRE(c);
	CHECK(a->minute_of_day == 16 * 60 + 30);
	CHECK(b->minute_of_day == a->minute_of_day);
	CHECK(c->minute_of_day == 0);
	CHECK(a->str() == "2024-05-14 16:30:00");
	CHECK_FALSE(DateTime::parse("2024-05-14 24:00"));
	CHECK_FALSE(DateTime::parse("2024-05-14 12:60"));
}

TEST_CASE("signal conversion rejects values outside the three classes") {
	CHECK(signal_from_int(-1) == Signal::Negative);
	CHECK(signal_from_int(0) == Signal::Neutral);
	CHECK(signal_from_int(1) == Signal::Positive);
	try {
		signal_from_int(2);
		FAIL("expected InvalidComponent");
	} catch (const Error &e) {
		CHECK(e.kind() == ErrorKind::InvalidComponent);
	}
	CHECK(sign_of(-0.5) == Signal::Negative);
	CHECK(sign_of(0.0) == Signal::Neutral);
}

TEST_CASE("error kinds map onto exit categories") {
	CHECK(category_of(ErrorKind::Config) == ErrorCategory::Config);
	CHECK(category_of(ErrorKind::LagOutOfRange) == ErrorCategory::Config);
	CHECK(category_of(ErrorKind::Io) == ErrorCategory::Data);
	CHECK(category_of(ErrorKind::NonMonotonicDate) == ErrorCategory::Data);
	CHECK(category_of(ErrorKind::NonConvergence) == ErrorCategory::Numerical);
	CHECK(category_of(ErrorKind::ZeroVolumeWindow) == ErrorCategory::Numerical);
}

TEST_CASE("csv reader handles quoting, CRLF, BOM and blank lines") {
	const auto rows = csv::parse("\xEF\xBB\xBF" "a,b,c\r\n1,\"x, y\",\"he said \"\"hi\"\"\"\r\n\r\n2,\"multi\nline\",\n");
	REQUIRE(rows.size() == 3);
	CHECK(rows[0] == csv::Row{"a", "b", "c"});
	CHECK(rows[1] == csv::Row{"1", "x, y", "he said \"hi\""});
	CHECK(rows[2] == csv::Row{"2", "multi\nline", ""});
}

TEST_CASE("csv escape round-trips through the reader") {
	const csv::Row fields{"plain", "comma,inside", "quote\"inside", "line\nbreak", ""};
	const auto rows = csv::parse(csv::join(fields) + "\n");
	REQUIRE(rows.size() == 1);
	CHECK(rows[0] == fields);
}

TEST_CASE("header lookup reports missing columns") {
	const csv::Header h(csv::Row{"date", "close"});
	CHECK(h.index("close") == 1);
	CHECK_FALSE(h.find("volume"));
	try {
		h.index("volume");
		FAIL("expected MissingColumn");
	} catch (const Error &e) {
		CHECK(e.kind() == ErrorKind::MissingColumn);
	}
}

TEST_CASE("format_double is the shortest exact round trip") {
	std::mt19937_64 rng(7);
	std::uniform_real_distribution<double> u(-1e6, 1e6);
	for (int i = 0; i < 2000; ++i) {
		const double v = u(rng) / std::pow(10.0, i % 9);
		const auto text = csv::format_double(v);
		CHECK(*csv::parse_double(text) == v);
	}
	CHECK(csv::format_double(0.1) == "0.1");
	CHECK(csv::format_double(0.0) == "0");
	CHECK(csv::format_double(-0.0) == "0");
	CHECK(csv::format_fixed(-0.001, 2) == "0.00");
	CHECK(csv::format_fixed(5.77, 2) == "5.77");
}

TEST_CASE("numeric parsing is strict") {
	CHECK(csv::parse_double("1.5e3") == 1500.0);
	CHECK_FALSE(csv::parse_double("1.5x"));
	CHECK_FALSE(csv::parse_double(""));
	CHECK(csv::parse_int("42") == 42);
	CHECK(csv::parse_int("42.0") == 42);
	CHECK_FALSE(csv::parse_int("42.5"));
}

TEST_CASE("config document parses the supported subset") {
	const auto doc = parse_config_document(R"cfg(# comment
[data]
prices = "a.csv"   # trailing comment
[labels]
lag = 2
positive = 0.02
[indicators]
macd = [12, 26, 9]
[forecast]
models = ["arima(1,0,0)", "ets(add,none,none)"]
[run]
seed = 1_000
)cfg");
	RunConfig cfg = config_from_document(doc, "/base");
	CHECK(cfg.prices == std::filesystem::path("/base/a.csv"));
	CHECK(cfg.lag == 2);
	CHECK(cfg.thresholds.positive == 0.02);
	CHECK(cfg.forecast.models.size() == 2);
	CHECK(cfg.seed == 1000);
	CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config errors carry the line number") {
	auto kind_of = [](const char *text) {
		try {
			config_from_document(parse_config_document(text), "");
		} catch (const Error &e) {
			return std::string(e.what());
		}
		return std::string();
	};
	CHECK(kind_of("[data]\nprices = a.csv\n").find("line 2") != std::string::npos);
	CHECK(kind_of("[data]\nunknown = 1\n").find("unknown key") != std::string::npos);
	CHECK(kind_of("lag 1\n").find("line 1") != std::string::npos);
	CHECK(kind_of("[labels]\nlag = 1\nlag = 2\n").find("duplicate") != std::string::npos);
}

TEST_CASE("run configuration defaults mirror the published constants") {
	RunConfig cfg;
	CHECK(cfg.indicators.macd == indicators::MacdParams{12, 26, 9});
	CHECK(cfg.indicators.dual_long == indicators::MacdParams{19, 39, 9});
	CHECK(cfg.thresholds == Thresholds{0.01, -0.01});
	CHECK(cfg.lag == 1);
	CHECK(cfg.simulation.initial_capital == 10000.0);
	CHECK(cfg.simulation.cost == 0.0);
	CHECK(cfg.simulation.execution == Execution::NextDay);
}

TEST_CASE("run configuration validation") {
	RunConfig cfg;
	cfg.prices = "p.csv";
	CHECK_NOTHROW(cfg.validate());
	cfg.lag = 3;
	CHECK_THROWS_AS(cfg.validate(), Error);
	cfg.lag = 1;
	cfg.simulation.initial_capital = 0.0;
	CHECK_THROWS_AS(cfg.validate(), Error);
	cfg.simulation.initial_capital = 10000.0;
	cfg.thresholds = {-0.01, 0.01};
	CHECK_THROWS_AS(cfg.validate(), Error);
	cfg.thresholds = kDefaultThresholds;
	cfg.forecast.models = {"arima(1,0,0)", "arima(2,0,0)"};
	CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("stable hash is FNV-1a") {
	CHECK(stable_hash("") == "cbf29ce484222325");
	CHECK(stable_hash("a") == "af63dc4c8601ec8c");
}
