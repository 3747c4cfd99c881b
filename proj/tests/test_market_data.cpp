#include "test_support.hpp"

#include "sentitrade/market_data.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace sentitrade;
using Catch::Matchers::WithinAbs;

namespace {

constexpr const char *kHeader = "date,open,high,low,close,adj_close,volume\n";

ErrorKind parse_error_kind(const std::string &body, std::optional<std::size_t> *row = nullptr) {
	try {
		parse_price_csv(std::string(kHeader) + body);
	} catch (const Error &e) {
		if (row) {
			*row = e.row();
		}
		return e.kind();
	}
	FAIL("expected a parse error");
	return ErrorKind::Config;
}

} // namespace

TEST_CASE("empty body parses to an empty series") {
	CHECK(parse_price_csv(kHeader).empty());
}

TEST_CASE("out-of-order rows are rejected with the row index") {
	std::optional<std::size_t> row;
	CHECK(parse_error_kind("2024-05-13,1,2,1,1.5,1.5,10\n2024-05-10,1,2,1,1.5,1.5,10\n", &row) ==
	      ErrorKind::NonMonotonicDate);
	CHECK(row == 2);
}

TEST_CASE("parse rejects every invariant violation") {
	std::optional<std::size_t> row;
	CHECK(parse_error_kind("2024-05-10,1,2,1,1.5,1.5,10\n2024-05-10,1,2,1,1.5,1.5,10\n", &row) ==
	      ErrorKind::DuplicateDate);
	CHECK(row == 2);
	CHECK(parse_error_kind("2024-05-10,1,2,1,1.5,-1.5,10\n") == ErrorKind::NegativePrice);
	CHECK(parse_error_kind("2024-05-10,1,2,1,1.5,1.5,-10\n") == ErrorKind::NegativePrice);
	CHECK(parse_error_kind("2024-05-10,1,2,1.2,1.1,1.1,10\n") == ErrorKind::InconsistentBar);
	CHECK(parse_error_kind("2024-05-10,1,2,1,abc,1.5,10\n", &row) == ErrorKind::Malformed);
	CHECK(row == 1);
	CHECK(parse_error_kind("2024-13-10,1,2,1,1.5,1.5,10\n") == ErrorKind::Malformed);
	try {
		parse_price_csv("date,open,high,low,close,volume\n");
		FAIL("expected MissingColumn");
	} catch (const Error &e) {
		CHECK(e.kind() == ErrorKind::MissingColumn);
	}
}

TEST_CASE("CRLF input and column order are tolerated") {
	const auto s = parse_price_csv("volume,adj_close,close,low,high,open,date\r\n10,1.5,1.5,1,2,1,2024-05-10\r\n");
	REQUIRE(s.size() == 1);
	CHECK(s[0].adj_close == 1.5);
	CHECK(s[0].volume == 10);
}

TEST_CASE("price CSV writer round-trips exactly") {
	std::mt19937_64 rng(11);
	const auto prices = test_support::bars_from_closes(test_support::random_walk(rng, 50));
	CHECK(parse_price_csv(write_price_csv(prices)).bars() == prices.bars());
}

TEST_CASE("returns follow the simple-return definition") {
	const auto flat = compute_returns(test_support::bars_from_closes({100, 100}));
	REQUIRE(flat.size() == 1);
	CHECK(flat[0].value == 0.0);

	const auto prices = test_support::bars_from_closes({100, 102, 96.9});
	const auto r = compute_returns(prices);
	REQUIRE(r.size() == 2);
	CHECK_THAT(r[0].value, WithinAbs(0.02, 1e-15));
	CHECK_THAT(r[1].value, WithinAbs(-0.05, 1e-15));
	CHECK(r[0].date == prices[1].date);

	CHECK_THROWS_AS(compute_returns(test_support::bars_from_closes({100})), Error);
}

TEST_CASE("labeling thresholds put the boundaries in the neutral band") {
	CHECK(classify_return(0.011, kDefaultThresholds) == Signal::Positive);
	CHECK(classify_return(0.01, kDefaultThresholds) == Signal::Neutral);
	CHECK(classify_return(-0.01, kDefaultThresholds) == Signal::Neutral);
	CHECK(classify_return(-0.0101, kDefaultThresholds) == Signal::Negative);

	ReturnSeries zeros;
	for (const auto &d : test_support::weekdays(5)) {
		zeros.push_back({d, 0.0});
	}
	for (const auto &c : label_returns(zeros)) {
		CHECK(c.value == Signal::Neutral);
	}
	CHECK_THROWS_AS(label_returns(zeros, Thresholds{-0.01, 0.01}), Error);
	CHECK_THROWS_AS(label_returns(zeros, Thresholds{0.0, -0.01}), Error);
}

TEST_CASE("integrating returns reproduces the adjusted closes") {
	std::mt19937_64 rng(3);
	for (int rep = 0; rep < 20; ++rep) {
		const auto prices = test_support::bars_from_closes(test_support::random_walk(rng, 250, 50.0, 0.03));
		const auto r = compute_returns(prices);
		double level = prices[0].adj_close;
		for (std::size_t i = 0; i < r.size(); ++i) {
			level *= 1.0 + r[i].value;
			CHECK(std::fabs(level / prices[i + 1].adj_close - 1.0) < 1e-9);
		}
	}
}

TEST_CASE("class counts sum to the number of returns") {
	std::mt19937_64 rng(5);
	const auto r = compute_returns(test_support::bars_from_closes(test_support::random_walk(rng, 300)));
	const auto classes = label_returns(r);
	REQUIRE(classes.size() == r.size());
	std::size_t total = 0;
	for (int k = -1; k <= 1; ++k) {
		for (const auto &c : classes) {
			total += to_int(c.value) == k ? 1 : 0;
		}
	}
	CHECK(total == r.size());
	CHECK(label_returns(compute_returns(parse_price_csv(write_price_csv(test_support::bars_from_closes(
	          test_support::random_walk(rng, 30)))))) .size() == 29);
}

TEST_CASE("labels ignore raw prices when the adjusted close is unchanged") {
	std::mt19937_64 rng(9);
	const auto base = test_support::bars_from_closes(test_support::random_walk(rng, 60));
	std::vector<PriceBar> shifted = base.bars();
	for (auto &b : shifted) {
		b.open += 7.0;
		b.high += 7.0;
		b.low += 7.0;
		b.close += 7.0;
	}
	CHECK(label_returns(compute_returns(PriceSeries(shifted))) == label_returns(compute_returns(base)));
}

TEST_CASE("GSPC fixture") {
	const auto prices = parse_price_csv(test_support::read_fixture("gspc_2024-05-10_2024-08-07.csv"));
	// 61 NYSE sessions fall in 2024-05-10..2024-08-07 (Memorial Day, Juneteenth and July 4th closed)
	REQUIRE(prices.size() == 61);
	CHECK(prices[0].date == Date(2024, 5, 10));
	CHECK(prices[prices.size() - 1].date == Date(2024, 8, 7));

	const auto r = compute_returns(prices);
	CHECK(r[0].date == Date(2024, 5, 13));
	CHECK_THAT(r[0].value, WithinAbs(-0.00024125544739483917, 1e-12));

	int counts[3] = {0, 0, 0};
	for (const auto &c : label_returns(r)) {
		++counts[to_int(c.value) + 1];
	}
	CHECK(counts[0] == 5);
	CHECK(counts[1] == 48);
	CHECK(counts[2] == 7);
}

TEST_CASE("slice keeps the inclusive date range") {
	const auto prices = test_support::bars_from_closes({1, 2, 3, 4, 5});
	const auto s = prices.slice(prices[1].date, prices[3].date);
	REQUIRE(s.size() == 3);
	CHECK(s[0].adj_close == 2.0);
	CHECK(s[2].adj_close == 4.0);
}
