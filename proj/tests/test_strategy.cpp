#include "oracles.hpp"
#include "test_support.hpp"

#include "sentitrade/strategy.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace sentitrade;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<Signal> to_signals(const std::vector<int> &v) {
	std::vector<Signal> out;
	for (int x : v) {
		out.push_back(signal_from_int(x));
	}
	return out;
}

std::vector<int> random_signals(std::mt19937_64 &rng, std::size_t n) {
	std::uniform_int_distribution<int> d(-1, 1);
	std::vector<int> out;
	for (std::size_t i = 0; i < n; ++i) {
		out.push_back(d(rng));
	}
	return out;
}

SimulationConfig same_day(double capital = kDefaultCapital) {
	return SimulationConfig{capital, Execution::SameDay, 0.0};
}

} // namespace

TEST_CASE("fusion examples") {
	CHECK(combine_signals(std::vector<int>{1, -1, 1}) == Signal::Positive);
	CHECK(combine_signals(std::vector<int>{1, -1}) == Signal::Neutral);
	CHECK(combine_signals(std::vector<int>{0, 0, -1}) == Signal::Negative);
	CHECK(combine_signals(std::vector<int>{}) == Signal::Neutral);
	CHECK_THROWS_AS(combine_signals(std::vector<int>{1, 2}), Error);
}

TEST_CASE("fusion agrees with the sign oracle on every small input") {
	for (std::size_t len = 1; len <= 4; ++len) {
		std::size_t total = 1;
		for (std::size_t i = 0; i < len; ++i) {
			total *= 3;
		}
		for (std::size_t code = 0; code < total; ++code) {
			std::vector<int> v;
			std::size_t c = code;
			for (std::size_t i = 0; i < len; ++i) {
				v.push_back(static_cast<int>(c % 3) - 1);
				c /= 3;
			}
			const auto sig = to_signals(v);
			CHECK(to_int(combine_signals(v)) == oracle::sign_of_sum(v));
			CHECK(to_int(combine_signals(std::span<const Signal>(sig))) == oracle::sign_of_sum(v));
			auto perm = v;
			std::sort(perm.begin(), perm.end());
			do {
				CHECK(combine_signals(perm) == combine_signals(v));
			} while (std::next_permutation(perm.begin(), perm.end()));
		}
	}
}

TEST_CASE("named components combine per day") {
	const auto c = combine_signals({{"MACD", Signal::Positive}, {"GPT2 DowJones", Signal::Negative}}, Date(2024, 5, 13));
	CHECK(c.combined == Signal::Neutral);
	CHECK(c.components.size() == 2);

	const auto days = test_support::weekdays(3);
	SignalSeries a{"A", {{days[0], Signal::Positive}, {days[1], Signal::Positive}, {days[2], Signal::Negative}}};
	SignalSeries b{"B", {{days[0], Signal::Positive}, {days[2], Signal::Negative}}};
	const std::vector<SignalSeries> sources{a, b};
	const auto combined = combine_series(sources, days);
	REQUIRE(combined.size() == 3);
	CHECK(combined[0].combined == Signal::Positive);
	CHECK(combined[1].combined == Signal::Positive);
	CHECK(combined[1].components.at("B") == Signal::Neutral);
	CHECK(combined[2].combined == Signal::Negative);
}

TEST_CASE("execution timing parses both spellings") {
	CHECK(parse_execution("same_day") == Execution::SameDay);
	CHECK(parse_execution("next-day") == Execution::NextDay);
	CHECK(to_string(Execution::NextDay) == "next_day");
	CHECK_THROWS_AS(parse_execution("tomorrow"), Error);
}

TEST_CASE("all-neutral signals keep the capital in cash") {
	std::mt19937_64 rng(1);
	const auto prices = test_support::bars_from_closes(test_support::random_walk(rng, 30));
	const std::vector<Signal> zeros(30, Signal::Neutral);
	for (auto exec : {Execution::SameDay, Execution::NextDay}) {
		const auto curve = simulate(prices, zeros, SimulationConfig{kDefaultCapital, exec, 0.0});
		for (const auto &s : curve.states) {
			CHECK(s.cash == kDefaultCapital);
			CHECK(s.shares == 0.0);
			CHECK(s.value == kDefaultCapital);
			CHECK_FALSE(s.traded);
		}
		CHECK(strategy_return(curve) == 0.0);
	}
}

TEST_CASE("buy then sell on a 10 percent rise") {
	const auto prices = test_support::bars_from_closes({100, 110});
	const auto curve = simulate(prices, to_signals({1, -1}), same_day());
	REQUIRE(curve.states.size() == 2);
	CHECK(curve.states[0].shares == 100.0);
	CHECK(curve.states[0].cash == 0.0);
	CHECK(curve.states[1].cash == 11000.0);
	CHECK(curve.states[1].shares == 0.0);
	CHECK_THAT(strategy_return(curve), WithinAbs(0.1, 1e-15));
	CHECK_THAT(cash_only_return(curve), WithinAbs(0.1, 1e-15));

	const auto delayed = simulate(prices, to_signals({1, -1}), SimulationConfig{});
	CHECK(delayed.states[0].shares == 0.0);
	CHECK(delayed.states[1].shares == 10000.0 / 110.0);
	CHECK(delayed.states[1].value == 10000.0);
	CHECK(cash_only_return(delayed) == -1.0);
}

TEST_CASE("simulator matches a literal replay on random fixtures") {
	std::mt19937_64 rng(2024);
	for (int rep = 0; rep < 1000; ++rep) {
		const auto closes = test_support::random_walk(rng, 63, 50.0 + rep % 100, 0.02);
		const auto prices = test_support::bars_from_closes(closes);
		const auto sig = random_signals(rng, closes.size());
		const bool next_day = rep % 2 == 1;
		const auto curve = simulate(prices, to_signals(sig),
		                            SimulationConfig{kDefaultCapital, next_day ? Execution::NextDay : Execution::SameDay, 0.0});
		const auto expected = oracle::replay(closes, sig, kDefaultCapital, next_day);
		REQUIRE(curve.states.size() == expected.size());
		for (std::size_t t = 0; t < expected.size(); ++t) {
			const auto &s = curve.states[t];
			CHECK_THAT(s.cash, WithinAbs(expected[t].cash, 1e-9));
			CHECK_THAT(s.shares, WithinAbs(expected[t].shares, 1e-9));
			CHECK_THAT(s.value, WithinAbs(expected[t].value, 1e-9));
			// one side of the book is always empty, and value is conserved on trades
			CHECK(std::min(s.cash, s.shares) == 0.0);
			CHECK_THAT(s.value, WithinAbs(s.cash + s.shares * s.price, 1e-9));
			if (t > 0 && s.traded) {
				const auto &prev = curve.states[t - 1];
				CHECK_THAT(s.value, WithinRel(prev.cash + prev.shares * s.price, 1e-12));
			}
		}
	}
}

TEST_CASE("simulation is deterministic") {
	std::mt19937_64 rng(3);
	const auto prices = test_support::bars_from_closes(test_support::random_walk(rng, 63));
	const auto sig = to_signals(random_signals(rng, 63));
	CHECK(simulate(prices, sig).states == simulate(prices, sig).states);
	CHECK(write_equity_curve_csv(simulate(prices, sig)) == write_equity_curve_csv(simulate(prices, sig)));
}

TEST_CASE("always-buy on the same day equals buy and hold") {
	std::mt19937_64 rng(4);
	const auto prices = test_support::bars_from_closes(test_support::random_walk(rng, 63));
	const std::vector<Signal> buy(63, Signal::Positive);
	const auto a = simulate(prices, buy, same_day());
	const auto b = buy_and_hold(prices);
	for (std::size_t t = 0; t < 63; ++t) {
		CHECK(a.states[t].value == b.states[t].value);
	}
}

TEST_CASE("buy and hold closed form") {
	const auto flat = buy_and_hold(test_support::bars_from_closes(std::vector<double>(10, 42.0)));
	CHECK(strategy_return(flat) == 0.0);

	std::mt19937_64 rng(5);
	for (int rep = 0; rep < 50; ++rep) {
		const auto closes = test_support::random_walk(rng, 40, 100.0, 0.02);
		const auto curve = buy_and_hold(test_support::bars_from_closes(closes), 2500.0);
		CHECK_THAT(strategy_return(curve), WithinAbs(closes.back() / closes.front() - 1.0, 1e-12));
		CHECK(curve.states.front().cash == 0.0);
	}
	try {
		buy_and_hold(test_support::bars_from_closes({100}));
		FAIL("expected TooShort");
	} catch (const Error &e) {
		CHECK(e.kind() == ErrorKind::TooShort);
	}
}

TEST_CASE("simulation rejects bad inputs") {
	const auto prices = test_support::bars_from_closes({100, 101, 102});
	CHECK_THROWS_AS(simulate(prices, to_signals({1, 0})), Error);
	CHECK_THROWS_AS(simulate(prices, to_signals({1, 0, 0}), SimulationConfig{0.0, Execution::SameDay, 0.0}), Error);
	CHECK_THROWS_AS(simulate(prices, to_signals({1, 0, 0}), SimulationConfig{100.0, Execution::SameDay, 1.0}), Error);

	std::vector<CombinedSignal> shifted;
	for (std::size_t i = 0; i < prices.size(); ++i) {
		shifted.push_back({prices[i].date.plus_days(1), {}, Signal::Neutral});
	}
	try {
		simulate(prices, shifted);
		FAIL("expected SignalPriceMismatch");
	} catch (const Error &e) {
		CHECK(e.kind() == ErrorKind::SignalPriceMismatch);
	}
	EquityCurve empty;
	CHECK_THROWS_AS(cash_only_return(empty), Error);
}

TEST_CASE("proportional cost is charged on each trade") {
	const auto prices = test_support::bars_from_closes({100, 110});
	const auto curve = simulate(prices, to_signals({1, -1}), SimulationConfig{10000.0, Execution::SameDay, 0.01});
	CHECK_THAT(curve.states[1].cash, WithinRel(10000.0 * 0.99 / 100.0 * 110.0 * 0.99, 1e-12));
}

TEST_CASE("equity curve CSV round-trips") {
	std::mt19937_64 rng(6);
	const auto prices = test_support::bars_from_closes(test_support::random_walk(rng, 20));
	const auto curve = simulate(prices, to_signals(random_signals(rng, 20)), same_day(1234.5));
	const auto text = write_equity_curve_csv(curve);
	CHECK(text.rfind("date,cash,shares,price,value,return\n", 0) == 0);
	const auto back = parse_equity_curve_csv(text, 1234.5);
	REQUIRE(back.states.size() == curve.states.size());
	for (std::size_t t = 0; t < curve.states.size(); ++t) {
		CHECK(back.states[t].date == curve.states[t].date);
		CHECK(back.states[t].cash == curve.states[t].cash);
		CHECK(back.states[t].shares == curve.states[t].shares);
		CHECK(back.states[t].value == curve.states[t].value);
	}
	CHECK(write_equity_curve_csv(back) == text);
}
