#include "oracles.hpp"
#include "test_support.hpp"

#include "sentitrade/indicators.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace sentitrade;
using namespace sentitrade::indicators;

namespace {

void check_close(const std::vector<double> &got, const std::vector<double> &want, double tol) {
	REQUIRE(got.size() == want.size());
	for (std::size_t t = 0; t < got.size(); ++t) {
		INFO("index " << t);
		CHECK(defined(got[t]) == !std::isnan(want[t]));
		if (defined(got[t]) && !std::isnan(want[t])) {
			CHECK(std::fabs(got[t] - want[t]) <= tol);
		}
	}
}

std::vector<double> ramp(std::size_t n, double start = 1.0, double step = 1.0) {
	std::vector<double> out;
	for (std::size_t i = 0; i < n; ++i) {
		out.push_back(start + step * static_cast<double>(i));
	}
	return out;
}

} // namespace

TEST_CASE("ema examples") {
	const std::vector<double> c{5, 5, 5, 5};
	const auto e = ema(c, 2);
	CHECK_FALSE(defined(e[0]));
	CHECK(e[1] == 5.0);
	CHECK(e[3] == 5.0);

	const std::vector<double> x{1, 2, 3, 4, 5};
	CHECK(ema(x, 1) == x);
	const auto e3 = ema(x, 3);
	CHECK_FALSE(defined(e3[0]));
	CHECK_FALSE(defined(e3[1]));
	CHECK(e3[2] == 2.0);
	CHECK(e3[3] == 3.0);
	CHECK(e3[4] == 4.0);

	try {
		ema(x, 6);
		FAIL("expected PeriodTooLong");
	} catch (const Error &err) {
		CHECK(err.kind() == ErrorKind::PeriodTooLong);
	}
}

TEST_CASE("ema stays inside the range of its inputs") {
	std::mt19937_64 rng(1);
	for (int rep = 0; rep < 50; ++rep) {
		const auto x = test_support::random_walk(rng, 80, 100.0, 0.05);
		const int n = 1 + rep % 20;
		const auto e = ema(x, n);
		for (std::size_t t = static_cast<std::size_t>(n) - 1; t < x.size(); ++t) {
			const auto [lo, hi] = std::minmax_element(x.begin(), x.begin() + static_cast<long>(t) + 1);
			CHECK(e[t] >= *lo - 1e-12);
			CHECK(e[t] <= *hi + 1e-12);
		}
	}
}

TEST_CASE("macd on a constant series is identically zero") {
	const std::vector<double> c(60, 42.0);
	const auto m = macd(c);
	for (std::size_t t = 33; t < c.size(); ++t) {
		CHECK(m.macd_line[t] == 0.0);
		CHECK(m.signal_line[t] == 0.0);
		CHECK(m.histogram[t] == 0.0);
	}
	CHECK_THROWS_AS(macd(std::vector<double>(34, 1.0)), Error);
	CHECK_NOTHROW(macd(std::vector<double>(35, 1.0)));
}

TEST_CASE("macd of a ramp is positive and tends to (slow - fast) / 2 per unit step") {
	const auto x = ramp(400);
	const auto m = macd(x);
	for (std::size_t t = 25; t < x.size(); ++t) {
		CHECK(m.macd_line[t] > 0.0);
	}
	// EMA of a unit ramp lags by (n - 1) / 2, so the gap is (26 - 12) / 2
	CHECK(std::fabs(m.macd_line.back() - 7.0) < 1e-9);
}

TEST_CASE("macd equals two-EMA recomputation") {
	std::mt19937_64 rng(60);
	for (int rep = 0; rep < 20; ++rep) {
		const auto x = test_support::random_walk(rng, 60);
		const auto m = macd(x);
		const auto o = oracle::macd(x, 12, 26, 9);
		check_close(m.macd_line, o.line, 1e-9);
		check_close(m.signal_line, o.signal, 1e-9);
		check_close(m.histogram, o.hist, 1e-9);
		for (std::size_t t = 0; t < x.size(); ++t) {
			if (defined(m.histogram[t])) {
				CHECK(m.histogram[t] == m.macd_line[t] - m.signal_line[t]);
			}
		}
	}
}

TEST_CASE("vw macd reduces to macd under constant volume") {
	std::mt19937_64 rng(2);
	const auto x = test_support::random_walk(rng, 120);
	const std::vector<double> v(x.size(), 3.5e6);
	const auto vw = vw_macd(x, v);
	const auto m = macd(x);
	check_close(vw.macd.macd_line, m.macd_line, 1e-9);
	check_close(vw.macd.histogram, m.histogram, 1e-9);

	const std::vector<double> flat(60, 10.0);
	std::vector<double> vol;
	for (int i = 0; i < 60; ++i) {
		vol.push_back(1000.0 + 37.0 * (i % 7));
	}
	const auto vf = vw_macd(flat, vol);
	for (std::size_t t = 25; t < flat.size(); ++t) {
		CHECK(std::fabs(vf.macd.macd_line[t]) < 1e-12);
	}
}

TEST_CASE("vw macd with volume spikes on up days equals direct recomputation") {
	std::mt19937_64 rng(61);
	const auto x = test_support::random_walk(rng, 60);
	std::vector<double> v{1e6};
	for (std::size_t t = 1; t < x.size(); ++t) {
		v.push_back(x[t] > x[t - 1] ? 5e6 : 1e6);
	}
	const auto vw = vw_macd(x, v);
	const auto o = oracle::vw_macd(x, v, 12, 26, 9);
	check_close(vw.macd.macd_line, o.line, 1e-9);
	check_close(vw.macd.signal_line, o.signal, 1e-9);
	check_close(vw.macd.histogram, o.hist, 1e-9);
}

TEST_CASE("vw macd error cases") {
	const std::vector<double> x(40, 10.0);
	try {
		vw_macd(x, std::vector<double>(40, 0.0));
		FAIL("expected ZeroVolumeWindow");
	} catch (const Error &e) {
		CHECK(e.kind() == ErrorKind::ZeroVolumeWindow);
	}
	CHECK_THROWS_AS(vw_macd(std::vector<double>(20, 1.0), std::vector<double>(20, 1.0)), Error);
	CHECK_THROWS_AS(vw_macd(x, std::vector<double>(39, 1.0)), Error);
}

TEST_CASE("sar on the rise-then-fall fixture matches the golden recursion exactly") {
	const auto bars = parse_price_csv(test_support::read_fixture("sar_rise_fall.csv"));
	const auto golden = csv::parse(test_support::read_fixture("sar_rise_fall_golden.csv"));
	REQUIRE(golden.size() == bars.size() + 1);
	const auto out = parabolic_sar(bars);
	int flips = 0;
	for (std::size_t t = 0; t < bars.size(); ++t) {
		const auto &row = golden[t + 1];
		INFO("bar " << t);
		CHECK(Date::from_iso(row[0]) == bars[t].date);
		CHECK(out.sar[t] == *csv::parse_double(row[1]));
		CHECK(out.extreme_point[t] == *csv::parse_double(row[2]));
		CHECK(out.alpha[t] == *csv::parse_double(row[3]));
		CHECK((out.trend[t] == Trend::Up ? "up" : "down") == row[4]);
		if (t > 0) {
			CHECK(std::to_string(to_int(out.signals.entries[t - 1].value)) == row[5]);
			flips += out.trend[t] != out.trend[t - 1] ? 1 : 0;
		}
	}
	CHECK(flips == 1);
}

TEST_CASE("sar on strictly rising bars never flips") {
	std::vector<double> closes;
	for (int i = 0; i < 10; ++i) {
		closes.push_back(100.0 + 2.0 * i);
	}
	const auto out = parabolic_sar(test_support::bars_from_closes(closes));
	for (auto tr : out.trend) {
		CHECK(tr == Trend::Up);
	}
	REQUIRE(out.signals.entries.size() == 9);
	for (const auto &s : out.signals.entries) {
		CHECK(s.value == Signal::Positive);
	}
}

TEST_CASE("two bars are enough for one sar signal") {
	const auto out = parabolic_sar(test_support::bars_from_closes({100, 101}));
	CHECK(out.sar[0] == 99.0); // low of the first bar in an uptrend
	REQUIRE(out.signals.entries.size() == 1);
	CHECK(out.signals.entries[0].date == test_support::weekdays(2)[1]);
	CHECK_THROWS_AS(parabolic_sar(test_support::bars_from_closes({100})), Error);
}

TEST_CASE("sar invariants on random walks") {
	std::mt19937_64 rng(8);
	for (int rep = 0; rep < 30; ++rep) {
		const auto bars = test_support::bars_from_closes(test_support::random_walk(rng, 150, 100.0, 0.02));
		const auto out = parabolic_sar(bars);
		for (std::size_t t = 1; t < bars.size(); ++t) {
			CHECK(out.alpha[t] >= 0.02 - 1e-15);
			CHECK(out.alpha[t] <= 0.2 + 1e-15);
			const bool flipped = out.trend[t] != out.trend[t - 1];
			if (out.trend[t] == Trend::Up && !flipped) {
				CHECK(out.sar[t] <= bars[t - 1].low);
				CHECK(out.sar[t] < bars[t].close);
				if (t >= 2) {
					CHECK(out.sar[t] <= bars[t - 2].low);
				}
			}
			if (out.trend[t] == Trend::Down && !flipped) {
				CHECK(out.sar[t] >= bars[t - 1].high);
				if (t >= 2) {
					CHECK(out.sar[t] >= bars[t - 2].high);
				}
			}
		}
	}
}

TEST_CASE("dual macd") {
	const auto dates60 = test_support::weekdays(60);
	const auto flat = dual_macd(dates60, std::vector<double>(60, 5.0));
	REQUIRE_FALSE(flat.entries.empty());
	for (const auto &e : flat.entries) {
		CHECK(e.value == Signal::Neutral);
	}

	// accelerating rise: both histograms turn positive
	std::vector<double> up;
	for (int i = 0; i < 120; ++i) {
		up.push_back(100.0 + 0.01 * i * i);
	}
	const auto dates = test_support::weekdays(up.size());
	const auto s = dual_macd(dates, up);
	CHECK(s.entries.back().value == Signal::Positive);
	const auto so = oracle::macd(up, 12, 26, 9);
	const auto lo = oracle::macd(up, 19, 39, 9);
	for (const auto &e : s.entries) {
		const auto t = static_cast<std::size_t>(std::find(dates.begin(), dates.end(), e.date) - dates.begin());
		const int want = (so.hist[t] > 0 && lo.hist[t] > 0) ? 1 : ((so.hist[t] < 0 && lo.hist[t] < 0) ? -1 : 0);
		CHECK(to_int(e.value) == want);
	}
	CHECK_THROWS_AS(dual_macd(test_support::weekdays(47), std::vector<double>(47, 1.0)), Error);
}

TEST_CASE("dual macd is neutral where the configurations disagree") {
	// a 14-session cycle: the two configurations lag it by different phases
	std::vector<double> x;
	for (int i = 0; i < 120; ++i) {
		x.push_back(100.0 + 5.0 * std::sin(2.0 * 3.141592653589793 * i / 14.0));
	}
	const auto dates = test_support::weekdays(x.size());
	const auto s = dual_macd(dates, x);
	const auto sh = macd(x, kShortMacd).histogram;
	const auto lh = macd(x, kLongMacd).histogram;
	int disagreements = 0;
	for (const auto &e : s.entries) {
		const auto t = static_cast<std::size_t>(std::find(dates.begin(), dates.end(), e.date) - dates.begin());
		if (sh[t] > 0 && lh[t] < 0) {
			++disagreements;
			CHECK(e.value == Signal::Neutral);
		}
	}
	CHECK(disagreements > 0);
}

TEST_CASE("signalize rules") {
	const auto dates = test_support::weekdays(60);
	const std::vector<double> flat(60, 1.0);
	for (const auto &e : signalize(macd(flat), SignalRule::MacdState, dates, flat, "MACD").entries) {
		CHECK(e.value == Signal::Neutral);
	}

	// V shape: falls then rises, so the histogram crosses upward once
	std::vector<double> v;
	for (int i = 0; i < 45; ++i) {
		v.push_back(100.0 - 0.5 * i);
	}
	for (int i = 1; i <= 15; ++i) {
		v.push_back(77.5 + 0.8 * i);
	}
	const auto m = macd(v);
	int expected_up = 0;
	for (std::size_t t = 1; t < v.size(); ++t) {
		if (defined(m.histogram[t - 1]) && m.histogram[t - 1] <= 0 && m.histogram[t] > 0) {
			++expected_up;
		}
	}
	REQUIRE(expected_up == 1);
	int ups = 0;
	for (const auto &e : signalize(m, SignalRule::MacdCross, dates, v, "MACD").entries) {
		ups += e.value == Signal::Positive ? 1 : 0;
	}
	CHECK(ups == 1);

	const SignalSeries sentiment{"s", {{dates[0], Signal::Positive}, {dates[1], Signal::Neutral}, {dates[2], Signal::Negative}}};
	const auto pass = signalize(sentiment, SignalRule::Passthrough, dates, v, "GPT2 DowJones");
	CHECK(pass.entries == sentiment.entries);
	CHECK(pass.source == "GPT2 DowJones");

	try {
		signalize(m, SignalRule::SarSide, dates, v, "x");
		FAIL("expected UnknownRule");
	} catch (const Error &e) {
		CHECK(e.kind() == ErrorKind::UnknownRule);
	}
	CHECK_THROWS_AS(parse_signal_rule("rsi_state"), Error);
	CHECK(parse_signal_rule("VW_PRICE_LEVEL") == SignalRule::VwPriceLevel);
}

TEST_CASE("vw price level compares close with the slow vw ema") {
	std::mt19937_64 rng(4);
	const auto x = test_support::random_walk(rng, 70);
	const std::vector<double> vol(x.size(), 1e6);
	const auto dates = test_support::weekdays(x.size());
	const auto vw = vw_macd(x, vol);
	const auto s = signalize(vw, SignalRule::VwPriceLevel, dates, x, "VW MACD");
	REQUIRE(s.entries.size() == x.size() - 25);
	for (std::size_t i = 0; i < s.entries.size(); ++i) {
		const std::size_t t = i + 25;
		CHECK(s.entries[i].value == (x[t] > vw.vwema_slow[t] ? Signal::Positive : Signal::Negative));
	}
}
