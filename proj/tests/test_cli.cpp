#include "test_support.hpp"

#include "sentitrade/cli.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Outcome {
	int code;
	std::string out;
	std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
	args.insert(args.begin(), "sentitrade");
	std::vector<const char *> argv;
	for (const auto &a : args) {
		argv.push_back(a.c_str());
	}
	std::ostringstream out;
	std::ostringstream err;
	const int code = sentitrade::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
	return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name) {
	const auto dir = fs::temp_directory_path() / ("sentitrade_cli_" + name);
	fs::remove_all(dir);
	fs::create_directories(dir);
	return dir;
}

std::vector<fs::path> files_under(const fs::path &root) {
	std::vector<fs::path> out;
	for (const auto &e : fs::recursive_directory_iterator(root)) {
		if (e.is_regular_file()) {
			out.push_back(fs::relative(e.path(), root));
		}
	}
	std::sort(out.begin(), out.end());
	return out;
}

} // namespace

TEST_CASE("help exits cleanly") {
	const auto r = run_cli({"--help"});
	CHECK(r.code == 0);
	CHECK(r.out.find("backtest") != std::string::npos);
}

TEST_CASE("a missing price file is a data error naming the path") {
	const auto dir = scratch("missing");
	const auto r = run_cli({"ingest", "--prices", (dir / "nope.csv").string(), "--out", dir.string()});
	CHECK(r.code == 2);
	CHECK(r.err.find("nope.csv") != std::string::npos);
	fs::remove_all(dir);
}

TEST_CASE("configuration problems exit with code 1") {
	const auto dir = scratch("badcfg");
	{
		std::ofstream f(dir / "bad.toml");
		f << "[labels]\nlag = 5\n[data]\nprices = \"p.csv\"\n";
	}
	CHECK(run_cli({"all", "--config", (dir / "bad.toml").string()}).code == 1);
	{
		std::ofstream f(dir / "typo.toml");
		f << "[labels]\nlagg = 1\n";
	}
	const auto typo = run_cli({"all", "--config", (dir / "typo.toml").string()});
	CHECK(typo.code == 1);
	CHECK(typo.err.find("line 2") != std::string::npos);
	CHECK(run_cli({"frobnicate"}).code == 1);
	CHECK(run_cli({"ingest", "--prices", "p.csv", "--execution", "whenever"}).code == 1);
	fs::remove_all(dir);
}

TEST_CASE("stages report which earlier stage is missing") {
	const auto dir = scratch("order");
	const auto r = run_cli({"backtest", "--prices", test_support::fixture("synthetic_90d_prices.csv").string(), "--out",
	                        dir.string()});
	CHECK(r.code == 2);
	CHECK(r.err.find("run 'ingest' first") != std::string::npos);
	fs::remove_all(dir);
}

TEST_CASE("stages run one at a time match a single all run") {
	const auto dir = scratch("stages");
	const auto config = test_support::fixture("smoke.toml").string();
	for (const char *stage : {"ingest", "label", "signals", "backtest", "evaluate", "report"}) {
		REQUIRE(run_cli({stage, "--config", config, "--out", (dir / "a").string()}).code == 0);
	}
	REQUIRE(run_cli({"all", "--config", config, "--out", (dir / "b").string()}).code == 0);
	const auto a = dir / "a" / "smoke";
	const auto b = dir / "b" / "smoke";
	REQUIRE(files_under(a) == files_under(b));
	for (const auto &rel : files_under(a)) {
		CHECK(sentitrade::csv::read_file(a / rel) == sentitrade::csv::read_file(b / rel));
	}
	fs::remove_all(dir);
}

TEST_CASE("the binary reproduces the golden report byte for byte") {
	const auto dir = scratch("golden");
	const auto golden = test_support::fixture("golden");
	for (const char *run : {"r1", "r2"}) {
		const std::string cmd = std::string("\"") + SENTITRADE_BINARY + "\" all --config \"" +
		                        test_support::fixture("smoke.toml").string() + "\" --out \"" + (dir / run).string() +
		                        "\" > /dev/null";
		REQUIRE(std::system(cmd.c_str()) == 0);
		const auto produced = dir / run / "smoke";
		REQUIRE(files_under(produced) == files_under(golden));
		for (const auto &rel : files_under(golden)) {
			INFO(rel.string());
			CHECK(sentitrade::csv::read_file(produced / rel) == sentitrade::csv::read_file(golden / rel));
		}
	}
	fs::remove_all(dir);
}
