#include "doctest.h"

#include "hamforge/report.hpp"
#include "support.hpp"

using namespace hamforge;
using namespace hamforge::testkit;

namespace {

AnalysisReport run(const std::string& fixture, AnalysisOptions opts)
{
	return analyze_theory(load_fixture(fixture), opts, fixture);
}

AnalysisOptions fixed_gauges()
{
	AnalysisOptions o;
	o.gauge = parse_gauge_option("zero_mode=coulomb,kk_mode=axial");
	return o;
}

}

TEST_CASE("option parsing")
{
	auto g = parse_gauge_option("zero_mode=coulomb,kk_mode=axial");
	CHECK(g.at("zero_mode") == "coulomb");
	CHECK(g.at("kk_mode") == "axial");
	CHECK_THROWS_AS(parse_gauge_option("zero_mode"), UsageError);
	CHECK_FALSE(parse_modes_option("symbolic"));
	CHECK(parse_modes_option("k=3") == 3);
	CHECK_THROWS_AS(parse_modes_option("k=0"), UsageError);
	CHECK_THROWS_AS(parse_modes_option("many"), UsageError);
}

TEST_CASE("full analysis of the compactified theory")
{
	AnalysisReport r = run("stueckelberg5d.thy", fixed_gauges());
	CHECK(r.exit_code == exit_ok);
	CHECK(r.failures.empty());
	CHECK(r.dof == "4k-1");
	REQUIRE(r.sectors.size() == 2);
	for (auto& s : r.sectors) {
		REQUIRE(s.comparison);
		CHECK(s.comparison->equal());
	}
	AnalysisOptions one;
	one.gauge = {{"zero_mode", "coulomb"}};
	one.k = 1;
	CHECK(run("stueckelberg5d.thy", one).dof == "3");
}

TEST_CASE("reports are deterministic")
{
	AnalysisReport a = run("stueckelberg5d.thy", fixed_gauges());
	AnalysisReport b = run("stueckelberg5d.thy", fixed_gauges());
	CHECK(report_json(a).dump(1) == report_json(b).dump(1));
	CHECK(report_text(a) == report_text(b));
}

TEST_CASE("text and JSON bracket tables carry the same entries")
{
	AnalysisReport r = run("stueckelberg5d.thy", fixed_gauges());
	auto j = report_json(r);
	std::string text = report_text(r);
	int seen = 0;
	for (auto& sector : j["sectors"])
		for (const char* method : {"dirac", "fj"}) {
			auto& table = sector[method]["brackets"];
			std::string kind = table["kind"];
			for (auto& e : table["entries"]) {
				std::string line = "{" + e["a"].get<std::string>() + ", " + e["b"].get<std::string>() + "}_" + kind +
					" = " + e["value"].get<std::string>();
				CHECK(text.find(line) != std::string::npos);
				++seen;
			}
		}
	CHECK(seen > 0);
}

TEST_CASE("a singular Faddeev-Jackiw run is a mismatch")
{
	AnalysisOptions o;
	o.gauge = parse_gauge_option("zero_mode=coulomb,kk_mode=dirac_axial_pair");
	AnalysisReport r = run("stueckelberg5d.thy", o);
	CHECK(r.exit_code == exit_mismatch);
	CHECK_FALSE(r.failures.empty());
	auto j = report_json(r);
	CHECK(j["sectors"][1]["fj"]["level"] == 2);
}

TEST_CASE("unknown gauge sets are usage errors")
{
	AnalysisOptions o;
	o.gauge = {{"zero_mode", "nonexistent"}};
	CHECK_THROWS_AS(run("stueckelberg5d.thy", o), UsageError);
}

TEST_CASE("sanity theories")
{
	CHECK(run("maxwell4d.thy", {}).dof == "2");
	CHECK(run("proca4d.thy", {}).dof == "3");
	AnalysisOptions lat;
	lat.gauge = {{"main", "coulomb"}};
	lat.lattice_N = 4;
	AnalysisReport r = run("stueckelberg4d.thy", lat);
	CHECK(r.exit_code == exit_ok);
	REQUIRE_FALSE(r.sectors.front().lattice.empty());
	for (auto& rec : r.sectors.front().lattice)
		CHECK(rec.ok());
}
