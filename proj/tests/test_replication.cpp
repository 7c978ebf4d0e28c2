#include <doctest.h>

#include <fstream>
#include <sstream>

#include "nbl/replication.hpp"
#include "test_paths.hpp"

using namespace nbl;

TEST_CASE("fixture catalog and export") {
  CHECK(fixture_catalog().size() == 23);

  const Fixture& p1 = fixture("P1.M");
  CHECK(p1.model.frame().states() == std::vector<std::string>{"s", "t"});
  CHECK(p1.model.frame().neighborhoods(0) ==
        std::vector<StateSet>{StateSet(2), StateSet(3)});
  CHECK(p1.model.frame().neighborhoods(1).empty());
  CHECK(p1.model.valuation("p") == StateSet(1));

  // primed ids accept apostrophe aliases
  CHECK(fixture("P1.M'").id == "P1.Mp");

  CHECK_THROWS_AS(fixture("P99.M"), ModelError);
  CHECK_THROWS_AS(export_fixture("P99.M"), ModelError);
}

TEST_CASE("every fixture round-trips through the model file format") {
  for (const auto& fx : fixture_catalog()) {
    std::string once = export_fixture(fx.id);
    NeighborhoodModel parsed = model_from_json(once);
    CHECK(parsed.frame() == fx.model.frame());
    if (!fx.is_frame) CHECK(parsed == fx.model);
    std::string twice =
        fx.is_frame ? frame_to_json(parsed.frame()) : model_to_json(parsed);
    CHECK(once == twice);
  }
}

TEST_CASE("shipped fixture files match the catalog") {
  for (const auto& fx : fixture_catalog()) {
    std::string name = fx.id;
    for (char& c : name) c = static_cast<char>(std::tolower(c));
    name.erase(std::remove(name.begin(), name.end(), '.'), name.end());
    std::ifstream in(std::string(kNblSourceDir) + "/fixtures/" + name + ".json");
    CAPTURE(fx.id);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == export_fixture(fx.id));
  }
}

TEST_CASE("the fixture suite passes end to end") {
  SuiteReport report = run_fixture_suite();
  for (const auto& claim : report.claims) {
    CAPTURE(claim.id);
    CAPTURE(claim.detail);
    CHECK(claim.pass);
  }
  CHECK(report.total() > 60);
  CHECK(report.all_pass());
}

TEST_CASE("suite reports are stable across worker counts") {
  SuiteOptions one;
  one.jobs = 1;
  SuiteOptions four;
  four.jobs = 4;
  // the definability claim is the only long-running one; its scan is
  // partitioned across workers, so compare the full filtered report
  SuiteReport a = run_fixture_suite(one, "P13");
  SuiteReport b = run_fixture_suite(four, "P13");
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("report rendering") {
  SuiteReport report = run_fixture_suite(SuiteOptions{}, "P1.");
  CHECK(report.total() >= 4);
  std::string text = report_to_text(report);
  CHECK(text.find("[PASS]") != std::string::npos);
  std::string json = report_to_json(report);
  CHECK(json.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(json.find("elapsed_ms") == std::string::npos);
  CHECK(report_to_json(report, true).find("elapsed_ms") != std::string::npos);
}
