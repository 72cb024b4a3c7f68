#include "geo3/errors.hpp"
#include "geo3/report.hpp"

#include <doctest.h>

#include <algorithm>

using namespace geo3;
using nlohmann::ordered_json;

namespace {

RunConfig small_config(std::size_t points = 20)
{
  RunConfig c;
  c.points = points;
  c.seed = 5;
  return c;
}

std::size_t lines(const std::string & s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("parse_list")
{
  CHECK(parse_list("").empty());
  CHECK(parse_list("  ").empty());
  CHECK(parse_list("1") == std::vector<double>{1.0});
  CHECK(parse_list("-1, 0.5,2e0") == std::vector<double>{-1.0, 0.5, 2.0});
  CHECK_THROWS_AS(parse_list("1,,2"), UsageError);
  CHECK_THROWS_AS(parse_list("1,"), UsageError);
  CHECK_THROWS_AS(parse_list("abc"), UsageError);
  CHECK_THROWS_AS(parse_list("1x"), UsageError);
  CHECK_THROWS_AS(parse_list("inf"), UsageError);
}

TEST_CASE("config validation")
{
  auto c = small_config();
  c.points = 0;
  CHECK_THROWS_AS(validate_config(c), UsageError);
  c = small_config();
  c.tol.identity = -1.0;
  CHECK_THROWS_AS(validate_config(c), UsageError);
  c = small_config();
  c.tol.harmonic = 0.0;
  CHECK_THROWS_AS(run_check("bcv.cor31.i", {}, c), UsageError);
}

TEST_CASE("check report")
{
  const auto c = small_config();
  const auto r = run_check("bcv.projection", {-1.0, 1.0, std::nullopt}, c);
  CHECK(r.passed());
  CHECK(r.case_label == "(f)");
  CHECK(r.identities.records.size() == 20);

  const ordered_json j = to_json(r);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "check");
  CHECK(j["verdict"]["harmonic"] == true);
  CHECK(j["kn"]["mean"].get<double>() == doctest::Approx(-4.0));
  CHECK(j["residuals"]["rc"]["max"].get<double>() <= 1e-7);
  CHECK(j["residuals"]["rc"]["per_equation"].size() == 7);
  CHECK(j["residuals"]["rc0"]["per_equation"].size() == 8);
  CHECK(j["entry"]["case"] == "(f)");
  CHECK(j["passed"] == true);

  SUBCASE("JSON text parses back to the same document")
  {
    const std::string text = dump_json(j);
    CHECK(ordered_json::parse(text) == j);
    CHECK(text.find("\"seed\": 5") != std::string::npos);
  }
  SUBCASE("CSV has a header and one row per point")
  {
    const std::string csv = to_csv(r);
    CHECK(lines(csv) == c.points + 1);
    CHECK(csv.rfind("point,x,y,z,kappa1,", 0) == 0);
  }
  SUBCASE("same configuration, same bytes")
  {
    const auto again = run_check("bcv.projection", {-1.0, 1.0, std::nullopt}, c);
    CHECK(dump_json(to_json(again)) == dump_json(j));
    CHECK(to_csv(again) == to_csv(r));
  }
  SUBCASE("a different seed samples different points")
  {
    auto c2 = c;
    c2.seed = 6;
    CHECK(to_csv(run_check("bcv.projection", {-1.0, 1.0, std::nullopt}, c2)) != to_csv(r));
  }
}

TEST_CASE("negative entries pass their own expectations")
{
  const auto r = run_check("nil.example23", {}, small_config());
  CHECK(r.passed());
  const ordered_json j = to_json(r);
  CHECK(j["verdict"]["harmonic"] == false);
  CHECK(j["verdict"]["observed"] == "non-harmonic");
  CHECK(j["entry"]["case"].is_null());
}

TEST_CASE("violated expectations fail the run")
{
  auto c = small_config();
  c.tol.harmonic = 1e-20;
  const auto r = run_check("berger.hopf", {}, c);
  CHECK_FALSE(r.passed());
  const auto it = std::find_if(r.rules.begin(), r.rules.end(), [](const RuleResult & x) { return x.name == "verdict"; });
  REQUIRE(it != r.rules.end());
  CHECK_FALSE(it->passed);
  CHECK(to_json(r)["verdict"]["observed"] == "inconclusive");
}

TEST_CASE("sweeps")
{
  auto c = small_config(10);
  c.m = {-1.0, 0.0, 1.0};
  c.l = {0.0, 2.0};
  const auto s = run_sweep(c);
  CHECK(s.map == "bcv.projection");
  CHECK(s.cells.size() == 6);
  CHECK(s.passed());
  const ordered_json j = to_json(s);
  CHECK(j["summary"]["cells"] == 6);
  CHECK(j["summary"]["passed_cells"] == 6);
  CHECK_FALSE(j["cells"][0].contains("schema"));
  CHECK(ordered_json::parse(dump_json(j)) == j);
  CHECK(lines(to_csv(s)) == 6 * 10 + 1);

  SUBCASE("eps sweep")
  {
    auto e = small_config(10);
    e.eps = {0.5, 2.0};
    const auto se = run_sweep(e);
    CHECK(se.map == "berger.hopf");
    CHECK(se.passed());
  }
  SUBCASE("empty or mismatched ranges")
  {
    auto bad = small_config();
    CHECK_THROWS_AS(run_sweep(bad), UsageError);
    bad.m = {1.0};
    CHECK_THROWS_AS(run_sweep(bad), UsageError);
    bad.l = {1.0};
    bad.eps = {1.0};
    CHECK_THROWS_AS(run_sweep(bad), UsageError);
    auto other = small_config();
    other.map = "nil.example23";
    other.m = {1.0};
    other.l = {1.0};
    CHECK_THROWS_AS(run_sweep(other), UsageError);
  }
}

TEST_CASE("tables")
{
  auto c = small_config(10);
  c.space = "bcv";
  c.m = {0.5};
  c.l = {0.3};
  const auto t = run_tables(c);
  CHECK(t.passed());
  CHECK(t.tables.max_table_deviation() <= 1e-9);
  const ordered_json j = to_json(t);
  CHECK(j["config"]["params"]["m"] == 0.5);
  CHECK(ordered_json::parse(dump_json(j)) == j);
  CHECK(lines(to_csv(t)) == t.rules.size() + 1);

  c.space = "berger";
  c.m.clear();
  c.l.clear();
  c.eps = {0.7};
  CHECK(run_tables(c).passed());
  c.eps = {0.0};
  CHECK_THROWS_AS(run_tables(c), UsageError);
  c.space = "sol";
  CHECK_THROWS_AS(run_tables(c), UsageError);
}

TEST_CASE("non-finite numbers serialize as null")
{
  ordered_json j = {{"a", std::numeric_limits<double>::quiet_NaN()}, {"b", 2.0}, {"c", 0.1}};
  const std::string text = dump_json(j);
  CHECK(text.find("null") != std::string::npos);
  CHECK(text.find("2.0") != std::string::npos);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
}
