#include <doctest.h>

#include "fockbell/runner.hpp"

#include <sstream>

using namespace fockbell::runner;

TEST_CASE("defaults") {
  const RunConfig a = default_config("amplitudes");
  CHECK(a.alpha_min == 0.01);
  CHECK(a.alpha_max == 2.0);
  CHECK(a.alpha_step == 0.01);
  CHECK(alpha_grid(a).size() == 200u);
  CHECK(default_config("ch-optimize").starts == 64);
  CHECK(default_config("ch-sweep").grid == 41);
  CHECK(command_names().size() == 6u);
  CHECK_THROWS_AS(default_config("nope"), UsageError);
}

TEST_CASE("validation") {
  ConfigOverrides o;
  o.alpha_step = -0.1;
  CHECK_THROWS_AS(resolve_config("amplitudes", o), UsageError);
  ConfigOverrides q;
  q.hardy_q = 0.5;
  CHECK_THROWS_AS(resolve_config("witness", q), UsageError);
  CHECK_NOTHROW(resolve_config("ch-optimize", q));
  CHECK(parse_format("json") == OutputFormat::json);
  CHECK_THROWS_AS(parse_format("xml"), UsageError);
}

TEST_CASE("config round trip through json") {
  ConfigOverrides o;
  o.alpha_min = 0.2;
  o.alpha_max = 0.5;
  o.seed = 9;
  o.hardy_q = 0.1;
  const RunConfig c = resolve_config("ch-optimize", o);
  CHECK(config_from_json(to_json(c)) == c);
}

TEST_CASE("document round trip") {
  ConfigOverrides o;
  o.alpha_min = 0.1;
  o.alpha_max = 0.5;
  o.alpha_step = 0.1;
  const RunConfig c = resolve_config("amplitudes", o);
  const ResultDocument doc = run(c);
  CHECK(doc.all_passed());
  CHECK(exit_code(doc) == 0);
  CHECK(doc.rows.size() == 5u);

  for (OutputFormat f : {OutputFormat::csv, OutputFormat::json}) {
    ResultDocument d = doc;
    d.config.format = f;
    std::stringstream ss;
    write(d, ss);
    const StoredResult back = read_result(ss);
    CHECK(back.records == records_of(d));
    RunConfig replay = back.config;
    CHECK(records_of(run(replay)) == back.records);
  }
}

TEST_CASE("failed claim gives exit code 1") {
  ResultDocument d;
  d.claims.push_back({"x", "always fails", false, 0.0, 1.0, -1.0});
  CHECK(exit_code(d) == 1);
  std::ostringstream os;
  write_summary(d, os);
  CHECK(os.str().find("FAIL") != std::string::npos);
}
