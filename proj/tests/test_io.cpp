#include "doctest.h"
#include "siegel/hecke.hpp"
#include "siegel/io.hpp"
#include "siegel/suites.hpp"

using namespace siegel;

TEST_CASE("exact values round-trip") {
  std::vector<CycNumber> xs{CycNumber(0), CycNumber(qq(-7, 3)), gauss_g1(7), gauss_g1(5) * CycNumber::root_of_unity(8, 3),
                            CycNumber::root_of_unity(12, 5) + CycNumber(qq(1, 2))};
  for (const auto& x : xs) {
    CHECK(parse_exact(exact_string(x)) == x);
    CHECK(cyc_from_json(json::parse(to_json(x).dump())) == x);
  }
  CHECK(exact_string(CycNumber(3126)) == "1:3126");
  CHECK(approx_string(CycNumber(3126)) == "3126");
  CHECK(approx_string(CycNumber::root_of_unity(4, 1)) == "0+1i");
  CHECK(approx_string(gauss_g1(3)) == "0+1.73205080756888i");
  CHECK_THROWS(parse_exact("3126"));
  CHECK_THROWS(parse_exact("4:1,x"));
  CHECK_THROWS(parse_exact("4:1"));
}

TEST_CASE("csv rows") {
  std::vector<std::string> f{"(3,1)", "plain", "a\"b", "", "1:2,3"};
  std::string row = csv_row(f);
  CHECK(row == "\"(3,1)\",plain,\"a\"\"b\",,\"1:2,3\"");
  CHECK(parse_csv_row(row) == f);
}

TEST_CASE("eigenvalue rows agree between json and csv encodings") {
  HalfIntegralContext ctx(2, 9, 15, DirichletCharacter::parse(60, "gen^1:4@5,quadratic@4"));
  for (const auto& s : ctx.partitions()) {
    CycNumber v = lambda_good(ctx, s, 2, 7);
    std::string line = csv_row({s.to_string(), exact_string(v), approx_string(v)});
    auto back = parse_csv_row(line);
    CHECK(parse_exact(back[1]) == cyc_from_json(json::parse(to_json(v).dump())));
    CHECK(parse_exact(back[1]) == v);
  }
}

TEST_CASE("suite reports are reproducible") {
  SuiteOptions opt;
  opt.seed = 3;
  opt.trials = 5;
  auto a = run_suite("theta", opt).to_json().dump();
  auto b = run_suite("theta", opt).to_json().dump();
  CHECK(a == b);
  CHECK(json::parse(a)["schema"] == 1);
  CHECK_THROWS_AS(run_suite("nothing", opt), std::invalid_argument);
  opt.trials = 0;
  CHECK_THROWS_AS(run_suite("gauss", opt), std::invalid_argument);
}
