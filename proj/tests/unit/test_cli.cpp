#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "rfgrowth/cli.hpp"
#include "rfgrowth/error.hpp"

using namespace rfg;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& file) { return std::string(RFGROWTH_DATA_DIR) + "/" + file; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("prime lists") {
    CHECK(parse_prime_list("2..13") == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13});
    CHECK(parse_prime_list("17,2..5,3") == std::vector<std::int64_t>{2, 3, 5, 17});
    CHECK_THROWS_AS(parse_prime_list("x..3"), Error);
    CHECK_THROWS_AS(parse_prime_list("8..7"), Error);
  }

  TEST_CASE("delta") {
    auto r = run({"delta", "--ring", "heisenberg_3", "--primes", "2..13"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["rows"].size() == 6);
    for (const auto& row : doc["rows"]) {
      CHECK(row["delta_p"] == 3);
      CHECK(!row.contains("elapsed_ms"));
    }
    CHECK(doc["tool_version"] == kToolVersion);
    CHECK(doc["seed"] == 0);
    CHECK(doc["ring"]["name"] == "heisenberg_3");
    auto timed = run({"--timing", "delta", "--ring", "abelian_3", "--primes", "2,3"});
    CHECK(nlohmann::json::parse(timed.out)["rows"][0].contains("elapsed_ms"));
  }

  TEST_CASE("catalog and validate") {
    auto r = run({"catalog"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["rings"].size() == 5);
    auto bad = run({"validate", "--ring", data("bad_jacobi.json")});
    CHECK(bad.code == 1);
    CHECK(nlohmann::json::parse(bad.err)["reason"] == "jacobi");
    CHECK(bad.err.find('\n') == bad.err.size() - 1);
    auto lr = run({"validate", "--ring", data("heisenberg_lr.json")});
    CHECK(lr.code == 0);
    CHECK(nlohmann::json::parse(lr.out)["lr_group"] == true);
    auto missing = run({"validate", "--ring", "no_such_ring"});
    CHECK(missing.code == 1);
    CHECK(nlohmann::json::parse(missing.err)["reason"] == "unknown-ring");
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"growth"}).code == 2);
    CHECK(run({"delta", "--ring", "heisenberg_3", "--primes", "a..b"}).code == 2);
    CHECK(run({"growth", "--ring", "heisenberg_3", "--family", "odd"}).code == 2);
    auto r = run({"bogus"});
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.err)["reason"] == "usage");
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("growth csv, witness and bch-table") {
    auto g = run({"growth", "--ring", "heisenberg_3", "--rmax", "2"});
    REQUIRE(g.code == 0);
    CHECK(g.out.find("radius,maxD,prime,exponent,witness\n1,8,2,3,0;0;-1\n") != std::string::npos);
    CHECK(g.out.find("# seed=0") != std::string::npos);
    auto cap = run({"growth", "--ring", "heisenberg_5", "--rmax", "9", "--cap", "100"});
    CHECK(cap.code == 1);
    CHECK(nlohmann::json::parse(cap.err)["reason"] == "cap");
    auto w = run({"witness", "--ring", "heisenberg_3", "--dir", "0,0,1", "--lmin", "2", "--lmax", "8"});
    REQUIRE(w.code == 0);
    auto wd = nlohmann::json::parse(w.out);
    CHECK(wd["fit"]["slope"].get<double>() == doctest::Approx(3.0));
    auto t = run({"bch-table", "--class", "2"});
    REQUIRE(t.code == 0);
    CHECK(nlohmann::json::parse(t.out)["delta"] == 2);
    CHECK(run({"bch-table", "--class", "9"}).code == 2);
  }

  TEST_CASE("correspond") {
    auto r = run({"correspond", "--ring", data("heisenberg_lr.json"), "--ideal", "2,0,0;0,2,0;0,0,2", "--samples", "50"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["checks"]["all_passed"] == true);
    CHECK(doc["index_two_ways"]["agree"] == true);
    CHECK(doc["indices"]["result"] == 32);
    auto n = run({"correspond", "--ring", data("heisenberg_lr.json"), "--ideal", "2,0,0;0,2,0;0,0,2", "--direction",
                  "to-ideal", "--samples", "20"});
    REQUIRE(n.code == 0);
    CHECK(nlohmann::json::parse(n.out)["indices"]["result"] == 2048);
    auto notlr = run({"correspond", "--ring", "heisenberg_3", "--ideal", "1,0,0;0,1,0;0,0,1"});
    CHECK(notlr.code == 1);
    CHECK(nlohmann::json::parse(notlr.err)["reason"] == "not-lr");
  }

  TEST_CASE("identical arguments give identical output") {
    std::vector<std::string> args{"--seed", "9", "correspond", "--ring", data("heisenberg_lr.json"), "--ideal",
                                  "2,0,0;0,2,0;0,0,2", "--samples", "30"};
    CHECK(run(args).out == run(args).out);
  }
}
