#include <doctest.h>

#include "ccmul/serialize.hpp"

using namespace ccmul;

TEST_CASE("algorithm JSON round-trip is byte-exact") {
  Field f2 = make_field(2, 1);
  SymmetricBilinearAlgorithm alg = build_algorithm(select_plan(f2, 3, 4, Strategy::deflt));
  std::string doc = dump_json(algorithm_to_json(alg));

  SymmetricBilinearAlgorithm back = algorithm_from_json(ordered_json::parse(doc));
  CHECK(back.rank() == alg.rank());
  CHECK(back.n == alg.n);
  CHECK(back.modulus_Q == alg.modulus_Q);
  std::string doc2 = dump_json(algorithm_to_json(back));
  CHECK(doc == doc2);

  // the imported algorithm still multiplies correctly
  VerifyReport rep = verify_algorithm(back, VerifySpec{true, 0, 0});
  CHECK(rep.failures == 0);

  // rank field must match the term count
  ordered_json j = algorithm_to_json(alg);
  CHECK(j["rank"].get<int>() == int(j["terms"].size()));
  j["rank"] = 99;
  CHECK_THROWS_AS(algorithm_from_json(j), error);

  // modulus is re-tested on import
  ordered_json j2 = algorithm_to_json(alg);
  j2["modulus_Q"] = std::vector<int>{1, 0, 0, 1};  // x^3+1 reducible
  CHECK_THROWS_AS(algorithm_from_json(j2), error);
}

TEST_CASE("non-prime base field export uses index encoding") {
  Field f4 = make_field(2, 2);
  SymmetricBilinearAlgorithm alg = build_algorithm(select_plan(f4, 2, 2, Strategy::deflt));
  ordered_json j = algorithm_to_json(alg);
  CHECK(j["q"].get<int>() == 4);
  std::string doc = dump_json(j);
  CHECK(doc == dump_json(algorithm_to_json(algorithm_from_json(j))));
}

TEST_CASE("known-values schema") {
  ordered_json ok = ordered_json::parse(R"({"2": {"value": 3, "source": "rank floor"}})");
  tower::KnownValues t = known_values_from_json(ok);
  REQUIRE(t.count(2) == 1);
  CHECK(t[2].value == 3);
  CHECK(t[2].source == "rank floor");

  CHECK_THROWS_AS(known_values_from_json(ordered_json::parse(R"({"0": {"value": 1, "source": "x"}})")),
                  error);
  CHECK_THROWS_AS(known_values_from_json(ordered_json::parse(R"({"2": {"value": 3}})")), error);
  CHECK_THROWS_AS(known_values_from_json(ordered_json::parse(R"({"2": {"value": 3.5, "source": "x"}})")),
                  error);
  CHECK_THROWS_AS(known_values_from_json(ordered_json::parse(R"({"two": {"value": 3, "source": "x"}})")),
                  error);
}

TEST_CASE("importer rejects malformed documents") {
  Field f2 = make_field(2, 1);
  SymmetricBilinearAlgorithm alg = build_algorithm(select_plan(f2, 3, 4, Strategy::deflt));
  ordered_json good = algorithm_to_json(alg);

  auto expect_schema_error = [](ordered_json j) {
    try {
      algorithm_from_json(j);
      FAIL("expected a schema error");
    } catch (const error& e) {
      CHECK(e.code() == errc::schema_error);
    }
  };

  ordered_json j1 = good;
  j1.erase("plan");
  expect_schema_error(j1);

  ordered_json j2 = good;
  j2["terms"][0]["phi"] = std::vector<int>{1, 0};  // short vector
  expect_schema_error(j2);

  ordered_json j3 = good;
  j3["terms"][1]["w"][0] = 7;  // index out of [0, q)
  expect_schema_error(j3);

  ordered_json j4 = good;
  j4["plan"]["places"][0][1] = 3;  // multiplicity outside {1,2}
  expect_schema_error(j4);

  ordered_json j5 = good;
  j5["plan"]["divisor"][0][0] = ordered_json::object({{"poly", {1, 0, 1}}});  // reducible
  expect_schema_error(j5);
}

TEST_CASE("CSV rows parse back to the exact rationals") {
  std::vector<tower::BoundReport> rows;
  for (long n = 19; n <= 100; ++n)
    rows.push_back(tower::pointwise_bound(2, n, tower::Mode::certified));
  std::string csv = table_to_csv(rows);
  auto parsed = parse_table_csv(csv);
  REQUIRE(parsed.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].n == rows[i].n);  // row order follows n, no reordering
    CHECK(parsed[i].bound_rational == rows[i].bound);
    CHECK(parsed[i].bound_floor == rows[i].bound_floor);
    CHECK(parsed[i].genus_used == rows[i].genus_used);
  }
  CHECK_THROWS_AS(parse_table_csv("bogus\n1,2\n"), error);
}

TEST_CASE("report JSON carries seed and trace") {
  tower::BoundReport rep = tower::pointwise_bound(3, 13, tower::Mode::certified);
  ordered_json j = bound_report_to_json(rep, 0);
  CHECK(j["seed"].get<int>() == 0);
  CHECK(j["bound_floor"].get<std::string>() == "93");
  CHECK(j["trace"].is_array());
  CHECK_FALSE(j["trace"].empty());
  for (const auto& line : j["trace"]) CHECK(line["holds"].get<bool>());

  tower::AuditReport arep = tower::audit(2, 4);
  ordered_json aj = audit_report_to_json(arep, 0);
  CHECK(aj["summary"]["total"].get<size_t>() == arep.checks.size());
  CHECK(aj["summary"]["refuted"].get<size_t>() > 0);
}
