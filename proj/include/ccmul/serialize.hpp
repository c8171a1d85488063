#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "ccmul/builder.hpp"
#include "ccmul/tower.hpp"

namespace ccmul {

using ordered_json = nlohmann::ordered_json;

// Canonical rendering: 2-space indent, sorted-as-inserted keys, trailing
// newline. All commands emit through this so identical runs are
// byte-identical.
std::string dump_json(const ordered_json& j);

ordered_json place_to_json(const Place& p);
Place place_from_json(const Field& q, const ordered_json& j);

ordered_json algorithm_to_json(const SymmetricBilinearAlgorithm& alg);
SymmetricBilinearAlgorithm algorithm_from_json(const ordered_json& doc);

ordered_json verify_report_to_json(const VerifyReport& rep);

tower::KnownValues known_values_from_json(const ordered_json& doc);

ordered_json bound_report_to_json(const tower::BoundReport& rep, uint64_t seed);
ordered_json slope_report_to_json(const tower::SlopeReport& rep, uint64_t seed);
ordered_json audit_report_to_json(const tower::AuditReport& rep, uint64_t seed);
ordered_json steps_to_json(int q, const std::vector<tower::StepData>& steps, uint64_t seed);

std::string table_to_csv(const std::vector<tower::BoundReport>& rows);
ordered_json table_to_json(const std::vector<tower::BoundReport>& rows, uint64_t seed);

struct CsvRow {
  long n = 0;
  std::string mode;
  int step_i = 0;
  int step_s = 0;
  mpz_class genus_used;
  mpq_class bound_rational;
  mpz_class bound_floor;
};
std::vector<CsvRow> parse_table_csv(const std::string& text);

}  // namespace ccmul
