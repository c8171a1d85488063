#include "ccmul/serialize.hpp"

#include <sstream>

namespace ccmul {

namespace {

std::string qstr(const mpq_class& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string zstr(const mpz_class& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

ordered_json surd_to_json(const tower::Surd& s) {
  if (s.is_rational()) return qstr(s.a());
  ordered_json j;
  j["a"] = qstr(s.a());
  j["b"] = qstr(s.b());
  j["d"] = s.d();
  return j;
}

std::vector<uint64_t> poly_indices(const Polynomial& f) { return f.indices(); }

Polynomial poly_from_indices(const Field& q, const ordered_json& arr) {
  if (!arr.is_array()) fail(errc::schema_error, "polynomial must be an array of integers");
  std::vector<uint64_t> idx;
  for (const auto& v : arr) {
    if (!v.is_number_unsigned() && !v.is_number_integer())
      fail(errc::schema_error, "polynomial coefficients must be integers");
    long long x = v.get<long long>();
    if (x < 0 || uint64_t(x) >= q->q())
      fail(errc::schema_error, "coefficient index out of range [0, q)");
    idx.push_back(uint64_t(x));
  }
  return Polynomial::from_indices(q, idx);
}

int tower_step_s(const tower::TowerStep& st) { return st.tower == tower::TowerName::E ? 0 : st.s; }

}  // namespace

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json place_to_json(const Place& p) {
  ordered_json j;
  if (p.infinite) {
    j["infinite"] = true;
  } else {
    j["poly"] = poly_indices(p.poly);
  }
  return j;
}

Place place_from_json(const Field& q, const ordered_json& j) {
  if (!j.is_object()) fail(errc::schema_error, "place must be an object");
  if (j.contains("infinite")) {
    if (!j["infinite"].is_boolean() || !j["infinite"].get<bool>())
      fail(errc::schema_error, "the infinite place is encoded as {\"infinite\": true}");
    return Place::at_infinity(q);
  }
  if (!j.contains("poly")) fail(errc::schema_error, "finite place needs a poly field");
  Polynomial f = poly_from_indices(q, j["poly"]);
  if (!f.is_monic() || !is_irreducible(f))
    fail(errc::schema_error, "place polynomial must be monic irreducible");
  return Place::finite(f);
}

ordered_json algorithm_to_json(const SymmetricBilinearAlgorithm& alg) {
  ordered_json j;
  j["q"] = alg.q->q();
  j["n"] = alg.n;
  j["modulus_Q"] = poly_indices(alg.modulus_Q);
  j["rank"] = alg.rank();
  ordered_json terms = ordered_json::array();
  for (const auto& t : alg.terms) {
    ordered_json jt;
    std::vector<uint64_t> phi, w;
    for (const auto& c : t.phi) phi.push_back(alg.q->to_index(c));
    for (const auto& c : t.w) w.push_back(alg.q->to_index(c));
    jt["phi"] = phi;
    jt["w"] = w;
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  ordered_json plan;
  ordered_json divisor = ordered_json::array();
  for (const auto& [p, c] : alg.plan.D.terms())
    divisor.push_back(ordered_json::array({place_to_json(p), c}));
  plan["divisor"] = std::move(divisor);
  ordered_json places = ordered_json::array();
  for (const auto& [p, u] : alg.plan.places)
    places.push_back(ordered_json::array({place_to_json(p), u}));
  plan["places"] = std::move(places);
  j["plan"] = std::move(plan);
  return j;
}

SymmetricBilinearAlgorithm algorithm_from_json(const ordered_json& doc) {
  if (!doc.is_object()) fail(errc::schema_error, "algorithm document must be an object");
  for (const char* key : {"q", "n", "modulus_Q", "rank", "terms", "plan"})
    if (!doc.contains(key)) fail(errc::schema_error, std::string("missing field ") + key);

  uint64_t qo = doc["q"].get<uint64_t>();
  Field q = make_field_from_order(qo);
  int n = doc["n"].get<int>();
  if (n < 2) fail(errc::schema_error, "n must be >= 2");

  SymmetricBilinearAlgorithm alg;
  alg.q = q;
  alg.n = n;
  alg.modulus_Q = poly_from_indices(q, doc["modulus_Q"]);
  if (alg.modulus_Q.degree() != n || !alg.modulus_Q.is_monic() || !is_irreducible(alg.modulus_Q))
    fail(errc::schema_error, "modulus_Q must be monic irreducible of degree n");

  if (!doc["terms"].is_array()) fail(errc::schema_error, "terms must be an array");
  auto parse_coeffs = [&](const ordered_json& arr) {
    std::vector<coeffs_t> out;
    if (!arr.is_array()) fail(errc::schema_error, "term vectors must be arrays");
    for (const auto& v : arr) {
      if (!v.is_number_integer() && !v.is_number_unsigned())
        fail(errc::schema_error, "term coefficients must be integers");
      long long x = v.get<long long>();
      if (x < 0 || uint64_t(x) >= q->q())
        fail(errc::schema_error, "term coefficient index out of range [0, q)");
      out.push_back(q->from_index(uint64_t(x)));
    }
    return out;
  };
  for (const auto& jt : doc["terms"]) {
    if (!jt.contains("phi") || !jt.contains("w")) fail(errc::schema_error, "term needs phi and w");
    AlgTerm t;
    t.phi = parse_coeffs(jt["phi"]);
    t.w = parse_coeffs(jt["w"]);
    if (int(t.phi.size()) != n || int(t.w.size()) != n)
      fail(errc::schema_error, "term vectors must have length n");
    alg.terms.push_back(std::move(t));
  }
  if (doc["rank"].get<int>() != alg.rank())
    fail(errc::schema_error, "rank field disagrees with the number of terms");

  const auto& plan = doc["plan"];
  if (!plan.is_object() || !plan.contains("divisor") || !plan.contains("places"))
    fail(errc::schema_error, "plan needs divisor and places");
  alg.plan.q = q;
  alg.plan.n = n;
  alg.plan.Q = Place::finite(alg.modulus_Q);
  for (const auto& pc : plan["divisor"]) {
    if (!pc.is_array() || pc.size() != 2) fail(errc::schema_error, "divisor entry must be a pair");
    alg.plan.D.add(place_from_json(q, pc[0]), pc[1].get<int>());
  }
  for (const auto& pu : plan["places"]) {
    if (!pu.is_array() || pu.size() != 2) fail(errc::schema_error, "places entry must be a pair");
    int u = pu[1].get<int>();
    if (u < 1 || u > 2) fail(errc::schema_error, "multiplicity must be 1 or 2");
    alg.plan.places.emplace_back(place_from_json(q, pu[0]), u);
  }
  return alg;
}

ordered_json verify_report_to_json(const VerifyReport& rep) {
  ordered_json j;
  j["mode"] = rep.exhaustive ? "exhaustive" : "random";
  j["seed"] = rep.seed;
  j["pairs_checked"] = rep.pairs_checked;
  j["failures"] = rep.failures;
  j["rank"] = rep.rank;
  j["n"] = rep.n;
  j["winograd_floor_ok"] = rep.winograd_ok;
  j["failure_examples"] = rep.failure_examples;
  j["ok"] = rep.ok();
  return j;
}

tower::KnownValues known_values_from_json(const ordered_json& doc) {
  if (!doc.is_object()) fail(errc::schema_error, "known-values table must be an object");
  tower::KnownValues table;
  for (const auto& [key, val] : doc.items()) {
    long n = 0;
    try {
      size_t pos = 0;
      n = std::stol(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(errc::schema_error, "key '" + key + "' is not a decimal integer");
    }
    if (n < 2) fail(errc::schema_error, "entries need n >= 2, got " + key);
    if (!val.is_object() || !val.contains("value") || !val.contains("source"))
      fail(errc::schema_error, "entry for n=" + key + " needs value and source");
    if (!val["value"].is_number_integer() && !val["value"].is_number_unsigned())
      fail(errc::schema_error, "value for n=" + key + " must be an integer");
    if (!val["source"].is_string())
      fail(errc::schema_error, "source for n=" + key + " must be a string");
    table[n] = tower::KnownValueEntry{val["value"].get<long>(), val["source"].get<std::string>()};
  }
  return table;
}

namespace {

ordered_json step_to_json(const tower::TowerStep& st) {
  ordered_json j;
  j["tower"] = st.tower == tower::TowerName::T2 ? "T2" : "E";
  j["i"] = st.i;
  j["s"] = tower_step_s(st);
  return j;
}

}  // namespace

ordered_json bound_report_to_json(const tower::BoundReport& rep, uint64_t seed) {
  ordered_json j;
  j["q"] = rep.q;
  j["n"] = rep.n;
  j["mode"] = tower::mode_name(rep.mode);
  j["seed"] = seed;
  j["from_table"] = rep.from_table;
  if (rep.from_table) j["table_source"] = rep.table_source;
  j["step"] = step_to_json(rep.step);
  j["genus_used"] = zstr(rep.genus_used);
  j["bound_rational"] = qstr(rep.bound);
  j["bound_floor"] = zstr(rep.bound_floor);
  j["branch_next_step"] = qstr(rep.branch_next);
  if (rep.branch_current) j["branch_current_step"] = qstr(*rep.branch_current);
  j["sum_k_b_k"] = zstr(rep.sum_kb);
  ordered_json trace = ordered_json::array();
  for (const auto& line : rep.trace) {
    ordered_json l;
    l["claim"] = line.claim;
    l["lhs"] = line.lhs;
    l["rhs"] = line.rhs;
    l["holds"] = line.holds;
    trace.push_back(std::move(l));
  }
  j["trace"] = std::move(trace);
  return j;
}

ordered_json slope_report_to_json(const tower::SlopeReport& rep, uint64_t seed) {
  ordered_json j;
  j["q"] = rep.q;
  j["mode"] = tower::mode_name(rep.mode);
  j["seed"] = seed;
  j["from"] = rep.from;
  j["to"] = rep.to;
  j["intercept"] = qstr(rep.intercept);
  j["slope"] = qstr(rep.slope);
  j["argmax_n"] = rep.argmax_n;
  j["target_slope"] = qstr(rep.target_slope);
  j["matched"] = rep.matched;
  return j;
}

ordered_json audit_report_to_json(const tower::AuditReport& rep, uint64_t seed) {
  ordered_json j;
  j["q"] = rep.q;
  j["i_max"] = rep.i_max;
  j["seed"] = seed;
  ordered_json checks = ordered_json::array();
  size_t verified = 0, refuted = 0, depends = 0;
  for (const auto& c : rep.checks) {
    ordered_json jc;
    jc["chain"] = c.chain;
    jc["i"] = c.i;
    if (c.s >= 0) jc["s"] = c.s;
    jc["statement"] = c.statement;
    jc["lhs"] = c.lhs;
    jc["rhs"] = c.rhs;
    jc["verdict"] = c.verdict;
    if (!c.note.empty()) jc["note"] = c.note;
    checks.push_back(std::move(jc));
    if (c.verdict == "verified") ++verified;
    else if (c.verdict == "refuted") ++refuted;
    else ++depends;
  }
  j["checks"] = std::move(checks);
  ordered_json summary;
  summary["total"] = rep.checks.size();
  summary["verified"] = verified;
  summary["refuted"] = refuted;
  summary["depends_on_unstated_data"] = depends;
  j["summary"] = std::move(summary);
  return j;
}

ordered_json steps_to_json(int q, const std::vector<tower::StepData>& steps, uint64_t seed) {
  ordered_json j;
  j["q"] = q;
  j["seed"] = seed;
  ordered_json arr = ordered_json::array();
  for (const auto& d : steps) {
    ordered_json s = step_to_json(d.step);
    if (d.genus_exact) s["genus_exact"] = zstr(*d.genus_exact);
    else s["genus_exact"] = nullptr;
    s["genus_lower"] = surd_to_json(d.genus_lower);
    s["genus_upper"] = surd_to_json(d.genus_upper);
    s["genus_upper_int"] = zstr(d.genus_upper_int);
    s["weighted_place_sum_lower"] = zstr(d.weighted_place_sum_lower);
    if (d.exact_counts) {
      s["exact_counts"] =
          ordered_json::array({zstr((*d.exact_counts)[0]), zstr((*d.exact_counts)[1]),
                               zstr((*d.exact_counts)[2])});
    } else {
      s["exact_counts"] = nullptr;
    }
    s["placecount_lower"] = zstr(tower::placecount_lower(d.step));
    s["capacity_certified"] = zstr(tower::step_capacity(d.step, tower::Mode::certified));
    s["capacity_paper"] = zstr(tower::step_capacity(d.step, tower::Mode::paper));
    s["delta_genus_lower"] = zstr(tower::delta_genus_lower(d.step));
    s["capacity_slack"] = zstr(tower::capacity_slack(d.step));
    s["ordinary"] = tower::TowerStep::ordinary;
    s["nonspecial_divisor_g_minus_1"] = tower::TowerStep::nonspecial_divisor_g_minus_1;
    arr.push_back(std::move(s));
  }
  j["steps"] = std::move(arr);
  return j;
}

std::string table_to_csv(const std::vector<tower::BoundReport>& rows) {
  std::ostringstream os;
  os << "n,mode,step_i,step_s,genus_used,bound_rational,bound_floor\n";
  for (const auto& r : rows) {
    os << r.n << "," << tower::mode_name(r.mode) << "," << r.step.i << ","
       << tower_step_s(r.step) << "," << r.genus_used << "," << r.bound << "," << r.bound_floor
       << "\n";
  }
  return os.str();
}

ordered_json table_to_json(const std::vector<tower::BoundReport>& rows, uint64_t seed) {
  ordered_json j;
  j["seed"] = seed;
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) arr.push_back(bound_report_to_json(r, seed));
  j["rows"] = std::move(arr);
  return j;
}

std::vector<CsvRow> parse_table_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "n,mode,step_i,step_s,genus_used,bound_rational,bound_floor")
    fail(errc::schema_error, "unexpected CSV header");
  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    CsvRow row;
    auto next = [&]() {
      if (!std::getline(ls, field, ',')) fail(errc::schema_error, "short CSV row");
      return field;
    };
    row.n = std::stol(next());
    row.mode = next();
    row.step_i = std::stoi(next());
    row.step_s = std::stoi(next());
    row.genus_used = mpz_class(next());
    row.bound_rational = mpq_class(next());
    row.bound_floor = mpz_class(next());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ccmul
