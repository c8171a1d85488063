#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ccmul/serialize.hpp"

namespace {

using namespace ccmul;

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) fail(errc::schema_error, "cannot open output file " + out_path);
  os << content;
}

ordered_json load_json(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(errc::schema_error, "cannot open " + path);
  ordered_json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    fail(errc::schema_error, std::string("invalid JSON: ") + e.what());
  }
  return j;
}

tower::KnownValues load_known_values(const std::string& path) {
  return known_values_from_json(load_json(path));
}

tower::Mode parse_mode(const std::string& m) {
  if (m == "certified") return tower::Mode::certified;
  if (m == "paper") return tower::Mode::paper;
  fail(errc::schema_error, "mode must be certified or paper");
}

int run_construct(uint64_t q_order, int n, int max_degree, const std::string& strategy,
                  const std::string& out) {
  Field q = make_field_from_order(q_order);
  Strategy st = strategy == "search" ? Strategy::search : Strategy::deflt;
  if (strategy != "search" && strategy != "default")
    fail(errc::schema_error, "strategy must be default or search");
  EvaluationPlan plan = select_plan(q, n, max_degree, st);
  SymmetricBilinearAlgorithm alg = build_algorithm(plan);
  std::string doc = dump_json(algorithm_to_json(alg));
  write_output(out, doc);
  if (!out.empty())
    std::cout << "wrote rank-" << alg.rank() << " algorithm for q=" << q_order << " n=" << n
              << " to " << out << "\n";
  return 0;
}

int run_verify(const std::string& input, const std::string& mode, uint64_t samples, uint64_t seed,
               const std::string& out) {
  SymmetricBilinearAlgorithm alg = algorithm_from_json(load_json(input));
  VerifySpec spec;
  if (mode == "exhaustive") {
    spec.exhaustive = true;
  } else if (mode == "random") {
    spec.exhaustive = false;
    spec.samples = samples;
    spec.seed = seed;
  } else {
    fail(errc::schema_error, "mode must be exhaustive or random");
  }
  VerifyReport rep = verify_algorithm(alg, spec);
  if (!out.empty()) write_output(out, dump_json(verify_report_to_json(rep)));
  std::cout << (rep.pairs_checked - rep.failures) << "/" << rep.pairs_checked << " pairs ok\n";
  if (!rep.winograd_ok)
    std::cout << "rank " << rep.rank << " violates the 2n-1 floor\n";
  for (const auto& ex : rep.failure_examples) std::cout << "failure: " << ex << "\n";
  return rep.ok() ? 0 : 1;
}

int run_bound(int q, long n, const std::string& mode, const std::string& known_values,
              const std::string& out, const std::string& format) {
  tower::KnownValues table;
  const tower::KnownValues* tp = nullptr;
  if (!known_values.empty()) {
    table = load_known_values(known_values);
    tp = &table;
  }
  tower::BoundReport rep = tower::pointwise_bound(q, n, parse_mode(mode), tp);
  bool bad_trace = false;
  for (const auto& line : rep.trace) bad_trace |= !line.holds;
  if (format == "csv") {
    write_output(out, table_to_csv({rep}));
  } else {
    write_output(out, dump_json(bound_report_to_json(rep, 0)));
  }
  return bad_trace ? 1 : 0;
}

int run_table(int q, long from, long to, const std::string& mode,
              const std::string& known_values, const std::string& out,
              const std::string& format) {
  tower::KnownValues table;
  const tower::KnownValues* tp = nullptr;
  if (!known_values.empty()) {
    table = load_known_values(known_values);
    tp = &table;
  }
  tower::Mode m = parse_mode(mode);
  std::vector<tower::BoundReport> rows;
  bool bad_trace = false;
  for (long n = from; n <= to; ++n) {
    rows.push_back(tower::pointwise_bound(q, n, m, tp));
    for (const auto& line : rows.back().trace) bad_trace |= !line.holds;
  }
  if (format == "csv")
    write_output(out, table_to_csv(rows));
  else
    write_output(out, dump_json(table_to_json(rows, 0)));
  return bad_trace ? 1 : 0;
}

int run_audit(int q, int i_max, const std::string& out) {
  tower::AuditReport rep = tower::audit(q, i_max);
  write_output(out, dump_json(audit_report_to_json(rep, 0)));
  return rep.checks.empty() ? 1 : 0;
}

int run_tower(int q, int from, int to, const std::string& out) {
  if (q != 2 && q != 3) fail(errc::out_of_range, "tower data supports q in {2,3}");
  std::vector<tower::StepData> steps;
  for (int i = from; i <= to; ++i) {
    if (q == 2) {
      steps.push_back(tower::step_data({tower::TowerName::T2, i, 0}));
      steps.push_back(tower::step_data({tower::TowerName::T2, i, 1}));
    } else {
      steps.push_back(tower::step_data({tower::TowerName::E, i, 0}));
    }
  }
  write_output(out, dump_json(steps_to_json(q, steps, 0)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric bilinear multiplication algorithms and certified rank bounds"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "build a multiplication algorithm");
  uint64_t c_q = 2;
  int c_n = 2, c_maxdeg = 4;
  std::string c_strategy = "default", c_out;
  construct->add_option("--q", c_q, "base field order (small prime power)")->required();
  construct->add_option("--n", c_n, "extension degree")->required();
  construct->add_option("--max-degree", c_maxdeg, "largest evaluation-place degree (1, 2 or 4)");
  construct->add_option("--strategy", c_strategy, "default | search");
  construct->add_option("--out", c_out, "output JSON path (stdout when omitted)");

  // verify
  auto* verify = app.add_subcommand("verify", "verify an algorithm JSON document");
  std::string v_input, v_mode = "exhaustive", v_out;
  uint64_t v_samples = 100000, v_seed = 0;
  verify->add_option("input", v_input, "algorithm JSON")->required();
  verify->add_option("--mode", v_mode, "exhaustive | random");
  verify->add_option("--samples", v_samples, "random-mode sample count");
  verify->add_option("--seed", v_seed, "random-mode seed");
  verify->add_option("--out", v_out, "verification report JSON path");

  // bound
  auto* bound = app.add_subcommand("bound", "certified upper bound for one n");
  int b_q = 2;
  long b_n = 19;
  std::string b_mode = "certified", b_known, b_out, b_format = "json";
  bound->add_option("--q", b_q, "base field (2 or 3)")->required();
  bound->add_option("--n", b_n, "extension degree")->required();
  bound->add_option("--mode", b_mode, "certified | paper");
  bound->add_option("--known-values", b_known, "known-values table JSON");
  bound->add_option("--out", b_out, "output path");
  bound->add_option("--format", b_format, "json | csv");

  // table
  auto* tab = app.add_subcommand("table", "bounds over a range of n");
  int t_q = 2;
  long t_from = 19, t_to = 100;
  std::string t_mode = "certified", t_known, t_out, t_format = "csv";
  tab->add_option("--q", t_q, "base field (2 or 3)")->required();
  tab->add_option("--from", t_from, "first n")->required();
  tab->add_option("--to", t_to, "last n")->required();
  tab->add_option("--mode", t_mode, "certified | paper");
  tab->add_option("--known-values", t_known, "known-values table JSON");
  tab->add_option("--out", t_out, "output path");
  tab->add_option("--format", t_format, "json | csv");

  // audit
  auto* aud = app.add_subcommand("audit", "re-derive the bound chains in exact arithmetic");
  int a_q = 2, a_imax = 20;
  std::string a_out;
  aud->add_option("--q", a_q, "base field (2 or 3)")->required();
  aud->add_option("--i-max", a_imax, "largest tower level to audit");
  aud->add_option("--out", a_out, "output path");

  // tower
  auto* tow = app.add_subcommand("tower", "per-step certified tower data");
  int w_q = 2, w_from = 0, w_to = 6;
  std::string w_out;
  tow->add_option("--q", w_q, "base field (2 or 3)")->required();
  tow->add_option("--from", w_from, "first level");
  tow->add_option("--to", w_to, "last level");
  tow->add_option("--out", w_out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) return run_construct(c_q, c_n, c_maxdeg, c_strategy, c_out);
    if (verify->parsed()) return run_verify(v_input, v_mode, v_samples, v_seed, v_out);
    if (bound->parsed()) return run_bound(b_q, b_n, b_mode, b_known, b_out, b_format);
    if (tab->parsed()) return run_table(t_q, t_from, t_to, t_mode, t_known, t_out, t_format);
    if (aud->parsed()) return run_audit(a_q, a_imax, a_out);
    if (tow->parsed()) return run_tower(w_q, w_from, w_to, w_out);
  } catch (const ccmul::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
