#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccmul/base_algorithms.hpp"
#include "ccmul/function_field.hpp"

namespace ccmul {

// The data of one evaluation/interpolation construction: the degree-n place
// Q, the auxiliary divisor D (deg n-1, dim n) and the evaluation places with
// multiplicities. supp D is disjoint from {Q} and the places.
struct EvaluationPlan {
  Field q;
  int n = 0;
  Place Q;
  Divisor D;
  std::vector<std::pair<Place, int>> places;

  int budget() const {
    int b = 0;
    for (const auto& [p, u] : places) b += p.degree * u;
    return b;
  }
};

enum class Strategy { deflt, search };

// Picks a plan with usable place degrees in {1,2,4} capped by max_degree.
// deflt: D = (n-1)*P_inf while the finite-place budget suffices, otherwise D
// moves to the smallest degree-(n-1) place to free P_inf; evaluation places
// chosen by exact minimum predicted rank (deterministic tie-breaks).
// search: additionally scans small divisor supports (degree <= 5, 1 or 2
// places, coefficients bounded by 2n) and returns the plan of least rank.
// Throws insufficient_places when no plan reaches budget 2n-1.
EvaluationPlan select_plan(const Field& q, int n, int max_degree, Strategy strategy);

struct ConditionCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ConditionReport {
  std::vector<ConditionCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Verifies the plan invariants and the two matrix-level facts (Ev_Q bijective
// on L(D), the multiplicity evaluation injective on L(2D)).
ConditionReport check_conditions(const EvaluationPlan& plan);

// Sum of base-table ranks over the plan's places.
int predicted_rank(const EvaluationPlan& plan);

struct AlgTerm {
  std::vector<coeffs_t> phi;  // linear form, n coordinates over F_q
  std::vector<coeffs_t> w;    // output element of F_q[x]/(Q), n coordinates
};

struct SymmetricBilinearAlgorithm {
  Field q;
  int n = 0;
  Polynomial modulus_Q;
  std::vector<AlgTerm> terms;
  EvaluationPlan plan;
  int rank() const { return int(terms.size()); }
};

// Flattens the evaluation/interpolation construction into rank-many symmetric
// bilinear terms; requires check_conditions(plan) to pass.
SymmetricBilinearAlgorithm build_algorithm(const EvaluationPlan& plan);

// x, y are residue classes mod Q (polynomials, reduced here if needed).
Polynomial multiply_with(const SymmetricBilinearAlgorithm& alg, const Polynomial& x,
                         const Polynomial& y);

struct VerifySpec {
  bool exhaustive = true;
  uint64_t samples = 100000;  // random mode
  uint64_t seed = 0;
};

struct VerifyReport {
  bool exhaustive = true;
  uint64_t seed = 0;
  uint64_t pairs_checked = 0;
  uint64_t failures = 0;
  int rank = 0;
  int n = 0;
  bool winograd_ok = false;  // rank >= 2n-1
  std::vector<std::string> failure_examples;
  bool ok() const { return failures == 0 && winograd_ok; }
};

// Checks Sum phi(x) phi(y) w = x*y against schoolbook reduction mod Q, either
// over all q^2n pairs or over seeded random pairs (16 fixed shards, so the
// sample set depends only on (seed, samples)).
VerifyReport verify_algorithm(const SymmetricBilinearAlgorithm& alg, const VerifySpec& spec);

}  // namespace ccmul
