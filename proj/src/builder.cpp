#include "ccmul/builder.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ccmul {

namespace {

int mu_rank(int k) { return k == 1 ? 1 : k == 2 ? 3 : 9; }
int base_rank(int k, int u) { return mu_rank(k) * (u == 1 ? 1 : 3); }

struct ClassPool {
  int k = 0;
  std::vector<Place> places;  // lexicographic order
};

struct ClassChoice {
  int u1 = 0;  // places used at multiplicity 1
  int u2 = 0;  // places used at multiplicity 2
};

// Exact minimum-rank selection over the available places. Minimizes
// (rank, total budget), then prefers budget drawn from lower degrees;
// within a class, multiplicity 2 goes to the lexicographically first places.
// Returns nullopt when the budget target is unreachable.
std::optional<std::vector<ClassChoice>> choose_places(const std::vector<ClassPool>& pools,
                                                      int target, int* rank_out) {
  // A minimal solution never overshoots the largest item (8), see the
  // budget-tightness invariant.
  const int cap = target + 8;
  struct Best {
    bool found = false;
    std::vector<ClassChoice> choice;
    int rank = 0, budget = 0;
    std::vector<int> class_budget;
  } best;

  size_t nc = pools.size();
  std::vector<ClassChoice> cur(nc);
  std::vector<int> curb(nc, 0);

  // Depth-first over per-class (u1, u2) counts; pools are tiny.
  auto rec = [&](auto&& self, size_t ci, int rank, int budget) -> void {
    if (ci == nc) {
      if (budget < target) return;
      // Lexicographic preference: smaller rank, smaller budget, more budget
      // from earlier (lower-degree) classes.
      bool better = false;
      if (!best.found) {
        better = true;
      } else if (rank != best.rank) {
        better = rank < best.rank;
      } else if (budget != best.budget) {
        better = budget < best.budget;
      } else {
        for (size_t i = 0; i < nc; ++i) {
          if (curb[i] != best.class_budget[i]) {
            better = curb[i] > best.class_budget[i];
            break;
          }
        }
      }
      if (better) {
        best.found = true;
        best.choice = cur;
        best.rank = rank;
        best.budget = budget;
        best.class_budget = curb;
      }
      return;
    }
    const ClassPool& pool = pools[ci];
    int cnt = int(pool.places.size());
    int k = pool.k;
    for (int a = 0; a <= cnt; ++a) {
      if (budget + a * k > cap) break;
      for (int b = 0; a + b <= cnt; ++b) {
        int w = k * (a + 2 * b);
        if (budget + w > cap) break;
        cur[ci] = {a, b};
        curb[ci] = w;
        self(self, ci + 1, rank + mu_rank(k) * (a + 3 * b), budget + w);
      }
    }
    cur[ci] = {0, 0};
    curb[ci] = 0;
  };
  rec(rec, 0, 0, 0);

  if (!best.found) return std::nullopt;
  if (rank_out) *rank_out = best.rank;
  return best.choice;
}

std::vector<std::pair<Place, int>> realize_choice(const std::vector<ClassPool>& pools,
                                                  const std::vector<ClassChoice>& choice) {
  std::vector<std::pair<Place, int>> out;
  for (size_t i = 0; i < pools.size(); ++i) {
    int total = choice[i].u1 + choice[i].u2;
    for (int j = 0; j < total; ++j)
      out.emplace_back(pools[i].places[j], j < choice[i].u2 ? 2 : 1);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return compare_place(a.first, b.first) < 0; });
  return out;
}

std::vector<int> usable_degrees(int max_degree) {
  std::vector<int> ks;
  for (int k : {1, 2, 4})
    if (k <= max_degree) ks.push_back(k);
  return ks;
}

// Pools of candidate evaluation places: degree-k finite places (and the
// infinite place when allowed), excluding Q and supp D.
std::vector<ClassPool> build_pools(const Field& q, const std::vector<int>& degrees,
                                   const Place& Q, const Divisor& D, bool allow_infinity) {
  std::vector<ClassPool> pools;
  for (int k : degrees) {
    ClassPool pool;
    pool.k = k;
    for (const Place& p : places_of_degree(q, k)) {
      if (p.infinite && !allow_infinity) continue;
      if (p == Q || D.contains(p)) continue;
      pool.places.push_back(p);
    }
    pools.push_back(std::move(pool));
  }
  return pools;
}

int max_budget(const std::vector<ClassPool>& pools) {
  int b = 0;
  for (const auto& pool : pools) b += 2 * pool.k * int(pool.places.size());
  return b;
}

struct Candidate {
  Divisor D;
  bool allow_infinity = false;
};

EvaluationPlan plan_from(const Field& q, int n, const Place& Q, const Candidate& cand,
                         const std::vector<int>& degrees, int* rank_out) {
  auto pools = build_pools(q, degrees, Q, cand.D, cand.allow_infinity);
  auto choice = choose_places(pools, 2 * n - 1, rank_out);
  if (!choice) fail(errc::insufficient_places, "budget unreachable");
  EvaluationPlan plan;
  plan.q = q;
  plan.n = n;
  plan.Q = Q;
  plan.D = cand.D;
  plan.places = realize_choice(pools, *choice);
  return plan;
}

Candidate default_candidate(const Field& q, int n, const Place& Q,
                            const std::vector<int>& degrees) {
  Place inf = Place::at_infinity(q);
  Candidate cand;
  cand.D.add(inf, n - 1);
  cand.allow_infinity = false;
  auto pools = build_pools(q, degrees, Q, cand.D, false);
  if (max_budget(pools) >= 2 * n - 1) return cand;
  // The finite places alone cannot reach the budget: move D off infinity to
  // the smallest degree-(n-1) place (its degree exceeds every usable degree
  // whenever this branch is reached) and use the infinite place as well.
  Candidate moved;
  moved.D.add(Place::finite(smallest_irreducible(q, n - 1)), 1);
  moved.allow_infinity = true;
  auto pools2 = build_pools(q, degrees, Q, moved.D, true);
  if (max_budget(pools2) >= 2 * n - 1) return moved;
  std::ostringstream os;
  os << "weighted place budget " << max_budget(pools2) << " < " << 2 * n - 1
     << " required (degrees up to " << degrees.back() << ", multiplicities up to 2)";
  fail(errc::insufficient_places, os.str());
}

}  // namespace

EvaluationPlan select_plan(const Field& q, int n, int max_degree, Strategy strategy) {
  if (n < 2) fail(errc::out_of_range, "extension degree must be >= 2");
  if (max_degree != 1 && max_degree != 2 && max_degree != 4)
    fail(errc::unsupported_base, "max place degree must be one of 1, 2, 4");
  std::vector<int> degrees = usable_degrees(max_degree);
  Place Q = Place::finite(smallest_irreducible(q, n));

  Candidate def = default_candidate(q, n, Q, degrees);
  int def_rank = 0;
  EvaluationPlan best = plan_from(q, n, Q, def, degrees, &def_rank);
  if (strategy == Strategy::deflt) return best;

  // Bounded search over small divisor supports.
  int best_rank = def_rank;
  std::vector<Place> small_places;
  for (int d = 1; d <= 5; ++d)
    for (const Place& p : places_of_degree(q, d))
      if (p != Q) small_places.push_back(p);

  auto consider = [&](const Divisor& D) {
    if (D.degree() != n - 1) return;
    bool allow_inf = !D.contains(Place::at_infinity(q));
    Candidate cand{D, allow_inf};
    auto pools = build_pools(q, degrees, Q, cand.D, cand.allow_infinity);
    if (max_budget(pools) < 2 * n - 1) return;
    int rank = 0;
    auto choice = choose_places(pools, 2 * n - 1, &rank);
    if (!choice || rank >= best_rank) return;
    EvaluationPlan plan;
    plan.q = q;
    plan.n = n;
    plan.Q = Q;
    plan.D = cand.D;
    plan.places = realize_choice(pools, *choice);
    best = plan;
    best_rank = rank;
  };

  int bound = 2 * n;
  for (size_t ia = 0; ia < small_places.size(); ++ia) {
    const Place& A = small_places[ia];
    // single-place supports a*A
    if ((n - 1) % A.degree == 0 && (n - 1) / A.degree <= bound) {
      Divisor D;
      D.add(A, (n - 1) / A.degree);
      consider(D);
    }
    // two-place supports a*A + b*B
    for (size_t ib = ia + 1; ib < small_places.size(); ++ib) {
      const Place& B = small_places[ib];
      for (int a = -bound; a <= bound; ++a) {
        if (a == 0) continue;
        int rem = (n - 1) - a * A.degree;
        if (rem % B.degree != 0) continue;
        int b = rem / B.degree;
        if (b == 0 || std::abs(b) > bound) continue;
        Divisor D;
        D.add(A, a);
        D.add(B, b);
        consider(D);
      }
    }
  }
  return best;
}

int predicted_rank(const EvaluationPlan& plan) {
  int r = 0;
  for (const auto& [p, u] : plan.places) {
    if ((p.degree != 1 && p.degree != 2 && p.degree != 4) || (u != 1 && u != 2))
      fail(errc::unsupported_base, "plan uses a (degree, multiplicity) outside the base table");
    r += base_rank(p.degree, u);
  }
  return r;
}

ConditionReport check_conditions(const EvaluationPlan& plan) {
  ConditionReport rep;
  const Field& q = plan.q;
  int n = plan.n;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  bool disjoint = !plan.D.contains(plan.Q);
  for (const auto& [p, u] : plan.places)
    if (plan.D.contains(p) || p == plan.Q) disjoint = false;
  add("support_disjoint", disjoint, "supp D avoids Q and the evaluation places");

  add("divisor_degree", plan.D.degree() == n - 1,
      "deg D = " + std::to_string(plan.D.degree()) + ", expected " + std::to_string(n - 1));

  RRBasis LD = riemann_roch_basis(q, plan.D);
  add("divisor_dim", LD.dim() == n,
      "dim L(D) = " + std::to_string(LD.dim()) + ", expected " + std::to_string(n));

  bool qa = !plan.Q.infinite && plan.Q.degree == n && is_irreducible(plan.Q.poly);
  add("(a) degree_n_place", qa, "witness Q = " + plan.Q.to_string());

  Divisor neg;
  neg.add(Place::at_infinity(q), -1);
  add("(b) nonspecial_degree_-1", riemann_roch_basis(q, neg).dim() == 0,
      "dim of a degree -1 divisor is 0 at genus 0");

  int budget = plan.budget();
  add("(c) budget", budget >= 2 * n - 1,
      "sum u_i deg P_i = " + std::to_string(budget) + " >= " + std::to_string(2 * n - 1));

  bool evq = false;
  std::string evq_detail = "skipped";
  if (LD.dim() == n && qa && disjoint) {
    Matrix eq(q, size_t(n), size_t(n));
    for (int j = 0; j < n; ++j) {
      Polynomial val = evaluate_at(LD.elements[j], plan.Q);
      for (int i = 0; i < n; ++i) eq.set(size_t(i), size_t(j), val.coeff_raw(i));
    }
    size_t r = eq.rank();
    evq = r == size_t(n);
    evq_detail = "rank " + std::to_string(r) + " of " + std::to_string(n);
  }
  add("ev_Q_bijective", evq, evq_detail);

  bool evp = false;
  std::string evp_detail = "skipped";
  if (disjoint && plan.D.degree() == n - 1) {
    RRBasis L2D = riemann_roch_basis(q, plan.D.scaled(2));
    Matrix m = evaluation_matrix(L2D.elements, plan.places);
    size_t r = m.rank();
    evp = r == size_t(2 * n - 1);
    evp_detail = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix of rank " +
                 std::to_string(r);
  }
  add("ev_P_injective", evp, evp_detail);

  return rep;
}

SymmetricBilinearAlgorithm build_algorithm(const EvaluationPlan& plan) {
  ConditionReport rep = check_conditions(plan);
  if (!rep.all_pass()) {
    std::string why;
    for (const auto& c : rep.checks)
      if (!c.pass) why += (why.empty() ? "" : "; ") + c.name + " (" + c.detail + ")";
    fail(errc::conditions_not_met, why);
  }

  const Field& q = plan.q;
  int n = plan.n;
  RRBasis LD = riemann_roch_basis(q, plan.D);
  RRBasis L2D = riemann_roch_basis(q, plan.D.scaled(2));
  int dim2 = 2 * n - 1;

  Matrix eq(q, size_t(n), size_t(n));
  for (int j = 0; j < n; ++j) {
    Polynomial val = evaluate_at(LD.elements[j], plan.Q);
    for (int i = 0; i < n; ++i) eq.set(size_t(i), size_t(j), val.coeff_raw(i));
  }
  Matrix eq_inv = *eq.inverse();

  Matrix U(q, size_t(n), size_t(dim2));
  for (int m = 0; m < dim2; ++m) {
    Polynomial val = evaluate_at(L2D.elements[m], plan.Q);
    for (int i = 0; i < n; ++i) U.set(size_t(i), size_t(m), val.coeff_raw(i));
  }

  Matrix M = evaluation_matrix(L2D.elements, plan.places);
  std::vector<size_t> rows = M.independent_rows(size_t(dim2));
  Matrix Minv = *M.select_rows(rows).inverse();
  Matrix T = U.mul(Minv);  // n x (2n-1)

  // Position of each selected global row inside the subsystem, if any.
  std::vector<int> row_pos(M.rows(), -1);
  for (size_t s = 0; s < rows.size(); ++s) row_pos[rows[s]] = int(s);

  SymmetricBilinearAlgorithm alg;
  alg.q = q;
  alg.n = n;
  alg.modulus_Q = plan.Q.poly;
  alg.plan = plan;

  size_t row_base = 0;
  for (const auto& [P, u] : plan.places) {
    int k = P.degree;
    int dim = k * u;
    BaseAlgorithm base = base_algorithm_for(q, P.infinite ? Polynomial(q) : P.poly, k, u);
    Matrix expn = evaluation_matrix(LD.elements, {{P, u}});  // dim x n
    // Composite input map: L(D) coordinates of x are eq_inv * x.
    Matrix L = expn.mul(eq_inv);  // dim x n

    for (const auto& [psi, wloc] : base.terms) {
      AlgTerm term;
      term.phi.assign(size_t(n), q->zero());
      for (int r = 0; r < dim; ++r) {
        if (q->is_zero(psi[r])) continue;
        for (int j = 0; j < n; ++j)
          term.phi[j] = q->add(term.phi[j], q->mul(psi[r], L.at(size_t(r), size_t(j))));
      }
      term.w.assign(size_t(n), q->zero());
      for (int r = 0; r < dim; ++r) {
        if (q->is_zero(wloc[r])) continue;
        int s = row_pos[row_base + size_t(r)];
        if (s < 0) continue;  // row outside the chosen full-rank subsystem
        for (int i = 0; i < n; ++i)
          term.w[i] = q->add(term.w[i], q->mul(wloc[r], T.at(size_t(i), size_t(s))));
      }
      alg.terms.push_back(std::move(term));
    }
    row_base += size_t(dim);
  }
  return alg;
}

Polynomial multiply_with(const SymmetricBilinearAlgorithm& alg, const Polynomial& x,
                         const Polynomial& y) {
  if (!same_field(x.base(), alg.q) || !same_field(y.base(), alg.q))
    fail(errc::field_mismatch, "operands live over a different base field");
  const Field& q = alg.q;
  int n = alg.n;
  Polynomial xr = poly_mod(x, alg.modulus_Q), yr = poly_mod(y, alg.modulus_Q);
  std::vector<coeffs_t> acc(size_t(n), q->zero());
  for (const auto& term : alg.terms) {
    coeffs_t fx = q->zero(), fy = q->zero();
    for (int j = 0; j < n; ++j) {
      if (!q->is_zero(term.phi[j])) {
        fx = q->add(fx, q->mul(term.phi[j], xr.coeff_raw(j)));
        fy = q->add(fy, q->mul(term.phi[j], yr.coeff_raw(j)));
      }
    }
    coeffs_t m = q->mul(fx, fy);
    if (q->is_zero(m)) continue;
    for (int i = 0; i < n; ++i)
      if (!q->is_zero(term.w[i])) acc[i] = q->add(acc[i], q->mul(m, term.w[i]));
  }
  return Polynomial(q, acc);
}

namespace {

// Flattened prime-field fast path for verification loops.
struct FlatAlg {
  int64_t p;
  int n;
  std::vector<int64_t> phi;  // rank*n
  std::vector<int64_t> w;    // rank*n
  std::vector<int64_t> qmod; // n+1 coefficients of Q
  int rank;
};

FlatAlg flatten(const SymmetricBilinearAlgorithm& alg) {
  FlatAlg f;
  f.p = alg.q->p;
  f.n = alg.n;
  f.rank = alg.rank();
  f.phi.reserve(size_t(f.rank) * f.n);
  f.w.reserve(size_t(f.rank) * f.n);
  for (const auto& t : alg.terms) {
    for (int j = 0; j < f.n; ++j) f.phi.push_back(t.phi[j][0]);
    for (int j = 0; j < f.n; ++j) f.w.push_back(t.w[j][0]);
  }
  f.qmod.resize(f.n + 1);
  for (int i = 0; i <= f.n; ++i) f.qmod[i] = alg.modulus_Q.coeff_raw(i)[0];
  return f;
}

// out = x*y mod Q over F_p, schoolbook; buffers provided by the caller.
void flat_oracle(const FlatAlg& f, const int64_t* x, const int64_t* y, int64_t* prod,
                 int64_t* out) {
  int n = f.n;
  std::fill(prod, prod + 2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; ++j) prod[i + j] += x[i] * y[j];
  }
  for (int i = 0; i < 2 * n - 1; ++i) prod[i] %= f.p;
  for (int d = 2 * n - 2; d >= n; --d) {
    int64_t c = prod[d] % f.p;
    if (c == 0) continue;
    prod[d] = 0;
    for (int j = 0; j < n; ++j) {
      prod[d - n + j] = (prod[d - n + j] - c * f.qmod[j]) % f.p;
      if (prod[d - n + j] < 0) prod[d - n + j] += f.p;
    }
  }
  std::copy(prod, prod + n, out);
  for (int i = 0; i < n; ++i) out[i] %= f.p;
}

void flat_multiply(const FlatAlg& f, const int64_t* x, const int64_t* y, int64_t* out) {
  int n = f.n;
  std::fill(out, out + n, 0);
  const int64_t* phi = f.phi.data();
  const int64_t* w = f.w.data();
  for (int l = 0; l < f.rank; ++l, phi += n, w += n) {
    int64_t fx = 0, fy = 0;
    for (int j = 0; j < n; ++j) {
      fx += phi[j] * x[j];
      fy += phi[j] * y[j];
    }
    int64_t m = ((fx % f.p) * (fy % f.p)) % f.p;
    if (m == 0) continue;
    for (int j = 0; j < n; ++j) out[j] += m * w[j];
  }
  for (int j = 0; j < n; ++j) out[j] %= f.p;
}

std::string coords_str(const std::vector<int64_t>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

VerifyReport verify_algorithm(const SymmetricBilinearAlgorithm& alg, const VerifySpec& spec) {
  VerifyReport rep;
  rep.exhaustive = spec.exhaustive;
  rep.seed = spec.seed;
  rep.rank = alg.rank();
  rep.n = alg.n;
  rep.winograd_ok = alg.rank() >= 2 * alg.n - 1;

  const Field& q = alg.q;
  int n = alg.n;
  uint64_t Q = 1;
  bool q_pow_ok = true;
  for (int i = 0; i < n && q_pow_ok; ++i) {
    if (Q > (uint64_t(1) << 40) / q->q()) q_pow_ok = false;
    else Q *= q->q();
  }

  auto check_generic = [&](const Polynomial& x, const Polynomial& y) {
    Polynomial got = multiply_with(alg, x, y);
    Polynomial want = poly_mod(x * y, alg.modulus_Q);
    Polynomial got_rev = multiply_with(alg, y, x);
    bool ok = got == want && got_rev == want;
    ++rep.pairs_checked;
    if (!ok) {
      ++rep.failures;
      if (rep.failure_examples.size() < 5)
        rep.failure_examples.push_back("x=" + x.to_string() + " y=" + y.to_string() + " got " +
                                       got.to_string() + " want " + want.to_string());
    }
  };

  bool fast = q->k == 1;
  FlatAlg flat;
  std::vector<int64_t> xb(n), yb(n), ob(n), wb(n), pb(2 * n);
  if (fast) flat = flatten(alg);

  auto check_fast = [&](const int64_t* x, const int64_t* y) {
    flat_multiply(flat, x, y, ob.data());
    flat_oracle(flat, x, y, pb.data(), wb.data());
    ++rep.pairs_checked;
    if (!std::equal(ob.begin(), ob.end(), wb.begin())) {
      ++rep.failures;
      if (rep.failure_examples.size() < 5)
        rep.failure_examples.push_back("x=" + coords_str(std::vector<int64_t>(x, x + n)) +
                                       " y=" + coords_str(std::vector<int64_t>(y, y + n)) +
                                       " got " + coords_str(ob) + " want " + coords_str(wb));
    }
  };

  if (spec.exhaustive) {
    if (!q_pow_ok || Q > (uint64_t(1) << 13))
      fail(errc::out_of_range, "exhaustive verification would need more than 2^26 pairs");
    for (uint64_t xi = 0; xi < Q; ++xi) {
      for (uint64_t yi = 0; yi < Q; ++yi) {
        if (fast) {
          uint64_t r = xi;
          for (int i = 0; i < n; ++i) { xb[i] = int64_t(r % uint64_t(q->p)); r /= uint64_t(q->p); }
          r = yi;
          for (int i = 0; i < n; ++i) { yb[i] = int64_t(r % uint64_t(q->p)); r /= uint64_t(q->p); }
          check_fast(xb.data(), yb.data());
        } else {
          std::vector<uint64_t> xs(n), ys(n);
          uint64_t r = xi;
          for (int i = 0; i < n; ++i) { xs[i] = r % q->q(); r /= q->q(); }
          r = yi;
          for (int i = 0; i < n; ++i) { ys[i] = r % q->q(); r /= q->q(); }
          check_generic(Polynomial::from_indices(q, std::vector<uint64_t>(xs.begin(), xs.end())),
                        Polynomial::from_indices(q, std::vector<uint64_t>(ys.begin(), ys.end())));
        }
      }
    }
    return rep;
  }

  // Random mode: 16 fixed shards; the sample stream depends only on
  // (seed, shard), so the result is independent of any parallel split.
  const uint64_t shards = 16;
  for (uint64_t s = 0; s < shards; ++s) {
    uint64_t count = spec.samples / shards + (s < spec.samples % shards ? 1 : 0);
    std::mt19937_64 rng(spec.seed * 0x9e3779b97f4a7c15ULL + s + 1);
    for (uint64_t i = 0; i < count; ++i) {
      if (fast) {
        for (int j = 0; j < n; ++j) xb[j] = int64_t(rng() % uint64_t(q->p));
        for (int j = 0; j < n; ++j) yb[j] = int64_t(rng() % uint64_t(q->p));
        check_fast(xb.data(), yb.data());
      } else {
        std::vector<uint64_t> xs(n), ys(n);
        for (int j = 0; j < n; ++j) xs[j] = rng() % q->q();
        for (int j = 0; j < n; ++j) ys[j] = rng() % q->q();
        check_generic(Polynomial::from_indices(q, xs), Polynomial::from_indices(q, ys));
      }
    }
  }
  return rep;
}

}  // namespace ccmul
