#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccmul/errors.hpp"

namespace ccmul::tower {

// Exact value a + b*sqrt(d) with rational a, b and a fixed non-square d > 1.
// Closed under ring operations with the same d; signs and floors are decided
// exactly (no floating point).
class Surd {
 public:
  Surd() : a_(0), b_(0), d_(1) {}
  Surd(mpq_class a) : a_(std::move(a)), b_(0), d_(1) {}
  Surd(long a) : a_(a), b_(0), d_(1) {}
  Surd(mpq_class a, mpq_class b, int d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_ == 0) d_ = 1;
  }
  static Surd root(int d) { return Surd(0, 1, d); }

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  int d() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  friend Surd operator+(const Surd& x, const Surd& y);
  friend Surd operator-(const Surd& x, const Surd& y);
  friend Surd operator*(const Surd& x, const Surd& y);
  Surd operator-() const { return Surd(-a_, -b_, d_); }

  int sign() const;            // -1, 0, +1, exact
  mpz_class floor() const;     // exact integer floor
  std::string str() const;     // "p/q" or "p/q+r/s*sqrt(d)"

 private:
  mpq_class a_, b_;
  int d_;
};

// Exact sign of x - y.
int compare(const Surd& x, const Surd& y);

// q^(e2/2) as an exact surd (rational when e2 is even or q is a square).
Surd q_pow_half(int q, long e2);

mpz_class zpow(long base, long e);

// The two towers the bound engine works over: T2 over F_2 (descended,
// densified Garcia-Stichtenoth tower with q = 4) and E over F_3 (descended
// tower with q = 3).
enum class TowerName { T2, E };

struct TowerStep {
  TowerName tower = TowerName::T2;
  int i = 0;
  int s = 0;  // sub-level in {0,1} for T2; always 0 for E
  // Imported facts, never computed here: every step is ordinary and has a
  // non-special divisor of degree g-1.
  static constexpr bool ordinary = true;
  static constexpr bool nonspecial_divisor_g_minus_1 = true;
  std::string name() const;
};

TowerStep first_step(TowerName t);
TowerStep next_step(const TowerStep& st);
std::optional<TowerStep> prev_step(const TowerStep& st);

// Exact genus of level i of the q-parameterized tower.
mpz_class genus_exact_t0(int q, int i);
// Exact degree-one place count of level n (n > 2) of the tower over F_{q^2}.
mpz_class rational_places_exact_t0(int q, int n);

struct StepData {
  TowerStep step;
  std::optional<mpz_class> genus_exact;
  Surd genus_lower;               // strict lower bound (degenerate 0 at i = 0)
  Surd genus_upper;               // certified upper bound (= exact when known)
  mpz_class genus_upper_int;      // floor(genus_upper); genus is an integer
  mpz_class weighted_place_sum_lower;  // certified lower bound on sum k*B_k
  std::optional<std::array<mpz_class, 3>> exact_counts;  // (B1, B2, B4)
};

StepData step_data(const TowerStep& st);

enum class Mode { certified, paper };
const char* mode_name(Mode m);

// Certified lower bound on B1 + 2*B2 (+ 4*B4 for T2).
mpz_class placecount_lower(const TowerStep& st);
// certified: largest m with 2m + 2g - 1 <= sum k B_k on certified data
// (clamped at 0); paper: the stated capacity expression, reproduced verbatim.
mpz_class step_capacity(const TowerStep& st, Mode mode);
// Lower bound on the genus gap to the next step, clamped at 0.
mpz_class delta_genus_lower(const TowerStep& st);
// min(delta-genus lower bound, floor(placecount_lower / 2)).
mpz_class capacity_slack(const TowerStep& st);

// Condition (a) of the pointwise bound machinery: 2g+1 <= c^((n-1)/2)(sqrt(c)-1)
// over the step's definition field (c = 2 for T2, 3 for E), checked exactly.
bool condition_a(const TowerStep& st, long n);
// Condition (c) with b = 0 on certified data.
bool condition_c(const TowerStep& st, long n);

// Smallest step (lexicographic in (i, s)) whose certified data passes
// conditions (a) and (c); q in {2, 3}; OutOfRange below n = 19 resp. 13.
TowerStep select_step(int q, long n);

struct KnownValueEntry {
  long value = 0;
  std::string source;
};
using KnownValues = std::map<long, KnownValueEntry>;

struct TraceLine {
  std::string claim;
  std::string lhs, rhs;
  bool holds = false;
};

struct BoundReport {
  int q = 0;
  long n = 0;
  Mode mode = Mode::certified;
  bool from_table = false;
  std::string table_source;
  TowerStep step;           // step of the winning branch
  mpz_class genus_used;     // genus bound of that step
  mpq_class bound;          // exact rational bound
  mpz_class bound_floor;
  mpq_class branch_next;    // bound via the first suitable step, b = 0
  std::optional<mpq_class> branch_current;  // bound via its predecessor with b_k
  mpz_class sum_kb;         // sum k*b_k used by the winning branch
  std::vector<TraceLine> trace;
};

BoundReport pointwise_bound(int q, long n, Mode mode, const KnownValues* table = nullptr);

struct SlopeReport {
  int q = 0;
  Mode mode = Mode::certified;
  long from = 0, to = 0;
  mpq_class intercept;
  mpq_class slope;  // sup over the range of (bound - intercept)/n
  long argmax_n = 0;
  mpq_class target_slope;
  bool matched = false;  // computed slope <= the stated target
};

SlopeReport uniform_slope(int q, long from, long to, Mode mode);

struct AuditCheck {
  std::string chain;
  int i = 0;
  int s = -1;  // -1 when not applicable
  std::string statement;
  std::string lhs, rhs;
  std::string verdict;  // verified | refuted | depends-on-unstated-data
  std::string note;
};

struct AuditReport {
  int q = 0;
  int i_max = 0;
  std::vector<AuditCheck> checks;
};

// Re-derives the bound-chain inequalities in exact arithmetic for i <= i_max
// without asserting any stated constant as ground truth.
AuditReport audit(int q, int i_max);

}  // namespace ccmul::tower
