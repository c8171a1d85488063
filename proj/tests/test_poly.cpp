#include <doctest.h>

#include <random>

#include "ccmul/poly.hpp"

using namespace ccmul;

namespace {

Polynomial P(const Field& F, std::vector<uint64_t> idx) {
  return Polynomial::from_indices(F, idx);
}

// Schoolbook long division used as the independent oracle: repeatedly strip
// the leading term. Written without poly_divmod.
std::pair<Polynomial, Polynomial> longdiv_oracle(const Polynomial& f, const Polynomial& g) {
  const Field& F = f.base();
  Polynomial r = f;
  Polynomial q(F);
  FieldElement lg = g.leading();
  while (!r.is_zero() && r.degree() >= g.degree()) {
    int shift = r.degree() - g.degree();
    FieldElement c = r.leading() / lg;
    Polynomial term = Polynomial::constant(c) * Polynomial::monomial(F, shift);
    q = q + term;
    r = r - term * g;
  }
  return {q, r};
}

Polynomial random_poly(const Field& F, int max_deg, std::mt19937_64& rng) {
  int d = int(rng() % uint64_t(max_deg + 1));
  std::vector<uint64_t> idx(d + 1);
  for (auto& v : idx) v = rng() % F->q();
  return Polynomial::from_indices(F, idx);
}

long moebius(long n) {
  long result = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

// Necklace count (1/k) sum_{d|k} mu(d) q^{k/d}.
long necklace_count(long q, long k) {
  long sum = 0;
  for (long d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    long pw = 1;
    for (long i = 0; i < k / d; ++i) pw *= q;
    sum += moebius(d) * pw;
  }
  return sum / k;
}

}  // namespace

TEST_CASE("polynomial multiplication examples") {
  Field f2 = make_field(2, 1), f3 = make_field(3, 1);
  CHECK(P(f2, {1, 1}) * P(f2, {1, 1}) == P(f2, {1, 0, 1}));  // (x+1)^2 = x^2+1
  CHECK(P(f3, {1, 1}) * P(f3, {2, 1}) == P(f3, {2, 0, 1}));  // (x+1)(x+2) = x^2+2
  CHECK((P(f2, {1, 1, 1}) * Polynomial(f2)).is_zero());
  Polynomial f = P(f2, {1, 0, 1, 1});
  Polynomial g = P(f2, {0, 1});
  CHECK((f * g).degree() == f.degree() + g.degree());
}

TEST_CASE("poly_divmod examples and uniqueness") {
  Field f2 = make_field(2, 1);
  // x^3 divided by (x+1)^2 = x^2+1
  auto [q, r] = poly_divmod(P(f2, {0, 0, 0, 1}), P(f2, {1, 0, 1}));
  CHECK(q == P(f2, {0, 1}));
  CHECK(r == P(f2, {0, 1}));

  Polynomial f = P(f2, {1, 1, 0, 1});
  auto [q2, r2] = poly_divmod(f, f);
  CHECK(q2.is_one());
  CHECK(r2.is_zero());

  auto [q3, r3] = poly_divmod(P(f2, {1, 1}), P(f2, {1, 0, 1}));
  CHECK(q3.is_zero());
  CHECK(r3 == P(f2, {1, 1}));

  CHECK_THROWS_AS(poly_divmod(f, Polynomial(f2)), error);

  std::mt19937_64 rng(7);
  for (const Field& F : {make_field(2, 1), make_field(3, 1), make_field(2, 2)}) {
    for (int it = 0; it < 300; ++it) {
      Polynomial a = random_poly(F, 12, rng);
      Polynomial b = random_poly(F, 6, rng);
      if (b.is_zero()) continue;
      auto [qq, rr] = poly_divmod(a, b);
      auto [oq, orr] = longdiv_oracle(a, b);
      CHECK(qq == oq);
      CHECK(rr == orr);
      CHECK(rr.degree() < b.degree());
      CHECK((a - (qq * b + rr)).is_zero());
    }
  }
}

TEST_CASE("irreducibility") {
  Field f2 = make_field(2, 1), f3 = make_field(3, 1);
  CHECK(is_irreducible(P(f2, {1, 1, 1})));
  CHECK_FALSE(is_irreducible(P(f2, {1, 0, 1})));  // (x+1)^2
  CHECK(is_irreducible(P(f3, {1, 0, 1})));        // -1 non-residue mod 3
  CHECK_THROWS_AS(is_irreducible(P(f3, {1, 0, 2})), error);  // not monic

  // Cross-check against trial division for every monic polynomial.
  for (const Field& F : {f2, f3}) {
    int maxd = F->p == 2 ? 6 : 4;
    for (int d = 2; d <= maxd; ++d) {
      uint64_t total = 1;
      for (int i = 0; i < d; ++i) total *= F->q();
      for (uint64_t v = 0; v < total; ++v) {
        std::vector<uint64_t> idx(d + 1, 0);
        uint64_t rest = v;
        for (int i = 0; i < d; ++i) {
          idx[i] = rest % F->q();
          rest /= F->q();
        }
        idx[d] = 1;
        Polynomial f = Polynomial::from_indices(F, idx);
        bool brute = true;
        for (int dd = 1; dd <= d / 2 && brute; ++dd) {
          uint64_t t2 = 1;
          for (int i = 0; i < dd; ++i) t2 *= F->q();
          for (uint64_t w = 0; w < t2 && brute; ++w) {
            std::vector<uint64_t> gi(dd + 1, 0);
            uint64_t r2 = w;
            for (int i = 0; i < dd; ++i) {
              gi[i] = r2 % F->q();
              r2 /= F->q();
            }
            gi[dd] = 1;
            if (poly_divmod(f, Polynomial::from_indices(F, gi)).second.is_zero()) brute = false;
          }
        }
        CHECK(is_irreducible(f) == brute);
      }
    }
  }
}

TEST_CASE("enumerate_irreducibles matches the necklace count") {
  Field f2 = make_field(2, 1), f3 = make_field(3, 1);
  auto l1 = enumerate_irreducibles(f2, 2);
  REQUIRE(l1.size() == 1);
  CHECK(l1[0] == P(f2, {1, 1, 1}));

  auto l2 = enumerate_irreducibles(f2, 4);
  REQUIRE(l2.size() == 3);
  CHECK(l2[0] == P(f2, {1, 1, 0, 0, 1}));
  CHECK(l2[1] == P(f2, {1, 0, 0, 1, 1}));
  CHECK(l2[2] == P(f2, {1, 1, 1, 1, 1}));

  auto l3 = enumerate_irreducibles(f3, 1);
  REQUIRE(l3.size() == 3);
  CHECK(l3[0] == P(f3, {0, 1}));
  CHECK(l3[1] == P(f3, {1, 1}));
  CHECK(l3[2] == P(f3, {2, 1}));

  for (long q : {2L, 3L}) {
    Field F = make_field(q, 1);
    for (int k = 1; k <= 8; ++k) {
      auto list = enumerate_irreducibles(F, k);
      CHECK(long(list.size()) == necklace_count(q, k));
      for (size_t i = 0; i < list.size(); ++i) {
        CHECK(is_irreducible(list[i]));
        if (i > 0) CHECK(compare_poly(list[i - 1], list[i]) < 0);
      }
    }
  }
}

TEST_CASE("residue_coords digits") {
  Field f2 = make_field(2, 1);
  Polynomial f = P(f2, {0, 0, 0, 1});  // x^3
  Polynomial p = P(f2, {1, 1});        // x+1
  ResidueRingCoords rc = residue_coords(f, p, 2);
  REQUIRE(rc.u == 2);
  CHECK(rc.coeffs[0].is_one());  // f(1) = 1
  CHECK(rc.coeffs[1].is_one());

  ResidueRingCoords self = residue_coords(p, p, 3);
  CHECK(self.coeffs[0].is_zero());
  CHECK(self.coeffs[1].is_one());
  CHECK(self.coeffs[2].is_zero());

  ResidueRingCoords u1 = residue_coords(f, P(f2, {1, 1, 1}), 1);
  CHECK(u1.coeffs[0] == poly_mod(f, P(f2, {1, 1, 1})));

  CHECK_THROWS_AS(residue_coords(f, P(f2, {1, 0, 1}), 2), error);  // reducible parameter

  // Round-trip property over random triples.
  std::mt19937_64 rng(11);
  for (const Field& F : {make_field(2, 1), make_field(3, 1)}) {
    std::vector<Polynomial> params;
    for (int k = 1; k <= 4; ++k)
      for (const auto& ir : enumerate_irreducibles(F, k)) params.push_back(ir);
    for (int it = 0; it < 10000; ++it) {
      Polynomial f1 = random_poly(F, 20, rng);
      const Polynomial& pp = params[rng() % params.size()];
      int u = 1 + int(rng() % 3);
      ResidueRingCoords d = residue_coords(f1, pp, u);
      CHECK(residue_reconstruct(d, pp) == poly_mod(f1, poly_pow(pp, u)));
    }
  }
}

TEST_CASE("unramified digits multiply coefficientwise") {
  // The coefficient-embedding digits realize the ring isomorphism with
  // F_{q^k}[t]/(t^u): digits(fg) equals the residue-field product of digits.
  std::mt19937_64 rng(13);
  for (const Field& F : {make_field(2, 1), make_field(3, 1)}) {
    for (int k : {2, 3}) {
      Polynomial p = enumerate_irreducibles(F, k)[0];
      for (int u : {2, 3}) {
        Polynomial alpha = hensel_lift_root(p, u);
        // alpha is a root of p to precision u
        Polynomial mod = poly_pow(p, u);
        CHECK(eval_poly_mod(p, alpha, mod).is_zero());
        for (int it = 0; it < 200; ++it) {
          Polynomial a = random_poly(F, k * u + 3, rng);
          Polynomial b = random_poly(F, k * u + 3, rng);
          ResidueRingCoords da = unramified_digits(a, p, u, alpha);
          ResidueRingCoords db = unramified_digits(b, p, u, alpha);
          ResidueRingCoords dab = unramified_digits(poly_mod(a * b, mod), p, u, alpha);
          // product of the two digit series modulo t^u, coefficients mod p
          for (int m = 0; m < u; ++m) {
            Polynomial acc(F);
            for (int i = 0; i <= m; ++i)
              acc = acc + poly_mod(da.coeffs[i] * db.coeffs[m - i], p);
            CHECK(poly_mod(acc, p) == dab.coeffs[m]);
          }
          CHECK(unramified_reconstruct(da, p, alpha) == poly_mod(a, mod));
        }
      }
    }
  }
}
