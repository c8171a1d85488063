#include <doctest.h>

#include "ccmul/fq.hpp"
#include "ccmul/poly.hpp"

using namespace ccmul;

namespace {

// Brute-force irreducibility for tiny degrees: try every monic factor of
// degree 1..deg/2. Independent of is_irreducible.
bool brute_irreducible(const Polynomial& f) {
  const Field& F = f.base();
  uint64_t q = F->q();
  for (int d = 1; d <= f.degree() / 2; ++d) {
    uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    for (uint64_t v = 0; v < total; ++v) {
      std::vector<uint64_t> idx(d + 1, 0);
      uint64_t r = v;
      for (int i = 0; i < d; ++i) {
        idx[i] = r % q;
        r /= q;
      }
      idx[d] = 1;
      Polynomial g = Polynomial::from_indices(F, idx);
      if (poly_divmod(f, g).second.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("make_field basics") {
  Field f2 = make_field(2, 1);
  CHECK(f2->p == 2);
  CHECK(f2->k == 1);
  CHECK(f2->q() == 2);

  // Exhausting the 4 monic quadratics over F_2 leaves x^2+x+1 as the unique
  // irreducible, so the automatic pick must be exactly that.
  Field f4 = make_field(2, 2);
  CHECK(f4->modulus == coeffs_t{1, 1, 1});
  int count = 0;
  for (uint64_t v = 0; v < 4; ++v) {
    Polynomial cand = Polynomial::from_indices(f2, {v & 1, (v >> 1) & 1, 1});
    if (brute_irreducible(cand)) {
      ++count;
      CHECK(cand.indices() == std::vector<uint64_t>{1, 1, 1});
    }
  }
  CHECK(count == 1);

  CHECK_THROWS_AS(make_field(4, 1), error);
  try {
    make_field(4, 1);
  } catch (const error& e) {
    CHECK(e.code() == errc::non_prime_characteristic);
  }
  // supplying a reducible modulus is rejected
  CHECK_THROWS_AS(make_field(2, 2, coeffs_t{1, 0, 1}), error);
}

TEST_CASE("field arithmetic examples") {
  Field f4 = make_field(2, 2);
  FieldElement a = FieldElement::from_index(f4, 2);  // class of x
  CHECK((a * a).index() == 3);                       // x^2 = x+1 mod x^2+x+1

  Field f3 = make_field(3, 1);
  FieldElement two = FieldElement::from_index(f3, 2);
  CHECK(two.inv().index() == 2);  // 2*2 = 4 = 1

  Field f2 = make_field(2, 1);
  FieldElement one = FieldElement::one(f2);
  CHECK((one + one).is_zero());
}

TEST_CASE("field axioms exhaustively for small orders") {
  std::vector<Field> fields = {make_field(2, 1), make_field(3, 1), make_field(2, 2),
                               make_field(5, 1), make_field(2, 3), make_field(3, 2),
                               make_field(2, 4), make_field(3, 3), make_field(3, 4)};
  for (const Field& F : fields) {
    uint64_t q = F->q();
    REQUIRE(q <= 81);
    // a * inv(a) = 1, all nonzero a
    bool inv_ok = true;
    for (uint64_t i = 1; i < q; ++i) {
      coeffs_t a = F->from_index(i);
      inv_ok &= F->is_one(F->mul(a, F->inv(a)));
    }
    CHECK(inv_ok);
    // distributivity and commutativity over all triples (raw ops, one verdict)
    bool dist_ok = true, comm_ok = true;
    for (uint64_t i = 0; i < q && dist_ok; ++i) {
      coeffs_t a = F->from_index(i);
      for (uint64_t j = 0; j < q && dist_ok; ++j) {
        coeffs_t b = F->from_index(j);
        comm_ok &= F->mul(a, b) == F->mul(b, a);
        for (uint64_t l = 0; l < q; ++l) {
          coeffs_t c = F->from_index(l);
          if (F->mul(a, F->add(b, c)) != F->add(F->mul(a, b), F->mul(a, c))) {
            dist_ok = false;
            break;
          }
        }
      }
    }
    CHECK(dist_ok);
    CHECK(comm_ok);
  }
}

TEST_CASE("mixed fields are rejected") {
  Field f2 = make_field(2, 1), f3 = make_field(3, 1);
  FieldElement a = FieldElement::one(f2), b = FieldElement::one(f3);
  CHECK_THROWS_AS(a + b, error);
  try {
    a* b;
  } catch (const error& e) {
    CHECK(e.code() == errc::mixed_fields);
  }
  CHECK_THROWS_AS(FieldElement::zero(f2).inv(), error);
}

TEST_CASE("index encoding round-trips") {
  Field f9 = make_field(3, 2);
  for (uint64_t i = 0; i < 9; ++i)
    CHECK(FieldElement::from_index(f9, i).index() == i);
  CHECK(make_field_from_order(8)->k == 3);
  CHECK(make_field_from_order(9)->p == 3);
  CHECK_THROWS_AS(make_field_from_order(12), error);
}
