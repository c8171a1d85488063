#include <doctest.h>

#include <random>

#include "ccmul/base_algorithms.hpp"

using namespace ccmul;

namespace {

std::vector<coeffs_t> ring_element(const Field& F, int dim, uint64_t value) {
  std::vector<coeffs_t> v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = F->from_index(value % F->q());
    value /= F->q();
  }
  return v;
}

uint64_t ring_size(const Field& F, int dim) {
  uint64_t s = 1;
  for (int i = 0; i < dim; ++i) s *= F->q();
  return s;
}

void check_exhaustive(const BaseAlgorithm& alg) {
  uint64_t size = ring_size(alg.q, alg.dim());
  uint64_t mismatches = 0;
  for (uint64_t a = 0; a < size; ++a) {
    auto va = ring_element(alg.q, alg.dim(), a);
    for (uint64_t b = 0; b < size; ++b) {
      auto vb = ring_element(alg.q, alg.dim(), b);
      if (base_multiply(alg, va, vb) !=
          residue_ring_multiply(alg.q, alg.place_poly, alg.k, alg.u, va, vb))
        ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

void check_random(const BaseAlgorithm& alg, int iters, uint64_t seed) {
  std::mt19937_64 rng(seed);
  uint64_t size = ring_size(alg.q, alg.dim());
  uint64_t mismatches = 0;
  for (int it = 0; it < iters; ++it) {
    auto va = ring_element(alg.q, alg.dim(), rng() % size);
    auto vb = ring_element(alg.q, alg.dim(), rng() % size);
    if (base_multiply(alg, va, vb) !=
        residue_ring_multiply(alg.q, alg.place_poly, alg.k, alg.u, va, vb))
      ++mismatches;
  }
  CHECK(mismatches == 0);
}

}  // namespace

TEST_CASE("karatsuba schemes compute full products") {
  std::mt19937_64 rng(3);
  for (const Field& F : {make_field(2, 1), make_field(3, 1), make_field(2, 2)}) {
    for (int k : {1, 2, 4}) {
      MulScheme s = karatsuba_scheme(F, k);
      CHECK(s.rank() == (k == 1 ? 1 : k == 2 ? 3 : 9));
      uint64_t size = ring_size(F, k);
      bool exhaustive = size <= 16;
      uint64_t pairs = exhaustive ? size * size : 400;
      uint64_t mismatches = 0;
      for (uint64_t it = 0; it < pairs; ++it) {
        uint64_t ai = exhaustive ? it / size : rng() % size;
        uint64_t bi = exhaustive ? it % size : rng() % size;
        auto a = ring_element(F, k, ai);
        auto b = ring_element(F, k, bi);
        // m-values and reconstruction
        std::vector<coeffs_t> m;
        for (int l = 0; l < s.rank(); ++l) {
          coeffs_t fa = F->zero(), fb = F->zero();
          for (int j = 0; j < k; ++j) {
            fa = F->add(fa, F->mul(s.forms[l][j], a[j]));
            fb = F->add(fb, F->mul(s.forms[l][j], b[j]));
          }
          m.push_back(F->mul(fa, fb));
        }
        Polynomial pa(F, a), pb(F, b);
        Polynomial prod = pa * pb;
        for (int c = 0; c < 2 * k - 1; ++c) {
          coeffs_t acc = F->zero();
          for (int l = 0; l < s.rank(); ++l) acc = F->add(acc, F->mul(s.recon[c][l], m[l]));
          if (acc != prod.coeff_raw(c)) ++mismatches;
        }
      }
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("base algorithm ranks follow the table") {
  Field f2 = make_field(2, 1);
  CHECK(base_algorithm(f2, 1, 1).rank() == 1);
  CHECK(base_algorithm(f2, 2, 1).rank() == 3);
  CHECK(base_algorithm(f2, 4, 1).rank() == 9);
  CHECK(base_algorithm(f2, 1, 2).rank() == 3);
  CHECK(base_algorithm(f2, 2, 2).rank() == 9);
  CHECK(base_algorithm(f2, 4, 2).rank() == 27);
  CHECK_THROWS_AS(base_algorithm(f2, 3, 1), error);
  CHECK_THROWS_AS(base_algorithm(f2, 1, 3), error);
}

TEST_CASE("truncated-product algorithm matches the classic three-term form") {
  // F_2[t]/(t^2): m1 = a0 b0, m2 = (a0+a1)(b0+b1), m3 = a1 b1;
  // c0 = m1, c1 = m2 - m1 - m3.
  Field f2 = make_field(2, 1);
  BaseAlgorithm alg = base_algorithm(f2, 1, 2);
  REQUIRE(alg.rank() == 3);
  auto one = f2->one();
  auto zero = f2->zero();
  CHECK(alg.terms[0].first == std::vector<coeffs_t>{one, zero});
  CHECK(alg.terms[1].first == std::vector<coeffs_t>{one, one});
  CHECK(alg.terms[2].first == std::vector<coeffs_t>{zero, one});
  CHECK(alg.terms[0].second == std::vector<coeffs_t>{one, one});  // 1 - t over F_2
  CHECK(alg.terms[1].second == std::vector<coeffs_t>{zero, one});
  CHECK(alg.terms[2].second == std::vector<coeffs_t>{zero, one});
}

TEST_CASE("base algorithms verified by exhaustion over F_2") {
  Field f2 = make_field(2, 1);
  for (int k : {1, 2, 4})
    for (int u : {1, 2}) check_exhaustive(base_algorithm(f2, k, u));
  // every degree-4 place polynomial, not just the canonical one
  for (const auto& p : enumerate_irreducibles(f2, 4)) {
    check_exhaustive(base_algorithm_for(f2, p, 4, 1));
    check_exhaustive(base_algorithm_for(f2, p, 4, 2));
  }
}

TEST_CASE("base algorithms verified over F_3 and F_4") {
  Field f3 = make_field(3, 1);
  check_exhaustive(base_algorithm(f3, 1, 1));
  check_exhaustive(base_algorithm(f3, 2, 1));
  check_exhaustive(base_algorithm(f3, 1, 2));
  check_exhaustive(base_algorithm(f3, 2, 2));  // 81 elements
  check_exhaustive(base_algorithm(f3, 4, 1));  // 81 elements
  check_random(base_algorithm(f3, 4, 2), 2000, 101);

  Field f4 = make_field(2, 2);
  check_exhaustive(base_algorithm(f4, 2, 1));
  check_random(base_algorithm(f4, 2, 2), 2000, 102);
  check_random(base_algorithm(f4, 4, 1), 2000, 103);
}
