#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ccmul/errors.hpp"

namespace ccmul {

// Element of F_{p^k} as k residues mod p on the basis 1, x, ..., x^{k-1}
// modulo the field's defining polynomial; constant term first.
using coeffs_t = std::vector<int64_t>;

class FieldSpec;
using Field = std::shared_ptr<const FieldSpec>;

// Immutable description of F_{p^k} together with the arithmetic on raw
// coefficient vectors. Elements are always kept reduced (length k, entries in
// [0, p)).
class FieldSpec {
 public:
  int64_t p;        // prime characteristic
  int k;            // extension degree >= 1
  coeffs_t modulus; // monic irreducible over F_p, size k+1; empty when k == 1

  uint64_t q() const;  // p^k; throws out_of_range if it does not fit 2^62

  coeffs_t zero() const { return coeffs_t(k, 0); }
  coeffs_t one() const;
  bool is_zero(const coeffs_t& a) const;
  bool is_one(const coeffs_t& a) const;

  // Index encoding: sum a_i * p^i, coefficients read low-to-high as base-p digits.
  coeffs_t from_index(uint64_t idx) const;
  uint64_t to_index(const coeffs_t& a) const;

  coeffs_t add(const coeffs_t& a, const coeffs_t& b) const;
  coeffs_t sub(const coeffs_t& a, const coeffs_t& b) const;
  coeffs_t neg(const coeffs_t& a) const;
  coeffs_t mul(const coeffs_t& a, const coeffs_t& b) const;
  coeffs_t inv(const coeffs_t& a) const;  // throws division_by_zero on 0
  coeffs_t pow(const coeffs_t& a, uint64_t e) const;
  coeffs_t mul_int(const coeffs_t& a, int64_t s) const;  // s may be negative

  std::string to_string(const coeffs_t& a) const;
};

// Builds F_p (k = 1) or F_{p^k} with the given monic irreducible modulus over
// F_p. When the modulus is omitted and k > 1, the lexicographically smallest
// monic irreducible of degree k is selected (coefficients read low-to-high as
// base-p digits), so the choice is deterministic across runs.
Field make_field(int64_t p, int k = 1, std::optional<coeffs_t> modulus_fp = std::nullopt);

// Fields compare structurally: same p, k and modulus.
bool same_field(const Field& a, const Field& b);

// Decomposes a prime power q = p^k and returns the canonical field; throws
// non_prime_characteristic when q is not a prime power.
Field make_field_from_order(uint64_t q);

bool is_prime_int(int64_t p);

// Value-semantic wrapper carrying its field; the public element type.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Field f, coeffs_t c);

  static FieldElement zero(const Field& f) { return FieldElement(f, f->zero()); }
  static FieldElement one(const Field& f) { return FieldElement(f, f->one()); }
  static FieldElement from_index(const Field& f, uint64_t idx) {
    return FieldElement(f, f->from_index(idx));
  }

  const Field& field() const { return f_; }
  const coeffs_t& coeffs() const { return c_; }
  uint64_t index() const { return f_->to_index(c_); }
  bool is_zero() const { return f_->is_zero(c_); }
  bool is_one() const { return f_->is_one(c_); }

  FieldElement inv() const { return FieldElement(f_, f_->inv(c_)); }
  FieldElement pow(uint64_t e) const { return FieldElement(f_, f_->pow(c_, e)); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const { return FieldElement(f_, f_->neg(c_)); }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  Field f_;
  coeffs_t c_;
};

void require_same_field(const Field& a, const Field& b, const char* where);

}  // namespace ccmul
