#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccmul/fq.hpp"

namespace ccmul {

// Polynomial over F_q (q = p^k), canonical form: no trailing zero
// coefficients, empty coefficient list = zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;  // empty shell; assign before use
  explicit Polynomial(Field base) : base_(std::move(base)) {}
  Polynomial(Field base, std::vector<coeffs_t> c);

  static Polynomial constant(const FieldElement& e);
  static Polynomial from_indices(const Field& base, const std::vector<uint64_t>& idx);
  static Polynomial monomial(const Field& base, int deg);  // x^deg
  static Polynomial x(const Field& base) { return monomial(base, 1); }

  const Field& base() const { return base_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }  // -1 for the zero polynomial
  const coeffs_t& coeff_raw(size_t i) const;         // zero beyond the degree
  FieldElement coeff(size_t i) const { return FieldElement(base_, coeff_raw(i)); }
  FieldElement leading() const;
  bool is_monic() const { return !is_zero() && base_->is_one(c_.back()); }
  bool is_one() const { return degree() == 0 && base_->is_one(c_[0]); }
  std::vector<uint64_t> indices() const;  // coefficient indices, low-to-high

  Polynomial monic() const;  // divide by the leading coefficient
  FieldElement eval(const FieldElement& a) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial scaled(const FieldElement& s) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const;  // e.g. "x^3+x+1"

 private:
  Field base_;
  std::vector<coeffs_t> c_;
  void prune();
};

// f = q*g + r with deg r < deg g; throws division_by_zero when g = 0.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& f, const Polynomial& g);
Polynomial poly_mod(const Polynomial& f, const Polynomial& g);
Polynomial poly_pow(const Polynomial& f, int e);
Polynomial poly_powmod(const Polynomial& f, uint64_t e, const Polynomial& mod);
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);  // monic (or zero)
// Inverse of f modulo m, requires gcd(f, m) = 1.
Polynomial poly_inv_mod(const Polynomial& f, const Polynomial& m);
// Largest e with p^e | f (f nonzero), together with the cofactor f / p^e.
std::pair<int, Polynomial> poly_valuation(const Polynomial& f, const Polynomial& p);

// Ordering by (degree, then coefficient indices compared from the top), which
// coincides with comparing the base-q digit values low-to-high.
int compare_poly(const Polynomial& a, const Polynomial& b);

// Deterministic exact irreducibility test (gcd-with-Frobenius); requires a
// monic polynomial of degree >= 1.
bool is_irreducible(const Polynomial& f);

// All monic irreducibles of degree k in ascending lexicographic value order.
std::vector<Polynomial> enumerate_irreducibles(const Field& base, int k);
// First monic irreducible of degree k in that order (always exists).
Polynomial smallest_irreducible(const Field& base, int k);

// Class in F_q[x]/(p(x)^u) presented as u residue-field coefficients, each a
// degree-<k representative over F_q.
struct ResidueRingCoords {
  int k = 0;
  int u = 0;
  std::vector<Polynomial> coeffs;
};

// Plain digit decomposition f = sum c_j p^j (mod p^u) with deg c_j < deg p;
// round-trips exactly with residue_reconstruct.
ResidueRingCoords residue_coords(const Polynomial& f, const Polynomial& p, int u);
Polynomial residue_reconstruct(const ResidueRingCoords& rc, const Polynomial& p);

// Coefficient embedding of the residue field into F_q[x]/(p^u): the Hensel
// lift alpha of the root x of p, i.e. alpha = x (mod p) and p(alpha) = 0
// (mod p^u). Digits taken against this section multiply coefficientwise,
// realizing the ring isomorphism F_q[x]/(p^u) ~ F_{q^k}[t]/(t^u).
Polynomial hensel_lift_root(const Polynomial& p, int u);
Polynomial eval_poly_mod(const Polynomial& f, const Polynomial& at, const Polynomial& mod);
ResidueRingCoords unramified_digits(const Polynomial& f, const Polynomial& p, int u,
                                    const Polynomial& alpha);
Polynomial unramified_reconstruct(const ResidueRingCoords& rc, const Polynomial& p,
                                  const Polynomial& alpha);

}  // namespace ccmul
