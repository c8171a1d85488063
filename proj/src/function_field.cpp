#include "ccmul/function_field.hpp"

#include <climits>

namespace ccmul {

Place Place::finite(Polynomial prime) {
  if (!prime.is_monic()) fail(errc::non_monic, "place polynomial must be monic");
  Place p;
  p.infinite = false;
  p.degree = prime.degree();
  p.poly = std::move(prime);
  return p;
}

int compare_place(const Place& a, const Place& b) {
  if (a.infinite != b.infinite) return a.infinite ? -1 : 1;
  if (a.infinite) return 0;
  return compare_poly(a.poly, b.poly);
}

bool operator==(const Place& a, const Place& b) { return compare_place(a, b) == 0; }

void Divisor::add(const Place& p, int c) {
  if (c == 0) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Divisor::coeff(const Place& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& [p, c] : terms_) d += c * p.degree;
  return d;
}

Divisor Divisor::scaled(int m) const {
  Divisor r;
  if (m == 0) return r;
  for (const auto& [p, c] : terms_) r.add(p, c * m);
  return r;
}

std::vector<Place> places_of_degree(const Field& q, int k) {
  if (k < 1) fail(errc::out_of_range, "place degree must be >= 1");
  std::vector<Place> out;
  if (k == 1) out.push_back(Place::at_infinity(q));
  for (auto& f : enumerate_irreducibles(q, k)) out.push_back(Place::finite(f));
  return out;
}

RRBasis riemann_roch_basis(const Field& q, const Divisor& D) {
  // Genus 0: with h the positive finite part and z the forced zeros, L(D) is
  // spanned by z*x^j/h for 0 <= j <= deg D.
  Polynomial h = Polynomial::monomial(q, 0);
  Polynomial z = Polynomial::monomial(q, 0);
  for (const auto& [p, c] : D.terms()) {
    if (p.infinite) continue;
    if (c > 0)
      h = h * poly_pow(p.poly, c);
    else
      z = z * poly_pow(p.poly, -c);
  }
  RRBasis basis;
  basis.divisor = D;
  int t = D.degree();
  for (int j = 0; j <= t; ++j)
    basis.elements.push_back(RationalFunction{z * Polynomial::monomial(q, j), h});
  return basis;
}

int valuation_at(const RationalFunction& f, const Place& P) {
  if (f.num.is_zero()) return INT_MAX / 2;
  if (P.infinite) return f.den.degree() - f.num.degree();
  return poly_valuation(f.num, P.poly).first - poly_valuation(f.den, P.poly).first;
}

namespace {

Polynomial reversed(const Polynomial& f) {
  std::vector<coeffs_t> c;
  for (int i = f.degree(); i >= 0; --i) c.push_back(f.coeff_raw(i));
  return Polynomial(f.base(), c);
}

ResidueRingCoords zero_coords(const Field& q, int k, int u) {
  ResidueRingCoords rc;
  rc.k = k;
  rc.u = u;
  rc.coeffs.assign(u, Polynomial(q));
  return rc;
}

// Expansion at infinity in the parameter 1/x via coefficient reversal.
ResidueRingCoords expand_at_infinity(const RationalFunction& f, int u) {
  const Field& q = f.num.base();
  if (f.num.is_zero()) return zero_coords(q, 1, u);
  int v = f.den.degree() - f.num.degree();
  if (v < 0) fail(errc::pole_at_place, "pole at the infinite place");
  ResidueRingCoords rc = zero_coords(q, 1, u);
  if (v >= u) return rc;
  Polynomial y_mod = Polynomial::monomial(q, u - v);  // y^(u-v)
  Polynomial numr = poly_mod(reversed(f.num), y_mod);
  Polynomial denr = reversed(f.den);
  Polynomial ser = poly_mod(numr * poly_inv_mod(denr, y_mod), y_mod);
  for (int j = 0; j + v < u; ++j)
    rc.coeffs[j + v] = Polynomial::constant(ser.coeff(j));
  return rc;
}

}  // namespace

ResidueRingCoords local_expansion(const RationalFunction& f, const Place& P, int u,
                                  const Polynomial& alpha) {
  if (u < 1) fail(errc::out_of_range, "multiplicity must be >= 1");
  if (P.infinite) return expand_at_infinity(f, u);
  const Field& q = P.field();
  const Polynomial& p = P.poly;
  int k = P.degree;
  if (f.num.is_zero()) return zero_coords(q, k, u);

  auto [vn, n2] = poly_valuation(f.num, p);
  auto [vd, d2] = poly_valuation(f.den, p);
  int ord = vn - vd;
  if (ord < 0) fail(errc::pole_at_place, "pole at " + P.to_string());
  ResidueRingCoords rc = zero_coords(q, k, u);
  if (ord >= u) return rc;

  int m = u - ord;
  Polynomial mod = poly_pow(p, m);
  Polynomial g = poly_mod(n2 * poly_inv_mod(d2, mod), mod);
  ResidueRingCoords digits = unramified_digits(g, p, m, alpha);
  for (int j = 0; j < m; ++j) rc.coeffs[j + ord] = digits.coeffs[j];
  return rc;
}

ResidueRingCoords local_expansion(const RationalFunction& f, const Place& P, int u) {
  if (P.infinite) return local_expansion(f, P, u, Polynomial(P.field()));
  return local_expansion(f, P, u, hensel_lift_root(P.poly, u));
}

Matrix evaluation_matrix(const std::vector<RationalFunction>& elements,
                         const std::vector<std::pair<Place, int>>& plan_places) {
  if (elements.empty()) fail(errc::out_of_range, "evaluation matrix needs elements");
  const Field& q = elements[0].num.base();
  size_t rows = 0;
  for (const auto& [p, u] : plan_places) rows += size_t(p.degree) * size_t(u);
  Matrix m(q, rows, elements.size());
  size_t base = 0;
  for (const auto& [p, u] : plan_places) {
    Polynomial alpha =
        p.infinite ? Polynomial(q) : hensel_lift_root(p.poly, u);
    for (size_t col = 0; col < elements.size(); ++col) {
      ResidueRingCoords rc = local_expansion(elements[col], p, u, alpha);
      for (int j = 0; j < u; ++j)
        for (int c = 0; c < p.degree; ++c)
          m.set(base + size_t(j) * p.degree + c, col, rc.coeffs[j].coeff_raw(c));
    }
    base += size_t(p.degree) * size_t(u);
  }
  return m;
}

Polynomial reduce_mod_Q(const Polynomial& f, const Place& Q) {
  if (Q.infinite) fail(errc::out_of_range, "reduction needs a finite place");
  return poly_mod(f, Q.poly);
}

Polynomial evaluate_at(const RationalFunction& f, const Place& Q) {
  if (Q.infinite) fail(errc::pole_at_place, "evaluation at infinity not supported here");
  Polynomial dq = poly_mod(f.den, Q.poly);
  if (dq.is_zero()) fail(errc::pole_at_place, "denominator vanishes at " + Q.to_string());
  return poly_mod(poly_mod(f.num, Q.poly) * poly_inv_mod(dq, Q.poly), Q.poly);
}

}  // namespace ccmul
