#include "ccmul/base_algorithms.hpp"

namespace ccmul {

namespace {

std::vector<coeffs_t> zeros(const Field& q, int m) { return std::vector<coeffs_t>(m, q->zero()); }

coeffs_t dot(const Field& q, const std::vector<coeffs_t>& a, const std::vector<coeffs_t>& b) {
  coeffs_t acc = q->zero();
  for (size_t i = 0; i < a.size(); ++i)
    if (!q->is_zero(a[i]) && !q->is_zero(b[i])) acc = q->add(acc, q->mul(a[i], b[i]));
  return acc;
}

}  // namespace

MulScheme karatsuba_scheme(const Field& q, int k) {
  if (k == 1) {
    MulScheme s;
    s.k = 1;
    s.forms = {{q->one()}};
    s.recon = {{q->one()}};
    return s;
  }
  if (k % 2 != 0) fail(errc::unsupported_base, "scheme size must be a power of two");
  MulScheme h = karatsuba_scheme(q, k / 2);
  int hk = h.k, hr = h.rank();
  MulScheme s;
  s.k = k;
  // Split a = A0 + A1 x^hk; products A0*B0, A1*B1, (A0+A1)(B0+B1).
  for (int t = 0; t < 3; ++t) {
    for (int l = 0; l < hr; ++l) {
      std::vector<coeffs_t> form = zeros(q, k);
      for (int j = 0; j < hk; ++j) {
        if (t == 0 || t == 2) form[j] = h.forms[l][j];
        if (t == 1 || t == 2) form[hk + j] = h.forms[l][j];
      }
      s.forms.push_back(std::move(form));
    }
  }
  // c = P0 + (P2 - P0 - P1) x^hk + P1 x^2hk, each P reconstructed by h.recon.
  s.recon.assign(2 * k - 1, std::vector<coeffs_t>(3 * hr, q->zero()));
  for (int i = 0; i < 2 * hk - 1; ++i) {
    for (int l = 0; l < hr; ++l) {
      const coeffs_t& r = h.recon[i][l];
      if (q->is_zero(r)) continue;
      // P0 at offset 0, with -P0 at offset hk
      s.recon[i][l] = q->add(s.recon[i][l], r);
      s.recon[i + hk][l] = q->sub(s.recon[i + hk][l], r);
      // P1 at offset 2hk, with -P1 at offset hk
      s.recon[i + 2 * hk][hr + l] = q->add(s.recon[i + 2 * hk][hr + l], r);
      s.recon[i + hk][hr + l] = q->sub(s.recon[i + hk][hr + l], r);
      // P2 at offset hk
      s.recon[i + hk][2 * hr + l] = q->add(s.recon[i + hk][2 * hr + l], r);
    }
  }
  return s;
}

BaseAlgorithm base_algorithm_for(const Field& q, const Polynomial& place_poly, int k, int u) {
  if ((k != 1 && k != 2 && k != 4) || (u != 1 && u != 2))
    fail(errc::unsupported_base,
         "supported residue degrees {1,2,4} and multiplicities {1,2}, got (" +
             std::to_string(k) + "," + std::to_string(u) + ")");
  if (k > 1) {
    if (place_poly.degree() != k || !place_poly.is_monic())
      fail(errc::unsupported_base, "place polynomial must be monic of degree k");
  }

  // Columns of x^i mod P for i = 0 .. 2k-2.
  std::vector<std::vector<coeffs_t>> red(2 * k - 1, zeros(q, k));
  for (int i = 0; i < 2 * k - 1; ++i) {
    if (k == 1) {
      red[i][0] = q->one();
    } else {
      Polynomial r = poly_mod(Polynomial::monomial(q, i), place_poly);
      for (int c = 0; c < k; ++c) red[i][c] = r.coeff_raw(c);
    }
  }

  MulScheme s = karatsuba_scheme(q, k);
  // Inner terms for one residue-field product.
  std::vector<std::vector<coeffs_t>> psi(s.rank()), v(s.rank());
  for (int l = 0; l < s.rank(); ++l) {
    psi[l] = s.forms[l];
    v[l] = zeros(q, k);
    for (int i = 0; i < 2 * k - 1; ++i) {
      if (q->is_zero(s.recon[i][l])) continue;
      for (int c = 0; c < k; ++c)
        v[l][c] = q->add(v[l][c], q->mul(s.recon[i][l], red[i][c]));
    }
  }

  BaseAlgorithm alg;
  alg.q = q;
  alg.k = k;
  alg.u = u;
  alg.place_poly = k > 1 ? place_poly : Polynomial(q);

  if (u == 1) {
    for (int l = 0; l < s.rank(); ++l) alg.terms.emplace_back(psi[l], v[l]);
    return alg;
  }

  // Truncated product modulo t^2 from three residue-field products:
  // m1 = a0 b0, m2 = (a0+a1)(b0+b1), m3 = a1 b1; c0 = m1, c1 = m2 - m1 - m3.
  const coeffs_t one = q->one();
  const coeffs_t mone = q->neg(one);
  struct Outer {
    int lam0, lam1;       // lambda = lam0*x0 + lam1*x1
    coeffs_t v0, v1;      // contribution to (c0, c1)
  };
  std::vector<Outer> outer = {
      {1, 0, one, mone},
      {1, 1, q->zero(), one},
      {0, 1, q->zero(), mone},
  };
  for (const Outer& o : outer) {
    for (int l = 0; l < s.rank(); ++l) {
      std::vector<coeffs_t> phi = zeros(q, 2 * k);
      for (int j = 0; j < k; ++j) {
        if (o.lam0) phi[j] = psi[l][j];
        if (o.lam1) phi[k + j] = psi[l][j];
      }
      std::vector<coeffs_t> w = zeros(q, 2 * k);
      for (int c = 0; c < k; ++c) {
        w[c] = q->mul(o.v0, v[l][c]);
        w[k + c] = q->mul(o.v1, v[l][c]);
      }
      alg.terms.emplace_back(std::move(phi), std::move(w));
    }
  }
  return alg;
}

BaseAlgorithm base_algorithm(const Field& q, int k, int u) {
  if ((k != 1 && k != 2 && k != 4) || (u != 1 && u != 2))
    fail(errc::unsupported_base, "(k,u) outside the base table");
  Polynomial p = k > 1 ? smallest_irreducible(q, k) : Polynomial(q);
  return base_algorithm_for(q, p, k, u);
}

std::vector<coeffs_t> base_multiply(const BaseAlgorithm& alg, const std::vector<coeffs_t>& a,
                                    const std::vector<coeffs_t>& b) {
  const Field& q = alg.q;
  std::vector<coeffs_t> out = zeros(q, alg.dim());
  for (const auto& [phi, w] : alg.terms) {
    coeffs_t m = q->mul(dot(q, phi, a), dot(q, phi, b));
    if (q->is_zero(m)) continue;
    for (int c = 0; c < alg.dim(); ++c)
      if (!q->is_zero(w[c])) out[c] = q->add(out[c], q->mul(m, w[c]));
  }
  return out;
}

std::vector<coeffs_t> residue_ring_multiply(const Field& q, const Polynomial& place_poly, int k,
                                            int u, const std::vector<coeffs_t>& a,
                                            const std::vector<coeffs_t>& b) {
  auto slice = [&](const std::vector<coeffs_t>& v, int j) {
    return Polynomial(q, std::vector<coeffs_t>(v.begin() + j * k, v.begin() + (j + 1) * k));
  };
  std::vector<Polynomial> c(u, Polynomial(q));
  for (int i = 0; i < u; ++i)
    for (int j = 0; j < u - i; ++j) {
      Polynomial prod = slice(a, i) * slice(b, j);
      if (k > 1) prod = poly_mod(prod, place_poly);
      c[i + j] = c[i + j] + prod;
    }
  std::vector<coeffs_t> out(size_t(k) * u, q->zero());
  for (int j = 0; j < u; ++j)
    for (int i = 0; i < k; ++i) out[size_t(j) * k + i] = c[j].coeff_raw(i);
  return out;
}

}  // namespace ccmul
