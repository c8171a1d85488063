#pragma once

#include <utility>
#include <vector>

#include "ccmul/poly.hpp"

namespace ccmul {

// Symmetric bilinear scheme for the full product of two k-term polynomials
// over F_q: shared input forms F (r x k) and reconstruction R ((2k-1) x r)
// with product coefficients c = R * m where m_l = F_l(a) * F_l(b).
struct MulScheme {
  int k = 1;
  std::vector<std::vector<coeffs_t>> forms;
  std::vector<std::vector<coeffs_t>> recon;
  int rank() const { return int(forms.size()); }
};

// Recursive Karatsuba scheme; k must be a power of two (1, 2, 4 here).
// Ranks 1, 3, 9.
MulScheme karatsuba_scheme(const Field& q, int k);

// Verified symmetric multiplication algorithm for F_{q^k}[t]/(t^u) over F_q.
// Coordinates are flattened by (t-power, then residue-field coordinate on
// 1, x, ..., x^{k-1} mod the place polynomial), matching the row convention
// of evaluation_matrix.
struct BaseAlgorithm {
  Field q;
  int k = 1;
  int u = 1;
  Polynomial place_poly;  // zero polynomial when k == 1
  std::vector<std::pair<std::vector<coeffs_t>, std::vector<coeffs_t>>> terms;  // (phi, w)
  int rank() const { return int(terms.size()); }
  int dim() const { return k * u; }
};

// Algorithm for the residue ring at a specific place polynomial (zero
// polynomial allowed iff k == 1). Supported table: k in {1,2,4}, u in {1,2},
// ranks mu(k) * Mhat(u) with mu = 1/3/9 and Mhat(2) = 3.
BaseAlgorithm base_algorithm_for(const Field& q, const Polynomial& place_poly, int k, int u);

// Table entry with the canonical (lexicographically smallest) modulus.
BaseAlgorithm base_algorithm(const Field& q, int k, int u);

// Applies the bilinear terms; coordinate vectors of length k*u.
std::vector<coeffs_t> base_multiply(const BaseAlgorithm& alg, const std::vector<coeffs_t>& a,
                                    const std::vector<coeffs_t>& b);

// Schoolbook product in F_q[x]/(P)[t]/(t^u); the independent oracle.
std::vector<coeffs_t> residue_ring_multiply(const Field& q, const Polynomial& place_poly, int k,
                                            int u, const std::vector<coeffs_t>& a,
                                            const std::vector<coeffs_t>& b);

}  // namespace ccmul
