#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccmul/matrix.hpp"
#include "ccmul/poly.hpp"

namespace ccmul {

// Place of the rational function field F_q(x): a monic irreducible polynomial,
// or the place at infinity (degree 1, local parameter 1/x).
struct Place {
  bool infinite = false;
  Polynomial poly;  // monic irreducible; zero polynomial for the infinite place
  int degree = 1;

  const Field& field() const { return poly.base(); }

  static Place at_infinity(const Field& f) {
    Place p{true, Polynomial(f), 1};
    return p;
  }
  static Place finite(Polynomial prime);

  std::string to_string() const { return infinite ? "inf" : "(" + poly.to_string() + ")"; }
};

int compare_place(const Place& a, const Place& b);  // infinite first, then (degree, lex)
bool operator==(const Place& a, const Place& b);
inline bool operator!=(const Place& a, const Place& b) { return !(a == b); }

struct PlaceLess {
  bool operator()(const Place& a, const Place& b) const { return compare_place(a, b) < 0; }
};

// Formal integer combination of places; zero coefficients are never stored.
class Divisor {
 public:
  void add(const Place& p, int c);
  int coeff(const Place& p) const;
  int degree() const;
  bool contains(const Place& p) const { return terms_.count(p) > 0; }
  const std::map<Place, int, PlaceLess>& terms() const { return terms_; }
  Divisor scaled(int m) const;

 private:
  std::map<Place, int, PlaceLess> terms_;
};

struct RationalFunction {
  Polynomial num;
  Polynomial den;  // monic, nonzero
  std::string to_string() const { return num.to_string() + "/" + den.to_string(); }
};

struct RRBasis {
  Divisor divisor;
  std::vector<RationalFunction> elements;
  int dim() const { return int(elements.size()); }
};

// All finite places of degree k plus, for k = 1, the infinite place first.
std::vector<Place> places_of_degree(const Field& q, int k);

// Basis of L(D) for the rational function field (genus 0):
// dim = deg D + 1 for deg D >= 0 and 0 otherwise.
RRBasis riemann_roch_basis(const Field& q, const Divisor& D);

// v_P(f); INT_MAX/2 for f = 0.
int valuation_at(const RationalFunction& f, const Place& P);

// First u coefficients of the expansion of f at P in the canonical local
// parameter (p(x) at a finite place, 1/x at infinity), taken against the
// coefficient embedding of the residue field so that expansions multiply
// coefficientwise. Throws pole_at_place if v_P(f) < 0.
ResidueRingCoords local_expansion(const RationalFunction& f, const Place& P, int u);
// Same with the Hensel root precomputed (ignored at degree-1 places).
ResidueRingCoords local_expansion(const RationalFunction& f, const Place& P, int u,
                                  const Polynomial& alpha);

// Matrix of the evaluation-with-multiplicities map on the given elements, one
// column per element; rows flattened as (place order, then t-power, then
// residue-field coordinate on 1, x, ..., x^{k-1}).
Matrix evaluation_matrix(const std::vector<RationalFunction>& elements,
                         const std::vector<std::pair<Place, int>>& plan_places);

// Class of the polynomial f in F_q[x]/(Q) = F_{q^n}.
Polynomial reduce_mod_Q(const Polynomial& f, const Place& Q);
// Value of a rational function at Q (requires den(Q) != 0).
Polynomial evaluate_at(const RationalFunction& f, const Place& Q);

}  // namespace ccmul
