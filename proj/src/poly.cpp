#include "ccmul/poly.hpp"

#include <algorithm>
#include <sstream>

namespace ccmul {

namespace {

const coeffs_t& zero_of(const Field& f) {
  thread_local coeffs_t z;
  z.assign(f->k, 0);
  return z;
}

std::vector<int64_t> prime_factors(int m) {
  std::vector<int64_t> fs;
  for (int64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      fs.push_back(d);
      while (m % d == 0) m /= int(d);
    }
  }
  if (m > 1) fs.push_back(m);
  return fs;
}

Polynomial derivative(const Polynomial& f) {
  const Field& F = f.base();
  std::vector<coeffs_t> c;
  for (int i = 1; i <= f.degree(); ++i) c.push_back(F->mul_int(f.coeff_raw(i), i));
  return Polynomial(F, c);
}

}  // namespace

Polynomial::Polynomial(Field base, std::vector<coeffs_t> c)
    : base_(std::move(base)), c_(std::move(c)) {
  for (auto& v : c_) {
    if (int(v.size()) != base_->k) fail(errc::out_of_range, "coefficient length != k");
    for (auto& x : v) x = ((x % base_->p) + base_->p) % base_->p;
  }
  prune();
}

void Polynomial::prune() {
  while (!c_.empty() && base_->is_zero(c_.back())) c_.pop_back();
}

Polynomial Polynomial::constant(const FieldElement& e) {
  return Polynomial(e.field(), {e.coeffs()});
}

Polynomial Polynomial::from_indices(const Field& base, const std::vector<uint64_t>& idx) {
  std::vector<coeffs_t> c;
  c.reserve(idx.size());
  for (uint64_t i : idx) c.push_back(base->from_index(i));
  return Polynomial(base, c);
}

Polynomial Polynomial::monomial(const Field& base, int deg) {
  std::vector<coeffs_t> c(deg + 1, base->zero());
  c[deg] = base->one();
  return Polynomial(base, c);
}

const coeffs_t& Polynomial::coeff_raw(size_t i) const {
  if (i < c_.size()) return c_[i];
  return zero_of(base_);
}

FieldElement Polynomial::leading() const {
  if (is_zero()) fail(errc::division_by_zero, "leading coefficient of zero polynomial");
  return FieldElement(base_, c_.back());
}

std::vector<uint64_t> Polynomial::indices() const {
  std::vector<uint64_t> r;
  r.reserve(c_.size());
  for (const auto& v : c_) r.push_back(base_->to_index(v));
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  coeffs_t li = base_->inv(c_.back());
  std::vector<coeffs_t> c = c_;
  for (auto& v : c) v = base_->mul(v, li);
  return Polynomial(base_, c);
}

FieldElement Polynomial::eval(const FieldElement& a) const {
  require_same_field(base_, a.field(), "polynomial evaluation");
  coeffs_t acc = base_->zero();
  for (int i = degree(); i >= 0; --i) acc = base_->add(base_->mul(acc, a.coeffs()), c_[i]);
  return FieldElement(base_, acc);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_field(a.base_, b.base_, "polynomial addition");
  std::vector<coeffs_t> c(std::max(a.c_.size(), b.c_.size()), a.base_->zero());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.base_->add(a.coeff_raw(i), b.coeff_raw(i));
  return Polynomial(a.base_, c);
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  require_same_field(a.base_, b.base_, "polynomial subtraction");
  std::vector<coeffs_t> c(std::max(a.c_.size(), b.c_.size()), a.base_->zero());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.base_->sub(a.coeff_raw(i), b.coeff_raw(i));
  return Polynomial(a.base_, c);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_field(a.base_, b.base_, "polynomial multiplication");
  if (a.is_zero() || b.is_zero()) return Polynomial(a.base_);
  std::vector<coeffs_t> c(a.c_.size() + b.c_.size() - 1, a.base_->zero());
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.base_->is_zero(a.c_[i])) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      c[i + j] = a.base_->add(c[i + j], a.base_->mul(a.c_[i], b.c_[j]));
  }
  return Polynomial(a.base_, c);
}

Polynomial Polynomial::operator-() const {
  std::vector<coeffs_t> c = c_;
  for (auto& v : c) v = base_->neg(v);
  return Polynomial(base_, c);
}

Polynomial Polynomial::scaled(const FieldElement& s) const {
  require_same_field(base_, s.field(), "polynomial scaling");
  std::vector<coeffs_t> c = c_;
  for (auto& v : c) v = base_->mul(v, s.coeffs());
  return Polynomial(base_, c);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return same_field(a.base_, b.base_) && a.c_ == b.c_;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    uint64_t idx = base_->to_index(c_[i]);
    if (idx == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || idx != 1) os << idx;
    if (i > 0) {
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& f, const Polynomial& g) {
  require_same_field(f.base(), g.base(), "polynomial division");
  if (g.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
  const Field& F = f.base();
  if (f.degree() < g.degree()) return {Polynomial(F), f};
  coeffs_t lg_inv = F->inv(g.coeff_raw(g.degree()));
  std::vector<coeffs_t> rem(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) rem[i] = f.coeff_raw(i);
  int dq = f.degree() - g.degree();
  std::vector<coeffs_t> quot(dq + 1, F->zero());
  for (int d = f.degree(); d >= g.degree(); --d) {
    if (F->is_zero(rem[d])) continue;
    coeffs_t c = F->mul(rem[d], lg_inv);
    quot[d - g.degree()] = c;
    for (int j = 0; j <= g.degree(); ++j)
      rem[d - g.degree() + j] = F->sub(rem[d - g.degree() + j], F->mul(c, g.coeff_raw(j)));
  }
  rem.resize(g.degree() > 0 ? g.degree() : 0);
  return {Polynomial(F, quot), Polynomial(F, rem)};
}

Polynomial poly_mod(const Polynomial& f, const Polynomial& g) { return poly_divmod(f, g).second; }

Polynomial poly_pow(const Polynomial& f, int e) {
  Polynomial r = Polynomial::monomial(f.base(), 0), b = f;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Polynomial poly_powmod(const Polynomial& f, uint64_t e, const Polynomial& mod) {
  Polynomial r = poly_mod(Polynomial::monomial(f.base(), 0), mod);
  Polynomial b = poly_mod(f, mod);
  while (e > 0) {
    if (e & 1) r = poly_mod(r * b, mod);
    b = poly_mod(b * b, mod);
    e >>= 1;
  }
  return r;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = poly_mod(x, y);
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

Polynomial poly_inv_mod(const Polynomial& f, const Polynomial& m) {
  const Field& F = f.base();
  Polynomial r0 = m, r1 = poly_mod(f, m);
  Polynomial t0(F), t1 = Polynomial::monomial(F, 0);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    Polynomial tn = t0 - q * t1;
    r0 = r1;
    r1 = r;
    t0 = t1;
    t1 = tn;
  }
  if (r0.degree() != 0) fail(errc::division_by_zero, "element not invertible modulo m");
  return poly_mod(t0.scaled(r0.coeff(0).inv()), m);
}

std::pair<int, Polynomial> poly_valuation(const Polynomial& f, const Polynomial& p) {
  if (f.is_zero()) fail(errc::division_by_zero, "valuation of the zero polynomial");
  if (p.degree() < 1) fail(errc::out_of_range, "valuation needs a non-constant modulus");
  int e = 0;
  Polynomial r = f;
  while (true) {
    auto [q, rem] = poly_divmod(r, p);
    if (!rem.is_zero()) return {e, r};
    r = q;
    ++e;
  }
}

int compare_poly(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = a.degree(); i >= 0; --i) {
    uint64_t ia = a.base()->to_index(a.coeff_raw(i));
    uint64_t ib = b.base()->to_index(b.coeff_raw(i));
    if (ia != ib) return ia < ib ? -1 : 1;
  }
  return 0;
}

bool is_irreducible(const Polynomial& f) {
  if (!f.is_monic()) fail(errc::non_monic, "irreducibility test needs a monic polynomial");
  int m = f.degree();
  if (m < 1) fail(errc::out_of_range, "irreducibility test needs degree >= 1");
  if (m == 1) return true;
  const Field& F = f.base();
  uint64_t q = F->q();
  Polynomial x = poly_mod(Polynomial::x(F), f);

  // Frobenius chain t_j = x^(q^j) mod f.
  std::vector<Polynomial> frob;
  frob.push_back(x);
  for (int j = 1; j <= m; ++j) frob.push_back(poly_powmod(frob.back(), q, f));

  if (frob[m] != x) return false;
  for (int64_t r : prime_factors(m)) {
    Polynomial g = poly_gcd(frob[m / r] - x, f);
    if (!g.is_one()) return false;
  }
  return true;
}

std::vector<Polynomial> enumerate_irreducibles(const Field& base, int k) {
  if (k < 1) fail(errc::out_of_range, "degree must be >= 1");
  uint64_t q = base->q();
  uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > (uint64_t(1) << 26) / q) fail(errc::out_of_range, "enumeration too large");
    total *= q;
  }
  std::vector<Polynomial> out;
  for (uint64_t v = 0; v < total; ++v) {
    std::vector<coeffs_t> c(k + 1, base->zero());
    uint64_t rest = v;
    for (int i = 0; i < k; ++i) {
      c[i] = base->from_index(rest % q);
      rest /= q;
    }
    c[k] = base->one();
    Polynomial f(base, c);
    if (is_irreducible(f)) out.push_back(f);
  }
  return out;
}

Polynomial smallest_irreducible(const Field& base, int k) {
  if (k < 1) fail(errc::out_of_range, "degree must be >= 1");
  uint64_t q = base->q();
  // Scan in lexicographic value order; an irreducible of every degree exists.
  uint64_t v = 0;
  while (true) {
    std::vector<coeffs_t> c(k + 1, base->zero());
    uint64_t rest = v;
    for (int i = 0; i < k && rest > 0; ++i) {
      c[i] = base->from_index(rest % q);
      rest /= q;
    }
    if (rest != 0) fail(errc::no_irreducible_found, "scan exhausted candidate space");
    c[k] = base->one();
    Polynomial f(base, c);
    if (is_irreducible(f)) return f;
    ++v;
  }
}

ResidueRingCoords residue_coords(const Polynomial& f, const Polynomial& p, int u) {
  if (!p.is_monic()) fail(errc::non_monic, "local parameter must be monic");
  if (u < 1) fail(errc::out_of_range, "multiplicity must be >= 1");
  if (!is_irreducible(p))
    fail(errc::reducible_local_parameter, "local parameter must be irreducible");
  ResidueRingCoords rc;
  rc.k = p.degree();
  rc.u = u;
  Polynomial r = poly_mod(f, poly_pow(p, u));
  for (int j = 0; j < u; ++j) {
    auto [q, c] = poly_divmod(r, p);
    rc.coeffs.push_back(c);
    r = q;
  }
  return rc;
}

Polynomial residue_reconstruct(const ResidueRingCoords& rc, const Polynomial& p) {
  Polynomial acc(p.base());
  for (int j = rc.u - 1; j >= 0; --j) acc = acc * p + rc.coeffs[j];
  return poly_mod(acc, poly_pow(p, rc.u));
}

Polynomial eval_poly_mod(const Polynomial& f, const Polynomial& at, const Polynomial& mod) {
  Polynomial acc(f.base());
  for (int i = f.degree(); i >= 0; --i)
    acc = poly_mod(acc * at + Polynomial::constant(f.coeff(i)), mod);
  return acc;
}

Polynomial hensel_lift_root(const Polynomial& p, int u) {
  const Field& F = p.base();
  Polynomial alpha = Polynomial::x(F);
  if (u <= 1 || p.degree() == 1) {
    if (p.degree() == 1) {
      // x - a: the root is the constant a, exact at every precision.
      return Polynomial::constant(-p.coeff(0));
    }
    return alpha;
  }
  Polynomial mod = poly_pow(p, u);
  Polynomial dp = derivative(p);
  int steps = 1;
  while ((1 << steps) < u) ++steps;
  for (int it = 0; it <= steps; ++it) {
    Polynomial val = eval_poly_mod(p, alpha, mod);
    if (val.is_zero()) break;
    Polynomial dval = eval_poly_mod(dp, alpha, mod);
    alpha = poly_mod(alpha - val * poly_inv_mod(dval, mod), mod);
  }
  return alpha;
}

ResidueRingCoords unramified_digits(const Polynomial& f, const Polynomial& p, int u,
                                    const Polynomial& alpha) {
  ResidueRingCoords rc;
  rc.k = p.degree();
  rc.u = u;
  Polynomial mod = poly_pow(p, u);
  Polynomial r = poly_mod(f, mod);
  for (int j = 0; j < u; ++j) {
    Polynomial c = poly_mod(r, p);
    rc.coeffs.push_back(c);
    Polynomial lift = eval_poly_mod(c, alpha, mod);
    auto [q, rem] = poly_divmod(r - lift, p);
    if (!rem.is_zero()) fail(errc::out_of_range, "digit extraction lost exactness");
    r = q;
  }
  return rc;
}

Polynomial unramified_reconstruct(const ResidueRingCoords& rc, const Polynomial& p,
                                  const Polynomial& alpha) {
  Polynomial mod = poly_pow(p, rc.u);
  Polynomial acc(p.base());
  Polynomial pk = Polynomial::monomial(p.base(), 0);
  for (int j = 0; j < rc.u; ++j) {
    acc = poly_mod(acc + eval_poly_mod(rc.coeffs[j], alpha, mod) * pk, mod);
    pk = pk * p;
  }
  return acc;
}

}  // namespace ccmul
