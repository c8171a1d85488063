#include "ccmul/fq.hpp"

#include <algorithm>
#include <sstream>

#include "ccmul/poly.hpp"

namespace ccmul {

namespace {

int64_t pmod(int64_t a, int64_t p) {
  int64_t r = a % p;
  return r < 0 ? r + p : r;
}

// Inverse mod p by extended Euclid; a in [1, p).
int64_t pinv(int64_t a, int64_t p) {
  int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return pmod(t, p);
}

}  // namespace

bool is_prime_int(int64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

uint64_t FieldSpec::q() const {
  uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > (uint64_t(1) << 62) / uint64_t(p))
      fail(errc::out_of_range, "field order exceeds 2^62");
    r *= uint64_t(p);
  }
  return r;
}

coeffs_t FieldSpec::one() const {
  coeffs_t r(k, 0);
  r[0] = 1 % p;
  return r;
}

bool FieldSpec::is_zero(const coeffs_t& a) const {
  return std::all_of(a.begin(), a.end(), [](int64_t v) { return v == 0; });
}

bool FieldSpec::is_one(const coeffs_t& a) const { return a == one(); }

coeffs_t FieldSpec::from_index(uint64_t idx) const {
  coeffs_t r(k, 0);
  for (int i = 0; i < k; ++i) {
    r[i] = int64_t(idx % uint64_t(p));
    idx /= uint64_t(p);
  }
  if (idx != 0) fail(errc::out_of_range, "element index out of range");
  return r;
}

uint64_t FieldSpec::to_index(const coeffs_t& a) const {
  uint64_t r = 0;
  for (int i = k - 1; i >= 0; --i) r = r * uint64_t(p) + uint64_t(a[i]);
  return r;
}

coeffs_t FieldSpec::add(const coeffs_t& a, const coeffs_t& b) const {
  coeffs_t r(k);
  for (int i = 0; i < k; ++i) {
    r[i] = a[i] + b[i];
    if (r[i] >= p) r[i] -= p;
  }
  return r;
}

coeffs_t FieldSpec::sub(const coeffs_t& a, const coeffs_t& b) const {
  coeffs_t r(k);
  for (int i = 0; i < k; ++i) {
    r[i] = a[i] - b[i];
    if (r[i] < 0) r[i] += p;
  }
  return r;
}

coeffs_t FieldSpec::neg(const coeffs_t& a) const {
  coeffs_t r(k);
  for (int i = 0; i < k; ++i) r[i] = a[i] == 0 ? 0 : p - a[i];
  return r;
}

coeffs_t FieldSpec::mul(const coeffs_t& a, const coeffs_t& b) const {
  if (k == 1) return {pmod(a[0] * b[0], p)};
  // Schoolbook product, then reduce modulo the defining polynomial.
  std::vector<int64_t> prod(2 * k - 1, 0);
  for (int i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < k; ++j) prod[i + j] = pmod(prod[i + j] + a[i] * b[j], p);
  }
  for (int d = 2 * k - 2; d >= k; --d) {
    int64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int j = 0; j < k; ++j) prod[d - k + j] = pmod(prod[d - k + j] - c * modulus[j], p);
  }
  prod.resize(k);
  return prod;
}

coeffs_t FieldSpec::inv(const coeffs_t& a) const {
  if (is_zero(a)) fail(errc::division_by_zero, "inverse of zero field element");
  if (k == 1) return {pinv(a[0], p)};
  // Extended Euclid in F_p[x] between a and the modulus.
  auto deg = [](const std::vector<int64_t>& v) {
    for (int i = int(v.size()) - 1; i >= 0; --i)
      if (v[i] != 0) return i;
    return -1;
  };
  std::vector<int64_t> r0 = modulus, r1(a.begin(), a.end());
  std::vector<int64_t> t0(k + 1, 0), t1(k + 1, 0);
  t1[0] = 1;
  while (deg(r1) >= 0) {
    int dr0 = deg(r0), dr1 = deg(r1);
    if (dr0 < dr1) {
      std::swap(r0, r1);
      std::swap(t0, t1);
      continue;
    }
    int64_t f = pmod(r0[dr0] * pinv(r1[dr1], p), p);
    int shift = dr0 - dr1;
    for (int i = 0; i <= dr1; ++i) r0[i + shift] = pmod(r0[i + shift] - f * r1[i], p);
    for (int i = 0; i + shift <= k; ++i) t0[i + shift] = pmod(t0[i + shift] - f * t1[i], p);
  }
  // r0 is now a nonzero constant gcd (modulus irreducible).
  int64_t c = pinv(r0[0], p);
  coeffs_t out(k, 0);
  for (int i = 0; i < k; ++i) out[i] = pmod(t0[i] * c, p);
  return out;
}

coeffs_t FieldSpec::pow(const coeffs_t& a, uint64_t e) const {
  coeffs_t base = a, r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

coeffs_t FieldSpec::mul_int(const coeffs_t& a, int64_t s) const {
  int64_t sm = pmod(s, p);
  coeffs_t r(k);
  for (int i = 0; i < k; ++i) r[i] = pmod(a[i] * sm, p);
  return r;
}

std::string FieldSpec::to_string(const coeffs_t& a) const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < k; ++i) os << (i ? "," : "") << a[i];
  os << "]";
  return os.str();
}

Field make_field(int64_t p, int k, std::optional<coeffs_t> modulus_fp) {
  if (!is_prime_int(p))
    fail(errc::non_prime_characteristic, std::to_string(p) + " is not prime");
  if (k < 1) fail(errc::out_of_range, "extension degree must be >= 1");

  auto spec = std::make_shared<FieldSpec>();
  spec->p = p;
  spec->k = k;
  if (k == 1) {
    if (modulus_fp && !modulus_fp->empty())
      fail(errc::out_of_range, "prime field takes no modulus");
    return spec;
  }

  Field fp = make_field(p, 1);
  if (modulus_fp) {
    coeffs_t m = *modulus_fp;
    if (int(m.size()) != k + 1 || m[k] % p != 1)
      fail(errc::non_monic, "modulus must be monic of degree k");
    for (auto& c : m) c = ((c % p) + p) % p;
    std::vector<coeffs_t> pc;
    pc.reserve(m.size());
    for (int64_t c : m) pc.push_back({c});
    Polynomial mp(fp, pc);
    if (!is_irreducible(mp)) fail(errc::reducible_modulus, "modulus is reducible over F_p");
    spec->modulus = m;
  } else {
    Polynomial mp = smallest_irreducible(fp, k);
    coeffs_t m(k + 1, 0);
    for (int i = 0; i <= k; ++i) m[i] = mp.coeff_raw(i)[0];
    spec->modulus = m;
  }
  return spec;
}

bool same_field(const Field& a, const Field& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->p == b->p && a->k == b->k && a->modulus == b->modulus;
}

Field make_field_from_order(uint64_t q) {
  if (q < 2) fail(errc::non_prime_characteristic, "field order must be >= 2");
  for (int64_t p = 2; uint64_t(p) * uint64_t(p) <= q; ++p) {
    if (q % uint64_t(p) == 0) {
      int k = 0;
      uint64_t r = q;
      while (r % uint64_t(p) == 0) {
        r /= uint64_t(p);
        ++k;
      }
      if (r != 1)
        fail(errc::non_prime_characteristic, std::to_string(q) + " is not a prime power");
      return make_field(p, k);
    }
  }
  return make_field(int64_t(q), 1);
}

void require_same_field(const Field& a, const Field& b, const char* where) {
  if (!same_field(a, b)) fail(errc::mixed_fields, where);
}

FieldElement::FieldElement(Field f, coeffs_t c) : f_(std::move(f)), c_(std::move(c)) {
  if (int(c_.size()) != f_->k) fail(errc::out_of_range, "coefficient vector length != k");
  for (auto& v : c_) v = ((v % f_->p) + f_->p) % f_->p;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.f_, b.f_, "field element addition");
  return FieldElement(a.f_, a.f_->add(a.c_, b.c_));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.f_, b.f_, "field element subtraction");
  return FieldElement(a.f_, a.f_->sub(a.c_, b.c_));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.f_, b.f_, "field element multiplication");
  return FieldElement(a.f_, a.f_->mul(a.c_, b.c_));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.f_, b.f_, "field element division");
  return FieldElement(a.f_, a.f_->mul(a.c_, b.f_->inv(b.c_)));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return same_field(a.f_, b.f_) && a.c_ == b.c_;
}

}  // namespace ccmul
