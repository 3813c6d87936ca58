#include "twogal/gf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twogal {
namespace {

// Dense polynomials over GF(p) used only for modulus search and bootstrap
// arithmetic; c[i] is the coefficient of t^i.
using PolyP = std::vector<uint32_t>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t ipow_mod(uint32_t b, uint32_t e, uint32_t p) {
  uint64_t r = 1, x = b % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(r);
}

uint32_t intinv(uint32_t c, uint32_t p) { return ipow_mod(c % p, p - 2, p); }

PolyP pmul(const PolyP& a, const PolyP& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<uint32_t>((c[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p);
  }
  trim(c);
  return c;
}

// a mod m for monic m
PolyP pmod(PolyP a, const PolyP& m, uint32_t p) {
  trim(a);
  while (a.size() >= m.size()) {
    uint32_t c = a.back();
    size_t shift = a.size() - m.size();
    if (c) {
      for (size_t j = 0; j + 1 < m.size(); ++j)
        a[shift + j] = (a[shift + j] + c * (p - m[j])) % p;
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

PolyP pmonic(PolyP a, uint32_t p) {
  trim(a);
  if (a.empty()) return a;
  uint32_t s = intinv(a.back(), p);
  for (auto& x : a) x = static_cast<uint32_t>(static_cast<uint64_t>(x) * s % p);
  return a;
}

PolyP pgcd(PolyP a, PolyP b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    b = pmonic(b, p);
    PolyP r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(a, p);
}

PolyP psub(PolyP a, const PolyP& b, uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

PolyP ppow_mod(PolyP base, uint64_t e, const PolyP& m, uint32_t p) {
  PolyP r{1};
  base = pmod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = pmod(pmul(r, base, p), m, p);
    base = pmod(pmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
  std::vector<uint32_t> fs;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

bool irreducible(const PolyP& m, uint32_t p) {
  const uint32_t n = static_cast<uint32_t>(m.size()) - 1;
  if (n == 0) return false;
  if (m[0] == 0) return n == 1;  // t divides; only t itself passes
  if (n == 1) return true;
  const PolyP tres = pmod(PolyP{0, 1}, m, p);
  PolyP u = tres;
  std::vector<PolyP> at_depth(n + 1);
  for (uint32_t i = 1; i <= n; ++i) {
    u = ppow_mod(u, p, m, p);
    at_depth[i] = u;
  }
  if (at_depth[n] != tres) return false;
  for (uint32_t f : prime_factors(n)) {
    PolyP d = psub(at_depth[n / f], tres, p);
    PolyP g = pgcd(m, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

uint64_t gcd64(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// inverse of a modulo m, for gcd(a, m) = 1
uint64_t modinv64(uint64_t a, uint64_t m) {
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

}  // namespace

std::vector<uint8_t> least_irreducible(uint32_t p, uint32_t n) {
  std::vector<uint8_t> a(n, 0);
  for (;;) {
    PolyP m(n + 1, 0);
    for (uint32_t i = 0; i < n; ++i) m[i] = a[i];
    m[n] = 1;
    if (irreducible(m, p)) return a;
    // odometer with a0 most significant, so the first hit is least
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && a[i] == p - 1) a[i--] = 0;
    if (i < 0) fail(ErrKind::Internal, "no irreducible polynomial found");
    ++a[i];
  }
}

std::shared_ptr<FieldCtx> FieldCtx::build_ambient(uint32_t p,
                                                  const std::vector<uint32_t>& degrees,
                                                  const FieldOpts& opts) {
  if (p < 2) fail(ErrKind::InvalidInput, "characteristic must be a prime");
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) fail(ErrKind::InvalidInput, "characteristic " + std::to_string(p) + " is not prime");
  if (degrees.empty()) fail(ErrKind::InvalidInput, "no field degrees requested");
  uint64_t n = 1;
  for (uint32_t d : degrees) {
    if (d == 0) fail(ErrKind::InvalidInput, "field degree 0 requested");
    n = std::lcm(n, static_cast<uint64_t>(d));
    if (n > kMaxDeg) break;
  }
  const uint32_t bits = std::min<uint32_t>(opts.ambient_bits, 30);
  uint64_t sz = 1;
  bool too_big = n > kMaxDeg;
  if (!too_big) {
    for (uint64_t i = 0; i < n; ++i) {
      sz *= p;
      if (sz > (1ull << bits)) {
        too_big = true;
        break;
      }
    }
  }
  if (too_big)
    fail(ErrKind::AmbientTooLarge,
         "ambient field GF(" + std::to_string(p) + "^" + std::to_string(n) +
             ") exceeds the size cap 2^" + std::to_string(bits) +
             "; raise --cap if this is intended");
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->init(p, static_cast<uint32_t>(n), opts);
  return ctx;
}

void FieldCtx::init(uint32_t p, uint32_t n, const FieldOpts& opts) {
  p_ = p;
  n_ = n;
  gen_name_ = opts.gen_name;
  pows_.resize(n + 1);
  pows_[0] = 1;
  for (uint32_t i = 1; i <= n; ++i) pows_[i] = pows_[i - 1] * p;
  size_ = pows_[n];
  m_ = size_ - 1;
  mod_ = least_irreducible(p, n);
  one_ = from_int(1);
  if (n >= 2) {
    Digits d{};
    d[1] = 1;
    gen_ = pack(d);
  } else {
    gen_ = from_int(p - mod_[0] % p);
  }

  if (p_ != 2 && static_cast<uint64_t>(size_) * size_ <= (1u << 20)) {
    addt_.resize(static_cast<size_t>(size_) * size_);
    for (uint32_t a = 0; a < size_; ++a) {
      Digits da{}, db{};
      unpack({a}, da);
      for (uint32_t b = 0; b < size_; ++b) {
        unpack({b}, db);
        Digits s{};
        for (uint32_t i = 0; i < n_; ++i) s[i] = static_cast<uint8_t>((da[i] + db[i]) % p_);
        addt_[static_cast<size_t>(a) * size_ + b] = pack(s).v;
      }
    }
  }

  if (size_ <= (1u << 20)) {
    // least primitive element in canonical order
    std::vector<uint32_t> fs = prime_factors(m_);
    FieldElem gamma{0};
    for (uint32_t v = 1; v < size_; ++v) {
      FieldElem cand{v};
      bool prim = true;
      for (uint32_t f : fs) {
        if (pow_noexp(cand, m_ / f) == one_) {
          prim = false;
          break;
        }
      }
      if (prim) {
        gamma = cand;
        break;
      }
    }
    if (gamma.v == 0) fail(ErrKind::Internal, "no primitive element found");
    exp_.resize(m_);
    log_.assign(size_, UINT32_MAX);
    FieldElem cur = one_;
    for (uint32_t i = 0; i < m_; ++i) {
      exp_[i] = cur.v;
      if (log_[cur.v] != UINT32_MAX) fail(ErrKind::Internal, "primitive element has short order");
      log_[cur.v] = i;
      cur = mul_poly(cur, gamma);
    }
    if (cur != one_) fail(ErrKind::Internal, "exp table does not close");
    frob1_.resize(size_);
    for (uint32_t v = 0; v < size_; ++v) frob1_[v] = pow({v}, p_).v;
  }
}

void FieldCtx::unpack(FieldElem a, Digits& out) const {
  uint32_t v = a.v;
  for (int i = static_cast<int>(n_) - 1; i >= 0; --i) {
    out[i] = static_cast<uint8_t>(v % p_);
    v /= p_;
  }
}

FieldElem FieldCtx::pack(const Digits& d) const {
  uint32_t v = 0;
  for (uint32_t i = 0; i < n_; ++i) v = v * p_ + d[i];
  return {v};
}

FieldElem FieldCtx::from_int(uint64_t k) const {
  Digits d{};
  d[0] = static_cast<uint8_t>(k % p_);
  return pack(d);
}

FieldElem FieldCtx::from_digits(const std::vector<uint32_t>& ds) const {
  if (ds.size() > n_) fail(ErrKind::InvalidInput, "digit vector longer than field degree");
  Digits d{};
  for (size_t i = 0; i < ds.size(); ++i) d[i] = static_cast<uint8_t>(ds[i] % p_);
  return pack(d);
}

std::vector<uint32_t> FieldCtx::to_digit_vec(FieldElem a) const {
  Digits d{};
  unpack(a, d);
  return std::vector<uint32_t>(d.begin(), d.begin() + n_);
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
  if (p_ == 2) return {a.v ^ b.v};
  if (!addt_.empty()) return {addt_[static_cast<size_t>(a.v) * size_ + b.v]};
  Digits da{}, db{}, s{};
  unpack(a, da);
  unpack(b, db);
  for (uint32_t i = 0; i < n_; ++i) s[i] = static_cast<uint8_t>((da[i] + db[i]) % p_);
  return pack(s);
}

FieldElem FieldCtx::neg(FieldElem a) const {
  if (p_ == 2) return a;
  Digits d{}, s{};
  unpack(a, d);
  for (uint32_t i = 0; i < n_; ++i) s[i] = static_cast<uint8_t>((p_ - d[i]) % p_);
  return pack(s);
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  if (a.v == 0 || b.v == 0) return {0};
  if (!exp_.empty())
    return {exp_[(static_cast<uint64_t>(log_[a.v]) + log_[b.v]) % m_]};
  return mul_poly(a, b);
}

FieldElem FieldCtx::mul_ref(FieldElem a, FieldElem b) const { return mul_poly(a, b); }

FieldElem FieldCtx::mul_poly(FieldElem a, FieldElem b) const {
  Digits da{}, db{};
  unpack(a, da);
  unpack(b, db);
  std::array<uint64_t, 2 * kMaxDeg> c{};
  for (uint32_t i = 0; i < n_; ++i) {
    if (!da[i]) continue;
    for (uint32_t j = 0; j < n_; ++j) c[i + j] += static_cast<uint64_t>(da[i]) * db[j];
  }
  for (int k = 2 * static_cast<int>(n_) - 2; k >= static_cast<int>(n_); --k) {
    uint64_t cv = c[k] % p_;
    c[k] = 0;
    if (cv) {
      for (uint32_t j = 0; j < n_; ++j)
        c[k - n_ + j] += cv * ((p_ - mod_[j]) % p_);
    }
  }
  Digits s{};
  for (uint32_t i = 0; i < n_; ++i) s[i] = static_cast<uint8_t>(c[i] % p_);
  return pack(s);
}

FieldElem FieldCtx::pow_noexp(FieldElem a, uint64_t e) const {
  FieldElem r = one_, x = a;
  while (e) {
    if (e & 1) r = mul_poly(r, x);
    x = mul_poly(x, x);
    e >>= 1;
  }
  return r;
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a.v == 0) fail(ErrKind::InvalidInput, "inverse of zero");
  if (!exp_.empty()) return {exp_[(m_ - log_[a.v]) % m_]};
  return pow_noexp(a, m_ - 1);
}

FieldElem FieldCtx::div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

FieldElem FieldCtx::pow(FieldElem a, uint64_t e) const {
  if (a.v == 0) return e == 0 ? one_ : FieldElem{0};
  uint64_t r = e % m_;
  if (!exp_.empty()) return {exp_[static_cast<uint64_t>(log_[a.v]) * r % m_]};
  return pow_noexp(a, r);
}

FieldElem FieldCtx::frobenius(FieldElem a, uint32_t d) const {
  d %= n_;
  if (!frob1_.empty()) {
    uint32_t v = a.v;
    for (uint32_t i = 0; i < d; ++i) v = frob1_[v];
    return {v};
  }
  uint64_t e = 1;
  for (uint32_t i = 0; i < d; ++i) e *= p_;
  return pow(a, e);
}

bool FieldCtx::in_subfield(FieldElem a, uint32_t d) const {
  if (d == 0 || n_ % d != 0)
    fail(ErrKind::InvalidInput, "degree " + std::to_string(d) + " is not a divisor of " + std::to_string(n_));
  return frobenius(a, d) == a;
}

const std::vector<FieldElem>& FieldCtx::subfield_elements(uint32_t d) const {
  auto it = subfield_cache_.find(d);
  if (it != subfield_cache_.end()) return it->second;
  std::vector<FieldElem> out;
  for (uint32_t v = 0; v < size_; ++v)
    if (in_subfield({v}, d)) out.push_back({v});
  return subfield_cache_.emplace(d, std::move(out)).first->second;
}

std::vector<FieldElem> FieldCtx::roots_of_unity(uint64_t n) const {
  return solve_power(n, one_);
}

FieldElem FieldCtx::element_of_order(uint32_t n) const {
  if (n == 0 || m_ % n != 0)
    fail(ErrKind::InvalidInput, "the unit group has no element of order " + std::to_string(n));
  std::vector<uint32_t> pf;
  uint32_t m = n;
  for (uint32_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      pf.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) pf.push_back(m);
  bool found = false;
  FieldElem best{0};
  for (FieldElem e : roots_of_unity(n)) {
    bool exact = true;
    for (uint32_t q : pf)
      if (pow(e, n / q) == one_) {
        exact = false;
        break;
      }
    if (exact && (!found || e < best)) {
      best = e;
      found = true;
    }
  }
  if (!found) fail(ErrKind::Internal, "no exact-order root among the roots of unity");
  return best;
}

std::vector<FieldElem> FieldCtx::solve_power(uint64_t n, FieldElem c) const {
  std::vector<FieldElem> out;
  if (n == 0) {
    if (c == one_)
      for (uint32_t v = 0; v < size_; ++v) out.push_back({v});
    return out;
  }
  if (c.v == 0) return {FieldElem{0}};
  if (exp_.empty()) return solve_power_scan_serial(n, c);
  uint64_t r = n % m_;
  if (r == 0) {
    if (c == one_)
      for (uint32_t v = 1; v < size_; ++v) out.push_back({v});
    return out;
  }
  uint64_t lc = log_[c.v];
  uint64_t g = gcd64(r, m_);
  if (lc % g != 0) return out;
  uint64_t m1 = m_ / g;
  uint64_t x0 = (lc / g) % m1 * modinv64((r / g) % m1, m1) % m1;
  for (uint64_t k = 0; k < g; ++k) out.push_back({exp_[(x0 + k * m1) % m_]});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FieldElem> FieldCtx::solve_power_scan_serial(uint64_t n, FieldElem c) const {
  std::vector<FieldElem> out;
  for (uint32_t v = 0; v < size_; ++v)
    if (pow({v}, n) == c) out.push_back({v});
  return out;
}

std::vector<FieldElem> FieldCtx::solve_power_scan_parallel(uint64_t n, FieldElem c) const {
  std::vector<uint8_t> hit(size_, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int64_t v = 0; v < static_cast<int64_t>(size_); ++v)
    hit[v] = pow({static_cast<uint32_t>(v)}, n) == c;
  std::vector<FieldElem> out;
  for (uint32_t v = 0; v < size_; ++v)
    if (hit[v]) out.push_back({v});
  return out;
}

FieldElem FieldCtx::eval_additive(const AdditivePoly& L, FieldElem x) const {
  FieldElem acc{0};
  for (const auto& t : L) acc = add(acc, mul(t.coeff, frobenius(x, t.pexp)));
  return acc;
}

std::vector<FieldElem> FieldCtx::solve_additive(const AdditivePoly& L, FieldElem c) const {
  const uint32_t n = n_;
  // matrix of L in the digit basis (g^0 .. g^{n-1}); column j = L(g^j)
  std::vector<std::vector<uint32_t>> a(n, std::vector<uint32_t>(n + 1, 0));
  for (uint32_t j = 0; j < n; ++j) {
    FieldElem bj = pow(gen_, j);
    Digits d{};
    unpack(eval_additive(L, bj), d);
    for (uint32_t i = 0; i < n; ++i) a[i][j] = d[i];
  }
  {
    Digits d{};
    unpack(c, d);
    for (uint32_t i = 0; i < n; ++i) a[i][n] = d[i];
  }
  std::vector<int> pivot_of_col(n, -1);
  uint32_t row = 0;
  for (uint32_t col = 0; col < n && row < n; ++col) {
    uint32_t pr = row;
    while (pr < n && a[pr][col] == 0) ++pr;
    if (pr == n) continue;
    std::swap(a[pr], a[row]);
    uint32_t s = intinv(a[row][col], p_);
    for (uint32_t j = col; j <= n; ++j)
      a[row][j] = static_cast<uint32_t>(static_cast<uint64_t>(a[row][j]) * s % p_);
    for (uint32_t r2 = 0; r2 < n; ++r2) {
      if (r2 == row || a[r2][col] == 0) continue;
      uint32_t f = a[r2][col];
      for (uint32_t j = col; j <= n; ++j)
        a[r2][j] = static_cast<uint32_t>(
            (a[r2][j] + static_cast<uint64_t>(p_ - f) * a[row][j]) % p_);
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  for (uint32_t r2 = row; r2 < n; ++r2)
    if (a[r2][n] != 0) return {};
  std::vector<uint32_t> part(n, 0);
  std::vector<uint32_t> free_cols;
  for (uint32_t col = 0; col < n; ++col) {
    if (pivot_of_col[col] >= 0)
      part[col] = a[pivot_of_col[col]][n];
    else
      free_cols.push_back(col);
  }
  std::vector<std::vector<uint32_t>> kernel;
  for (uint32_t fc : free_cols) {
    std::vector<uint32_t> k(n, 0);
    k[fc] = 1;
    for (uint32_t col = 0; col < n; ++col)
      if (pivot_of_col[col] >= 0)
        k[col] = (p_ - a[pivot_of_col[col]][fc] % p_) % p_;
    kernel.push_back(std::move(k));
  }
  std::vector<FieldElem> out;
  std::vector<uint32_t> combo(kernel.size(), 0);
  for (;;) {
    std::vector<uint32_t> x = part;
    for (size_t t = 0; t < kernel.size(); ++t) {
      if (!combo[t]) continue;
      for (uint32_t i = 0; i < n; ++i)
        x[i] = (x[i] + combo[t] * kernel[t][i]) % p_;
    }
    Digits d{};
    for (uint32_t i = 0; i < n; ++i) d[i] = static_cast<uint8_t>(x[i]);
    out.push_back(pack(d));
    size_t t = 0;
    while (t < combo.size() && combo[t] == p_ - 1) combo[t++] = 0;
    if (t == combo.size()) break;
    ++combo[t];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string FieldCtx::to_string(FieldElem a) const {
  Digits d{};
  unpack(a, d);
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(n_) - 1; i >= 0; --i) {
    if (!d[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << static_cast<uint32_t>(d[i]);
    } else {
      if (d[i] != 1) os << static_cast<uint32_t>(d[i]) << "*";
      os << gen_name_;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace twogal
