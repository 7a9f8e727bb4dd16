#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latticeforge/error.hpp"
#include "latticeforge/util.hpp"

namespace latticeforge {

// Finite field F_{Q^m} = base[X]/(modulus), or F_p when there is no base.
// Elements are codes: sum of digit_i * Q^i where digit_i is the base code of
// the coefficient of X^i.  Base elements keep their code after embedding.
class GaloisField {
 public:
  using Elem = std::uint32_t;
  using Poly = std::vector<Elem>;  // low to high

  static constexpr std::uint32_t kMaxSize = 1u << 24;

  static std::shared_ptr<const GaloisField> prime(std::uint32_t p) {
    if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (p > kMaxSize) throw Error(Errc::TableTooLarge, "prime field too large");
    auto f = std::shared_ptr<GaloisField>(new GaloisField());
    f->p_ = p;
    f->m_ = 1;
    f->size_ = p;
    f->abs_degree_ = 1;
    f->build_tables();
    return f;
  }

  static std::shared_ptr<const GaloisField> extension(std::shared_ptr<const GaloisField> base, Poly modulus);

  // F_{p^e} with the least monic irreducible modulus (coefficients read as a
  // base-p number, constant term lowest).
  static std::shared_ptr<const GaloisField> prime_power(std::uint32_t p, unsigned e);

  std::uint32_t size() const { return size_; }
  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  unsigned absolute_degree() const { return abs_degree_; }
  const std::shared_ptr<const GaloisField>& base() const { return base_; }
  const Poly& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const {
    if (!base_) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    const std::uint32_t Q = base_->size();
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
      r += base_->add(a % Q, b % Q) * scale;
      a /= Q;
      b /= Q;
      scale *= Q;
    }
    return r;
  }

  Elem neg(Elem a) const {
    if (!base_) return a == 0 ? 0 : p_ - a;
    const std::uint32_t Q = base_->size();
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
      r += base_->neg(a % Q) * scale;
      a /= Q;
      scale *= Q;
    }
    return r;
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!base_) return static_cast<Elem>((std::uint64_t(a) * b) % p_);
    std::uint64_t s = std::uint64_t(log_[a]) + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw Error(Errc::NonInvertibleImage, "inverse of zero");
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : size_ - 1 - l];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    std::uint64_t l = (std::uint64_t(log_[a]) * (k % (size_ - 1))) % (size_ - 1);
    return exp_[l];
  }

  Elem generator() const { return gen_; }
  std::uint32_t log(Elem a) const {
    if (a == 0) throw Error(Errc::NonInvertibleImage, "log of zero");
    return log_[a];
  }
  Elem exp(std::uint64_t k) const { return exp_[k % (size_ - 1)]; }

  bool is_square(Elem a) const {
    if (a == 0 || p_ == 2) return true;
    return log_[a] % 2 == 0;
  }

  std::optional<Elem> sqrt(Elem a) const {
    if (a == 0) return Elem{0};
    if (p_ == 2) {
      std::uint32_t l = log_[a];
      // size-1 is odd in characteristic 2
      std::uint32_t n = size_ - 1;
      std::uint32_t half = (l % 2 == 0) ? l / 2 : (l + n) / 2;
      return exp_[half];
    }
    if (log_[a] % 2 != 0) return std::nullopt;
    return exp_[log_[a] / 2];
  }

  // absolute trace to the prime field; the result is a code below p
  Elem trace(Elem a) const {
    Elem s = 0, x = a;
    for (unsigned k = 0; k < abs_degree_; ++k) {
      s = add(s, x);
      x = pow(x, p_);
    }
    return s;
  }

  std::vector<Elem> digits(Elem a) const {
    std::vector<Elem> d(m_);
    const std::uint32_t Q = base_ ? base_->size() : p_;
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = base_ ? a % Q : a;
      if (base_) a /= Q;
    }
    return d;
  }

  Elem from_digits(const std::vector<Elem>& d) const {
    if (!base_) return d.empty() ? 0 : d[0] % p_;
    const std::uint32_t Q = base_->size();
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < m_ && i < d.size(); ++i) {
      r += d[i] * scale;
      scale *= Q;
    }
    return r;
  }

  // multiplication by polynomial arithmetic, used before tables exist
  Elem slow_mul(Elem a, Elem b) const;

 private:
  GaloisField() = default;
  void build_tables();

  std::uint32_t p_ = 0;
  unsigned m_ = 1;
  unsigned abs_degree_ = 1;
  std::uint32_t size_ = 0;
  std::shared_ptr<const GaloisField> base_;
  Poly modulus_;
  Elem gen_ = 0;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

namespace poly {

using Elem = GaloisField::Elem;
using Poly = GaloisField::Poly;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly add(const GaloisField& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

inline Poly sub(const GaloisField& F, const Poly& a, const Poly& b) {
  Poly nb(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) nb[i] = F.neg(b[i]);
  return add(F, a, nb);
}

inline Poly mul(const GaloisField& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

// remainder of a modulo f (f nonzero)
inline Poly rem(const GaloisField& F, Poly a, const Poly& f) {
  trim(a);
  const int df = deg(f);
  const Elem lead_inv = F.inv(f.back());
  while (deg(a) >= df) {
    const int shift = deg(a) - df;
    const Elem coef = F.mul(a.back(), lead_inv);
    for (int i = 0; i <= df; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(coef, f[i]));
    trim(a);
  }
  return a;
}

inline Poly gcd(const GaloisField& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Elem li = F.inv(a.back());
    for (auto& x : a) x = F.mul(x, li);
  }
  return a;
}

inline Poly powmod(const GaloisField& F, Poly base, std::uint64_t k, const Poly& f) {
  Poly r{1};
  base = rem(F, base, f);
  while (k) {
    if (k & 1) r = rem(F, mul(F, r, base), f);
    base = rem(F, mul(F, base, base), f);
    k >>= 1;
  }
  return r;
}

inline Elem eval(const GaloisField& F, const Poly& f, Elem x) {
  Elem r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
  return r;
}

inline bool is_irreducible(const GaloisField& F, Poly f) {
  trim(f);
  const int d = deg(f);
  if (d < 1) return false;
  if (d == 1) return true;
  Poly x{0, 1};
  Poly h = x;
  for (int i = 1; i <= d / 2; ++i) {
    h = powmod(F, h, F.size(), f);
    Poly g = gcd(F, f, sub(F, h, x));
    if (deg(g) > 0) return false;
  }
  return true;
}

inline std::string format(const Poly& f, char var) {
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || f[i] != 1) out += std::to_string(f[i]);
    if (i > 0) {
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace poly

inline GaloisField::Elem GaloisField::slow_mul(Elem a, Elem b) const {
  if (!base_) return static_cast<Elem>((std::uint64_t(a) * b) % p_);
  const GaloisField& B = *base_;
  Poly pa = digits(a), pb = digits(b);
  poly::trim(pa);
  poly::trim(pb);
  Poly r = poly::rem(B, poly::mul(B, pa, pb), modulus_);
  return from_digits(r);
}

inline void GaloisField::build_tables() {
  const std::uint32_t n = size_ - 1;
  auto slow_pow = [&](Elem a, std::uint64_t k) {
    Elem r = 1;
    while (k) {
      if (k & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return r;
  };
  const auto divisors = prime_divisors(n);
  gen_ = 0;
  for (Elem g = 1; g < size_; ++g) {
    bool ok = true;
    for (auto r : divisors)
      if (slow_pow(g, n / r) == 1) {
        ok = false;
        break;
      }
    if (ok || n == 1) {
      gen_ = g;
      break;
    }
  }
  exp_.assign(n, 0);
  log_.assign(size_, 0);
  Elem x = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    exp_[k] = x;
    log_[x] = k;
    x = slow_mul(x, gen_);
  }
}

inline std::shared_ptr<const GaloisField> GaloisField::extension(std::shared_ptr<const GaloisField> base, Poly modulus) {
  poly::trim(modulus);
  const int d = poly::deg(modulus);
  if (d < 1) throw Error(Errc::Reducible, "modulus of degree < 1");
  if (modulus.back() != 1) throw Error(Errc::MalformedInput, "modulus must be monic");
  if (!poly::is_irreducible(*base, modulus)) throw Error(Errc::Reducible, "modulus " + poly::format(modulus, 'X') + " is reducible");
  std::uint64_t sz = ipow(base->size(), static_cast<unsigned>(d));
  if (sz > kMaxSize) throw Error(Errc::TableTooLarge, "field of size " + std::to_string(sz) + " exceeds table limit");
  auto f = std::shared_ptr<GaloisField>(new GaloisField());
  f->p_ = base->characteristic();
  f->m_ = static_cast<unsigned>(d);
  f->abs_degree_ = base->absolute_degree() * f->m_;
  f->size_ = static_cast<std::uint32_t>(sz);
  f->base_ = std::move(base);
  f->modulus_ = std::move(modulus);
  f->build_tables();
  return f;
}

inline std::shared_ptr<const GaloisField> GaloisField::prime_power(std::uint32_t p, unsigned e) {
  auto fp = prime(p);
  if (e == 1) return fp;
  if (e == 0) throw Error(Errc::MalformedInput, "exponent must be positive");
  const std::uint64_t count = ipow(p, e);
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f(e + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < e; ++i) {
      f[i] = static_cast<Elem>(c % p);
      c /= p;
    }
    f[e] = 1;
    if (poly::is_irreducible(*fp, f)) return extension(fp, f);
  }
  throw Error(Errc::Reducible, "no irreducible polynomial found");
}

// Exponent of delta in F_{q^2}^x; kZero stands for the zero element.
using Exp = std::uint32_t;
inline constexpr Exp kZero = 0xFFFFFFFFu;

// F_{q^2} = F_q[Z]/(Z^2 - c) for odd q, F_q[Z]/(Z^2 + Z + c) for even q,
// stored by discrete logarithms to a fixed generator delta.
// Codes in F_{q^2} are u + q*v for u + vZ, so code order is the
// lexicographic order on (coefficient of Z, constant).
class FieldCtx {
 public:
  using Elem = GaloisField::Elem;

  static constexpr std::uint64_t kMaxTable = 1ull << 24;

  static FieldCtx build(std::uint32_t p, unsigned e, std::optional<std::uint32_t> delta_code = std::nullopt) {
    if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (e == 0) throw Error(Errc::MalformedInput, "exponent must be positive");
    const std::uint64_t q = ipow(p, e);
    if (q * q > kMaxTable) throw Error(Errc::TableTooLarge, "q^2 = " + std::to_string(q * q) + " exceeds 2^24");
    FieldCtx ctx;
    ctx.p_ = p;
    ctx.e_ = e;
    ctx.q_ = static_cast<std::uint32_t>(q);
    ctx.n_ = static_cast<std::uint32_t>(q * q - 1);
    ctx.fq_ = GaloisField::prime_power(p, e);
    const GaloisField& F = *ctx.fq_;
    // defining constant
    if (p == 2) {
      for (Elem c = 1; c < ctx.q_; ++c)
        if (F.trace(c) == 1) {
          ctx.c_ = c;
          break;
        }
      ctx.z2_ = {ctx.c_, 1};
    } else {
      for (Elem c = 1; c < ctx.q_; ++c)
        if (!F.is_square(c)) {
          ctx.c_ = c;
          break;
        }
      ctx.z2_ = {ctx.c_, 0};
    }
    ctx.choose_delta(delta_code);
    ctx.build_tables();
    return ctx;
  }

  std::uint32_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t order() const { return n_; }  // q^2 - 1
  bool odd() const { return p_ != 2; }
  Elem c() const { return c_; }
  std::uint32_t delta() const { return delta_; }
  const GaloisField& fq() const { return *fq_; }
  const std::shared_ptr<const GaloisField>& fq_ptr() const { return fq_; }

  // exponent of -1
  Exp minus_one() const { return odd() ? n_ / 2 : 0; }

  // monic minimal polynomial of delta over F_q, coefficients low to high
  std::array<Elem, 3> delta_min_poly() const {
    const GaloisField& F = *fq_;
    // the Z-parts of delta and its conjugate cancel
    Elem tr = F.add(split_code(delta_).first, split_code(code(frob(1))).first);
    Elem nm = split_code(code(norm_exponent(1))).first;
    return {nm, F.neg(tr), 1};
  }

  // the Z^2 rule: Z^2 = z2[0] + z2[1] Z
  std::array<Elem, 2> z_square() const { return z2_; }

  // z with delta^z = 1 + delta^m, or kZero when 1 + delta^m = 0
  Exp zech(Exp m) const { return zech_[m % n_]; }

  Exp norm_exponent(Exp i) const {
    return static_cast<Exp>((std::uint64_t(i % n_) * (q_ + 1)) % n_);
  }

  Exp frob(Exp i) const {
    if (i == kZero) return kZero;
    return static_cast<Exp>((std::uint64_t(i) * q_) % n_);
  }

  Exp reduce(std::int64_t i) const { return static_cast<Exp>(mod(i, n_)); }

  Exp mul(Exp a, Exp b) const {
    if (a == kZero || b == kZero) return kZero;
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Exp>(s >= n_ ? s - n_ : s);
  }

  Exp inv(Exp a) const {
    if (a == kZero) throw Error(Errc::NonInvertibleImage, "inverse of zero");
    return a == 0 ? 0 : n_ - a;
  }

  Exp neg(Exp a) const { return a == kZero ? kZero : mul(a, minus_one()); }

  Exp add(Exp a, Exp b) const {
    if (a == kZero) return b;
    if (b == kZero) return a;
    Exp z = zech_[b >= a ? b - a : b + n_ - a];
    return z == kZero ? kZero : mul(a, z);
  }

  Exp sub(Exp a, Exp b) const { return add(a, neg(b)); }

  // polynomial code of delta^a (0 for kZero)
  std::uint32_t code(Exp a) const { return a == kZero ? 0 : exp_[a % n_]; }
  Exp log_code(std::uint32_t code) const { return log_.at(code); }

  std::pair<Elem, Elem> split_code(std::uint32_t code) const { return {code % q_, code / q_}; }

  // embeds an F_q element
  Exp from_fq(Elem a) const { return log_code(a); }

  // the F_q value of a if it lies in F_q
  std::optional<Elem> to_fq(Exp a) const {
    auto [u, v] = split_code(code(a));
    if (v != 0) return std::nullopt;
    return u;
  }

  bool in_fq(Exp a) const { return a == kZero || a % (q_ + 1) == 0; }

  // product of polynomial codes computed directly
  std::uint32_t mul_codes(std::uint32_t a, std::uint32_t b) const {
    const GaloisField& F = *fq_;
    auto [u1, v1] = split_code(a);
    auto [u2, v2] = split_code(b);
    Elem vv = F.mul(v1, v2);
    Elem u = F.add(F.mul(u1, u2), F.mul(vv, z2_[0]));
    Elem v = F.add(F.add(F.mul(u1, v2), F.mul(v1, u2)), F.mul(vv, z2_[1]));
    return u + q_ * v;
  }

  std::uint32_t add_codes(std::uint32_t a, std::uint32_t b) const {
    const GaloisField& F = *fq_;
    auto [u1, v1] = split_code(a);
    auto [u2, v2] = split_code(b);
    return F.add(u1, u2) + q_ * F.add(v1, v2);
  }

  std::string format_code(std::uint32_t code) const {
    auto [u, v] = split_code(code);
    if (v == 0) return std::to_string(u);
    std::string z = (v == 1 ? std::string("Z") : std::to_string(v) + "Z");
    return u == 0 ? z : std::to_string(u) + "+" + z;
  }

  std::string format(Exp a) const { return format_code(code(a)); }

  // parses "u+vZ" style input ("1+Z", "2Z+1", "Z", "3") into a code
  std::uint32_t parse_code(const std::string& text) const;

 private:
  FieldCtx() = default;

  void choose_delta(std::optional<std::uint32_t> forced) {
    auto pow_code = [&](std::uint32_t a, std::uint64_t k) {
      std::uint32_t r = 1;
      while (k) {
        if (k & 1) r = mul_codes(r, a);
        a = mul_codes(a, a);
        k >>= 1;
      }
      return r;
    };
    const auto divisors = prime_divisors(n_);
    auto is_gen = [&](std::uint32_t g) {
      if (g == 0 || g >= q_ * q_) return false;
      for (auto r : divisors)
        if (pow_code(g, n_ / r) == 1) return false;
      return true;
    };
    if (forced) {
      if (!is_gen(*forced)) throw Error(Errc::NotGenerator, format_code(*forced) + " does not generate the multiplicative group");
      delta_ = *forced;
      return;
    }
    for (std::uint32_t g = 1; g < q_ * q_; ++g)
      if (is_gen(g)) {
        delta_ = g;
        return;
      }
  }

  void build_tables() {
    exp_.assign(n_, 0);
    log_.assign(std::size_t(q_) * q_, kZero);
    std::uint32_t x = 1;
    for (std::uint32_t k = 0; k < n_; ++k) {
      exp_[k] = x;
      log_[x] = k;
      x = mul_codes(x, delta_);
    }
    zech_.assign(n_, kZero);
    for (std::uint32_t m = 0; m < n_; ++m) zech_[m] = log_[add_codes(1, exp_[m])];
  }

  std::uint32_t p_ = 0;
  unsigned e_ = 0;
  std::uint32_t q_ = 0;
  std::uint32_t n_ = 0;
  Elem c_ = 0;
  std::array<Elem, 2> z2_{};
  std::uint32_t delta_ = 0;
  std::shared_ptr<const GaloisField> fq_;
  std::vector<std::uint32_t> exp_;
  std::vector<Exp> log_;
  std::vector<Exp> zech_;
};

inline std::uint32_t FieldCtx::parse_code(const std::string& text) const {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '*') s.push_back(ch);
  if (s.empty()) throw Error(Errc::MalformedInput, "empty field element");
  std::uint32_t u = 0, v = 0;
  for (const auto& term : split(s, '+')) {
    if (term.empty()) throw Error(Errc::MalformedInput, "bad field element: " + text);
    if (term.back() == 'Z') {
      std::string coef = term.substr(0, term.size() - 1);
      std::int64_t val = coef.empty() ? 1 : parse_int(coef);
      if (val < 0 || val >= q_) throw Error(Errc::MalformedInput, "coefficient out of range: " + text);
      v = fq_->add(v, static_cast<Elem>(val));
    } else {
      std::int64_t val = parse_int(term);
      if (val < 0 || val >= q_) throw Error(Errc::MalformedInput, "coefficient out of range: " + text);
      u = fq_->add(u, static_cast<Elem>(val));
    }
  }
  return u + q_ * v;
}

}  // namespace latticeforge
