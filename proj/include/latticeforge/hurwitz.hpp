#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "latticeforge/error.hpp"
#include "latticeforge/presentation.hpp"
#include "latticeforge/util.hpp"

namespace latticeforge {

// x0 + x1 i + x2 j + x3 k, halved when denom2 is set (then all x odd).
struct Quaternion {
  std::int64_t x0 = 0, x1 = 0, x2 = 0, x3 = 0;
  bool denom2 = false;

  auto operator<=>(const Quaternion&) const = default;

  static Quaternion one() { return {1, 0, 0, 0, false}; }
  static Quaternion i() { return {0, 1, 0, 0, false}; }
  static Quaternion j() { return {0, 0, 1, 0, false}; }
  static Quaternion k() { return {0, 0, 0, 1, false}; }
  static Quaternion rho() { return {1, 1, 1, 1, true}; }

  std::array<std::int64_t, 4> coords() const { return {x0, x1, x2, x3}; }

  Quaternion conj() const { return {x0, -x1, -x2, -x3, denom2}; }
  Quaternion operator-() const { return {-x0, -x1, -x2, -x3, denom2}; }

  std::int64_t nrd() const {
    const std::int64_t s = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3;
    return denom2 ? s / 4 : s;
  }

  // reduced trace 2 x0 (x0 when halved)
  std::int64_t trd() const { return denom2 ? x0 : 2 * x0; }

  bool is_scalar() const { return x1 == 0 && x2 == 0 && x3 == 0 && !denom2; }

  // sign chosen so that the first nonzero coordinate is positive
  Quaternion canonical() const {
    for (auto c : coords()) {
      if (c > 0) return *this;
      if (c < 0) return -*this;
    }
    return *this;
  }
};

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  // work with doubled numerators so halves stay integral
  const std::int64_t sa = a.denom2 ? 1 : 2, sb = b.denom2 ? 1 : 2;
  const std::int64_t a0 = a.x0 * sa, a1 = a.x1 * sa, a2 = a.x2 * sa, a3 = a.x3 * sa;
  const std::int64_t b0 = b.x0 * sb, b1 = b.x1 * sb, b2 = b.x2 * sb, b3 = b.x3 * sb;
  std::array<std::int64_t, 4> n{a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3, a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1, a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0};
  // value = n / 4
  if (std::all_of(n.begin(), n.end(), [](std::int64_t v) { return v % 4 == 0; })) return {n[0] / 4, n[1] / 4, n[2] / 4, n[3] / 4, false};
  if (std::all_of(n.begin(), n.end(), [](std::int64_t v) { return v % 2 == 0 && (v / 2) % 2 != 0; }))
    return {n[0] / 2, n[1] / 2, n[2] / 2, n[3] / 2, true};
  throw Error(Errc::MalformedInput, "product left the Hurwitz order");
}

inline Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  if (a.denom2 || b.denom2) throw Error(Errc::Unsupported, "addition of halved quaternions");
  return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3, false};
}

inline std::string format(const Quaternion& q) {
  std::string out;
  const char* units[4] = {"", "i", "j", "k"};
  auto c = q.coords();
  for (int t = 0; t < 4; ++t) {
    const auto v = c[t];
    if (v == 0) continue;
    if (v < 0) out += "-";
    else if (!out.empty()) out += "+";
    const auto m = v < 0 ? -v : v;
    if (t == 0 || m != 1) out += std::to_string(m);
    out += units[t];
  }
  if (out.empty()) out = "0";
  return q.denom2 ? "(" + out + ")/2" : out;
}

// parses "1+2i-j+k"; the halved form "(1+i+j+k)/2" is accepted too
inline Quaternion parse_quaternion(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  Quaternion q;
  if (s.size() > 4 && s.front() == '(' && s.substr(s.size() - 3) == ")/2") {
    q = parse_quaternion(s.substr(1, s.size() - 4));
    q.denom2 = true;
    for (auto c : q.coords())
      if (c % 2 == 0) throw Error(Errc::MalformedInput, "halved quaternion needs odd coordinates: " + text);
    return q;
  }
  if (s.empty()) throw Error(Errc::MalformedInput, "empty quaternion");
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw Error(Errc::MalformedInput, "bad quaternion: " + text);
    }
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    std::int64_t mag = pos > start ? std::stoll(s.substr(start, pos - start)) : 1;
    int unit = 0;
    if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j' || s[pos] == 'k')) {
      unit = s[pos] == 'i' ? 1 : (s[pos] == 'j' ? 2 : 3);
      ++pos;
    } else if (pos == start) {
      throw Error(Errc::MalformedInput, "bad quaternion: " + text);
    }
    std::int64_t* slot[4] = {&q.x0, &q.x1, &q.x2, &q.x3};
    *slot[unit] += sign * mag;
  }
  return q;
}

// Unit used to move A_p to the class of 1 + j + k for p = 3 mod 4.
enum class PrimeUnit { I, K };

struct GeneratorSet {
  std::int64_t p = 0;
  bool primed = false;
  PrimeUnit unit = PrimeUnit::I;
  std::vector<Quaternion> elements;

  std::size_t index_of(const Quaternion& x) const {
    const Quaternion c = x.canonical();
    auto it = std::find(elements.begin(), elements.end(), c);
    if (it == elements.end()) throw Error(Errc::NoSolution, format(x) + " is not in the generator set of " + std::to_string(p));
    return static_cast<std::size_t>(it - elements.begin());
  }
};

// x0 odd, rest even for p = 1 mod 4; x0 even, rest odd for p = 3 mod 4
inline bool in_norm_class(const Quaternion& x, std::int64_t p) {
  auto odd = [](std::int64_t v) { return v % 2 != 0; };
  if (p % 4 == 1) return odd(x.x0) && !odd(x.x1) && !odd(x.x2) && !odd(x.x3);
  return !odd(x.x0) && odd(x.x1) && odd(x.x2) && odd(x.x3);
}

inline GeneratorSet enumerate_pa(std::int64_t p, bool primed, PrimeUnit unit = PrimeUnit::I) {
  if (p < 3 || p % 2 == 0 || !is_prime(static_cast<std::uint64_t>(p))) throw Error(Errc::NotOddPrime, std::to_string(p));
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= p) ++r;
  std::set<Quaternion> found;
  for (std::int64_t a = -r; a <= r; ++a)
    for (std::int64_t b = -r; b <= r; ++b)
      for (std::int64_t c = -r; c <= r; ++c) {
        const std::int64_t rest = p - a * a - b * b - c * c;
        if (rest < 0) continue;
        std::int64_t d = 0;
        while (d * d < rest) ++d;
        if (d * d != rest) continue;
        for (std::int64_t dd : {d, -d}) {
          Quaternion x{a, b, c, dd, false};
          if (in_norm_class(x, p)) found.insert(x.canonical());
          if (d == 0) break;
        }
      }
  GeneratorSet gs;
  gs.p = p;
  gs.primed = primed;
  gs.unit = unit;
  std::set<Quaternion> out;
  for (const auto& x : found) {
    if (primed && p % 4 == 3) out.insert((x * (unit == PrimeUnit::I ? Quaternion::i() : Quaternion::k())).canonical());
    else out.insert(x);
  }
  gs.elements.assign(out.begin(), out.end());
  // descending coordinate order: 1+2i, 1+2j, 1+2k, 1-2k, ...
  std::sort(gs.elements.begin(), gs.elements.end(), [](const Quaternion& a, const Quaternion& b) { return a.coords() > b.coords(); });
  if (gs.elements.size() != static_cast<std::size_t>(p + 1))
    throw Error(Errc::CardinalityMismatch, std::to_string(gs.elements.size()) + " classes for p = " + std::to_string(p));
  return gs;
}

struct SquareSolution {
  Quaternion y2, x2;
  int sign = 1;
};

// the unique (y', x') with x y = sign y' x'
inline SquareSolution solve_square(const Quaternion& x, const Quaternion& y, const GeneratorSet& pa_p, const GeneratorSet& pa_l) {
  const Quaternion xy = x * y;
  std::vector<SquareSolution> sols;
  for (const auto& y2 : pa_l.elements)
    for (const auto& x2 : pa_p.elements) {
      const Quaternion r = y2 * x2;
      if (r == xy) sols.push_back({y2, x2, 1});
      else if (r == -xy) sols.push_back({y2, x2, -1});
    }
  if (sols.empty()) throw Error(Errc::NoSolution, format(x) + " * " + format(y));
  if (sols.size() > 1) throw Error(Errc::MultipleSolutions, format(x) + " * " + format(y));
  return sols.front();
}

struct HurwitzLetter {
  Quaternion value;
  bool inverse = false;  // realized by the conjugate
};

struct HurwitzCertificate {
  bool central = false;
  std::int64_t scalar = 0;
  Quaternion product;
};

inline HurwitzCertificate verify_word_hurwitz(const std::vector<HurwitzLetter>& word) {
  Quaternion x = Quaternion::one();
  for (const auto& l : word) x = x * (l.inverse ? l.value.conj() : l.value);
  HurwitzCertificate c;
  c.product = x;
  c.central = x.is_scalar();
  if (c.central) c.scalar = x.x0;
  return c;
}

inline HurwitzCertificate verify_word_hurwitz(const std::vector<Quaternion>& word) {
  std::vector<HurwitzLetter> w;
  for (const auto& q : word) w.push_back({q, false});
  return verify_word_hurwitz(w);
}

inline Presentation present_gamma_hurwitz(std::vector<std::int64_t> S0, bool primed, PrimeUnit unit = PrimeUnit::I) {
  if (S0.empty()) throw Error(Errc::MalformedInput, "empty set of primes");
  std::sort(S0.begin(), S0.end());
  if (std::adjacent_find(S0.begin(), S0.end()) != S0.end()) throw Error(Errc::MalformedInput, "repeated prime");
  std::vector<GeneratorSet> sets;
  for (auto p : S0) sets.push_back(enumerate_pa(p, primed, unit));
  Presentation P;
  P.kind = PresentationKind::Hurwitz;
  for (const auto& gs : sets) {
    Direction D;
    D.label = std::to_string(gs.p);
    D.valency = static_cast<std::uint32_t>(gs.elements.size());
    for (const auto& x : gs.elements) D.generators.push_back(format(x));
    for (const auto& x : gs.elements) D.involution.push_back(static_cast<std::uint32_t>(gs.index_of(x.conj())));
    P.directions.push_back(std::move(D));
  }
  std::set<Square> squares;
  for (std::uint32_t v = 0; v < sets.size(); ++v)
    for (std::uint32_t w = v + 1; w < sets.size(); ++w)
      for (const auto& x : sets[v].elements)
        for (const auto& y : sets[w].elements) {
          auto sol = solve_square(x, y, sets[v], sets[w]);
          // x y x'^-1 y'^-1 is central
          Square s{v, w,
                   {static_cast<std::uint32_t>(sets[v].index_of(x)), static_cast<std::uint32_t>(sets[w].index_of(y)),
                    static_cast<std::uint32_t>(sets[v].index_of(sol.x2.conj())), static_cast<std::uint32_t>(sets[w].index_of(sol.y2.conj()))}};
          squares.insert(canonicalize_square(P, s));
        }
  for (const auto& s : squares) {
    auto cert = verify_word_hurwitz(std::vector<Quaternion>{sets[s.v].elements[s.word[0]], sets[s.w].elements[s.word[1]],
                                                            sets[s.v].elements[s.word[2]], sets[s.w].elements[s.word[3]]});
    if (!cert.central) throw Error(Errc::RelationFailed, "square relation is not central");
  }
  P.squares.assign(squares.begin(), squares.end());
  return P;
}

// Generator quaternions of a Hurwitz presentation, per direction.
inline std::vector<std::vector<Quaternion>> hurwitz_elements(const Presentation& P) {
  if (P.kind != PresentationKind::Hurwitz) throw Error(Errc::Unsupported, "not a Hurwitz presentation");
  std::vector<std::vector<Quaternion>> out;
  for (const auto& D : P.directions) {
    std::vector<Quaternion> row;
    for (const auto& g : D.generators) row.push_back(parse_quaternion(g));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace latticeforge
