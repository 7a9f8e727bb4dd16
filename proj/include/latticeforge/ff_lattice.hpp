#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latticeforge/error.hpp"
#include "latticeforge/finite_field.hpp"
#include "latticeforge/presentation.hpp"

namespace latticeforge {

// Laurent polynomial in t over F_{q^2}; coefficients are exponents of delta.
struct Laurent {
  std::map<int, Exp> terms;  // no kZero entries

  bool is_zero() const { return terms.empty(); }
  bool operator==(const Laurent&) const = default;

  static Laurent constant(Exp a) {
    Laurent r;
    if (a != kZero) r.terms[0] = a;
    return r;
  }
  static Laurent monomial(Exp a, int deg) {
    Laurent r;
    if (a != kZero) r.terms[deg] = a;
    return r;
  }
};

inline Laurent add(const FieldCtx& K, const Laurent& x, const Laurent& y) {
  Laurent r = x;
  for (const auto& [d, c] : y.terms) {
    auto it = r.terms.find(d);
    if (it == r.terms.end()) {
      r.terms.emplace(d, c);
    } else {
      Exp s = K.add(it->second, c);
      if (s == kZero) r.terms.erase(it);
      else it->second = s;
    }
  }
  return r;
}

inline Laurent mul(const FieldCtx& K, const Laurent& x, const Laurent& y) {
  Laurent r;
  for (const auto& [d1, c1] : x.terms)
    for (const auto& [d2, c2] : y.terms) r = add(K, r, Laurent::monomial(K.mul(c1, c2), d1 + d2));
  return r;
}

inline Laurent sigma(const FieldCtx& K, const Laurent& x) {
  Laurent r;
  for (const auto& [d, c] : x.terms) r.terms[d] = K.frob(c);
  return r;
}

inline Laurent shift(const Laurent& x, int by) {
  Laurent r;
  for (const auto& [d, c] : x.terms) r.terms[d + by] = c;
  return r;
}

inline std::string format(const FieldCtx& K, const Laurent& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [d, c] : x.terms) {
    if (!out.empty()) out += " + ";
    std::string coef = K.format(c);
    if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
    if (d == 0) {
      out += coef;
    } else {
      if (coef != "1") out += coef;
      out += "t";
      if (d != 1) out += "^" + std::to_string(d);
    }
  }
  return out;
}

// a + bF in L{F}/(F^2 = t), F x = sigma(x) F.
struct QuatLaurent {
  Laurent a, b;
  bool operator==(const QuatLaurent&) const = default;
};

inline QuatLaurent mul(const FieldCtx& K, const QuatLaurent& x, const QuatLaurent& y) {
  QuatLaurent r;
  r.a = add(K, mul(K, x.a, y.a), shift(mul(K, x.b, sigma(K, y.b)), 1));
  r.b = add(K, mul(K, x.a, y.b), mul(K, x.b, sigma(K, y.a)));
  return r;
}

inline Laurent norm(const FieldCtx& K, const Laurent& x) { return mul(K, x, sigma(K, x)); }

// Nrd(a + bF) = N(a) - N(b) t
inline Laurent reduced_norm(const FieldCtx& K, const QuatLaurent& x) {
  Laurent nb = norm(K, x.b);
  Laurent neg;
  for (const auto& [d, c] : nb.terms) neg.terms[d + 1] = K.neg(c);
  return add(K, norm(K, x.a), neg);
}

struct FfLetter {
  enum class Kind { A, D, S };
  Kind kind = Kind::A;
  Exp index = 0;
  bool inverse = false;

  bool operator==(const FfLetter&) const = default;
};

inline std::string format(const FfLetter& l) {
  std::string s = l.kind == FfLetter::Kind::A ? "a" + std::to_string(l.index) : (l.kind == FfLetter::Kind::D ? "d" : "s");
  return l.inverse ? s + "^-1" : s;
}

// "a5", "a5^-1", "d", "d^-1", "s"
inline FfLetter parse_ff_letter(const FieldCtx& K, const std::string& text) {
  std::string s = text;
  FfLetter l;
  if (s.size() >= 3 && s.substr(s.size() - 3) == "^-1") {
    l.inverse = true;
    s = s.substr(0, s.size() - 3);
  }
  if (s == "d") {
    l.kind = FfLetter::Kind::D;
  } else if (s == "s") {
    l.kind = FfLetter::Kind::S;
  } else if (s.size() >= 2 && s[0] == 'a' && std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    l.kind = FfLetter::Kind::A;
    auto v = std::stoull(s.substr(1));
    if (v >= K.order()) throw Error(Errc::UnknownLetter, "exponent out of range in '" + text + "'");
    l.index = static_cast<Exp>(v);
  } else {
    throw Error(Errc::UnknownLetter, "'" + text + "'");
  }
  return l;
}

// Algebra value of a letter.  a_i = 1 + delta^i F; its formal inverse is the
// projective inverse 1 - delta^i F.  d = delta, s = F, s^-1 = t^-1 F.
inline QuatLaurent letter_value(const FieldCtx& K, const FfLetter& l) {
  QuatLaurent x;
  switch (l.kind) {
    case FfLetter::Kind::A:
      if (l.index >= K.order()) throw Error(Errc::UnknownLetter, "a" + std::to_string(l.index));
      x.a = Laurent::constant(0);
      x.b = Laurent::constant(l.inverse ? K.neg(l.index) : l.index);
      break;
    case FfLetter::Kind::D:
      x.a = Laurent::constant(l.inverse ? K.inv(1) : 1);
      break;
    case FfLetter::Kind::S:
      x.b = Laurent::monomial(0, l.inverse ? -1 : 0);
      break;
  }
  return x;
}

struct FfCertificate {
  bool central = false;
  std::map<int, std::uint32_t> scalar;  // F_q coefficients when central
  QuatLaurent product;
};

inline std::string format_scalar(const std::map<int, std::uint32_t>& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [d, c] : s) {
    if (!out.empty()) out += " + ";
    if (d == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += "t";
      if (d != 1) out += "^" + std::to_string(d);
    }
  }
  return out;
}

inline FfCertificate verify_word_ff(const FieldCtx& K, const std::vector<FfLetter>& word) {
  QuatLaurent x;
  x.a = Laurent::constant(0);
  for (const auto& l : word) x = mul(K, x, letter_value(K, l));
  FfCertificate cert;
  cert.product = x;
  if (!x.b.is_zero()) return cert;
  for (const auto& [d, c] : x.a.terms) {
    auto v = K.to_fq(c);
    if (!v) return cert;
    cert.scalar[d] = *v;
  }
  cert.central = true;
  return cert;
}

// Word of generator exponents, each letter read as a_i.
inline FfCertificate verify_word_ff(const FieldCtx& K, const std::vector<Exp>& exps) {
  std::vector<FfLetter> w;
  for (auto e : exps) w.push_back({FfLetter::Kind::A, e, false});
  return verify_word_ff(K, w);
}

struct PlaceCoset {
  std::uint32_t tau = 0;
  std::vector<Exp> coset;  // ascending
};

inline PlaceCoset place_coset(const FieldCtx& K, std::uint32_t tau) {
  if (tau == 0) throw Error(Errc::ZeroPlace, "tau = 0 is not a place of the lattice");
  if (tau >= K.q()) throw Error(Errc::BadPlace, "tau = " + std::to_string(tau) + " is not an element of F_q");
  const Exp target = K.from_fq(tau);
  PlaceCoset pc;
  pc.tau = tau;
  for (Exp i = 0; i < K.order(); ++i)
    if (K.norm_exponent(K.inv(i)) == target) pc.coset.push_back(i);
  return pc;
}

// (k, l) with a_i a_j = a_k a_l
inline std::pair<Exp, Exp> kl(const FieldCtx& K, Exp i, Exp j) {
  const std::int64_t n = K.order(), q1 = K.q() - 1;
  if (mod(std::int64_t(i) - std::int64_t(j), q1) == 0)
    throw Error(Errc::SameNormClass, std::to_string(i) + " and " + std::to_string(j) + " lie in the same direction");
  const Exp x = K.zech(K.reduce(std::int64_t(j) - std::int64_t(i)));
  const std::int64_t y = std::int64_t(x) + i - j;
  const Exp l = K.reduce(std::int64_t(i) - std::int64_t(x) * q1);
  const Exp k = K.reduce(std::int64_t(j) - mod(y, n) * q1);
  return {k, l};
}

inline FieldInfo field_info(const FieldCtx& K) {
  FieldInfo f;
  f.p = K.p();
  f.e = K.e();
  if (K.e() > 1) f.fq_modulus = K.fq().modulus();
  f.c = K.c();
  f.delta = K.delta();
  f.delta_min_poly = K.delta_min_poly();
  return f;
}

// Rebuilds the field model stored in a presentation.
inline FieldCtx field_from_info(const FieldInfo& f) {
  FieldCtx K = FieldCtx::build(f.p, f.e, f.delta);
  if (K.c() != f.c || (f.e > 1 && K.fq().modulus() != f.fq_modulus))
    throw Error(Errc::MalformedInput, "field data does not match the canonical model of F_q");
  return K;
}

inline std::vector<PlaceCoset> ordered_cosets(const FieldCtx& K, std::vector<std::uint32_t> S0) {
  if (S0.empty()) throw Error(Errc::MalformedInput, "empty set of places");
  std::sort(S0.begin(), S0.end());
  if (std::adjacent_find(S0.begin(), S0.end()) != S0.end()) throw Error(Errc::MalformedInput, "repeated place");
  std::vector<PlaceCoset> cs;
  for (auto tau : S0) cs.push_back(place_coset(K, tau));
  // directions follow the least exponent of each coset
  std::sort(cs.begin(), cs.end(), [](const PlaceCoset& a, const PlaceCoset& b) { return a.coset.front() < b.coset.front(); });
  return cs;
}

inline Presentation present_gamma_ff(const FieldCtx& K, const std::vector<std::uint32_t>& S0) {
  const auto cosets = ordered_cosets(K, S0);
  Presentation P;
  P.kind = PresentationKind::FunctionField;
  P.field = field_info(K);
  std::vector<std::map<Exp, std::uint32_t>> local(cosets.size());
  for (std::size_t v = 0; v < cosets.size(); ++v) {
    Direction D;
    D.label = std::to_string(cosets[v].tau);
    D.valency = static_cast<std::uint32_t>(cosets[v].coset.size());
    for (std::uint32_t g = 0; g < cosets[v].coset.size(); ++g) {
      D.generators.push_back(std::to_string(cosets[v].coset[g]));
      local[v][cosets[v].coset[g]] = g;
    }
    for (auto i : cosets[v].coset) D.involution.push_back(local[v].at(K.mul(i, K.minus_one())));
    P.directions.push_back(std::move(D));
  }
  // a_i^-1 = a_{i+(q^2-1)/2} for odd q, a_i^-1 = a_i for even q
  auto inv = [&](Exp i) { return K.mul(i, K.minus_one()); };
  std::set<Square> squares;
  for (std::uint32_t v = 0; v < cosets.size(); ++v)
    for (std::uint32_t w = v + 1; w < cosets.size(); ++w)
      for (auto i : cosets[v].coset)
        for (auto j : cosets[w].coset) {
          auto [k, l] = kl(K, i, j);
          Square s{v, w, {local[v].at(i), local[w].at(j), local[v].at(inv(l)), local[w].at(inv(k))}};
          squares.insert(canonicalize_square(P, s));
        }
  for (const auto& s : squares) {
    std::vector<Exp> word{static_cast<Exp>(std::stoul(P.directions[s.v].generators[s.word[0]])),
                          static_cast<Exp>(std::stoul(P.directions[s.w].generators[s.word[1]])),
                          static_cast<Exp>(std::stoul(P.directions[s.v].generators[s.word[2]])),
                          static_cast<Exp>(std::stoul(P.directions[s.w].generators[s.word[3]]))};
    if (!verify_word_ff(K, word).central)
      throw Error(Errc::RelationFailed, "square a" + std::to_string(word[0]) + " a" + std::to_string(word[1]) + " a" + std::to_string(word[2]) +
                                            " a" + std::to_string(word[3]) + " is not central");
  }
  P.squares.assign(squares.begin(), squares.end());
  if (!K.odd()) P.orientation_index = std::uint64_t(1) << cosets.size();
  return P;
}

// Exponent i in the coset of tau with delta^i = a_tau of the finite part:
// delta^i in F_q for square tau, delta^(i+1) in F_q otherwise.
inline Exp distinguished_exponent(const FieldCtx& K, const PlaceCoset& pc) {
  const bool square = !K.odd() || K.fq().is_square(pc.tau);
  for (auto i : pc.coset) {
    if (square && i % (K.q() + 1) == 0) return i;
    if (!square && (i + 1) % (K.q() + 1) == 0) return i;
  }
  throw Error(Errc::RelationFailed, "no distinguished generator for tau = " + std::to_string(pc.tau));
}

inline Presentation present_lambda_ff(const FieldCtx& K, const std::vector<std::uint32_t>& S0) {
  Presentation P = present_gamma_ff(K, S0);
  const auto cosets = ordered_cosets(K, S0);
  using L = FfLetter;
  const L d{L::Kind::D, 0, false}, di{L::Kind::D, 0, true}, s{L::Kind::S, 0, false}, si{L::Kind::S, 0, true};
  auto a = [](Exp i, bool inv = false) { return L{L::Kind::A, i, inv}; };

  FinitePart fp;
  fp.order = 2ull * (K.q() + 1);
  fp.generators = {"d", "s"};
  auto emit = [&](std::string name, std::vector<L> word) {
    auto cert = verify_word_ff(K, word);
    if (!cert.central) throw Error(Errc::RelationFailed, name + " does not hold in the algebra");
    FiniteRelation rel;
    rel.name = std::move(name);
    for (const auto& l : word) rel.word.push_back(format(l));
    rel.scalar = format_scalar(cert.scalar);
    fp.relations.push_back(std::move(rel));
  };

  emit("d^" + std::to_string(K.q() + 1) + " = 1", std::vector<L>(K.q() + 1, d));
  emit("s^2 = 1", {s, s});
  emit("(sd)^2 = 1", {s, d, s, d});
  const std::int64_t q = K.q();
  for (const auto& pc : cosets) {
    for (auto i : pc.coset) {
      const Exp qi = K.reduce(std::int64_t(i) * q);
      emit("s a" + std::to_string(i) + " s = a" + std::to_string(qi), {s, a(i), s, a(qi, true)});
    }
    for (auto i : pc.coset) {
      const Exp j = K.reduce(std::int64_t(i) + 1 - q);
      emit("d a" + std::to_string(i) + " d^-1 = a" + std::to_string(j), {d, a(i), di, a(j, true)});
    }
  }
  for (const auto& pc : cosets) {
    const Exp i = distinguished_exponent(K, pc);
    const std::string ai = "a" + std::to_string(i);
    if (K.odd()) {
      std::vector<L> w;
      for (int r = 0; r < 2; ++r) {
        for (std::uint32_t k = 0; k < (K.q() + 1) / 2; ++k) w.push_back(d);
        w.push_back(a(i));
      }
      emit("(d^" + std::to_string((K.q() + 1) / 2) + " " + ai + ")^2 = 1", w);
    } else {
      emit(ai + "^2 = 1", {a(i), a(i)});
    }
    if (!K.odd() || K.fq().is_square(pc.tau)) {
      emit("s " + ai + " s = " + ai, {s, a(i), s, a(i, true)});
    } else {
      emit("(sd) " + ai + " (sd)^-1 = " + ai, {s, d, a(i), di, si, a(i, true)});
    }
  }
  P.finite_part = std::move(fp);
  return P;
}

}  // namespace latticeforge
