#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <deque>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latticeforge/error.hpp"
#include "latticeforge/ff_lattice.hpp"
#include "latticeforge/finite_field.hpp"
#include "latticeforge/hurwitz.hpp"
#include "latticeforge/presentation.hpp"

namespace latticeforge {

using Mat2 = std::array<GaloisField::Elem, 4>;  // row-major

inline Mat2 mat_mul(const GaloisField& F, const Mat2& x, const Mat2& y) {
  return {F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])), F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
          F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])), F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3]))};
}

inline Mat2 mat_add(const GaloisField& F, const Mat2& x, const Mat2& y) {
  return {F.add(x[0], y[0]), F.add(x[1], y[1]), F.add(x[2], y[2]), F.add(x[3], y[3])};
}

inline Mat2 mat_scale(const GaloisField& F, GaloisField::Elem s, const Mat2& x) {
  return {F.mul(s, x[0]), F.mul(s, x[1]), F.mul(s, x[2]), F.mul(s, x[3])};
}

inline Mat2 mat_scalar(GaloisField::Elem s) { return {s, 0, 0, s}; }

inline GaloisField::Elem mat_det(const GaloisField& F, const Mat2& x) { return F.sub(F.mul(x[0], x[3]), F.mul(x[1], x[2])); }

inline bool mat_is_scalar(const Mat2& x) { return x[1] == 0 && x[2] == 0 && x[0] == x[3]; }

// scaled so that the first nonzero entry in row-major order is 1
inline Mat2 projective_canonical(const GaloisField& F, const Mat2& x) {
  for (auto v : x)
    if (v != 0) return mat_scale(F, F.inv(v), x);
  throw Error(Errc::NonInvertibleImage, "zero matrix");
}

struct SplittingData {
  PresentationKind kind = PresentationKind::Hurwitz;
  std::shared_ptr<const GaloisField> field;  // residue field F_N
  std::map<std::string, Mat2> images;        // "i","j","k" or "Z","F"
  std::string modulus;                       // "13" or "t^2+1"
  // Hurwitz data
  std::int64_t ell = 0;
  std::pair<std::uint32_t, std::uint32_t> ab{0, 0};
  // function-field data
  std::optional<FieldCtx> ctx;
  GaloisField::Elem t_hat = 0;
};

inline Mat2 hurwitz_image(const SplittingData& S, const Quaternion& x) {
  const GaloisField& F = *S.field;
  const std::int64_t ell = S.ell;
  auto red = [&](std::int64_t v) { return static_cast<GaloisField::Elem>(mod(v, ell)); };
  Mat2 m = mat_scalar(red(x.x0));
  m = mat_add(F, m, mat_scale(F, red(x.x1), S.images.at("i")));
  m = mat_add(F, m, mat_scale(F, red(x.x2), S.images.at("j")));
  m = mat_add(F, m, mat_scale(F, red(x.x3), S.images.at("k")));
  if (x.denom2) m = mat_scale(F, F.inv(2 % static_cast<GaloisField::Elem>(ell)), m);
  return m;
}

inline SplittingData split_hurwitz(std::int64_t ell, const std::vector<std::int64_t>& S0 = {}) {
  if (ell == 2) throw Error(Errc::RamifiedPlace, "2 is ramified in the Hurwitz order");
  if (ell < 3 || !is_prime(static_cast<std::uint64_t>(ell))) throw Error(Errc::NotOddPrime, std::to_string(ell));
  if (std::find(S0.begin(), S0.end(), ell) != S0.end()) throw Error(Errc::PlaceInS, std::to_string(ell) + " is one of the lattice primes");
  SplittingData S;
  S.kind = PresentationKind::Hurwitz;
  S.ell = ell;
  S.modulus = std::to_string(ell);
  S.field = GaloisField::prime(static_cast<std::uint32_t>(ell));
  const GaloisField& F = *S.field;
  bool found = false;
  for (std::uint32_t a = 0; a < ell && !found; ++a)
    for (std::uint32_t b = 0; b < ell && !found; ++b)
      if ((std::uint64_t(a) * a + std::uint64_t(b) * b + 1) % ell == 0) {
        S.ab = {a, b};
        found = true;
      }
  const auto [a, b] = S.ab;
  S.images["i"] = {a, b, b, F.neg(a)};
  S.images["j"] = {0, 1, F.neg(1), 0};
  S.images["k"] = mat_mul(F, S.images["i"], S.images["j"]);
  const Mat2 minus_one = mat_scalar(F.neg(1));
  const Mat2 &I = S.images["i"], &J = S.images["j"], &K = S.images["k"];
  if (mat_mul(F, I, I) != minus_one || mat_mul(F, J, J) != minus_one || mat_mul(F, K, K) != minus_one ||
      mat_mul(F, J, I) != mat_scale(F, F.neg(1), K))
    throw Error(Errc::RelationFailed, "Hurwitz splitting relations fail mod " + std::to_string(ell));
  return S;
}

// polynomial in t over F_q with integer codes as coefficients: "t^2+1", "t^3+2t+1"
inline GaloisField::Poly parse_poly(const GaloisField& F, const std::string& text, char var = 't') {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '*') s.push_back(ch);
  if (s.empty()) throw Error(Errc::MalformedInput, "empty polynomial");
  GaloisField::Poly f;
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw Error(Errc::MalformedInput, "bad polynomial: " + text);
    }
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    std::int64_t coef = pos > start ? std::stoll(s.substr(start, pos - start)) : 1;
    unsigned degree = 0;
    if (pos < s.size() && s[pos] == var) {
      ++pos;
      degree = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t ds = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == ds) throw Error(Errc::MalformedInput, "bad exponent in " + text);
        degree = static_cast<unsigned>(std::stoul(s.substr(ds, pos - ds)));
      }
    } else if (pos == start) {
      throw Error(Errc::MalformedInput, "bad polynomial: " + text);
    }
    if (coef < 0 || coef >= F.size()) throw Error(Errc::MalformedInput, "coefficient out of range in " + text);
    GaloisField::Elem c = static_cast<GaloisField::Elem>(coef);
    if (negative) c = F.neg(c);
    if (f.size() <= degree) f.resize(degree + 1, 0);
    f[degree] = F.add(f[degree], c);
  }
  poly::trim(f);
  return f;
}

// image of x = u + vZ in F_q[Z]
inline Mat2 ff_scalar_image(const SplittingData& S, std::uint32_t code) {
  const GaloisField& F = *S.field;
  auto [u, v] = S.ctx->split_code(code);
  return mat_add(F, mat_scalar(u), mat_scale(F, v, S.images.at("Z")));
}

inline SplittingData split_ff(const FieldCtx& K, const std::string& modulus_text, const std::vector<std::uint32_t>& S0 = {}) {
  const GaloisField& Fq = K.fq();
  GaloisField::Poly pi = parse_poly(Fq, modulus_text);
  if (pi.empty() || pi.back() != 1) throw Error(Errc::MalformedInput, "modulus must be monic");
  if (poly::deg(pi) < 1) throw Error(Errc::Reducible, "constant modulus");
  if (!poly::is_irreducible(Fq, pi)) throw Error(Errc::Reducible, modulus_text + " is reducible over F_" + std::to_string(K.q()));
  if (pi[0] == 0) throw Error(Errc::BadPlace, "modulus vanishes at t = 0");
  for (auto tau : S0)
    if (poly::eval(Fq, pi, tau) == 0) throw Error(Errc::BadPlace, "modulus vanishes at the lattice place " + std::to_string(tau));
  SplittingData S;
  S.kind = PresentationKind::FunctionField;
  S.modulus = modulus_text;
  S.ctx = K;
  if (poly::deg(pi) == 1) {
    S.field = K.fq_ptr();
    S.t_hat = Fq.neg(pi[0]);
  } else {
    S.field = GaloisField::extension(K.fq_ptr(), pi);
    S.t_hat = S.field->from_digits({0, 1});
  }
  const GaloisField& F = *S.field;
  const auto c = K.c();
  const auto th = S.t_hat;
  Mat2 Z, Fm;
  if (K.odd()) {
    if (auto w = F.sqrt(c)) {
      Z = {*w, 0, 0, F.neg(*w)};
      Fm = {0, 1, th, 0};
    } else {
      Z = {0, 1, c, 0};
      bool ok = false;
      for (GaloisField::Elem y = 0; y < F.size() && !ok; ++y) {
        // x^2 = t + c y^2
        auto x = F.sqrt(F.add(th, F.mul(c, F.mul(y, y))));
        if (x) {
          Fm = {*x, y, F.neg(F.mul(c, y)), F.neg(*x)};
          ok = true;
        }
      }
      if (!ok) throw Error(Errc::RelationFailed, "norm equation has no solution");
    }
  } else {
    std::optional<GaloisField::Elem> root;
    for (GaloisField::Elem w = 0; w < F.size() && !root; ++w)
      if (F.add(F.add(F.mul(w, w), w), c) == 0) root = w;
    if (root) {
      Z = {*root, 0, 0, F.add(*root, 1)};
      Fm = {0, 1, th, 0};
    } else {
      Z = {0, 1, c, 1};
      bool ok = false;
      for (GaloisField::Elem x = 0; x < F.size() && !ok; ++x)
        for (GaloisField::Elem y = 0; y < F.size() && !ok; ++y)
          if (F.add(F.add(F.mul(x, x), F.mul(x, y)), F.mul(c, F.mul(y, y))) == th) {
            Fm = {x, y, F.add(x, F.mul(c, y)), x};
            ok = true;
          }
      if (!ok) throw Error(Errc::RelationFailed, "norm equation has no solution");
    }
  }
  S.images["Z"] = Z;
  S.images["F"] = Fm;
  // defining relations
  const auto z2 = K.z_square();
  const Mat2 zsq = mat_add(F, mat_scalar(z2[0]), mat_scale(F, z2[1], Z));
  const Mat2 sigmaZ = K.odd() ? mat_scale(F, F.neg(1), Z) : mat_add(F, Z, mat_scalar(1));
  if (mat_mul(F, Z, Z) != zsq || mat_mul(F, Fm, Fm) != mat_scalar(th) || mat_mul(F, Fm, Z) != mat_mul(F, sigmaZ, Fm))
    throw Error(Errc::RelationFailed, "function-field splitting relations fail");
  return S;
}

// images of all generators of P as matrices (not yet projectively normalized)
inline std::vector<std::vector<Mat2>> generator_images(const Presentation& P, const SplittingData& S) {
  if (P.kind != S.kind) throw Error(Errc::Unsupported, "presentation and splitting are of different kinds");
  const GaloisField& F = *S.field;
  std::vector<std::vector<Mat2>> out;
  if (P.kind == PresentationKind::Hurwitz) {
    for (const auto& row : hurwitz_elements(P)) {
      std::vector<Mat2> imgs;
      for (const auto& x : row) {
        Mat2 m = hurwitz_image(S, x);
        const auto expected = static_cast<GaloisField::Elem>(mod(x.nrd(), S.ell));
        if (mat_det(F, m) != expected) throw Error(Errc::RelationFailed, "determinant differs from the reduced norm for " + format(x));
        if (expected == 0) throw Error(Errc::NonInvertibleImage, format(x) + " has norm divisible by " + S.modulus);
        imgs.push_back(m);
      }
      out.push_back(std::move(imgs));
    }
    return out;
  }
  if (P.kind != PresentationKind::FunctionField || !S.ctx) throw Error(Errc::Unsupported, "presentation has no matrix model");
  const FieldCtx& K = *S.ctx;
  if (!P.field || P.field->delta != K.delta() || P.field->p != K.p() || P.field->e != K.e())
    throw Error(Errc::MalformedInput, "presentation field differs from the splitting field");
  for (const auto& D : P.directions) {
    std::vector<Mat2> imgs;
    for (const auto& g : D.generators) {
      const Exp i = static_cast<Exp>(std::stoul(g));
      const Mat2 alpha = ff_scalar_image(S, K.code(i));
      const Mat2 m = mat_add(F, mat_scalar(1), mat_mul(F, alpha, S.images.at("F")));
      // Nrd(1 + alpha F) = 1 - N(alpha) t
      const auto n_alpha = K.to_fq(K.norm_exponent(i));
      const auto expected = F.sub(1, F.mul(*n_alpha, S.t_hat));
      if (mat_det(F, m) != expected) throw Error(Errc::RelationFailed, "determinant differs from the reduced norm for a" + g);
      if (expected == 0) throw Error(Errc::NonInvertibleImage, "a" + g + " is not invertible modulo " + S.modulus);
      imgs.push_back(m);
    }
    out.push_back(std::move(imgs));
  }
  return out;
}

struct CayleyEdge {
  std::uint64_t from = 0, to = 0, mult = 0;
  bool operator==(const CayleyEdge&) const = default;
};

struct CayleyComplex {
  std::uint64_t field_size = 0;
  std::vector<Mat2> vertices;
  std::vector<std::string> labels;
  std::vector<std::uint32_t> valencies;
  std::vector<std::vector<CayleyEdge>> edges;  // per direction, sorted by (from, to)
  std::vector<Square> squares;

  std::size_t size() const { return vertices.size(); }
};

inline std::uint64_t pack(const Mat2& m) {
  return std::uint64_t(m[0]) | (std::uint64_t(m[1]) << 16) | (std::uint64_t(m[2]) << 32) | (std::uint64_t(m[3]) << 48);
}

inline CayleyComplex build_cayley(const Presentation& P, const SplittingData& S, std::size_t max_vertices = 20'000'000) {
  const GaloisField& F = *S.field;
  if (F.size() > 65536) throw Error(Errc::TooLarge, "residue field larger than 65536");
  auto images = generator_images(P, S);
  for (const auto& sq : P.squares) {
    Mat2 m = mat_scalar(1);
    for (int t = 0; t < 4; ++t) m = mat_mul(F, m, images[t % 2 == 0 ? sq.v : sq.w][sq.word[t]]);
    if (!mat_is_scalar(m)) throw Error(Errc::RelationFailed, "square does not close modulo " + S.modulus);
  }
  for (auto& row : images)
    for (auto& m : row) m = projective_canonical(F, m);
  CayleyComplex C;
  C.field_size = F.size();
  C.squares = P.squares;
  for (const auto& D : P.directions) {
    C.labels.push_back(D.label);
    C.valencies.push_back(D.valency);
  }
  std::unordered_map<std::uint64_t, std::uint64_t> index;
  std::vector<std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>> mult(P.directions.size());
  const Mat2 id = mat_scalar(1);
  C.vertices.push_back(id);
  index.emplace(pack(id), 0);
  for (std::size_t head = 0; head < C.vertices.size(); ++head) {
    const Mat2 cur = C.vertices[head];
    for (std::size_t v = 0; v < images.size(); ++v)
      for (const auto& g : images[v]) {
        const Mat2 nxt = projective_canonical(F, mat_mul(F, g, cur));
        auto [it, inserted] = index.emplace(pack(nxt), C.vertices.size());
        if (inserted) {
          if (C.vertices.size() >= max_vertices) throw Error(Errc::TooLarge, "more than " + std::to_string(max_vertices) + " vertices");
          C.vertices.push_back(nxt);
        }
        ++mult[v][{head, it->second}];
      }
  }
  C.edges.resize(images.size());
  for (std::size_t v = 0; v < images.size(); ++v)
    for (const auto& [ft, m] : mult[v]) C.edges[v].push_back({ft.first, ft.second, m});
  return C;
}

// |PSL_2(N)| and |PGL_2(N)|
inline std::pair<std::uint64_t, std::uint64_t> psl_pgl_orders(std::uint64_t N) {
  const std::uint64_t pgl = N * (N * N - 1);
  return {N % 2 == 0 ? pgl : pgl / 2, pgl};
}

// ---- exports ----

inline std::string cayley_dot(const CayleyComplex& C) {
  std::string out = "graph cayley {\n  node [shape=point];\n";
  for (std::size_t v = 0; v < C.edges.size(); ++v)
    for (const auto& e : C.edges[v]) {
      if (e.from > e.to) continue;
      out += "  " + std::to_string(e.from) + " -- " + std::to_string(e.to) + " [label=\"" + C.labels[v] + "\"";
      if (e.mult > 1) out += ", multiplicity=" + std::to_string(e.mult);
      out += "];\n";
    }
  out += "}\n";
  return out;
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

inline std::uint64_t get_u64(const std::string& in, std::size_t& pos) {
  if (pos + 8 > in.size()) throw Error(Errc::MalformedInput, "truncated adjacency file");
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= std::uint64_t(static_cast<unsigned char>(in[pos + b])) << (8 * b);
  pos += 8;
  return v;
}

inline constexpr char kCayleyMagic[8] = {'L', 'F', 'C', 'A', 'Y', 'L', 'E', 'Y'};

// Little-endian u64 stream: magic, version, vertex count, field size,
// direction count, then per direction the label, valency, triplet count and
// (row, column, multiplicity) triplets in row-major order.
inline std::string cayley_binary(const CayleyComplex& C) {
  std::string out(kCayleyMagic, 8);
  put_u64(out, 1);
  put_u64(out, C.vertices.size());
  put_u64(out, C.field_size);
  put_u64(out, C.edges.size());
  for (std::size_t v = 0; v < C.edges.size(); ++v) {
    put_u64(out, C.labels[v].size());
    out += C.labels[v];
    put_u64(out, C.valencies[v]);
    put_u64(out, C.edges[v].size());
    for (const auto& e : C.edges[v]) {
      put_u64(out, e.from);
      put_u64(out, e.to);
      put_u64(out, e.mult);
    }
  }
  return out;
}

// The vertex matrices are not stored; the loaded complex carries placeholders.
inline CayleyComplex cayley_from_binary(const std::string& in) {
  if (in.size() < 8 || std::memcmp(in.data(), kCayleyMagic, 8) != 0) throw Error(Errc::MalformedInput, "not a latticeforge adjacency file");
  std::size_t pos = 8;
  if (get_u64(in, pos) != 1) throw Error(Errc::MalformedInput, "unsupported adjacency file version");
  CayleyComplex C;
  const auto n = get_u64(in, pos);
  C.field_size = get_u64(in, pos);
  const auto d = get_u64(in, pos);
  C.vertices.assign(n, Mat2{0, 0, 0, 0});
  for (std::uint64_t v = 0; v < d; ++v) {
    const auto len = get_u64(in, pos);
    if (pos + len > in.size()) throw Error(Errc::MalformedInput, "truncated label");
    C.labels.push_back(in.substr(pos, len));
    pos += len;
    C.valencies.push_back(static_cast<std::uint32_t>(get_u64(in, pos)));
    const auto m = get_u64(in, pos);
    std::vector<CayleyEdge> es;
    for (std::uint64_t k = 0; k < m; ++k) {
      CayleyEdge e;
      e.from = get_u64(in, pos);
      e.to = get_u64(in, pos);
      e.mult = get_u64(in, pos);
      if (e.from >= n || e.to >= n) throw Error(Errc::MalformedInput, "edge endpoint out of range");
      es.push_back(e);
    }
    C.edges.push_back(std::move(es));
  }
  if (pos != in.size()) throw Error(Errc::MalformedInput, "trailing bytes in adjacency file");
  return C;
}

}  // namespace latticeforge
