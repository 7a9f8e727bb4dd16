#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "latticeforge/error.hpp"
#include "latticeforge/presentation.hpp"

namespace latticeforge {

// Morphism [n] -> [m] of the cube category: f(a)_j = eps_j a_{sigma^-1(j)},
// and f(a)_j = eps_j when j is not in the image of sigma.
struct CubeMorphism {
  unsigned n = 0, m = 0;
  std::vector<unsigned> sigma;  // 0-based, injective
  std::vector<int> eps;         // +1 or -1

  bool operator==(const CubeMorphism&) const = default;

  std::vector<int> operator()(const std::vector<int>& a) const {
    if (a.size() != n) throw Error(Errc::DimensionMismatch, "point of dimension " + std::to_string(a.size()) + " for a map from [" + std::to_string(n) + "]");
    std::vector<int> out(eps);
    for (unsigned i = 0; i < n; ++i) out[sigma[i]] = eps[sigma[i]] * a[i];
    return out;
  }

  static CubeMorphism identity(unsigned n) {
    CubeMorphism f;
    f.n = f.m = n;
    f.sigma.resize(n);
    std::iota(f.sigma.begin(), f.sigma.end(), 0u);
    f.eps.assign(n, 1);
    return f;
  }
};

// f o g
inline CubeMorphism compose(const CubeMorphism& f, const CubeMorphism& g) {
  if (g.m != f.n) throw Error(Errc::DimensionMismatch, "codomain [" + std::to_string(g.m) + "] against domain [" + std::to_string(f.n) + "]");
  CubeMorphism h;
  h.n = g.n;
  h.m = f.m;
  h.sigma.resize(g.n);
  for (unsigned i = 0; i < g.n; ++i) h.sigma[i] = f.sigma[g.sigma[i]];
  h.eps = f.eps;
  for (unsigned i = 0; i < f.n; ++i) h.eps[f.sigma[i]] *= g.eps[i];
  return h;
}

// face map [n] -> [n+1] inserting e at coordinate i (1-based)
inline CubeMorphism face(unsigned n, unsigned i, int e) {
  if (i < 1 || i > n + 1) throw Error(Errc::IndexOutOfRange, "face coordinate " + std::to_string(i) + " for dimension " + std::to_string(n));
  if (e != 1 && e != -1) throw Error(Errc::IndexOutOfRange, "face sign must be +1 or -1");
  CubeMorphism f;
  f.n = n;
  f.m = n + 1;
  f.sigma.resize(n);
  for (unsigned k = 0; k < n; ++k) f.sigma[k] = (k + 1 < i) ? k : k + 1;
  f.eps.assign(n + 1, 1);
  f.eps[i - 1] = e;
  return f;
}

inline std::vector<CubeMorphism> enumerate_morphisms(unsigned p, unsigned n) {
  std::vector<CubeMorphism> out;
  if (p > n) return out;
  std::vector<unsigned> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  // injections as ordered p-tuples of distinct targets
  std::vector<std::vector<unsigned>> injections;
  std::vector<unsigned> cur;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == p) {
      injections.push_back(cur);
      return;
    }
    for (unsigned t = 0; t < n; ++t) {
      if (used[t]) continue;
      used[t] = true;
      cur.push_back(t);
      self(self);
      cur.pop_back();
      used[t] = false;
    }
  };
  rec(rec);
  for (const auto& s : injections)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      CubeMorphism f;
      f.n = p;
      f.m = n;
      f.sigma = s;
      f.eps.resize(n);
      for (unsigned j = 0; j < n; ++j) f.eps[j] = (mask >> j) & 1 ? -1 : 1;
      out.push_back(std::move(f));
    }
  return out;
}

inline std::uint64_t factorial(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// number of p-dimensional faces of the n-cube as parametrized cubes
inline std::uint64_t count_cubes(unsigned n, unsigned p) {
  if (p > n) return 0;
  return factorial(p) * binomial(n, p) * (std::uint64_t(1) << n);
}

// |G_n| = 2^n n!, the signed permutations of [n]
inline std::uint64_t cube_group_order(unsigned n) { return (std::uint64_t(1) << n) * factorial(n); }

// Left side of the cardinality count for (square^a x square^b)_n decomposed
// over p + q = n: sum of #(square^a)_p #(square^b)_q |G_n| / (|G_p||G_q|).
inline std::uint64_t product_decomposition_count(unsigned a, unsigned b, unsigned n) {
  std::uint64_t total = 0;
  for (unsigned p = 0; p <= n; ++p) {
    const unsigned q = n - p;
    if (p > a || q > b) continue;
    total += count_cubes(a, p) * count_cubes(b, q) * (cube_group_order(n) / (cube_group_order(p) * cube_group_order(q)));
  }
  return total;
}

// One-vertex complex whose direction i carries the cyclic set Z/n_i: even
// indices are A+, the inverse of index x is x^1, and T adds 2.  For a in A_i
// and b in A_j the square has sides a, T^d(a) b, T^d(b) a, b with d = +1 on
// A+ and -1 on A-.  inverse_action flips the exponent.
inline Presentation cyclic_complex(const std::vector<std::uint32_t>& sizes, bool inverse_action = false) {
  if (sizes.empty()) throw Error(Errc::MalformedInput, "no directions");
  Presentation P;
  P.kind = PresentationKind::Cyclic;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto n = sizes[i];
    if (n == 0 || n % 2 != 0) throw Error(Errc::OddSize, "size " + std::to_string(n) + " is not a positive even number");
    Direction D;
    D.label = "A" + std::to_string(i + 1);
    D.valency = n;
    for (std::uint32_t x = 0; x < n; ++x) {
      D.generators.push_back(std::to_string(x));
      D.involution.push_back(x ^ 1u);
    }
    P.directions.push_back(std::move(D));
  }
  auto delta = [&](std::uint32_t x) { return (x % 2 == 0) != inverse_action ? 1 : -1; };
  auto T = [](std::uint32_t x, int k, std::uint32_t n) { return static_cast<std::uint32_t>((std::int64_t(x) + 2 * k + 2 * std::int64_t(n)) % n); };
  std::set<Square> squares;
  for (std::uint32_t i = 0; i < sizes.size(); ++i)
    for (std::uint32_t j = i + 1; j < sizes.size(); ++j)
      for (std::uint32_t a = 0; a < sizes[i]; ++a)
        for (std::uint32_t b = 0; b < sizes[j]; ++b) {
          const std::uint32_t top = T(a, delta(b), sizes[i]);
          const std::uint32_t right = T(b, delta(a), sizes[j]);
          squares.insert(canonicalize_square(P, {i, j, {a, right, top ^ 1u, b ^ 1u}}));
        }
  P.squares.assign(squares.begin(), squares.end());
  return P;
}

struct LinkReport {
  bool pass = true;
  std::vector<CornerDefect> defects;
};

inline LinkReport check_link(const Presentation& P) {
  LinkReport r;
  r.defects = corner_defects(P);
  r.pass = r.defects.empty();
  return r;
}

// The double: direction v gets A_v x A_v, squares come from pairs of squares
// of the same direction pair read with the same orientation.
inline Presentation double_presentation(const Presentation& P) {
  auto link = check_link(P);
  if (!link.pass) throw Error(Errc::LinkFailure, std::to_string(link.defects.size()) + " corner defects in the input");
  Presentation D;
  D.kind = PresentationKind::Double;
  for (const auto& dir : P.directions) {
    Direction nd;
    nd.label = dir.label;
    const auto n = static_cast<std::uint32_t>(dir.generators.size());
    nd.valency = n * n;
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y) {
        nd.generators.push_back("(" + dir.generators[x] + "," + dir.generators[y] + ")");
        nd.involution.push_back(dir.involution[x] * n + dir.involution[y]);
      }
    D.directions.push_back(std::move(nd));
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Square>> by_pair;
  for (const auto& s : P.squares) {
    Square c = canonicalize_square(P, s);
    by_pair[{c.v, c.w}].push_back(c);
  }
  std::set<Square> squares;
  for (const auto& [vw, list] : by_pair) {
    const auto nv = static_cast<std::uint32_t>(P.directions[vw.first].generators.size());
    const auto nw = static_cast<std::uint32_t>(P.directions[vw.second].generators.size());
    for (const auto& r1 : list)
      for (const auto& r2 : list) {
        auto orbit = square_orbit(P, r2);
        std::set<Square> variants(orbit.begin(), orbit.begin() + 4);  // same orientation as r2
        for (const auto& r2v : variants) {
          Square s{vw.first, vw.second,
                   {r1.word[0] * nv + r2v.word[0], r1.word[1] * nw + r2v.word[1], r1.word[2] * nv + r2v.word[2], r1.word[3] * nw + r2v.word[3]}};
          squares.insert(canonicalize_square(D, s));
        }
      }
  }
  D.squares.assign(squares.begin(), squares.end());
  return D;
}

}  // namespace latticeforge
