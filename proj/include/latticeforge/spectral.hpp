#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latticeforge/error.hpp"
#include "latticeforge/parallel.hpp"
#include "latticeforge/quotient.hpp"

namespace latticeforge {

// Exact integer symmetric matrix in CSR form.
struct SymmetricIntMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col;
  std::vector<std::int64_t> val;

  bool operator==(const SymmetricIntMatrix&) const = default;

  static SymmetricIntMatrix from_triplets(std::size_t n, std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> t) {
    std::sort(t.begin(), t.end());
    SymmetricIntMatrix M;
    M.n = n;
    M.row_ptr.assign(n + 1, 0);
    for (std::size_t k = 0; k < t.size();) {
      auto [r, c, v] = t[k];
      if (r >= n || c >= n) throw Error(Errc::IndexOutOfRange, "matrix entry outside the matrix");
      std::int64_t s = 0;
      while (k < t.size() && std::get<0>(t[k]) == r && std::get<1>(t[k]) == c) s += std::get<2>(t[k++]);
      if (s == 0) continue;
      M.col.push_back(c);
      M.val.push_back(s);
      ++M.row_ptr[r + 1];
    }
    for (std::size_t r = 0; r < n; ++r) M.row_ptr[r + 1] += M.row_ptr[r];
    if (!M.symmetric()) throw Error(Errc::NonSymmetric, "matrix is not symmetric");
    return M;
  }

  static SymmetricIntMatrix from_dense(std::size_t n, const std::vector<std::int64_t>& a) {
    if (a.size() != n * n) throw Error(Errc::DimensionMismatch, "dense matrix size");
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> t;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a[i * n + j] != 0) t.emplace_back(i, j, a[i * n + j]);
    return from_triplets(n, std::move(t));
  }

  std::int64_t at(std::size_t i, std::size_t j) const {
    auto b = col.begin() + row_ptr[i], e = col.begin() + row_ptr[i + 1];
    auto it = std::lower_bound(b, e, j);
    return (it != e && *it == j) ? val[it - col.begin()] : 0;
  }

  bool symmetric() const {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (at(col[k], i) != val[k]) return false;
    return true;
  }

  std::int64_t row_sum(std::size_t i) const {
    std::int64_t s = 0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k];
    return s;
  }

  std::int64_t trace() const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += at(i, i);
    return s;
  }

  std::vector<double> dense() const {
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) a[i * n + col[k]] = static_cast<double>(val[k]);
    return a;
  }
};

inline SymmetricIntMatrix adjacency(const CayleyComplex& C, std::size_t v) {
  if (v >= C.edges.size()) throw Error(Errc::UnknownDirection, "direction " + std::to_string(v));
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> t;
  for (const auto& e : C.edges[v]) t.emplace_back(e.from, e.to, static_cast<std::int64_t>(e.mult));
  return SymmetricIntMatrix::from_triplets(C.size(), std::move(t));
}

// exact product, not necessarily symmetric, returned as sorted triplets
inline std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> multiply(const SymmetricIntMatrix& A, const SymmetricIntMatrix& B) {
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> out;
  std::map<std::size_t, std::int64_t> row;
  for (std::size_t i = 0; i < A.n; ++i) {
    row.clear();
    for (std::size_t ka = A.row_ptr[i]; ka < A.row_ptr[i + 1]; ++ka) {
      const std::size_t j = A.col[ka];
      for (std::size_t kb = B.row_ptr[j]; kb < B.row_ptr[j + 1]; ++kb) row[B.col[kb]] += A.val[ka] * B.val[kb];
    }
    for (const auto& [c, v] : row)
      if (v != 0) out.emplace_back(i, c, v);
  }
  return out;
}

inline bool commute(const SymmetricIntMatrix& A, const SymmetricIntMatrix& B) {
  if (A.n != B.n) throw Error(Errc::DimensionMismatch, "matrices of different order");
  return multiply(A, B) == multiply(B, A);
}

// 2-coloring of the graph with adjacency A (loops make it non-bipartite)
inline bool is_bipartite(const SymmetricIntMatrix& A) {
  std::vector<int> color(A.n, -1);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < A.n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t k = A.row_ptr[u]; k < A.row_ptr[u + 1]; ++k) {
        const std::size_t w = A.col[k];
        if (color[w] == -1) {
          color[w] = 1 - color[u];
          stack.push_back(w);
        } else if (color[w] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline std::size_t connected_components(const SymmetricIntMatrix& A) {
  std::vector<bool> seen(A.n, false);
  std::vector<std::size_t> stack;
  std::size_t count = 0;
  for (std::size_t s = 0; s < A.n; ++s) {
    if (seen[s]) continue;
    ++count;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t k = A.row_ptr[u]; k < A.row_ptr[u + 1]; ++k)
        if (!seen[A.col[k]]) {
          seen[A.col[k]] = true;
          stack.push_back(A.col[k]);
        }
    }
  }
  return count;
}

inline constexpr std::size_t kMaxDenseOrder = 8192;

// Eigenvalues of a dense symmetric matrix (row-major, destroyed), descending.
// Householder reduction to tridiagonal form followed by implicit QL.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw Error(Errc::DimensionMismatch, "dense matrix size");
  if (n > kMaxDenseOrder) throw Error(Errc::TooLarge, "order " + std::to_string(n) + " exceeds " + std::to_string(kMaxDenseOrder));
  std::vector<double> d(n, 0.0), e(n, 0.0);
  if (n == 0) return d;
  std::vector<double> v(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // length of the column below the diagonal
    double* row_k = &a[k * n];
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm2 += row_k[k + 1 + i] * row_k[k + 1 + i];
    d[k] = row_k[k];
    const double x0 = row_k[k + 1];
    const double tail2 = norm2 - x0 * x0;
    if (tail2 <= 0.0) {
      e[k] = x0;
      continue;
    }
    const double alpha = x0 > 0 ? -std::sqrt(norm2) : std::sqrt(norm2);
    for (std::size_t i = 0; i < m; ++i) v[i] = row_k[k + 1 + i];
    v[0] -= alpha;
    const double vv = tail2 + v[0] * v[0];
    const double beta = 2.0 / vv;
    e[k] = alpha;
    // p = beta * B v on the trailing block
    for (std::size_t i = 0; i < m; ++i) {
      const double* bi = &a[(k + 1 + i) * n + k + 1];
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += bi[j] * v[j];
      p[i] = beta * s;
    }
    double vp = 0.0;
    for (std::size_t i = 0; i < m; ++i) vp += v[i] * p[i];
    const double K = 0.5 * beta * vp;
    for (std::size_t i = 0; i < m; ++i) p[i] -= K * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      double* bi = &a[(k + 1 + i) * n + k + 1];
      const double vi = v[i], wi = p[i];
      for (std::size_t j = 0; j < m; ++j) bi[j] -= vi * p[j] + wi * v[j];
    }
  }
  if (n >= 2) {
    d[n - 2] = a[(n - 2) * n + n - 2];
    e[n - 2] = a[(n - 1) * n + n - 2];
  }
  d[n - 1] = a[(n - 1) * n + n - 1];
  e[n - 1] = 0.0;

  // implicit QL with Wilkinson-type shifts; e[i] couples d[i] and d[i+1]
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 200) throw Error(Errc::RelationFailed, "eigenvalue iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, pp = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= pp;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - pp;
          r = (d[i] - g) * s + 2.0 * c * b;
          pp = s * r;
          d[i + 1] = g + pp;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= pp;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end(), std::greater<double>());
  return d;
}

inline std::vector<double> spectrum(const SymmetricIntMatrix& M) {
  if (!M.symmetric()) throw Error(Errc::NonSymmetric, "matrix is not symmetric");
  return symmetric_eigenvalues(M.dense(), M.n);
}

// ||M x - lambda x|| / ||x|| for x from inverse iteration; small orders only
inline double eigen_residual(const SymmetricIntMatrix& M, double lambda, int iterations = 4) {
  const std::size_t n = M.n;
  std::vector<double> a = M.dense();
  const double shift = lambda + 1e-10 * (1.0 + std::fabs(lambda));
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] -= shift;
  // LU with partial pivoting
  std::vector<std::size_t> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i * n + k]) > std::fabs(a[best * n + k])) best = i;
    piv[k] = best;
    if (best != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[best * n + j]);
    if (a[k * n + k] == 0.0) a[k * n + k] = 1e-300;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      a[i * n + k] = f;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.001 * static_cast<double>(i % 7);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t k = 0; k < n; ++k) std::swap(x[k], x[piv[k]]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= a[i * n + j] * x[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x[i] -= a[i * n + j] * x[j];
      x[i] /= a[i * n + i];
    }
    double nrm = 0.0;
    for (double t : x) nrm += t * t;
    nrm = std::sqrt(nrm);
    for (double& t : x) t /= nrm;
  }
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = -lambda * x[i];
    for (std::size_t k = M.row_ptr[i]; k < M.row_ptr[i + 1]; ++k) s += static_cast<double>(M.val[k]) * x[M.col[k]];
    res += s * s;
  }
  return std::sqrt(res);
}

struct DirectionSpectrum {
  std::string label;
  std::uint32_t q = 0;  // valency - 1
  std::vector<double> eigenvalues;
  std::size_t plus_trivial = 0;
  std::size_t minus_trivial = 0;
  double max_nontrivial = 0.0;
  double bound = 0.0;
  bool pass = false;
  bool bipartite = false;
  std::size_t components = 0;
  bool regular = false;
  std::int64_t loops = 0;  // trace
  bool bipartite_consistent = false;
  bool components_consistent = false;
};

struct RamanujanReport {
  double tol = 1e-9;
  std::size_t vertices = 0;
  std::vector<DirectionSpectrum> directions;
  std::vector<std::vector<bool>> commute;
  bool pass = false;
};

inline RamanujanReport ramanujan_report(const CayleyComplex& C, double tol = 1e-9) {
  RamanujanReport R;
  R.tol = tol;
  R.vertices = C.size();
  const std::size_t d = C.edges.size();
  std::vector<SymmetricIntMatrix> A;
  for (std::size_t v = 0; v < d; ++v) A.push_back(adjacency(C, v));
  R.directions.resize(d);
  parallel_for(d, [&](std::size_t v) {
    DirectionSpectrum& S = R.directions[v];
    S.label = C.labels[v];
    S.q = C.valencies[v] - 1;
    const double top = static_cast<double>(C.valencies[v]);
    S.regular = true;
    for (std::size_t i = 0; i < A[v].n; ++i)
      if (A[v].row_sum(i) != C.valencies[v]) S.regular = false;
    S.loops = A[v].trace();
    S.eigenvalues = spectrum(A[v]);
    for (double l : S.eigenvalues) {
      if (std::fabs(l - top) <= tol) ++S.plus_trivial;
      else if (std::fabs(l + top) <= tol) ++S.minus_trivial;
      else S.max_nontrivial = std::max(S.max_nontrivial, std::fabs(l));
    }
    S.bound = 2.0 * std::sqrt(static_cast<double>(S.q));
    S.pass = S.max_nontrivial <= S.bound + tol;
    S.bipartite = is_bipartite(A[v]);
    S.components = connected_components(A[v]);
    S.bipartite_consistent = (S.minus_trivial > 0) == S.bipartite;
    S.components_consistent = S.plus_trivial == S.components;
  });
  R.commute.assign(d, std::vector<bool>(d, true));
  for (std::size_t v = 0; v < d; ++v)
    for (std::size_t w = v + 1; w < d; ++w) R.commute[v][w] = R.commute[w][v] = commute(A[v], A[w]);
  R.pass = true;
  for (const auto& S : R.directions)
    R.pass = R.pass && S.pass && S.regular && S.bipartite_consistent && S.components_consistent;
  for (const auto& row : R.commute)
    for (bool b : row) R.pass = R.pass && b;
  return R;
}

// fixed-point text that never prints a negative zero
inline std::string format_real(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  std::string s(buf);
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline nlohmann::ordered_json report_json(const RamanujanReport& R, bool with_eigenvalues = false) {
  nlohmann::ordered_json j;
  j["vertices"] = R.vertices;
  j["tolerance"] = format_real(R.tol, 15);
  j["pass"] = R.pass;
  j["directions"] = nlohmann::ordered_json::array();
  for (const auto& S : R.directions) {
    nlohmann::ordered_json d;
    d["label"] = S.label;
    d["q"] = S.q;
    d["bound"] = format_real(S.bound);
    d["max_nontrivial"] = format_real(S.max_nontrivial);
    d["trivial_plus"] = S.plus_trivial;
    d["trivial_minus"] = S.minus_trivial;
    d["bipartite"] = S.bipartite;
    d["components"] = S.components;
    d["regular"] = S.regular;
    d["loops"] = S.loops;
    d["bipartite_consistent"] = S.bipartite_consistent;
    d["components_consistent"] = S.components_consistent;
    d["pass"] = S.pass;
    if (with_eigenvalues) {
      std::vector<std::string> ev;
      for (double l : S.eigenvalues) ev.push_back(format_real(l));
      d["eigenvalues"] = ev;
    }
    j["directions"].push_back(d);
  }
  j["commute"] = R.commute;
  return j;
}

inline std::string spectrum_csv(const RamanujanReport& R) {
  std::string out = "direction,index,eigenvalue\n";
  for (const auto& S : R.directions)
    for (std::size_t i = 0; i < S.eigenvalues.size(); ++i) out += S.label + "," + std::to_string(i) + "," + format_real(S.eigenvalues[i]) + "\n";
  return out;
}

}  // namespace latticeforge
