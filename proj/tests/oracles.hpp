#pragma once

// Reference implementations used only by the tests. Nothing here calls the
// library's linear algebra: they work on raw mpq_class and use different
// algorithms (LDL pivots, characteristic polynomials, subset enumeration,
// pattern grids) so that agreement is evidence, not tautology.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Mat = std::vector<std::vector<Q>>;
using IntMat = std::vector<std::vector<std::int64_t>>;

inline Mat to_q(const IntMat& g, const std::vector<std::size_t>& s) {
  Mat m(s.size(), std::vector<Q>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = static_cast<long>(g[s[i]][s[j]]);
  return m;
}

inline std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

/// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<Q>> solve(Mat a, std::vector<Q> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Q f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Q> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Q s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

/// -G positive definite iff every pivot of symmetric elimination without
/// pivoting is positive.
inline bool negative_definite_ldl(const Mat& g) {
  Mat a = g;
  const std::size_t n = a.size();
  for (auto& row : a)
    for (auto& x : row) x = -x;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[c][c] <= 0) return false;
    for (std::size_t r = c + 1; r < n; ++r) {
      Q f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return true;
}

/// xᵀGx < 0 for every nonzero x in [-b, b]^k. Necessary for negative
/// definiteness; for the small entries used in tests it is also sufficient
/// in practice, and the tests only use it as a one-way check.
inline bool negative_on_box(const Mat& g, int b) {
  const std::size_t k = g.size();
  std::vector<int> x(k, -b);
  for (;;) {
    bool nonzero = false;
    for (int v : x) nonzero = nonzero || v != 0;
    if (nonzero) {
      Q s = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s += g[i][j] * x[i] * x[j];
      if (s >= 0) return false;
    }
    std::size_t i = 0;
    while (i < k && x[i] == b) x[i++] = -b;
    if (i == k) return true;
    ++x[i];
  }
}

/// Coefficients c_0..c_n of det(tI - A) (c_n = 1), by Faddeev–LeVerrier.
inline std::vector<Q> charpoly(const Mat& a) {
  const std::size_t n = a.size();
  std::vector<Q> c(n + 1);
  c[n] = 1;
  Mat m(n, std::vector<Q>(n, 0));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Mat next(n, std::vector<Q>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Q s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    Q tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * next[l][i];
    c[n - k] = -tr / static_cast<long>(k);
    m = std::move(next);
  }
  return c;
}

struct Inertia {
  int pos = 0, neg = 0, zero = 0;
};

inline int sign_changes(const std::vector<Q>& c) {
  int changes = 0, last = 0;
  for (const auto& x : c) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// For a symmetric matrix every root of the characteristic polynomial is
/// real, so Descartes' rule counts positive and negative roots exactly.
inline Inertia inertia(const Mat& a) {
  auto c = charpoly(a);
  Inertia in;
  std::size_t z = 0;
  while (z < c.size() && c[z] == 0) ++z;
  in.zero = static_cast<int>(z);
  std::vector<Q> rest(c.begin() + static_cast<long>(z), c.end());
  in.pos = sign_changes(rest);
  std::vector<Q> flipped = rest;
  for (std::size_t i = 1; i < flipped.size(); i += 2) flipped[i] = -flipped[i];
  in.neg = sign_changes(flipped);
  return in;
}

inline bool negative_definite_descartes(const Mat& g) {
  auto in = inertia(g);
  return in.neg == static_cast<int>(g.size());
}

inline Q pair_row(const IntMat& g, const std::vector<Q>& a, std::size_t i) {
  Q s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * static_cast<long>(g[k][i]);
  return s;
}

inline Q pair(const IntMat& g, const std::vector<Q>& a, const std::vector<Q>& b) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += pair_row(g, a, i) * b[i];
  return s;
}

struct ZariskiCandidate {
  std::vector<std::size_t> support;
  std::vector<Q> negative;
  std::vector<Q> positive;
};

/// Every negative-definite subset S (and the empty one): solve N on S with
/// N·Γ_j = D·Γ_j, keep it when N > 0 on S and P = D - N is nef on all
/// classes.
inline std::vector<ZariskiCandidate> zariski_candidates(const IntMat& g, const std::vector<Q>& d) {
  const std::size_t r = g.size();
  std::vector<ZariskiCandidate> out;
  for (std::uint32_t mask = 0; mask < (1U << r); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1U) s.push_back(i);
    std::vector<Q> n(r, 0);
    if (!s.empty()) {
      Mat gs = to_q(g, s);
      if (!negative_definite_ldl(gs)) continue;
      std::vector<Q> rhs;
      for (auto j : s) rhs.push_back(pair_row(g, d, j));
      auto x = solve(gs, rhs);
      if (!x) continue;
      bool positive = true;
      for (std::size_t k = 0; k < s.size(); ++k) {
        if ((*x)[k] <= 0) positive = false;
        n[s[k]] = (*x)[k];
      }
      if (!positive) continue;
    }
    std::vector<Q> p(r);
    for (std::size_t i = 0; i < r; ++i) p[i] = d[i] - n[i];
    bool nef = true;
    for (std::size_t i = 0; i < r; ++i)
      if (pair_row(g, p, i) < 0) nef = false;
    if (nef) out.push_back({s, n, p});
  }
  return out;
}

/// 𝔢_A for a pattern t on a support with Gram gs and coefficients gamma:
/// (Σγt)/(Σβt) with gs·β = -min(1,t), or 0 when Σγt = 0.
inline Q e_of_pattern(const Mat& gs, const std::vector<Q>& gamma, const std::vector<Q>& t) {
  Q an = 0;
  for (std::size_t i = 0; i < t.size(); ++i) an += gamma[i] * t[i];
  if (an == 0) return 0;
  std::vector<Q> rhs(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) rhs[i] = -(t[i] < 1 ? t[i] : Q(1));
  auto beta = solve(gs, rhs).value();
  Q ae = 0;
  for (std::size_t i = 0; i < t.size(); ++i) ae += beta[i] * t[i];
  return an / ae;
}

/// Largest 𝔢_A over the integer grid {0..bound}^k.
inline Q e_grid_max(const Mat& gs, const std::vector<Q>& gamma, int bound) {
  const std::size_t k = gs.size();
  std::vector<Q> t(k, 0);
  std::vector<int> ti(k, 0);
  Q best = 0;
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) t[i] = ti[i];
    Q v = e_of_pattern(gs, gamma, t);
    if (v > best) best = v;
    std::size_t i = 0;
    while (i < k && ti[i] == bound) ti[i++] = 0;
    if (i == k) return best;
    ++ti[i];
  }
}

/// Chain slack (E_A(Θ) - N(Θ))·A with an independent solve.
inline Q chain_slack(const std::vector<std::int64_t>& e, const std::vector<Q>& t) {
  const std::size_t r = e.size();
  Mat g(r, std::vector<Q>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    g[i][i] = static_cast<long>(-e[i]);
    if (i + 1 < r) g[i][i + 1] = g[i + 1][i] = 1;
  }
  std::vector<Q> unit(r, 0);
  unit[0] = -1;
  auto gamma = solve(g, unit).value();
  std::vector<Q> rhs(r);
  for (std::size_t i = 0; i < r; ++i) rhs[i] = -(t[i] < 1 ? t[i] : Q(1));
  auto beta = solve(g, rhs).value();
  Q s = 0;
  for (std::size_t i = 0; i < r; ++i) s += (beta[i] - gamma[i]) * t[i];
  return s;
}

/// Random configuration: diagonal in [lo_d, hi_d], off-diagonal in [0, hi_off].
inline IntMat random_gram(std::mt19937_64& rng, std::size_t r, int lo_d, int hi_d, int hi_off) {
  std::uniform_int_distribution<int> dd(lo_d, hi_d), od(0, hi_off);
  IntMat g(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    g[i][i] = dd(rng);
    for (std::size_t j = i + 1; j < r; ++j) g[i][j] = g[j][i] = od(rng);
  }
  return g;
}

inline std::vector<std::int64_t> random_ints(std::mt19937_64& rng, std::size_t r, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::int64_t> v(r);
  for (auto& x : v) x = dist(rng);
  return v;
}

/// A negative-definite Gram with non-negative off-diagonals, as for Supp(N).
inline IntMat random_negative_support(std::mt19937_64& rng, std::size_t k) {
  for (;;) {
    auto g = random_gram(rng, k, -5, -2, 1);
    if (negative_definite_ldl(to_q(g, iota(k)))) return g;
  }
}

/// Signature (1, r-1) and nondegenerate, decided by the Descartes oracle.
inline bool hyperbolic(const IntMat& g) {
  auto in = inertia(to_q(g, iota(g.size())));
  return in.pos == 1 && in.zero == 0 && in.neg == static_cast<int>(g.size()) - 1;
}

}  // namespace oracle
