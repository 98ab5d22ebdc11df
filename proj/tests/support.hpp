#pragma once

#include <string>
#include <vector>

#include "noether/lattice.hpp"
#include "oracles.hpp"

namespace testing_support {

using noether::DivisorClass;
using noether::IntersectionLattice;
using noether::Rational;

inline Rational R(long n, long d = 1) { return Rational(n, d); }

inline IntersectionLattice lattice_of(const oracle::IntMat& g) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g.size(); ++i) names.push_back("C" + std::to_string(i));
  return IntersectionLattice::build(names, g);
}

inline DivisorClass class_of(const IntersectionLattice& l, const std::vector<std::int64_t>& c) {
  std::vector<Rational> v;
  for (auto x : c) v.emplace_back(static_cast<long>(x));
  return l.make(std::move(v));
}

inline DivisorClass class_of(const IntersectionLattice& l, std::initializer_list<long> c) {
  return class_of(l, std::vector<std::int64_t>(c.begin(), c.end()));
}

inline DivisorClass class_of(const IntersectionLattice& l, std::vector<Rational> c) { return l.make(std::move(c)); }

inline std::vector<oracle::Q> to_q(const std::vector<Rational>& v) {
  std::vector<oracle::Q> out;
  for (const auto& x : v) out.push_back(x.raw());
  return out;
}

inline std::vector<oracle::Q> to_q(const std::vector<std::int64_t>& v) {
  std::vector<oracle::Q> out;
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

/// {H, G} with H² = 1, G² = -2, H·G = 0.
inline IntersectionLattice h_gamma() { return IntersectionLattice::build({"H", "G"}, {{1, 0}, {0, -2}}); }

/// The [2,2] chain.
inline IntersectionLattice chain22() { return IntersectionLattice::build({"G1", "G2"}, {{-2, 1}, {1, -2}}); }

/// {H, G1, G2} with H·G1 = 1 and the [2,2] chain.
inline IntersectionLattice audit_lattice() {
  return IntersectionLattice::build({"H", "G1", "G2"}, {{1, 1, 0}, {1, -2, 1}, {0, 1, -2}});
}

/// Every sequence with entries in [lo, hi] and length 1..max_len.
inline std::vector<std::vector<std::int64_t>> all_sequences(int lo, int hi, std::size_t max_len) {
  std::vector<std::vector<std::int64_t>> out, layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& s : layer)
      for (int v = lo; v <= hi; ++v) {
        auto t = s;
        t.push_back(v);
        next.push_back(t);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace testing_support
