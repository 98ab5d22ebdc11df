#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noether/lattice.hpp"

namespace noether {

/// One normal rational surface of degree d - 1 in P^d, with the pull-back
/// M₀ of a hyperplane section to its minimal resolution.
struct CatalogEntry {
  int case_id = 1;
  std::int64_t d = 0;
  std::optional<std::int64_t> e;  // Hirzebruch parameter
  std::string surface;            // "P2" or "F_e"
  std::string m0;                 // L, 2L, or C_e+kF
  Rational m0_squared;
};

namespace detail {

inline Rational plane_square(std::int64_t multiple) {
  auto p2 = IntersectionLattice::build({"L"}, {{1}});
  auto m0 = Rational(static_cast<long>(multiple)) * p2.basis(0);
  return pair(m0, m0);
}

inline Rational hirzebruch_square(std::int64_t e, const Rational& fibres) {
  auto fe = IntersectionLattice::build({"C", "F"}, {{-e, 1}, {1, 0}});
  auto m0 = fe.basis(0) + fibres * fe.basis(1);
  return pair(m0, m0);
}

}  // namespace detail

/// Every (Y, Σ, M₀) of degree d - 1, each verified to satisfy M₀² = d - 1 on
/// its own lattice (P² with L² = 1, or F_e with C_e² = -e, C_e·F = 1, F² = 0).
inline std::vector<CatalogEntry> catalog_degree_dminus1(std::int64_t d) {
  if (d < 2) throw Error(Errc::DTooSmall, "catalog needs d >= 2");
  std::vector<CatalogEntry> out;
  if (d == 2) out.push_back({1, d, std::nullopt, "P2", "L", detail::plane_square(1)});
  if (d == 5) out.push_back({2, d, std::nullopt, "P2", "2L", detail::plane_square(2)});
  for (std::int64_t e = 0; d >= 3 && d - e - 3 >= 0; ++e) {
    if ((d - e - 3) % 2 != 0) continue;
    const std::int64_t k = (d + e - 1) / 2;
    out.push_back({3, d, e, "F_" + std::to_string(e), "C_" + std::to_string(e) + "+" + std::to_string(k) + "F",
                   detail::hirzebruch_square(e, Rational(static_cast<long>(k)))});
  }
  if (d >= 3) {
    const std::int64_t e = d - 1;
    out.push_back({4, d, e, "F_" + std::to_string(e), "C_" + std::to_string(e) + "+" + std::to_string(d - 1) + "F",
                   detail::hirzebruch_square(e, Rational(static_cast<long>(d - 1)))});
  }
  for (const auto& entry : out)
    if (entry.m0_squared != Rational(static_cast<long>(d - 1)))
      throw Error(Errc::CoefficientCheckFailed, "catalog entry " + entry.m0 + " has M0^2 = " + entry.m0_squared.str());
  return out;
}

}  // namespace noether
