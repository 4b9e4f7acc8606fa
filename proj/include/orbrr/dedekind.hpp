#pragma once

// Generalized Dedekind sums of a cyclic quotient type, computed through
// the polynomial Delta = sum sigma_{r-i} t^i.

#include "orbrr/invmod.hpp"

#include <numeric>
#include <ostream>
#include <string>
#include <vector>

namespace orbrr {

/// Type (1/r)(a_1, ..., a_n). Weights are stored as residues in [1, r]; for
/// r > 1 a residue of r (weight divisible by r) is rejected.
class OrbifoldType {
 public:
  OrbifoldType() = default;
  OrbifoldType(std::int64_t r, std::vector<std::int64_t> a) : r_(r), a_(std::move(a)) {
    if (r_ < 1) throw std::invalid_argument("OrbifoldType: r must be positive");
    if (r_ > 1 && a_.empty()) throw std::invalid_argument("OrbifoldType: empty weight list");
    std::int64_t g = r_;
    for (auto& x : a_) {
      x = mod_floor(x - 1, r_) + 1;
      if (r_ > 1 && x == r_) throw std::invalid_argument("OrbifoldType: weight divisible by r in " + str());
      g = gcd_int(g, x);
    }
    if (r_ > 1 && g != 1) throw std::invalid_argument("OrbifoldType: action of " + str() + " is not effective");
  }

  std::int64_t r() const { return r_; }
  const std::vector<std::int64_t>& a() const { return a_; }
  std::int64_t n() const { return static_cast<std::int64_t>(a_.size()); }
  std::int64_t weight_sum() const { return std::accumulate(a_.begin(), a_.end(), std::int64_t{0}); }
  bool isolated() const {
    return std::all_of(a_.begin(), a_.end(), [&](std::int64_t x) { return gcd_int(x, r_) == 1; });
  }
  bool trivial() const { return r_ == 1; }

  std::string str() const {
    std::string s = "1/" + std::to_string(r_) + "(";
    for (std::size_t i = 0; i < a_.size(); ++i) s += (i ? "," : "") + std::to_string(a_[i]);
    return s + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const OrbifoldType& q) { return os << q.str(); }
  friend bool operator==(const OrbifoldType&, const OrbifoldType&) = default;

 private:
  std::int64_t r_ = 1;
  std::vector<std::int64_t> a_;
};

struct DeltaPoly {
  LaurentPoly poly;  // support in [1, r]
  std::int64_t r = 1;
};

struct SigmaVector {
  std::int64_t r = 1;
  std::vector<Rational> values;  // sigma_0 .. sigma_{r-1}

  /// Periodic extension.
  const Rational& operator[](std::int64_t i) const { return values[static_cast<std::size_t>(mod_floor(i, r))]; }
  friend bool operator==(const SigmaVector&, const SigmaVector&) = default;
};

/// Delta = h t InvMod(h t A, F, 0).
inline DeltaPoly delta(const OrbifoldType& q) {
  if (q.trivial()) return {LaurentPoly(), 1};
  ModulusData m = build_modulus(q.r(), q.a());
  LaurentPoly ht = m.h.shifted(1);
  return {ht * inv_mod(ht * m.A, m.F, 0, q.r()), q.r()};
}

inline SigmaVector sigma_from_delta(const DeltaPoly& d) {
  SigmaVector s{d.r, std::vector<Rational>(static_cast<std::size_t>(d.r))};
  if (d.r == 1) return s;
  for (std::int64_t j = 0; j < d.r; ++j) s.values[static_cast<std::size_t>(j)] = d.poly.coeff(d.r - j);
  return s;
}

inline SigmaVector sigma(const OrbifoldType& q) { return sigma_from_delta(delta(q)); }

/// Closed form for the surface type (1/r)(a, r - a):
/// sigma_i = (r^2 - 1)/12r - bi(r - bi)/2r, b = a^{-1} mod r, bi reduced mod r.
inline SigmaVector sigma_surface_closed(std::int64_t r, std::int64_t a) {
  if (r < 1) throw std::invalid_argument("sigma_surface_closed: r must be positive");
  const std::int64_t b = int_inv_mod(a, r);
  SigmaVector s{r, {}};
  const Rational base(r * r - 1, 12 * r);
  for (std::int64_t i = 0; i < r; ++i) {
    const std::int64_t bi = mod_floor(b * i, r);
    s.values.push_back(base - Rational(bi * (r - bi), 2 * r));
  }
  return s;
}

}  // namespace orbrr
