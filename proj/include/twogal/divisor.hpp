#pragma once

#include <map>

#include "twogal/autos.hpp"

namespace twogal {

// Formal integer combination of places.  Zero coefficients are never stored,
// so map equality is divisor equality.
class Divisor {
 public:
  Divisor() = default;
  static Divisor of(const Place& p, int64_t n = 1);
  static Divisor sum(const std::vector<Place>& ps);

  void add(const Place& p, int64_t n);
  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);
  friend Divisor operator+(Divisor a, const Divisor& b) {
    a += b;
    return a;
  }
  friend Divisor operator-(Divisor a, const Divisor& b) {
    a -= b;
    return a;
  }
  Divisor scaled(int64_t n) const;

  int64_t degree() const;
  int64_t coeff(const Place& p) const;
  size_t support_size() const { return terms_.size(); }
  bool zero() const { return terms_.empty(); }
  bool effective() const;
  bool operator==(const Divisor&) const = default;

  const std::map<Place, int64_t>& terms() const { return terms_; }
  std::string to_string(const FieldCtx& F, size_t max_terms = 12) const;

 private:
  std::map<Place, int64_t> terms_;
};

// Sum of g(P) over every g in G, counted with multiplicity.
Divisor orbit_divisor(const FiniteAutoGroup& G, const Place& p);

// Orbit space of H acting on its scene: representatives, induced maps on the
// quotient, and transport of divisors both ways.
class QuotientCtx {
 public:
  explicit QuotientCtx(const FiniteAutoGroup& H);

  const FiniteAutoGroup& group() const { return *H_; }
  const TestSet& upstairs() const { return H_->scene(); }
  // Downstairs scene: the least place of each orbit, sorted.
  const std::vector<Place>& places() const { return down_pts_; }
  size_t size() const { return down_pts_.size(); }

  uint32_t rep(uint32_t up) const { return rep_[up]; }
  uint32_t down_index(uint32_t up) const { return down_[rep_[up]]; }
  uint32_t orbit_size(uint32_t up) const { return osize_[up]; }
  // |H| divided by the orbit size: the multiplicity a downstairs place picks
  // up when pulled back through this point.
  uint32_t stab_order(uint32_t up) const;

  // Permutation induced on the orbit space; fails unless g maps orbits to
  // orbits bijectively.
  Perm induce(const Perm& g) const;
  // Induced permutations of every element of G, deduplicated and sorted.
  // There must be exactly |G| / |G meet H| of them: fewer means two distinct
  // cosets act identically downstairs.
  std::vector<Perm> induce_group(const FiniteAutoGroup& G) const;

  Divisor pushforward(const Divisor& D) const;
  Divisor pullback(const Divisor& Dbar) const;

 private:
  const FiniteAutoGroup* H_;
  std::vector<uint32_t> rep_;
  std::vector<uint32_t> osize_;
  std::vector<uint32_t> down_;
  std::vector<std::vector<uint32_t>> members_;
  std::vector<Place> down_pts_;
};

}  // namespace twogal
