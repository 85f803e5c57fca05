#pragma once

// Sparse exact linear algebra over ℚ, kept fraction-free: every stored
// vector is a primitive integer vector whose leading entry is positive.

#include <map>
#include <vector>

#include "atp/rational.hpp"

namespace atp::linalg {

template <class Key>
using SparseVector = std::map<Key, Integer>;

/// Scales to an integer vector with content 1 and positive leading entry.
template <class Key>
void make_primitive(SparseVector<Key>& v) {
  if (v.empty()) return;
  Integer g = 0;
  for (const auto& [k, x] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (v.begin()->second < 0) g = -g;
  if (g != 1)
    for (auto& [k, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

/// Clears denominators of a rational vector and makes it primitive.
template <class Key>
SparseVector<Key> from_rational(const std::map<Key, Rational>& q) {
  Integer l = 1;
  for (const auto& [k, x] : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  SparseVector<Key> v;
  for (const auto& [k, x] : q)
    if (x != 0) v.emplace(k, Integer(x.get_num() * (l / x.get_den())));
  make_primitive(v);
  return v;
}

/// v ← a·v − b·w.
template <class Key>
void combine(SparseVector<Key>& v, const Integer& a, const Integer& b, const SparseVector<Key>& w) {
  if (a != 1)
    for (auto& [k, x] : v) x *= a;
  for (const auto& [k, y] : w) {
    auto [it, inserted] = v.try_emplace(k, 0);
    it->second -= b * y;
    if (it->second == 0) v.erase(it);
  }
}

/// Eliminates the entry of `v` at the leading key of `pivot`.
template <class Key>
void eliminate(SparseVector<Key>& v, const SparseVector<Key>& pivot) {
  auto it = v.find(pivot.begin()->first);
  if (it == v.end()) return;
  Integer a = pivot.begin()->second;
  Integer b = it->second;
  Integer g = gcd(a, b);
  a /= g;
  b /= g;
  combine(v, a, b, pivot);
}

/// Row echelon basis keyed by the leading (smallest) key of each row.
template <class Key>
class Echelon {
 public:
  /// Reduces `v` until its leading key is not a pivot; inserts it if nonzero.
  /// Returns true when `v` was independent of the stored rows.
  bool insert(SparseVector<Key> v) {
    reduce_leading(v);
    if (v.empty()) return false;
    Key lead = v.begin()->first;
    rows_.emplace(lead, std::move(v));
    return true;
  }

  void reduce_leading(SparseVector<Key>& v) const {
    while (!v.empty()) {
      auto it = rows_.find(v.begin()->first);
      if (it == rows_.end()) break;
      eliminate(v, it->second);
      make_primitive(v);
    }
  }

  /// Eliminates every pivot key from `v`.
  void reduce_fully(SparseVector<Key>& v) const {
    for (const auto& [lead, row] : rows_) {
      if (v.empty()) break;
      if (v.count(lead)) eliminate(v, row);
    }
    make_primitive(v);
  }

  /// Back-substitutes so that each pivot key appears in exactly one row.
  void make_reduced() {
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      for (auto jt = std::next(it); jt != rows_.rend(); ++jt) {
        if (jt->second.count(it->first)) {
          eliminate(jt->second, it->second);
          make_primitive(jt->second);
        }
      }
    }
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  const std::map<Key, SparseVector<Key>>& rows() const noexcept { return rows_; }

 private:
  std::map<Key, SparseVector<Key>> rows_;
};

/// Result of kernel computation for a linear map given column by column.
template <class DomainKey>
struct KernelResult {
  std::vector<SparseVector<DomainKey>> kernel;
  std::size_t rank = 0;
};

/// Kernel of the map sending each domain key to its image vector. Images are
/// eliminated in domain order while recording the combination that produced
/// them; combinations whose image reduces to zero span the kernel.
template <class DomainKey, class CodomainKey>
KernelResult<DomainKey> kernel(const std::vector<std::pair<DomainKey, std::map<CodomainKey, Rational>>>& columns) {
  struct Row {
    SparseVector<CodomainKey> image;
    SparseVector<DomainKey> combination;
  };
  std::map<CodomainKey, Row> pivots;
  KernelResult<DomainKey> out;
  for (const auto& [key, image] : columns) {
    // Clear denominators on both halves so the combination stays exact.
    Integer l = 1;
    for (const auto& [k, x] : image) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    Row row{{}, SparseVector<DomainKey>{{key, l}}};
    for (const auto& [k, x] : image)
      if (x != 0) row.image.emplace(k, Integer(x.get_num() * (l / x.get_den())));
    while (!row.image.empty()) {
      auto it = pivots.find(row.image.begin()->first);
      if (it == pivots.end()) break;
      const Row& p = it->second;
      Integer a = p.image.begin()->second;
      Integer b = row.image.begin()->second;
      Integer g = gcd(a, b);
      a /= g;
      b /= g;
      combine(row.image, a, b, p.image);
      combine(row.combination, a, b, p.combination);
      // Keep both halves on a common scale.
      Integer c = 0;
      for (const auto& [k, x] : row.image) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      for (const auto& [k, x] : row.combination) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      if (c > 1) {
        for (auto& [k, x] : row.image) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
        for (auto& [k, x] : row.combination) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
      }
    }
    if (row.image.empty()) {
      make_primitive(row.combination);
      out.kernel.push_back(std::move(row.combination));
    } else {
      CodomainKey lead = row.image.begin()->first;
      pivots.emplace(lead, std::move(row));
    }
  }
  out.rank = pivots.size();
  return out;
}

}  // namespace atp::linalg
