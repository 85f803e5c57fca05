#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "atp/scalar.hpp"

namespace atp {

/// Strictly increasing index tuple (0-based coordinate indices) stored as a
/// bit set. Ordered by size, then lexicographically as a tuple.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::uint32_t bits) : bits_(bits) {}

  static IndexSet single(std::size_t i) { return IndexSet(std::uint32_t{1} << i); }

  std::uint32_t bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool empty() const noexcept { return bits_ == 0; }
  bool contains(std::size_t i) const noexcept { return (bits_ >> i) & 1u; }
  bool intersects(IndexSet o) const noexcept { return (bits_ & o.bits_) != 0; }

  IndexSet with(std::size_t i) const noexcept { return IndexSet(bits_ | (std::uint32_t{1} << i)); }
  IndexSet without(std::size_t i) const noexcept { return IndexSet(bits_ & ~(std::uint32_t{1} << i)); }
  IndexSet operator|(IndexSet o) const noexcept { return IndexSet(bits_ | o.bits_); }

  /// Number of members strictly below i.
  std::size_t rank_of(std::size_t i) const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_ & ((std::uint32_t{1} << i) - 1)));
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend bool operator==(IndexSet a, IndexSet b) noexcept { return a.bits_ == b.bits_; }
  friend bool operator<(IndexSet a, IndexSet b) noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    std::uint32_t diff = a.bits_ ^ b.bits_;
    if (diff == 0) return false;
    // The first differing position holds the smaller element in whichever
    // tuple owns the lowest differing bit.
    return (a.bits_ & diff & (~diff + 1)) != 0;
  }

 private:
  std::uint32_t bits_ = 0;
};

/// Sign of the permutation sorting the concatenation (a, b) of two disjoint
/// increasing tuples.
inline int concat_sign(IndexSet a, IndexSet b) noexcept {
  std::size_t inversions = 0;
  for (std::uint32_t bits = a.bits(); bits; bits &= bits - 1)
    inversions += b.rank_of(static_cast<std::size_t>(std::countr_zero(bits)));
  return (inversions & 1u) ? -1 : 1;
}

enum class TensorKind { form, multivector };

inline const char* kind_name(TensorKind k) { return k == TensorKind::form ? "form" : "multivector"; }

/// Differential form or multivector field of fixed degree on a chart, stored
/// as a sparse map from increasing index tuples to nonzero coefficients.
/// Degree-0 tensors are scalars; tensors of degree above the dimension are
/// the (empty) zero tensor.
class GradedTensor {
 public:
  using Components = std::map<IndexSet, RationalFunction>;

  GradedTensor(ChartPtr chart, TensorKind kind, std::size_t degree)
      : chart_(std::move(chart)), kind_(kind), degree_(degree) {
    if (!chart_) throw InvalidChart("tensor without a chart");
  }

  static GradedTensor scalar(const Scalar& s, TensorKind kind = TensorKind::form) {
    GradedTensor t(s.chart(), kind, 0);
    t.add_to(IndexSet{}, s.value());
    return t;
  }

  static GradedTensor scalar(ChartPtr chart, RationalFunction value, TensorKind kind = TensorKind::form) {
    GradedTensor t(std::move(chart), kind, 0);
    t.add_to(IndexSet{}, value);
    return t;
  }

  /// dx_i (0-based coordinate index).
  static GradedTensor basis_form(ChartPtr chart, std::size_t i) { return basis(std::move(chart), TensorKind::form, i); }
  /// ∂_i (0-based coordinate index).
  static GradedTensor basis_vector(ChartPtr chart, std::size_t i) {
    return basis(std::move(chart), TensorKind::multivector, i);
  }

  /// c · e_{i1} ∧ ... ∧ e_{ip} for arbitrary (unsorted) indices; repeated
  /// indices give zero.
  static GradedTensor monomial(ChartPtr chart, TensorKind kind, const std::vector<std::size_t>& indices,
                               RationalFunction c) {
    GradedTensor t(chart, kind, indices.size());
    int sign = 1;
    IndexSet key;
    for (std::size_t i : indices) {
      if (i >= chart->dimension()) throw UnknownCoordinate("index out of range");
      if (key.contains(i)) return t;
      if ((key.size() - key.rank_of(i)) & 1u) sign = -sign;
      key = key.with(i);
    }
    t.add_to(key, sign > 0 ? std::move(c) : -c);
    return t;
  }

  const ChartPtr& chart() const noexcept { return chart_; }
  TensorKind kind() const noexcept { return kind_; }
  std::size_t degree() const noexcept { return degree_; }
  const Components& components() const noexcept { return components_; }
  bool is_zero() const noexcept { return components_.empty(); }

  RationalFunction component(IndexSet key) const {
    auto it = components_.find(key);
    return it == components_.end() ? RationalFunction() : it->second;
  }

  Scalar as_scalar() const {
    if (degree_ != 0) throw DegreeError("tensor of degree " + std::to_string(degree_) + " is not a scalar");
    return Scalar(chart_, component(IndexSet{}));
  }

  /// Adds `value` to the coefficient of the sorted key, dropping zeros.
  void add_to(IndexSet key, const RationalFunction& value) {
    if (value.is_zero()) return;
    if (key.size() != degree_) throw DegreeError("component key does not match the tensor degree");
    if (degree_ > chart_->dimension()) return;
    auto [it, inserted] = components_.try_emplace(key, value);
    if (!inserted) {
      it->second += value;
      if (it->second.is_zero()) components_.erase(it);
    }
  }

  GradedTensor operator-() const {
    GradedTensor r = *this;
    for (auto& [k, v] : r.components_) v = -v;
    return r;
  }

  friend GradedTensor operator+(const GradedTensor& a, const GradedTensor& b) {
    require_same_chart(a.chart_, b.chart_);
    // The zero scalar is neutral for any degree.
    if (a.degree_ == 0 && a.is_zero() && b.degree_ != 0) return b;
    if (b.degree_ == 0 && b.is_zero() && a.degree_ != 0) return a;
    if (a.degree_ != b.degree_)
      throw DegreeError("cannot add tensors of degree " + std::to_string(a.degree_) + " and " +
                        std::to_string(b.degree_));
    if (a.degree_ != 0 && a.kind_ != b.kind_) throw KindMismatch("cannot add a form and a multivector");
    GradedTensor r = a;
    for (const auto& [k, v] : b.components_) r.add_to(k, v);
    return r;
  }

  friend GradedTensor operator-(const GradedTensor& a, const GradedTensor& b) { return a + (-b); }

  GradedTensor& operator+=(const GradedTensor& o) { return *this = *this + o; }
  GradedTensor& operator-=(const GradedTensor& o) { return *this = *this - o; }

  GradedTensor scaled(const RationalFunction& c) const {
    GradedTensor r(chart_, kind_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : components_) r.add_to(k, v * c);
    return r;
  }

  friend GradedTensor operator*(const Scalar& s, const GradedTensor& t) {
    require_same_chart(s.chart(), t.chart());
    return t.scaled(s.value());
  }

  /// Structural equality; also requires matching kind unless both are
  /// scalars, which carry no meaningful kind.
  friend bool operator==(const GradedTensor& a, const GradedTensor& b) {
    if (a.chart_ != b.chart_ || a.degree_ != b.degree_) return false;
    if (a.degree_ != 0 && a.kind_ != b.kind_) return false;
    return a.components_ == b.components_;
  }

 private:
  static GradedTensor basis(ChartPtr chart, TensorKind kind, std::size_t i) {
    if (i >= chart->dimension()) throw UnknownCoordinate("index out of range");
    GradedTensor t(chart, kind, 1);
    t.add_to(IndexSet::single(i), RationalFunction(1));
    return t;
  }

  ChartPtr chart_;
  TensorKind kind_;
  std::size_t degree_;
  Components components_;
};

}  // namespace atp
