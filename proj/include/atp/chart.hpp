#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "atp/errors.hpp"
#include "atp/rational_function.hpp"

namespace atp {

/// Auxiliary transcendental symbol with its derivative table. Coordinates
/// absent from the table have derivative zero.
struct AuxSymbol {
  std::string name;
  std::map<std::size_t, RationalFunction> derivatives;  // coordinate index -> d(name)/d(coordinate)
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// A single coordinate chart: ordered coordinates followed by auxiliary
/// symbols. Polynomial variable i is coordinate i for i < dimension() and
/// auxiliary symbol i - dimension() afterwards.
class Chart {
 public:
  static ChartPtr create(std::vector<std::string> coords, std::vector<AuxSymbol> aux = {}) {
    if (coords.empty()) throw InvalidChart("a chart needs at least one coordinate");
    if (coords.size() + aux.size() > max_variables)
      throw InvalidChart("at most " + std::to_string(max_variables) + " coordinates and auxiliary symbols");
    std::set<std::string> seen;
    auto check_name = [&](const std::string& n) {
      if (!is_identifier(n)) throw InvalidChart("'" + n + "' is not an identifier");
      if (!seen.insert(n).second) throw InvalidChart("duplicate name '" + n + "'");
    };
    for (const auto& c : coords) check_name(c);
    for (const auto& a : aux) check_name(a.name);
    const std::size_t nvars = coords.size() + aux.size();
    for (const auto& a : aux) {
      for (const auto& [coord, value] : a.derivatives) {
        if (coord >= coords.size())
          throw InvalidChart("derivative table of '" + a.name + "' names a non-coordinate");
        if (value.numerator().variable_span() > nvars || value.denominator().variable_span() > nvars)
          throw InvalidChart("derivative table of '" + a.name + "' leaves the chart");
      }
    }
    return ChartPtr(new Chart(std::move(coords), std::move(aux)));
  }

  static bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
  }

  std::size_t dimension() const noexcept { return coords_.size(); }
  std::size_t variable_count() const noexcept { return coords_.size() + aux_.size(); }
  const std::vector<std::string>& coordinates() const noexcept { return coords_; }
  const std::vector<AuxSymbol>& aux_symbols() const noexcept { return aux_; }

  const std::string& variable_name(std::size_t var) const {
    return var < coords_.size() ? coords_[var] : aux_.at(var - coords_.size()).name;
  }

  std::optional<std::size_t> coordinate_index(std::string_view name) const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == name) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variable_count(); ++i)
      if (variable_name(i) == name) return i;
    return std::nullopt;
  }

  std::size_t require_coordinate(std::string_view name) const {
    auto i = coordinate_index(name);
    if (!i) throw UnknownCoordinate("'" + std::string(name) + "' is not a coordinate of the chart");
    return *i;
  }

  /// Total derivative of a polynomial along coordinate `coord`, chaining
  /// through the auxiliary symbols' tables.
  RationalFunction partial(const Polynomial& p, std::size_t coord) const {
    RationalFunction result(p.derivative(coord));
    for (std::size_t a = 0; a < aux_.size(); ++a) {
      auto it = aux_[a].derivatives.find(coord);
      if (it == aux_[a].derivatives.end() || it->second.is_zero()) continue;
      std::size_t var = coords_.size() + a;
      if (!p.has_variable(var)) continue;
      result += RationalFunction(p.derivative(var)) * it->second;
    }
    return result;
  }

  /// Quotient rule on canonical numerator/denominator.
  RationalFunction partial(const RationalFunction& f, std::size_t coord) const {
    if (coord >= coords_.size()) throw UnknownCoordinate("coordinate index out of range");
    RationalFunction dn = partial(f.numerator(), coord);
    if (f.is_polynomial()) return dn;
    RationalFunction dd = partial(f.denominator(), coord);
    RationalFunction den(f.denominator());
    return dn / den - RationalFunction(f.numerator()) * dd / (den * den);
  }

  /// Same names and derivative tables; charts parsed from equal text are
  /// equivalent but not identical.
  bool equivalent(const Chart& other) const {
    if (coords_ != other.coords_ || aux_.size() != other.aux_.size()) return false;
    for (std::size_t a = 0; a < aux_.size(); ++a) {
      if (aux_[a].name != other.aux_[a].name) return false;
      auto nonzero = [](const AuxSymbol& s) {
        std::map<std::size_t, RationalFunction> m;
        for (const auto& [k, v] : s.derivatives)
          if (!v.is_zero()) m.emplace(k, v);
        return m;
      };
      if (nonzero(aux_[a]) != nonzero(other.aux_[a])) return false;
    }
    return true;
  }

  /// True when the variable set contains an auxiliary symbol used by `p`.
  bool uses_aux(const Polynomial& p) const {
    for (std::size_t v = coords_.size(); v < variable_count(); ++v)
      if (p.has_variable(v)) return true;
    return false;
  }

 private:
  Chart(std::vector<std::string> coords, std::vector<AuxSymbol> aux)
      : coords_(std::move(coords)), aux_(std::move(aux)) {}

  std::vector<std::string> coords_;
  std::vector<AuxSymbol> aux_;
};

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a != b) throw ChartMismatch("operands live on different charts");
}

}  // namespace atp
