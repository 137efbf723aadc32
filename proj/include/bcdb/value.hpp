#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "bcdb/errors.hpp"

namespace bcdb {

/// Exact fixed-point decimal: units * 10^-scale, scale >= 1 after
/// normalization (a decimal that reduces to an integer becomes one).
struct Decimal {
  std::int64_t units = 0;
  int scale = 1;
  friend bool operator==(const Decimal&, const Decimal&) = default;
};

/// A ground value: symbol, integer, exact decimal, or a fresh constant.
/// Fresh constants live in their own namespace, disjoint from user values.
/// Equality is exact; order comparison is defined only between numerics.
class Value {
 public:
  enum class Kind { Integer, Decimal, Symbol, Fresh };

  Value() : rep_(std::int64_t{0}) {}

  static Value integer(std::int64_t v) { return Value(v); }
  // Normalizes: strips trailing zeros, collapses scale 0 to an integer.
  static Value decimal(std::int64_t units, int scale);
  static Value symbol(std::string name) { return Value(Sym{std::move(name)}); }
  static Value fresh(std::int64_t index) { return Value(Fresh{index}); }

  Kind kind() const;
  bool is_numeric() const {
    return kind() == Kind::Integer || kind() == Kind::Decimal;
  }

  std::int64_t as_integer() const { return std::get<std::int64_t>(rep_); }
  Decimal as_decimal() const { return std::get<Decimal>(rep_); }
  const std::string& as_symbol() const { return std::get<Sym>(rep_).name; }
  std::int64_t fresh_index() const { return std::get<Fresh>(rep_).index; }

  /// Numeric order comparison (-1/0/1). Throws TypeError unless both
  /// sides are numeric.
  static int order_compare(const Value& a, const Value& b);

  /// Total order used for canonical container ordering (numerics first by
  /// value, then symbols lexicographically, then fresh constants by index).
  /// Not the query-level order; never throws.
  static int canonical_compare(const Value& a, const Value& b);

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator<(const Value& a, const Value& b) {
    return canonical_compare(a, b) < 0;
  }

  std::string to_string() const;

 private:
  struct Sym {
    std::string name;
    friend bool operator==(const Sym&, const Sym&) = default;
  };
  struct Fresh {
    std::int64_t index = 0;
    friend bool operator==(const Fresh&, const Fresh&) = default;
  };
  using Rep = std::variant<std::int64_t, Decimal, Sym, Fresh>;

  explicit Value(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

}  // namespace bcdb
