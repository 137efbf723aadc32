#include "bcdb/value.hpp"

namespace bcdb {

Value Value::decimal(std::int64_t units, int scale) {
  if (scale < 0) throw TypeError("decimal scale must be non-negative");
  while (scale > 0 && units % 10 == 0) {
    units /= 10;
    --scale;
  }
  if (scale == 0) return integer(units);
  return Value(Decimal{units, scale});
}

Value::Kind Value::kind() const {
  switch (rep_.index()) {
    case 0: return Kind::Integer;
    case 1: return Kind::Decimal;
    case 2: return Kind::Symbol;
    default: return Kind::Fresh;
  }
}

namespace {

__int128 pow10(int n) {
  __int128 r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

// Compare two numerics exactly via scaled 128-bit integers.
int numeric_compare(const Value& a, const Value& b) {
  std::int64_t ua = a.kind() == Value::Kind::Integer ? a.as_integer()
                                                     : a.as_decimal().units;
  int sa = a.kind() == Value::Kind::Integer ? 0 : a.as_decimal().scale;
  std::int64_t ub = b.kind() == Value::Kind::Integer ? b.as_integer()
                                                     : b.as_decimal().units;
  int sb = b.kind() == Value::Kind::Integer ? 0 : b.as_decimal().scale;
  __int128 lhs = static_cast<__int128>(ua) * pow10(sb);
  __int128 rhs = static_cast<__int128>(ub) * pow10(sa);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

}  // namespace

int Value::order_compare(const Value& a, const Value& b) {
  if (!a.is_numeric() || !b.is_numeric()) {
    throw TypeError("order comparison requires two numeric values, got " +
                    a.to_string() + " and " + b.to_string());
  }
  return numeric_compare(a, b);
}

int Value::canonical_compare(const Value& a, const Value& b) {
  auto rank = [](Kind k) {
    switch (k) {
      case Kind::Integer:
      case Kind::Decimal: return 0;
      case Kind::Symbol: return 1;
      default: return 2;
    }
  };
  int ra = rank(a.kind());
  int rb = rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra == 0) {
    int c = numeric_compare(a, b);
    if (c != 0) return c;
    // 3 and 3.0 normalize to the same representation, so equal here.
    return 0;
  }
  if (ra == 1) {
    int c = a.as_symbol().compare(b.as_symbol());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (a.fresh_index() != b.fresh_index())
    return a.fresh_index() < b.fresh_index() ? -1 : 1;
  return 0;
}

bool operator==(const Value& a, const Value& b) { return a.rep_ == b.rep_; }

std::string Value::to_string() const {
  switch (kind()) {
    case Kind::Integer: return std::to_string(as_integer());
    case Kind::Decimal: {
      Decimal d = as_decimal();
      bool neg = d.units < 0;
      // Avoid overflow on INT64_MIN by going through unsigned.
      unsigned long long mag =
          neg ? 0ULL - static_cast<unsigned long long>(d.units)
              : static_cast<unsigned long long>(d.units);
      std::string digits = std::to_string(mag);
      if (static_cast<int>(digits.size()) <= d.scale)
        digits.insert(0, d.scale - digits.size() + 1, '0');
      digits.insert(digits.size() - d.scale, ".");
      return (neg ? "-" : "") + digits;
    }
    case Kind::Symbol: return as_symbol();
    default: return "fresh#" + std::to_string(fresh_index());
  }
}

}  // namespace bcdb
