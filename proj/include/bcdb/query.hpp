#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bcdb/state.hpp"

namespace bcdb {

/// A variable or a ground constant.
class Term {
 public:
  static Term variable(std::string name) { return Term(Var{std::move(name)}); }
  static Term constant(Value v) { return Term(std::move(v)); }

  bool is_variable() const { return std::holds_alternative<Var>(rep_); }
  const std::string& variable_name() const { return std::get<Var>(rep_).name; }
  const Value& constant_value() const { return std::get<Value>(rep_); }

  std::string to_string() const;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  struct Var {
    std::string name;
    friend bool operator==(const Var&, const Var&) = default;
  };
  using Rep = std::variant<Var, Value>;
  explicit Term(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

struct Atom {
  std::string relation;
  std::vector<Term> terms;
  std::string to_string() const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

enum class CompareOp { Eq, Lt, Gt, Ne };

std::string to_string(CompareOp op);

struct Comparison {
  Term left;
  CompareOp op;
  Term right;
  std::string to_string() const;
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// q() <- P, N, C. Safety: every variable occurs in a positive atom.
struct ConjunctiveQuery {
  std::string name;  // surface name, not semantically relevant
  std::vector<Atom> positive;
  std::vector<Atom> negated;
  std::vector<Comparison> comparisons;

  bool is_positive() const { return negated.empty(); }
};

enum class AggregateFunction { Count, CountDistinct, Sum, Max };

std::string to_string(AggregateFunction f);

/// [q(alpha(xbar)) <- P, N, C] theta c with theta in {=, <, >}.
struct AggregateQuery {
  AggregateFunction function;
  std::vector<std::string> grouped_vars;  // xbar; may be empty for COUNT
  ConjunctiveQuery body;
  CompareOp comparator;  // Eq, Lt or Gt
  Value threshold;
};

using DenialConstraint = std::variant<ConjunctiveQuery, AggregateQuery>;

using Assignment = std::map<std::string, Value>;

/// Multiset of value tuples, kept as a sorted vector.
using Bag = std::vector<std::vector<Value>>;

/// First variable (canonical order) violating safety, or nullopt if safe.
/// For aggregate queries this also covers the grouped variables.
std::optional<std::string> check_safety(const ConjunctiveQuery& q);
std::optional<std::string> check_safety(const AggregateQuery& q);
std::optional<std::string> check_safety(const DenialConstraint& q);

/// All assignments h with h(P) in state, h(N) disjoint from state and h(C)
/// satisfied. Throws SafetyError for unsafe bodies.
std::vector<Assignment> satisfying_assignments(const ConjunctiveQuery& body,
                                               const DatabaseState& state);

bool eval_boolean(const ConjunctiveQuery& q, const DatabaseState& state);

/// Applies the aggregate to a nonempty bag.
Value aggregate_apply(AggregateFunction f, const Bag& bag);

/// Builds the bag of grouped-variable images; empty bag evaluates to false.
bool eval_aggregate(const AggregateQuery& q, const DatabaseState& state);

bool eval_denial_query(const DenialConstraint& q, const DatabaseState& state);

/// Number of positive atoms (of the body, for aggregates).
std::size_t positive_atom_count(const DenialConstraint& q);
bool is_positive(const DenialConstraint& q);

/// All constants mentioned in the query text.
std::vector<Value> query_constants(const DenialConstraint& q);

}  // namespace bcdb
