#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bcdb/constraints.hpp"
#include "bcdb/state.hpp"

namespace bcdb {

/// An insert transaction: a labeled, nonempty set of ground tuples.
struct Transaction {
  std::string label;
  std::set<Tuple> tuples;

  Transaction(std::string label_, std::set<Tuple> tuples_);
};

/// The triple (current state, integrity constraints, pending pool).
/// Construction enforces state |= ic and unique labels.
class BlockchainDatabase {
 public:
  BlockchainDatabase(DatabaseState state, ConstraintSet ic,
                     std::vector<Transaction> pending);

  const DatabaseState& state() const { return state_; }
  const ConstraintSet& ic() const { return ic_; }
  const std::vector<Transaction>& pending() const { return pending_; }

  const Transaction& transaction(const std::string& label) const;
  ConstraintTypes constraint_types() const {
    return ic_.types_present(state_.schema());
  }

  /// The same database with extra (hypothetical) transactions appended.
  BlockchainDatabase with_pending(std::vector<Transaction> extra) const;

 private:
  DatabaseState state_;
  ConstraintSet ic_;
  std::vector<Transaction> pending_;
};

/// A reachable state together with the pending transactions it contains.
struct World {
  DatabaseState state;
  std::set<std::string> absorbed;

  friend bool operator==(const World& a, const World& b) {
    return a.state == b.state;
  }
};

struct EnumerationGuard {
  std::size_t max_transactions = 20;
  bool overridden = false;
};

/// Single can-append step: current united with t satisfies ic.
bool can_append_step(const DatabaseState& current, const Transaction& t,
                     const ConstraintSet& ic);

/// Exhaustive oracle: all states reachable by can-append chains,
/// deduplicated by state and canonically ordered (size, then state order).
std::vector<World> enumerate_possible_worlds(
    const BlockchainDatabase& db, const EnumerationGuard& guard = {});

/// PTIME recognition of possible worlds (no enumeration).
bool is_possible_world(const BlockchainDatabase& db,
                       const DatabaseState& candidate);

/// Unique greedy-absorption fixpoint; requires an IND-only constraint set.
World maximal_world(const BlockchainDatabase& db);

/// Greedy IND fixpoint over an explicit pool (no constraint-type check);
/// used by the IND-only algorithms. Pool entries are absorbed atomically.
DatabaseState greedy_ind_fixpoint(const DatabaseState& start,
                                  const ConstraintSet& ic,
                                  const std::vector<const std::set<Tuple>*>& pool);

}  // namespace bcdb
