#include "bcdb/chain.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "bcdb/errors.hpp"

namespace bcdb {

Transaction::Transaction(std::string label_, std::set<Tuple> tuples_)
    : label(std::move(label_)), tuples(std::move(tuples_)) {
  if (tuples.empty())
    throw SchemaError("transaction " + label + " has no tuples");
}

BlockchainDatabase::BlockchainDatabase(DatabaseState state, ConstraintSet ic,
                                       std::vector<Transaction> pending)
    : state_(std::move(state)), ic_(std::move(ic)),
      pending_(std::move(pending)) {
  ic_.validate(state_.schema());
  if (!satisfies(state_, ic_))
    throw SchemaError("current state does not satisfy the constraint set");
  std::set<std::string> labels;
  for (const Transaction& t : pending_) {
    if (!labels.insert(t.label).second)
      throw SchemaError("duplicate transaction label: " + t.label);
    // Validate tuple arity against the schema.
    for (const Tuple& tup : t.tuples) {
      const RelationSchema& rel = state_.schema().relation(tup.relation);
      if (tup.values.size() != rel.attributes.size())
        throw SchemaError("arity mismatch in transaction " + t.label + ": " +
                          tup.to_string());
    }
  }
}

const Transaction& BlockchainDatabase::transaction(
    const std::string& label) const {
  for (const Transaction& t : pending_)
    if (t.label == label) return t;
  throw SchemaError("unknown transaction label: " + label);
}

BlockchainDatabase BlockchainDatabase::with_pending(
    std::vector<Transaction> extra) const {
  std::vector<Transaction> pool = pending_;
  for (Transaction& t : extra) pool.push_back(std::move(t));
  return BlockchainDatabase(state_, ic_, std::move(pool));
}

bool can_append_step(const DatabaseState& current, const Transaction& t,
                     const ConstraintSet& ic) {
  return satisfies(current.united(t.tuples), ic);
}

namespace {

std::set<std::string> contained_labels(const BlockchainDatabase& db,
                                       const DatabaseState& state) {
  std::set<std::string> out;
  for (const Transaction& t : db.pending()) {
    bool all = std::all_of(t.tuples.begin(), t.tuples.end(),
                           [&](const Tuple& x) { return state.contains(x); });
    if (all) out.insert(t.label);
  }
  return out;
}

}  // namespace

std::vector<World> enumerate_possible_worlds(const BlockchainDatabase& db,
                                             const EnumerationGuard& guard) {
  if (!guard.overridden && db.pending().size() > guard.max_transactions)
    throw GuardError("pending pool has " +
                     std::to_string(db.pending().size()) +
                     " transactions, over the enumeration guard of " +
                     std::to_string(guard.max_transactions));

  std::set<DatabaseState> seen;
  std::deque<DatabaseState> frontier;
  seen.insert(db.state());
  frontier.push_back(db.state());
  while (!frontier.empty()) {
    DatabaseState cur = std::move(frontier.front());
    frontier.pop_front();
    for (const Transaction& t : db.pending()) {
      DatabaseState next = cur.united(t.tuples);
      if (seen.count(next)) continue;
      if (!satisfies(next, db.ic())) continue;
      seen.insert(next);
      frontier.push_back(next);
    }
  }

  std::vector<World> out;
  out.reserve(seen.size());
  for (const DatabaseState& s : seen)
    out.push_back({s, contained_labels(db, s)});
  std::sort(out.begin(), out.end(), [](const World& a, const World& b) {
    if (a.state.tuple_count() != b.state.tuple_count())
      return a.state.tuple_count() < b.state.tuple_count();
    return a.state < b.state;
  });
  return out;
}

bool is_possible_world(const BlockchainDatabase& db,
                       const DatabaseState& candidate) {
  // (1) key/fd contradictions rule the candidate out immediately.
  for (const auto& fd : db.ic().fds)
    if (!check_fd(candidate, fd)) return false;

  // (2) the candidate must be exactly the base state plus the pending
  // transactions it contains.
  std::set<std::string> contained = contained_labels(db, candidate);
  DatabaseState rebuilt = db.state();
  for (const std::string& label : contained)
    rebuilt = rebuilt.united(db.transaction(label).tuples);
  if (!db.state().subset_of(candidate)) return false;
  if (!(rebuilt == candidate)) return false;

  // (3) greedily absorb contained transactions while keeping every
  // inclusion dependency satisfied.
  DatabaseState cur = db.state();
  std::vector<std::string> remaining(contained.begin(), contained.end());
  bool progress = true;
  while (progress && !(cur == candidate)) {
    progress = false;
    for (auto it = remaining.begin(); it != remaining.end();) {
      DatabaseState next = cur.united(db.transaction(*it).tuples);
      bool inds_ok = std::all_of(
          db.ic().inds.begin(), db.ic().inds.end(),
          [&](const InclusionDependency& ind) { return check_ind(next, ind); });
      if (inds_ok) {
        cur = std::move(next);
        it = remaining.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  return cur == candidate;
}

DatabaseState greedy_ind_fixpoint(
    const DatabaseState& start, const ConstraintSet& ic,
    const std::vector<const std::set<Tuple>*>& pool) {
  DatabaseState cur = start;
  std::vector<const std::set<Tuple>*> remaining = pool;
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto it = remaining.begin(); it != remaining.end();) {
      DatabaseState next = cur.united(**it);
      if (satisfies(next, ic)) {
        cur = std::move(next);
        it = remaining.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  return cur;
}

World maximal_world(const BlockchainDatabase& db) {
  ConstraintTypes types = db.constraint_types();
  if (!types.ind_only())
    throw DispatchError("maximal_world requires an IND-only constraint set");
  std::vector<const std::set<Tuple>*> pool;
  pool.reserve(db.pending().size());
  for (const Transaction& t : db.pending()) pool.push_back(&t.tuples);
  DatabaseState max = greedy_ind_fixpoint(db.state(), db.ic(), pool);
  return {max, contained_labels(db, max)};
}

}  // namespace bcdb
