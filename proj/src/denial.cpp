#include "bcdb/denial.hpp"

#include <algorithm>
#include <functional>

#include "bcdb/errors.hpp"

namespace bcdb {

std::string to_string(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::Ptime: return "PTIME";
    case ComplexityClass::CoNpComplete: return "CoNP-complete";
    default: return "CoNP (upper bound)";
  }
}

std::string to_string(AlgorithmTag t) {
  switch (t) {
    case AlgorithmTag::Oracle: return "oracle";
    case AlgorithmTag::CqFd: return "cq_fd";
    case AlgorithmTag::CqInd: return "cq_ind";
    case AlgorithmTag::AggSmallSubset: return "agg_small_subset";
    case AlgorithmTag::AggMaxWorld: return "agg_max_world";
    default: return "agg_ind_max_gt";
  }
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

Tuple atom_image(const Atom& atom, const Assignment& h) {
  Tuple out{atom.relation, {}};
  out.values.reserve(atom.terms.size());
  for (const Term& t : atom.terms)
    out.values.push_back(t.is_variable() ? h.at(t.variable_name())
                                         : t.constant_value());
  return out;
}

bool comparison_holds(const Comparison& c, const Assignment& h) {
  auto resolve = [&](const Term& t) -> const Value& {
    return t.is_variable() ? h.at(t.variable_name()) : t.constant_value();
  };
  const Value& a = resolve(c.left);
  const Value& b = resolve(c.right);
  switch (c.op) {
    case CompareOp::Eq: return a == b;
    case CompareOp::Ne: return !(a == b);
    case CompareOp::Lt: return Value::order_compare(a, b) < 0;
    default: return Value::order_compare(a, b) > 0;
  }
}

// Visits subsets of {0..n-1} of size <= k, size-ascending, lexicographic
// within a size. Stops early when the visitor returns true.
bool for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> idx;
  std::function<bool(std::size_t, int)> rec = [&](std::size_t size,
                                                  int start) -> bool {
    if (idx.size() == size) return f(idx);
    for (int i = start; i < static_cast<int>(n); ++i) {
      idx.push_back(i);
      if (rec(size, i + 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  for (std::size_t size = 0; size <= std::min(n, k); ++size)
    if (rec(size, 0)) return true;
  return false;
}

// Shared small-subset scan for conjunctive and aggregate bodies.
Verdict small_subset_scan(const BlockchainDatabase& db,
                          const DenialConstraint& q, AlgorithmTag tag,
                          ComplexityClass complexity) {
  std::size_t k = positive_atom_count(q);
  Verdict verdict{true, std::nullopt, tag, complexity};
  for_each_subset(db.pending().size(), k, [&](const std::vector<int>& idx) {
    DatabaseState cand = db.state();
    for (int i : idx) cand = cand.united(db.pending()[i].tuples);
    if (!is_possible_world(db, cand)) return false;
    if (!eval_denial_query(q, cand)) return false;
    verdict.holds = false;
    verdict.counterexample = World{cand, contained_labels(db, cand)};
    return true;
  });
  return verdict;
}

DatabaseState union_state(const BlockchainDatabase& db) {
  DatabaseState out = db.state();
  for (const Transaction& t : db.pending()) out = out.united(t.tuples);
  return out;
}

// Candidate mappings for the IND mapping algorithms: h(P) within the union
// of state and all pending tuples, h(N) disjoint from the current state,
// h(C) satisfied, plus an optional extra filter.
std::vector<Assignment> ind_candidate_mappings(
    const BlockchainDatabase& db, const ConjunctiveQuery& q,
    const std::function<bool(const Assignment&)>& extra) {
  ConjunctiveQuery positive_part;
  positive_part.positive = q.positive;
  std::vector<Assignment> hs =
      satisfying_assignments(positive_part, union_state(db));
  std::vector<Assignment> out;
  for (const Assignment& h : hs) {
    bool ok = true;
    for (const Atom& a : q.negated)
      if (db.state().contains(atom_image(a, h))) {
        ok = false;
        break;
      }
    if (ok)
      for (const Comparison& c : q.comparisons)
        if (!comparison_holds(c, h)) {
          ok = false;
          break;
        }
    if (ok && extra(h)) out.push_back(h);
  }
  return out;
}

// The removal + greedy-absorption step of the IND mapping algorithm.
// Returns the fixpoint world for a candidate mapping.
DatabaseState ind_world_for_mapping(const BlockchainDatabase& db,
                                    const ConjunctiveQuery& q,
                                    const Assignment& h) {
  std::set<Tuple> forbidden;
  for (const Atom& a : q.negated) forbidden.insert(atom_image(a, h));
  std::vector<const std::set<Tuple>*> pool;
  for (const Transaction& t : db.pending()) {
    bool drop = std::any_of(t.tuples.begin(), t.tuples.end(),
                            [&](const Tuple& x) { return forbidden.count(x); });
    if (!drop) pool.push_back(&t.tuples);
  }
  return greedy_ind_fixpoint(db.state(), db.ic(), pool);
}

bool mapping_covered(const ConjunctiveQuery& q, const Assignment& h,
                     const DatabaseState& world) {
  return std::all_of(q.positive.begin(), q.positive.end(), [&](const Atom& a) {
    return world.contains(atom_image(a, h));
  });
}

}  // namespace

Classification classify(const DenialConstraint& q, const ConstraintSet& ic,
                        const Schema& schema) {
  ConstraintTypes types = ic.types_present(schema);
  bool positive = is_positive(q);

  if (std::holds_alternative<ConjunctiveQuery>(q)) {
    if (types.key_fd_only())
      return {ComplexityClass::Ptime, AlgorithmTag::CqFd};
    if (types.ind_only())
      return {ComplexityClass::Ptime, AlgorithmTag::CqInd};
    return {ComplexityClass::CoNpComplete, AlgorithmTag::Oracle};
  }

  const AggregateQuery& agg = std::get<AggregateQuery>(q);
  bool is_max = agg.function == AggregateFunction::Max;

  if (types.key_fd_only()) {
    if (is_max) {
      // Tractable, but the small-subset scan is only sound here for
      // positive bodies or the > comparator; the other negated cases
      // route to the oracle (absorption can shrink a negated MAX).
      bool route_ok = positive || agg.comparator == CompareOp::Gt;
      return {ComplexityClass::Ptime, route_ok ? AlgorithmTag::AggSmallSubset
                                               : AlgorithmTag::Oracle};
    }
    if (agg.comparator == CompareOp::Lt) {
      return {ComplexityClass::Ptime, positive ? AlgorithmTag::AggSmallSubset
                                               : AlgorithmTag::Oracle};
    }
    return {ComplexityClass::CoNpComplete, AlgorithmTag::Oracle};
  }

  if (types.ind_only()) {
    if (agg.comparator == CompareOp::Gt) {
      if (positive)
        return {ComplexityClass::Ptime, AlgorithmTag::AggMaxWorld};
      if (is_max)
        return {ComplexityClass::Ptime, AlgorithmTag::AggIndMaxGt};
      return {ComplexityClass::CoNpComplete, AlgorithmTag::Oracle};
    }
    return {ComplexityClass::CoNpComplete, AlgorithmTag::Oracle};
  }

  // Mixed key/fd + ind constraint sets are intractable across the board.
  return {ComplexityClass::CoNpComplete, AlgorithmTag::Oracle};
}

Verdict holds_denial_oracle(const BlockchainDatabase& db,
                            const DenialConstraint& q,
                            const EnumerationGuard& guard) {
  if (auto bad = check_safety(q)) throw SafetyError(*bad);
  std::vector<World> worlds = enumerate_possible_worlds(db, guard);
  Verdict verdict{true, std::nullopt, AlgorithmTag::Oracle,
                  ComplexityClass::CoNpUpperBound};
  for (const World& w : worlds) {
    if (eval_denial_query(q, w.state)) {
      verdict.holds = false;
      verdict.counterexample = w;
      break;
    }
  }
  return verdict;
}

Verdict holds_denial_cq_fd(const BlockchainDatabase& db,
                           const ConjunctiveQuery& q) {
  if (!db.constraint_types().key_fd_only())
    throw DispatchError("cq_fd route requires key/fd-only constraints");
  if (auto bad = check_safety(q)) throw SafetyError(*bad);
  return small_subset_scan(db, q, AlgorithmTag::CqFd, ComplexityClass::Ptime);
}

Verdict holds_denial_cq_ind(const BlockchainDatabase& db,
                            const ConjunctiveQuery& q) {
  if (!db.constraint_types().ind_only())
    throw DispatchError("cq_ind route requires IND-only constraints");
  if (auto bad = check_safety(q)) throw SafetyError(*bad);
  Verdict verdict{true, std::nullopt, AlgorithmTag::CqInd,
                  ComplexityClass::Ptime};
  auto hs = ind_candidate_mappings(db, q, [](const Assignment&) { return true; });
  for (const Assignment& h : hs) {
    DatabaseState world = ind_world_for_mapping(db, q, h);
    if (mapping_covered(q, h, world)) {
      verdict.holds = false;
      verdict.counterexample = World{world, contained_labels(db, world)};
      break;
    }
  }
  return verdict;
}

Verdict holds_denial_agg(const BlockchainDatabase& db,
                         const AggregateQuery& q) {
  if (auto bad = check_safety(q)) throw SafetyError(*bad);
  Classification cls =
      classify(DenialConstraint{q}, db.ic(), db.state().schema());
  switch (cls.algorithm) {
    case AlgorithmTag::AggSmallSubset:
      return small_subset_scan(db, DenialConstraint{q},
                               AlgorithmTag::AggSmallSubset, cls.complexity);
    case AlgorithmTag::AggMaxWorld: {
      World max = maximal_world(db);
      Verdict verdict{true, std::nullopt, AlgorithmTag::AggMaxWorld,
                      cls.complexity};
      if (eval_aggregate(q, max.state)) {
        verdict.holds = false;
        verdict.counterexample = max;
      }
      return verdict;
    }
    case AlgorithmTag::AggIndMaxGt: {
      // max(x) > c holds in some world iff a single mapping exceeds c.
      Verdict verdict{true, std::nullopt, AlgorithmTag::AggIndMaxGt,
                      cls.complexity};
      const std::string& grouped = q.grouped_vars.at(0);
      auto hs = ind_candidate_mappings(db, q.body, [&](const Assignment& h) {
        return Value::order_compare(h.at(grouped), q.threshold) > 0;
      });
      for (const Assignment& h : hs) {
        DatabaseState world = ind_world_for_mapping(db, q.body, h);
        if (mapping_covered(q.body, h, world)) {
          verdict.holds = false;
          verdict.counterexample = World{world, contained_labels(db, world)};
          break;
        }
      }
      return verdict;
    }
    default:
      throw DispatchError(
          "no tractable aggregate route for this query/constraint "
          "combination; use the oracle");
  }
}

Verdict holds_denial(const BlockchainDatabase& db, const DenialConstraint& q,
                     const EnumerationGuard& guard) {
  Classification cls = classify(q, db.ic(), db.state().schema());
  Verdict verdict;
  switch (cls.algorithm) {
    case AlgorithmTag::CqFd:
      verdict = holds_denial_cq_fd(db, std::get<ConjunctiveQuery>(q));
      break;
    case AlgorithmTag::CqInd:
      verdict = holds_denial_cq_ind(db, std::get<ConjunctiveQuery>(q));
      break;
    case AlgorithmTag::AggSmallSubset:
    case AlgorithmTag::AggMaxWorld:
    case AlgorithmTag::AggIndMaxGt:
      verdict = holds_denial_agg(db, std::get<AggregateQuery>(q));
      break;
    default:
      verdict = holds_denial_oracle(db, q, guard);
      break;
  }
  verdict.complexity = cls.complexity;
  return verdict;
}

}  // namespace bcdb
