#pragma once

#include <optional>
#include <string>

#include "bcdb/chain.hpp"
#include "bcdb/query.hpp"

namespace bcdb {

enum class ComplexityClass { Ptime, CoNpComplete, CoNpUpperBound };

enum class AlgorithmTag {
  Oracle,          // exhaustive world enumeration
  CqFd,            // small-subset scan, conjunctive / key+fd
  CqInd,           // mapping + greedy absorption, conjunctive / ind
  AggSmallSubset,  // small-subset scan for aggregate bodies / key+fd
  AggMaxWorld,     // evaluate on the unique maximal world / ind, positive, >
  AggIndMaxGt,     // mapping algorithm for max/> under ind
};

std::string to_string(ComplexityClass c);
std::string to_string(AlgorithmTag t);

struct Classification {
  ComplexityClass complexity;
  AlgorithmTag algorithm;
};

/// Route and complexity for a (query class, constraint types) pair.
Classification classify(const DenialConstraint& q, const ConstraintSet& ic,
                        const Schema& schema);

struct Verdict {
  bool holds = false;
  std::optional<World> counterexample;  // a world where q is true
  AlgorithmTag algorithm = AlgorithmTag::Oracle;
  ComplexityClass complexity = ComplexityClass::CoNpUpperBound;
};

/// Exhaustive check over all possible worlds (subject to the guard).
Verdict holds_denial_oracle(const BlockchainDatabase& db,
                            const DenialConstraint& q,
                            const EnumerationGuard& guard = {});

/// Small-subset scan; requires key/fd-only constraints, conjunctive q.
Verdict holds_denial_cq_fd(const BlockchainDatabase& db,
                           const ConjunctiveQuery& q);

/// Mapping algorithm; requires IND-only constraints.
Verdict holds_denial_cq_ind(const BlockchainDatabase& db,
                            const ConjunctiveQuery& q);

/// Specialized aggregate algorithms; (q, ic) must match a tractable row.
Verdict holds_denial_agg(const BlockchainDatabase& db,
                         const AggregateQuery& q);

/// Dispatcher: classify, run the matched specialized algorithm if any,
/// otherwise fall back to the oracle.
Verdict holds_denial(const BlockchainDatabase& db, const DenialConstraint& q,
                     const EnumerationGuard& guard = {});

}  // namespace bcdb
