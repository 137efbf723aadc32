#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bcdb/chain.hpp"
#include "bcdb/query.hpp"
#include "bcdb/sepgen.hpp"

namespace bcdb {

/// A 3-CNF formula: variables 1..variable_count, clauses of at most three
/// signed literals (negative index = negated variable).
struct CnfFormula {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;

  void validate() const;  // throws SchemaError on malformed input
};

/// A compiled hard instance: a database plus either a denial constraint or
/// a separation spec. The expected answer is never stored; tests compute
/// it with an independent brute-force oracle.
struct ReductionInstance {
  std::string kind;
  BlockchainDatabase db;
  std::optional<DenialConstraint> query;
  std::optional<SeparationSpec> sep_spec;
};

/// Satisfiability of phi encoded as violation of q() <- Sat("t") under a
/// key on Val(X) and the IND Clause2[C] <= Clause1[C]: the denial holds
/// iff phi is unsatisfiable.
ReductionInstance sat_to_denial_key_ind(const CnfFormula& phi);

/// The Clause/Val key construction for aggregate bodies; alpha must be
/// count, countd or sum; theta must be > or = (the = variant raises the
/// threshold by one). The denial holds iff phi is unsatisfiable.
ReductionInstance sat_to_denial_agg_count(const CnfFormula& phi,
                                          AggregateFunction alpha,
                                          CompareOp theta);

/// The IND-only aggregate construction (Val preseeded with (0,t),(0,f)),
/// theta in {<, =}; with negated_variant the body uses a negated Val atom
/// plus a Truth relation and theta must be >. Variables are encoded as the
/// integers 1..m so sum/max stay numeric. Holds iff phi is unsatisfiable.
ReductionInstance sat_to_denial_agg_ind(const CnfFormula& phi,
                                        AggregateFunction alpha,
                                        CompareOp theta,
                                        bool negated_variant = false);

/// Hitting set as bounded separation: R(A,B) with the key A, one pending
/// transaction {(x,0) : x in S} per set, t_in empty, t_out = everything.
/// A hitting set of size <= k exists iff a separating transaction of
/// <= k tuples does.
ReductionInstance hitting_set_to_ksep(const std::vector<std::string>& universe,
                                      const std::vector<std::set<std::string>>& sets,
                                      std::size_t k);

/// Satisfiability as bounded separation under acyclic INDs; t_in is the
/// Sat/Clause2 transaction, t_out empty, bound = variable count.
ReductionInstance sat_to_ksep_ind(const CnfFormula& phi);

/// The fd+ind implication embedding: a relation S whose forced tuples
/// would have to contradict f inside R. Unbounded generation must refuse
/// with undecidable-constraint-mix.
ReductionInstance undecidability_gadget(
    const std::vector<FunctionalDependency>& fds,
    const std::vector<InclusionDependency>& inds,
    const FunctionalDependency& f);

}  // namespace bcdb
