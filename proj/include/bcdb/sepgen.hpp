#pragma once

#include <optional>
#include <set>
#include <string>

#include "bcdb/chain.hpp"

namespace bcdb {

/// Which transactions a generated transaction must be able to coexist with
/// (t_in) and which it must exclude from every shared world (t_out).
struct SeparationSpec {
  std::set<std::string> t_in;
  std::set<std::string> t_out;
  std::optional<std::size_t> bound;  // max tuples for the bounded search
};

enum class SeparationFailure {
  NoSeparating,     // provably no separating transaction exists
  TInInconsistent,  // t_in has no common world, so nothing can separate
  UndecidableMix,   // unbounded generation under mixed fd+ind constraints
  BoundExhausted,   // no separating transaction within the given bound
};

std::string to_string(SeparationFailure f);

struct SeparationResult {
  enum class Status { Found, TriviallySeparating, Failed };

  Status status = Status::Failed;
  std::optional<Transaction> transaction;       // set iff Found
  std::optional<SeparationFailure> failure;     // set iff Failed
  // Bounded search under non-key-only constraints is complete only
  // relative to its candidate constant domain.
  bool domain_relative = false;

  static SeparationResult found(Transaction t);
  static SeparationResult trivial();
  static SeparationResult failed(SeparationFailure f);
};

/// Validates labels and t_in/t_out disjointness; throws SchemaError.
void validate_spec(const BlockchainDatabase& db, const SeparationSpec& spec);

/// Some possible world of (state, ic, pending + {T}) contains T and every
/// t_in transaction. Key/fd constraint sets use the monotonicity fast
/// path; anything else enumerates worlds (subject to the guard).
bool is_mutually_consistent(const BlockchainDatabase& db, const Transaction& t,
                            const std::set<std::string>& t_in,
                            const EnumerationGuard& guard = {});

/// Every possible world containing T excludes each t_out transaction.
bool is_inconsistent_with(const BlockchainDatabase& db, const Transaction& t,
                          const std::set<std::string>& t_out,
                          const EnumerationGuard& guard = {});

bool is_separating(const BlockchainDatabase& db, const Transaction& t,
                   const SeparationSpec& spec,
                   const EnumerationGuard& guard = {});

/// One chase step sequence: start from seed restricted to fixed_attrs
/// (fresh constants elsewhere), then propagate fd-forced values from the
/// context until fixpoint. fresh_base seeds the fresh-constant counter.
Tuple chase_fd(const Tuple& seed, const std::set<std::string>& fixed_attrs,
               const ConstraintSet& ic, const DatabaseState& context,
               std::int64_t& fresh_counter);

/// First tuple t (canonical (tuple, fd) order) with {t_o, t} violating ic,
/// chased against the context; nullopt if every candidate is forced equal.
std::optional<Tuple> contradict(const Transaction& t_out_txn,
                                const DatabaseState& context,
                                const ConstraintSet& ic,
                                std::int64_t& fresh_counter);

/// Minimal separating transaction under key/fd constraints (PTIME).
SeparationResult gen_min_sep_fd(const BlockchainDatabase& db,
                                const SeparationSpec& spec);

/// Separating transaction under IND-only constraints: chase t_in against
/// the INDs with one shared fresh constant, then check the maximal world.
SeparationResult gen_min_sep_ind(const BlockchainDatabase& db,
                                 const SeparationSpec& spec);

/// Exhaustive size-ascending search over transactions of at most
/// spec.bound tuples from the candidate domain (constants of the state,
/// t_in and t_out, plus |t_out| fresh constants per attribute). Throws
/// GuardError with an estimate when the search space is too large.
SeparationResult gen_bounded_sep(const BlockchainDatabase& db,
                                 const SeparationSpec& spec,
                                 const EnumerationGuard& guard = {});

/// Dispatcher: key/fd -> fd route, ind-only -> ind route, bounded -> the
/// bounded search, unbounded mixed fd+ind -> undecidable-constraint-mix.
SeparationResult gen_sep(const BlockchainDatabase& db,
                         const SeparationSpec& spec,
                         const EnumerationGuard& guard = {});

}  // namespace bcdb
