#include "bcdb/sepgen.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "bcdb/errors.hpp"

namespace bcdb {

std::string to_string(SeparationFailure f) {
  switch (f) {
    case SeparationFailure::NoSeparating: return "no-separating-transaction";
    case SeparationFailure::TInInconsistent: return "t_in-inconsistent";
    case SeparationFailure::UndecidableMix: return "undecidable-constraint-mix";
    default: return "bound-exhausted";
  }
}

SeparationResult SeparationResult::found(Transaction t) {
  SeparationResult out;
  out.status = Status::Found;
  out.transaction = std::move(t);
  return out;
}

SeparationResult SeparationResult::trivial() {
  SeparationResult out;
  out.status = Status::TriviallySeparating;
  return out;
}

SeparationResult SeparationResult::failed(SeparationFailure f) {
  SeparationResult out;
  out.status = Status::Failed;
  out.failure = f;
  return out;
}

void validate_spec(const BlockchainDatabase& db, const SeparationSpec& spec) {
  for (const std::string& label : spec.t_in) {
    db.transaction(label);
    if (spec.t_out.count(label))
      throw SchemaError("transaction " + label +
                        " appears in both t_in and t_out");
  }
  for (const std::string& label : spec.t_out) db.transaction(label);
}

namespace {

std::set<Tuple> union_tuples(const BlockchainDatabase& db,
                             const std::set<std::string>& labels) {
  std::set<Tuple> out;
  for (const std::string& label : labels) {
    const std::set<Tuple>& tuples = db.transaction(label).tuples;
    out.insert(tuples.begin(), tuples.end());
  }
  return out;
}

bool contains_all(const DatabaseState& state, const std::set<Tuple>& tuples) {
  return std::all_of(tuples.begin(), tuples.end(),
                     [&](const Tuple& t) { return state.contains(t); });
}

std::int64_t max_fresh_index(const BlockchainDatabase& db) {
  std::int64_t out = 0;
  auto scan = [&](const Tuple& t) {
    for (const Value& v : t.values)
      if (v.kind() == Value::Kind::Fresh)
        out = std::max(out, v.fresh_index());
  };
  for (const Tuple& t : db.state().all_tuples()) scan(t);
  for (const Transaction& txn : db.pending())
    for (const Tuple& t : txn.tuples) scan(t);
  return out;
}

std::string unique_label(const BlockchainDatabase& db) {
  std::string label = "T_gen";
  auto taken = [&](const std::string& l) {
    return std::any_of(db.pending().begin(), db.pending().end(),
                       [&](const Transaction& t) { return t.label == l; });
  };
  while (taken(label)) label += "'";
  return label;
}

/// The database extended with the candidate tuple set as one extra pending
/// transaction (unchanged when the set is empty).
BlockchainDatabase with_candidate(const BlockchainDatabase& db,
                                  const std::set<Tuple>& t) {
  if (t.empty()) return db;
  return db.with_pending({Transaction(unique_label(db), t)});
}

// Internal checks take a plain tuple set so the empty candidate (the
// trivially-separating case) is expressible.

bool mutually_consistent_impl(const BlockchainDatabase& db,
                              const std::set<Tuple>& t,
                              const std::set<std::string>& t_in,
                              const EnumerationGuard& guard) {
  std::set<Tuple> required = union_tuples(db, t_in);
  required.insert(t.begin(), t.end());
  if (db.constraint_types().key_fd_only()) {
    // fd violations are insertion-monotone, so a common world exists
    // exactly when the joint insertion is consistent.
    return satisfies(db.state().united(required), db.ic());
  }
  if (db.constraint_types().ind_only()) {
    // Every world is contained in the unique maximal world, which is
    // itself a world, so membership there is exact.
    return contains_all(maximal_world(with_candidate(db, t)).state, required);
  }
  BlockchainDatabase ext = with_candidate(db, t);
  for (const World& w : enumerate_possible_worlds(ext, guard))
    if (contains_all(w.state, required)) return true;
  return false;
}

bool inconsistent_impl(const BlockchainDatabase& db, const std::set<Tuple>& t,
                       const std::set<std::string>& t_out,
                       const EnumerationGuard& guard) {
  if (db.constraint_types().key_fd_only()) {
    for (const std::string& label : t_out) {
      DatabaseState joint = db.state().united(t).united(
          db.transaction(label).tuples);
      if (satisfies(joint, db.ic())) return false;
    }
    return true;
  }
  if (db.constraint_types().ind_only()) {
    // If T is absorbable at all, the maximal world contains both T and
    // any absorbable T_o, so it decides coexistence exactly.
    DatabaseState max = maximal_world(with_candidate(db, t)).state;
    if (!contains_all(max, t)) return true;  // no world contains T
    for (const std::string& label : t_out)
      if (contains_all(max, db.transaction(label).tuples)) return false;
    return true;
  }
  BlockchainDatabase ext = with_candidate(db, t);
  for (const World& w : enumerate_possible_worlds(ext, guard)) {
    if (!contains_all(w.state, t)) continue;
    for (const std::string& label : t_out)
      if (contains_all(w.state, db.transaction(label).tuples)) return false;
  }
  return true;
}

bool separating_impl(const BlockchainDatabase& db, const std::set<Tuple>& t,
                     const SeparationSpec& spec,
                     const EnumerationGuard& guard) {
  return mutually_consistent_impl(db, t, spec.t_in, guard) &&
         inconsistent_impl(db, t, spec.t_out, guard);
}

}  // namespace

bool is_mutually_consistent(const BlockchainDatabase& db, const Transaction& t,
                            const std::set<std::string>& t_in,
                            const EnumerationGuard& guard) {
  validate_spec(db, {t_in, {}, std::nullopt});
  return mutually_consistent_impl(db, t.tuples, t_in, guard);
}

bool is_inconsistent_with(const BlockchainDatabase& db, const Transaction& t,
                          const std::set<std::string>& t_out,
                          const EnumerationGuard& guard) {
  validate_spec(db, {{}, t_out, std::nullopt});
  return inconsistent_impl(db, t.tuples, t_out, guard);
}

bool is_separating(const BlockchainDatabase& db, const Transaction& t,
                   const SeparationSpec& spec, const EnumerationGuard& guard) {
  validate_spec(db, spec);
  return separating_impl(db, t.tuples, spec, guard);
}

Tuple chase_fd(const Tuple& seed, const std::set<std::string>& fixed_attrs,
               const ConstraintSet& ic, const DatabaseState& context,
               std::int64_t& fresh_counter) {
  if (!ic.types_present(context.schema()).key_fd_only())
    throw DispatchError("chase_fd requires key/fd-only constraints");
  const RelationSchema& rel = context.schema().relation(seed.relation);

  Tuple t{seed.relation, {}};
  t.values.reserve(rel.attributes.size());
  for (std::size_t i = 0; i < rel.attributes.size(); ++i)
    t.values.push_back(fixed_attrs.count(rel.attributes[i])
                           ? seed.values[i]
                           : Value::fresh(++fresh_counter));

  std::vector<FunctionalDependency> fds;
  for (const FunctionalDependency& fd : ic.normalized_fds())
    if (fd.relation == seed.relation) fds.push_back(fd);

  const std::set<Tuple>& peers = context.tuples(seed.relation);
  auto agrees_on = [&](const Tuple& a, const Tuple& b,
                       const std::vector<std::string>& attrs) {
    return std::all_of(attrs.begin(), attrs.end(), [&](const std::string& x) {
      int i = rel.attribute_index(x);
      return a.values[i] == b.values[i];
    });
  };

  // A consistent context forces each attribute at most once per pass; the
  // step cap only protects against a pathological (inconsistent) context.
  std::size_t cap = (fds.size() * peers.size() + 1) * rel.attributes.size();
  for (std::size_t step = 0; step <= cap; ++step) {
    bool changed = false;
    for (const FunctionalDependency& fd : fds) {
      int vi = rel.attribute_index(fd.rhs[0]);
      for (const Tuple& peer : peers) {
        if (agrees_on(t, peer, fd.lhs) && !(t.values[vi] == peer.values[vi])) {
          t.values[vi] = peer.values[vi];
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return t;
}

std::optional<Tuple> contradict(const Transaction& t_out_txn,
                                const DatabaseState& context,
                                const ConstraintSet& ic,
                                std::int64_t& fresh_counter) {
  for (const Tuple& t_o : t_out_txn.tuples) {
    for (const FunctionalDependency& fd : ic.fds) {
      if (fd.relation != t_o.relation) continue;
      std::set<std::string> fixed(fd.lhs.begin(), fd.lhs.end());
      Tuple t = chase_fd(t_o, fixed, ic, context, fresh_counter);
      DatabaseState pair(context.schema());
      pair.insert(t_o);
      pair.insert(t);
      if (!satisfies(pair, ic)) return t;
    }
  }
  return std::nullopt;
}

SeparationResult gen_min_sep_fd(const BlockchainDatabase& db,
                                const SeparationSpec& spec) {
  if (!db.constraint_types().key_fd_only())
    throw DispatchError("gen_min_sep_fd requires key/fd-only constraints");
  validate_spec(db, spec);
  std::int64_t fresh_counter = max_fresh_index(db);

  DatabaseState r_star = db.state().united(union_tuples(db, spec.t_in));
  if (!satisfies(r_star, db.ic()))
    return SeparationResult::failed(SeparationFailure::TInInconsistent);

  std::set<Tuple> t;
  for (const std::string& label : spec.t_out) {
    const Transaction& t_out_txn = db.transaction(label);
    if (!satisfies(db.state().united(t).united(t_out_txn.tuples), db.ic()))
      continue;  // already contradicted
    std::optional<Tuple> contra =
        contradict(t_out_txn, r_star.united(t), db.ic(), fresh_counter);
    if (!contra)
      return SeparationResult::failed(SeparationFailure::NoSeparating);
    t.insert(*contra);
  }

  // Single-pass minimization: a tuple kept now can never be removed later.
  for (const Tuple& candidate : std::vector<Tuple>(t.begin(), t.end())) {
    std::set<Tuple> reduced = t;
    reduced.erase(candidate);
    if (separating_impl(db, reduced, spec, {})) t = std::move(reduced);
  }

  if (t.empty()) return SeparationResult::trivial();
  return SeparationResult::found(Transaction(unique_label(db), std::move(t)));
}

namespace {

/// Separation check under IND-only constraints via the unique maximal
/// world: exact and polynomial, usable during minimization.
bool ind_separating(const BlockchainDatabase& db, const std::set<Tuple>& t,
                    const SeparationSpec& spec) {
  BlockchainDatabase ext = with_candidate(db, t);
  World max = maximal_world(ext);
  std::set<Tuple> required = union_tuples(db, spec.t_in);
  required.insert(t.begin(), t.end());
  if (!contains_all(max.state, required)) return false;
  for (const std::string& label : spec.t_out)
    if (contains_all(max.state, db.transaction(label).tuples)) return false;
  return true;
}

}  // namespace

SeparationResult gen_min_sep_ind(const BlockchainDatabase& db,
                                 const SeparationSpec& spec) {
  if (!db.constraint_types().ind_only())
    throw DispatchError("gen_min_sep_ind requires an IND-only constraint set");
  validate_spec(db, spec);
  const Schema& schema = db.state().schema();
  Value c = Value::fresh(max_fresh_index(db) + 1);

  // Chase the t_in tuples against the INDs: create every missing target
  // tuple, copying the matched attributes and filling all others with the
  // one shared fresh constant.
  std::set<Tuple> support = union_tuples(db, spec.t_in);
  std::set<Tuple> created;
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Tuple> sources = support;
    sources.insert(created.begin(), created.end());
    for (const Tuple& src : sources) {
      for (const InclusionDependency& ind : db.ic().inds) {
        if (ind.source_relation != src.relation) continue;
        const RelationSchema& src_rel = schema.relation(ind.source_relation);
        const RelationSchema& tgt_rel = schema.relation(ind.target_relation);
        auto matches = [&](const Tuple& tgt) {
          for (std::size_t i = 0; i < ind.source_attrs.size(); ++i) {
            int si = src_rel.attribute_index(ind.source_attrs[i]);
            int ti = tgt_rel.attribute_index(ind.target_attrs[i]);
            if (!(src.values[si] == tgt.values[ti])) return false;
          }
          return true;
        };
        bool satisfied =
            std::any_of(db.state().tuples(ind.target_relation).begin(),
                        db.state().tuples(ind.target_relation).end(), matches);
        if (!satisfied) {
          std::set<Tuple> extra = support;
          extra.insert(created.begin(), created.end());
          satisfied = std::any_of(extra.begin(), extra.end(), [&](const Tuple& x) {
            return x.relation == ind.target_relation && matches(x);
          });
        }
        if (satisfied) continue;
        Tuple tgt{ind.target_relation,
                  std::vector<Value>(tgt_rel.attributes.size(), c)};
        for (std::size_t i = 0; i < ind.source_attrs.size(); ++i) {
          int si = src_rel.attribute_index(ind.source_attrs[i]);
          int ti = tgt_rel.attribute_index(ind.target_attrs[i]);
          tgt.values[ti] = src.values[si];
        }
        if (created.insert(tgt).second) changed = true;
      }
    }
  }

  BlockchainDatabase ext = with_candidate(db, created);
  World max = maximal_world(ext);
  std::set<Tuple> required = support;
  required.insert(created.begin(), created.end());
  if (!contains_all(max.state, required))
    return SeparationResult::failed(SeparationFailure::TInInconsistent);
  for (const std::string& label : spec.t_out)
    if (contains_all(max.state, db.transaction(label).tuples))
      return SeparationResult::failed(SeparationFailure::NoSeparating);

  // Minimize by single-tuple removal, re-verifying separation each time.
  for (const Tuple& candidate :
       std::vector<Tuple>(created.begin(), created.end())) {
    std::set<Tuple> reduced = created;
    reduced.erase(candidate);
    if (ind_separating(db, reduced, spec)) created = std::move(reduced);
  }

  if (created.empty()) return SeparationResult::trivial();
  return SeparationResult::found(
      Transaction(unique_label(db), std::move(created)));
}

namespace {

constexpr std::uint64_t kMaxBoundedCandidates = 10'000'000;

std::uint64_t search_space_estimate(std::uint64_t n, std::uint64_t k) {
  std::uint64_t total = 0;
  std::uint64_t comb = 1;
  for (std::uint64_t s = 1; s <= std::min(n, k); ++s) {
    if (comb > kMaxBoundedCandidates * 1000) return comb;  // saturate
    comb = comb * (n - s + 1) / s;
    total += comb;
    if (total > kMaxBoundedCandidates * 1000) return total;
  }
  return total;
}

bool is_key_only(const BlockchainDatabase& db) {
  ConstraintTypes types = db.constraint_types();
  return types.key_fd_only() && !types.fd;
}

}  // namespace

SeparationResult gen_bounded_sep(const BlockchainDatabase& db,
                                 const SeparationSpec& spec,
                                 const EnumerationGuard& guard) {
  validate_spec(db, spec);
  if (!spec.bound || *spec.bound < 1)
    throw SchemaError("bounded search requires a bound of at least 1");
  std::size_t k = *spec.bound;
  const Schema& schema = db.state().schema();

  // Candidate constant domain: constants of the state and the t_in/t_out
  // transactions, plus |t_out| fresh constants per attribute.
  std::set<Value> shared = db.state().active_constants();
  auto add_constants = [&](const std::set<std::string>& labels) {
    for (const std::string& label : labels)
      for (const Tuple& t : db.transaction(label).tuples)
        shared.insert(t.values.begin(), t.values.end());
  };
  add_constants(spec.t_in);
  add_constants(spec.t_out);
  std::size_t fresh_per_attr = std::max<std::size_t>(1, spec.t_out.size());
  std::int64_t fresh_counter = max_fresh_index(db);

  std::vector<Tuple> candidates;
  std::uint64_t tuple_space = 0;
  for (const auto& [name, rel] : schema.relations()) {
    std::vector<std::vector<Value>> domains;
    std::uint64_t product = 1;
    for (std::size_t i = 0; i < rel.attributes.size(); ++i) {
      std::vector<Value> domain(shared.begin(), shared.end());
      for (std::size_t j = 0; j < fresh_per_attr; ++j)
        domain.push_back(Value::fresh(++fresh_counter));
      product *= domain.size();
      domains.push_back(std::move(domain));
    }
    tuple_space += product;
    if (tuple_space > kMaxBoundedCandidates)
      throw GuardError("bounded search space of roughly " +
                       std::to_string(tuple_space) +
                       " candidate tuples exceeds the limit of " +
                       std::to_string(kMaxBoundedCandidates));
    std::vector<Value> row(rel.attributes.size());
    std::function<void(std::size_t)> build = [&](std::size_t i) {
      if (i == domains.size()) {
        candidates.push_back(Tuple{name, row});
        return;
      }
      for (const Value& v : domains[i]) {
        row[i] = v;
        build(i + 1);
      }
    };
    build(0);
  }
  std::sort(candidates.begin(), candidates.end());

  std::uint64_t estimate = search_space_estimate(candidates.size(), k);
  if (estimate > kMaxBoundedCandidates)
    throw GuardError("bounded search space of roughly " +
                     std::to_string(estimate) +
                     " candidate transactions exceeds the limit of " +
                     std::to_string(kMaxBoundedCandidates));

  bool domain_relative = !is_key_only(db);
  if (separating_impl(db, {}, spec, guard)) {
    SeparationResult out = SeparationResult::trivial();
    out.domain_relative = domain_relative;
    return out;
  }

  std::vector<int> idx;
  std::optional<std::set<Tuple>> hit;
  std::function<bool(std::size_t, int)> rec = [&](std::size_t size,
                                                  int start) -> bool {
    if (idx.size() == size) {
      std::set<Tuple> t;
      for (int i : idx) t.insert(candidates[i]);
      if (t.size() != size) return false;  // duplicate candidate tuples
      if (!separating_impl(db, t, spec, guard)) return false;
      hit = std::move(t);
      return true;
    }
    for (int i = start; i < static_cast<int>(candidates.size()); ++i) {
      idx.push_back(i);
      if (rec(size, i + 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  for (std::size_t size = 1; size <= std::min(candidates.size(), k); ++size)
    if (rec(size, 0)) break;

  SeparationResult out =
      hit ? SeparationResult::found(Transaction(unique_label(db), *hit))
          : SeparationResult::failed(SeparationFailure::BoundExhausted);
  out.domain_relative = domain_relative;
  return out;
}

SeparationResult gen_sep(const BlockchainDatabase& db,
                         const SeparationSpec& spec,
                         const EnumerationGuard& guard) {
  validate_spec(db, spec);
  if (spec.bound) return gen_bounded_sep(db, spec, guard);
  ConstraintTypes types = db.constraint_types();
  if (types.key_fd_only()) return gen_min_sep_fd(db, spec);
  if (types.ind_only()) return gen_min_sep_ind(db, spec);
  return SeparationResult::failed(SeparationFailure::UndecidableMix);
}

}  // namespace bcdb
