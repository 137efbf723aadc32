#pragma once

// Shared test utilities: independent brute-force oracles and random
// instance generators. Oracles here must not reuse engine shortcuts —
// they exist to cross-validate the engine.

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcdb/chain.hpp"
#include "bcdb/query.hpp"
#include "bcdb/reductions.hpp"
#include "bcdb/sepgen.hpp"

namespace testutil {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// ------------------------------------------------------------- oracles

/// Brute-force satisfiability over all 2^m assignments.
inline bool sat_oracle(const bcdb::CnfFormula& phi) {
  int m = phi.variable_count;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    bool all = true;
    for (const std::vector<int>& clause : phi.clauses) {
      bool any = false;
      for (int lit : clause) {
        bool value = (mask >> (std::abs(lit) - 1)) & 1u;
        if ((lit > 0) == value) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

/// Brute-force hitting set: some subset of the universe of size <= k
/// intersecting every set.
inline bool hitting_set_oracle(const std::vector<std::string>& universe,
                               const std::vector<std::set<std::string>>& sets,
                               std::size_t k) {
  std::size_t n = universe.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > k) continue;
    bool all = true;
    for (const std::set<std::string>& s : sets) {
      bool hit = false;
      for (std::size_t i = 0; i < n; ++i)
        if (((mask >> i) & 1u) && s.count(universe[i])) {
          hit = true;
          break;
        }
      if (!hit) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

/// Separation checked directly against the enumerated world set, with no
/// engine fast paths: mutual consistency asks for one world containing T
/// and all of t_in; inconsistency asks that no world contains T together
/// with any whole t_out transaction.
inline bool oracle_is_separating(const bcdb::BlockchainDatabase& db,
                                 const std::set<bcdb::Tuple>& t,
                                 const bcdb::SeparationSpec& spec) {
  std::vector<bcdb::Transaction> extra;
  if (!t.empty()) extra.emplace_back("__probe__", t);
  bcdb::BlockchainDatabase ext = db.with_pending(std::move(extra));
  auto contains_all = [](const bcdb::DatabaseState& s,
                         const std::set<bcdb::Tuple>& ts) {
    for (const bcdb::Tuple& x : ts)
      if (!s.contains(x)) return false;
    return true;
  };
  std::set<bcdb::Tuple> required = t;
  for (const std::string& label : spec.t_in) {
    const auto& tuples = db.transaction(label).tuples;
    required.insert(tuples.begin(), tuples.end());
  }
  bool consistent = false;
  bool inconsistent = true;
  for (const bcdb::World& w :
       bcdb::enumerate_possible_worlds(ext, {64, true})) {
    if (contains_all(w.state, required)) consistent = true;
    if (contains_all(w.state, t))
      for (const std::string& label : spec.t_out)
        if (contains_all(w.state, db.transaction(label).tuples))
          inconsistent = false;
  }
  return consistent && inconsistent;
}

// ----------------------------------------------- random model instances

enum class ConstraintMode { None, KeyFd, Ind, Mixed };

/// Small random database: <= 3 relations (R1..R3, arity 1..3), integer
/// values only (keeps order comparisons total), constraints per mode,
/// consistent initial state by construction.
inline bcdb::BlockchainDatabase random_db(Rng& rng, ConstraintMode mode,
                                          int max_txns = 6,
                                          int max_tuples_per_txn = 3) {
  bool needs_fd = mode == ConstraintMode::KeyFd || mode == ConstraintMode::Mixed;
  bool needs_ind = mode == ConstraintMode::Ind || mode == ConstraintMode::Mixed;
  int nrel = needs_ind ? pick(rng, 2, 3) : pick(rng, 1, 3);
  bcdb::Schema schema;
  std::vector<bcdb::RelationSchema> rels;
  for (int r = 1; r <= nrel; ++r) {
    // the first relation gets arity >= 2 whenever an fd must exist
    int arity = (r == 1 && needs_fd) ? pick(rng, 2, 3) : pick(rng, 1, 3);
    std::vector<std::string> attrs;
    for (int a = 0; a < arity; ++a) attrs.push_back("a" + std::to_string(a));
    rels.push_back({"R" + std::to_string(r), attrs});
    schema.add_relation(rels.back());
  }

  bcdb::ConstraintSet ic;
  auto add_fd = [&]() {
    const bcdb::RelationSchema& rel = rels[pick(rng, 0, nrel - 1)];
    if (rel.attributes.size() < 2) return;
    std::vector<std::string> lhs{rel.attributes[0]};
    std::vector<std::string> rhs;
    if (chance(rng, 0.5)) {
      rhs = rel.attributes;  // key
    } else {
      rhs = {rel.attributes[1]};
    }
    ic.fds.push_back({rel.name, lhs, rhs});
  };
  auto add_ind = [&]() {
    const bcdb::RelationSchema& src = rels[pick(rng, 0, nrel - 1)];
    const bcdb::RelationSchema& tgt = rels[pick(rng, 0, nrel - 1)];
    int width = pick(rng, 1, static_cast<int>(std::min(
                                 src.attributes.size(),
                                 tgt.attributes.size())));
    std::vector<std::string> sa(src.attributes.begin(),
                                src.attributes.begin() + width);
    std::vector<std::string> ta(tgt.attributes.begin(),
                                tgt.attributes.begin() + width);
    bcdb::InclusionDependency ind{src.name, sa, tgt.name, ta};
    if (src.name == tgt.name && sa == ta) return;  // trivially satisfied
    ic.inds.push_back(std::move(ind));
  };
  if (needs_fd) {
    for (int tries = 0; ic.fds.empty() && tries < 50; ++tries) add_fd();
    if (chance(rng, 0.4)) add_fd();
  }
  if (needs_ind) {
    for (int tries = 0; ic.inds.empty() && tries < 50; ++tries) add_ind();
    if (chance(rng, 0.4)) add_ind();
  }

  auto random_tuple = [&]() {
    const bcdb::RelationSchema& rel = rels[pick(rng, 0, nrel - 1)];
    std::vector<bcdb::Value> values;
    for (std::size_t i = 0; i < rel.attributes.size(); ++i)
      values.push_back(bcdb::Value::integer(pick(rng, 0, 4)));
    return bcdb::Tuple{rel.name, values};
  };

  bcdb::DatabaseState state(schema);
  int base = pick(rng, 0, 4);
  for (int i = 0; i < base; ++i) {
    bcdb::DatabaseState next = state;
    next.insert(random_tuple());
    if (bcdb::satisfies(next, ic)) state = std::move(next);
  }

  std::vector<bcdb::Transaction> pending;
  int ntxn = pick(rng, 1, max_txns);
  for (int i = 0; i < ntxn; ++i) {
    std::set<bcdb::Tuple> tuples;
    int sz = pick(rng, 1, max_tuples_per_txn);
    for (int j = 0; j < sz; ++j) tuples.insert(random_tuple());
    pending.emplace_back("T" + std::to_string(i + 1), std::move(tuples));
  }
  return bcdb::BlockchainDatabase(std::move(state), std::move(ic),
                                  std::move(pending));
}

/// Random safe conjunctive query over the database's schema: 1-2 positive
/// atoms, optional negated atom / comparison over bound variables.
inline bcdb::ConjunctiveQuery random_cq(Rng& rng,
                                        const bcdb::BlockchainDatabase& db,
                                        bool allow_negation = true) {
  std::vector<const bcdb::RelationSchema*> rels;
  for (const auto& [name, rel] : db.state().schema().relations())
    rels.push_back(&rel);
  static const std::array<const char*, 4> kVars = {"x", "y", "z", "w"};

  bcdb::ConjunctiveQuery q;
  q.name = "q";
  std::vector<std::string> bound;
  int npos = pick(rng, 1, 2);
  for (int i = 0; i < npos; ++i) {
    const bcdb::RelationSchema& rel = *rels[pick(rng, 0, rels.size() - 1)];
    bcdb::Atom atom{rel.name, {}};
    for (std::size_t a = 0; a < rel.attributes.size(); ++a) {
      if (chance(rng, 0.25)) {
        atom.terms.push_back(
            bcdb::Term::constant(bcdb::Value::integer(pick(rng, 0, 4))));
      } else {
        std::string v = kVars[pick(rng, 0, 3)];
        atom.terms.push_back(bcdb::Term::variable(v));
        bound.push_back(v);
      }
    }
    q.positive.push_back(std::move(atom));
  }
  if (bound.empty()) {
    // ensure at least one variable so negation/comparisons stay safe
    const bcdb::RelationSchema& rel = *rels[0];
    bcdb::Atom atom{rel.name, {}};
    for (std::size_t a = 0; a < rel.attributes.size(); ++a)
      atom.terms.push_back(bcdb::Term::variable("x"));
    q.positive.push_back(std::move(atom));
    bound.push_back("x");
  }
  auto bound_var = [&]() { return bound[pick(rng, 0, bound.size() - 1)]; };
  if (allow_negation && chance(rng, 0.5)) {
    const bcdb::RelationSchema& rel = *rels[pick(rng, 0, rels.size() - 1)];
    bcdb::Atom atom{rel.name, {}};
    for (std::size_t a = 0; a < rel.attributes.size(); ++a) {
      if (chance(rng, 0.3))
        atom.terms.push_back(
            bcdb::Term::constant(bcdb::Value::integer(pick(rng, 0, 4))));
      else
        atom.terms.push_back(bcdb::Term::variable(bound_var()));
    }
    q.negated.push_back(std::move(atom));
  }
  if (chance(rng, 0.4)) {
    static const std::array<bcdb::CompareOp, 4> kOps = {
        bcdb::CompareOp::Eq, bcdb::CompareOp::Lt, bcdb::CompareOp::Gt,
        bcdb::CompareOp::Ne};
    q.comparisons.push_back(
        {bcdb::Term::variable(bound_var()), kOps[pick(rng, 0, 3)],
         chance(rng, 0.5)
             ? bcdb::Term::variable(bound_var())
             : bcdb::Term::constant(bcdb::Value::integer(pick(rng, 0, 4)))});
  }
  return q;
}

/// Random 3-CNF within the given bounds.
inline bcdb::CnfFormula random_cnf(Rng& rng, int max_vars, int max_clauses) {
  bcdb::CnfFormula phi;
  phi.variable_count = pick(rng, 1, max_vars);
  int n = pick(rng, 1, max_clauses);
  for (int i = 0; i < n; ++i) {
    std::vector<int> clause;
    int width = pick(rng, 1, 3);
    for (int j = 0; j < width; ++j) {
      int v = pick(rng, 1, phi.variable_count);
      clause.push_back(chance(rng, 0.5) ? v : -v);
    }
    phi.clauses.push_back(std::move(clause));
  }
  return phi;
}

// ------------------------------------------------------------ CLI glue

inline std::string fixture_path(const std::string& name) {
  return std::string(BCDB_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct CliResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(BCDB_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "popen failed"};
  std::string output;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, output};
}

}  // namespace testutil
