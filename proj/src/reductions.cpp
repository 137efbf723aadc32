#include "bcdb/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "bcdb/errors.hpp"

namespace bcdb {

void CnfFormula::validate() const {
  if (variable_count < 1) throw SchemaError("formula needs >= 1 variable");
  if (clauses.empty()) throw SchemaError("formula needs >= 1 clause");
  for (const std::vector<int>& clause : clauses) {
    if (clause.empty()) throw SchemaError("empty clause");
    if (clause.size() > 3) throw SchemaError("clause with more than 3 literals");
    for (int lit : clause) {
      int v = std::abs(lit);
      if (v < 1 || v > variable_count)
        throw SchemaError("literal " + std::to_string(lit) + " out of range");
    }
  }
}

namespace {

Value t_val() { return Value::symbol("t"); }
Value f_val() { return Value::symbol("f"); }

Value var_symbol(int v) { return Value::symbol("x" + std::to_string(v)); }

Term var(const std::string& name) { return Term::variable(name); }
Term con(Value v) { return Term::constant(std::move(v)); }

/// Per-literal transactions {ClauseRel(i), Val(x, t/f)}. The Val value
/// encoder varies between constructions (symbols vs integers).
template <typename VarEncoder>
std::vector<Transaction> literal_transactions(const CnfFormula& phi,
                                              const std::string& clause_rel,
                                              VarEncoder encode_var) {
  std::vector<Transaction> out;
  std::set<std::set<Tuple>> seen;
  for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
    int clause_id = static_cast<int>(i) + 1;
    int lit_no = 0;
    for (int lit : phi.clauses[i]) {
      ++lit_no;
      std::set<Tuple> tuples{
          Tuple{clause_rel, {Value::integer(clause_id)}},
          Tuple{"Val", {encode_var(std::abs(lit)), lit > 0 ? t_val() : f_val()}}};
      if (!seen.insert(tuples).second) continue;  // duplicate literal
      out.emplace_back(
          "T_c" + std::to_string(clause_id) + "_l" + std::to_string(lit_no),
          std::move(tuples));
    }
  }
  return out;
}

}  // namespace

ReductionInstance sat_to_denial_key_ind(const CnfFormula& phi) {
  phi.validate();
  int n = static_cast<int>(phi.clauses.size());

  Schema schema;
  schema.add_relation({"Clause1", {"C"}});
  schema.add_relation({"Clause2", {"C"}});
  schema.add_relation({"Val", {"X", "B"}});
  schema.add_relation({"Sat", {"S"}});

  ConstraintSet ic;
  ic.fds.push_back({"Val", {"X"}, {"X", "B"}});  // key X
  ic.inds.push_back({"Clause2", {"C"}, "Clause1", {"C"}});

  std::vector<Transaction> pending =
      literal_transactions(phi, "Clause1", [](int v) { return var_symbol(v); });
  std::set<Tuple> sat_txn{Tuple{"Sat", {t_val()}}};
  for (int i = 1; i <= n; ++i)
    sat_txn.insert(Tuple{"Clause2", {Value::integer(i)}});
  pending.emplace_back("T_sat", std::move(sat_txn));

  ConjunctiveQuery q;
  q.name = "q";
  q.positive.push_back({"Sat", {con(t_val())}});

  ReductionInstance out{"sat_to_denial_key_ind",
                        BlockchainDatabase(DatabaseState(schema), ic,
                                           std::move(pending)),
                        DenialConstraint{q}, std::nullopt};
  return out;
}

ReductionInstance sat_to_denial_agg_count(const CnfFormula& phi,
                                          AggregateFunction alpha,
                                          CompareOp theta) {
  phi.validate();
  if (alpha == AggregateFunction::Max)
    throw SchemaError("this construction covers count, countd and sum only");
  if (theta != CompareOp::Gt && theta != CompareOp::Eq)
    throw SchemaError("comparator must be > or =");
  std::int64_t n = static_cast<std::int64_t>(phi.clauses.size());

  Schema schema;
  schema.add_relation({"Clause", {"C"}});
  schema.add_relation({"Val", {"X", "B"}});

  ConstraintSet ic;
  ic.fds.push_back({"Val", {"X"}, {"X", "B"}});

  std::vector<Transaction> pending =
      literal_transactions(phi, "Clause", [](int v) { return var_symbol(v); });

  AggregateQuery q;
  q.function = alpha;
  if (alpha != AggregateFunction::Count) q.grouped_vars = {"i"};
  q.body.name = "q";
  q.body.positive.push_back({"Clause", {var("i")}});
  std::int64_t threshold =
      alpha == AggregateFunction::Sum ? n * (n + 1) / 2 - 1 : n - 1;
  if (theta == CompareOp::Eq) threshold += 1;
  q.comparator = theta;
  q.threshold = Value::integer(threshold);

  ReductionInstance out{"sat_to_denial_agg_count",
                        BlockchainDatabase(DatabaseState(schema), ic,
                                           std::move(pending)),
                        DenialConstraint{q}, std::nullopt};
  return out;
}

ReductionInstance sat_to_denial_agg_ind(const CnfFormula& phi,
                                        AggregateFunction alpha,
                                        CompareOp theta,
                                        bool negated_variant) {
  phi.validate();
  std::int64_t n = static_cast<std::int64_t>(phi.clauses.size());
  std::int64_t m = phi.variable_count;
  if (negated_variant) {
    if (theta != CompareOp::Gt)
      throw SchemaError("the negated variant uses the > comparator");
    if (alpha == AggregateFunction::Max)
      throw SchemaError("the negated variant covers count, countd and sum");
  } else if (theta != CompareOp::Lt && theta != CompareOp::Eq) {
    throw SchemaError("comparator must be < or = (or > with negation)");
  }

  Schema schema;
  schema.add_relation({"Clause1", {"C"}});
  schema.add_relation({"Clause2", {"C"}});
  schema.add_relation({"Val", {"X", "B"}});
  schema.add_relation({"Sat", {"S"}});
  if (negated_variant) schema.add_relation({"Truth", {"T"}});

  ConstraintSet ic;
  ic.inds.push_back({"Clause2", {"C"}, "Clause1", {"C"}});

  DatabaseState state(schema);
  // Variables are the integers 1..m; 0 is the preseeded dummy variable.
  state.insert(Tuple{"Val", {Value::integer(0), t_val()}});
  state.insert(Tuple{"Val", {Value::integer(0), f_val()}});
  if (negated_variant) {
    state.insert(Tuple{"Truth", {t_val()}});
    state.insert(Tuple{"Truth", {f_val()}});
  }

  std::vector<Transaction> pending = literal_transactions(
      phi, "Clause1", [](int v) { return Value::integer(v); });
  std::set<Tuple> sat_txn{Tuple{"Sat", {t_val()}}};
  for (int i = 1; i <= n; ++i)
    sat_txn.insert(Tuple{"Clause2", {Value::integer(i)}});
  pending.emplace_back("T_sat", std::move(sat_txn));
  if (negated_variant) {
    for (int v = 1; v <= m; ++v) {
      pending.emplace_back("T_x" + std::to_string(v) + "_t",
                           std::set<Tuple>{
                               Tuple{"Val", {Value::integer(v), t_val()}}});
      pending.emplace_back("T_x" + std::to_string(v) + "_f",
                           std::set<Tuple>{
                               Tuple{"Val", {Value::integer(v), f_val()}}});
    }
  }

  AggregateQuery q;
  q.function = alpha;
  if (alpha != AggregateFunction::Count) q.grouped_vars = {"x"};
  q.body.name = "q";
  q.body.positive.push_back({"Sat", {con(t_val())}});
  q.body.positive.push_back({"Val", {var("x"), var("b")}});
  if (negated_variant) {
    q.body.negated.push_back({"Val", {var("x"), var("bp")}});
    q.body.positive.push_back({"Truth", {var("bp")}});
    std::int64_t threshold =
        alpha == AggregateFunction::Sum ? m * (m + 1) / 2 - 1 : m - 1;
    q.comparator = CompareOp::Gt;
    q.threshold = Value::integer(threshold);
  } else {
    q.body.positive.push_back({"Val", {var("x"), var("bp")}});
    q.body.comparisons.push_back({var("b"), CompareOp::Ne, var("bp")});
    std::int64_t threshold;
    switch (alpha) {
      case AggregateFunction::Count: threshold = 3; break;
      case AggregateFunction::CountDistinct: threshold = 2; break;
      default: threshold = 1; break;  // sum and max
    }
    if (theta == CompareOp::Eq) threshold -= 1;
    q.comparator = theta;
    q.threshold = Value::integer(threshold);
  }

  ReductionInstance out{"sat_to_denial_agg_ind",
                        BlockchainDatabase(std::move(state), ic,
                                           std::move(pending)),
                        DenialConstraint{q}, std::nullopt};
  return out;
}

ReductionInstance hitting_set_to_ksep(
    const std::vector<std::string>& universe,
    const std::vector<std::set<std::string>>& sets, std::size_t k) {
  std::set<std::string> u(universe.begin(), universe.end());
  for (const std::set<std::string>& s : sets) {
    if (s.empty()) throw SchemaError("empty set cannot be hit");
    for (const std::string& x : s)
      if (!u.count(x)) throw SchemaError("set element " + x +
                                         " is outside the universe");
  }
  if (k < 1) throw SchemaError("bound must be >= 1");

  Schema schema;
  schema.add_relation({"R", {"A", "B"}});
  ConstraintSet ic;
  ic.fds.push_back({"R", {"A"}, {"A", "B"}});

  std::vector<Transaction> pending;
  SeparationSpec spec;
  spec.bound = k;
  std::set<std::set<Tuple>> seen;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::set<Tuple> tuples;
    for (const std::string& x : sets[i])
      tuples.insert(Tuple{"R", {Value::symbol(x), Value::integer(0)}});
    if (!seen.insert(tuples).second) continue;  // duplicate set
    std::string label = "T_s" + std::to_string(i + 1);
    spec.t_out.insert(label);
    pending.emplace_back(std::move(label), std::move(tuples));
  }

  ReductionInstance out{"hitting_set_to_ksep",
                        BlockchainDatabase(DatabaseState(schema), ic,
                                           std::move(pending)),
                        std::nullopt, spec};
  return out;
}

ReductionInstance sat_to_ksep_ind(const CnfFormula& phi) {
  phi.validate();
  int n = static_cast<int>(phi.clauses.size());
  int m = phi.variable_count;

  Schema schema;
  schema.add_relation({"Assign1", {"X", "V"}});
  schema.add_relation({"Assign2", {"X", "V"}});
  schema.add_relation({"Truth", {"V"}});
  std::vector<std::string> sat_attrs;
  for (int i = 1; i <= m; ++i) sat_attrs.push_back("X" + std::to_string(i));
  schema.add_relation({"Sat", sat_attrs});
  schema.add_relation({"Clause1", {"C"}});
  schema.add_relation({"Clause2", {"C"}});

  ConstraintSet ic;
  ic.inds.push_back({"Assign1", {"V"}, "Truth", {"V"}});
  ic.inds.push_back({"Assign2", {"X", "V"}, "Assign1", {"X", "V"}});
  for (int i = 1; i <= m; ++i)
    ic.inds.push_back({"Sat", {"X" + std::to_string(i)}, "Assign1", {"X"}});
  ic.inds.push_back({"Clause2", {"C"}, "Clause1", {"C"}});

  DatabaseState state(schema);
  state.insert(Tuple{"Truth", {t_val()}});
  state.insert(Tuple{"Truth", {f_val()}});

  std::vector<Transaction> pending;
  for (int v = 1; v <= m; ++v) {
    for (bool positive : {true, false}) {
      std::set<Tuple> tuples{
          Tuple{"Assign2", {var_symbol(v), positive ? t_val() : f_val()}}};
      for (int j = 0; j < n; ++j) {
        bool occurs = std::any_of(
            phi.clauses[j].begin(), phi.clauses[j].end(),
            [&](int lit) { return std::abs(lit) == v && (lit > 0) == positive; });
        if (occurs) tuples.insert(Tuple{"Clause1", {Value::integer(j + 1)}});
      }
      pending.emplace_back(
          "T_x" + std::to_string(v) + (positive ? "_t" : "_f"),
          std::move(tuples));
    }
  }
  std::set<Tuple> sat_txn;
  std::vector<Value> sat_row;
  for (int v = 1; v <= m; ++v) sat_row.push_back(var_symbol(v));
  sat_txn.insert(Tuple{"Sat", sat_row});
  for (int j = 1; j <= n; ++j)
    sat_txn.insert(Tuple{"Clause2", {Value::integer(j)}});
  pending.emplace_back("T_sat", std::move(sat_txn));

  SeparationSpec spec;
  spec.t_in.insert("T_sat");
  spec.bound = static_cast<std::size_t>(m);

  ReductionInstance out{"sat_to_ksep_ind",
                        BlockchainDatabase(std::move(state), ic,
                                           std::move(pending)),
                        std::nullopt, spec};
  return out;
}

ReductionInstance undecidability_gadget(
    const std::vector<FunctionalDependency>& fds,
    const std::vector<InclusionDependency>& inds,
    const FunctionalDependency& f) {
  if (f.lhs.empty() || f.rhs.empty())
    throw SchemaError("the target dependency needs both sides nonempty");

  // Synthesize relation schemas from the attributes the dependencies use.
  std::map<std::string, std::set<std::string>> attrs;
  auto note_fd = [&](const FunctionalDependency& fd) {
    attrs[fd.relation].insert(fd.lhs.begin(), fd.lhs.end());
    attrs[fd.relation].insert(fd.rhs.begin(), fd.rhs.end());
  };
  for (const FunctionalDependency& fd : fds) note_fd(fd);
  note_fd(f);
  for (const InclusionDependency& ind : inds) {
    attrs[ind.source_relation].insert(ind.source_attrs.begin(),
                                      ind.source_attrs.end());
    attrs[ind.target_relation].insert(ind.target_attrs.begin(),
                                      ind.target_attrs.end());
  }

  std::string s_name = "S";
  while (attrs.count(s_name)) s_name += "_";
  std::vector<std::string> s_attrs = f.lhs;
  for (const std::string& a : f.rhs) s_attrs.push_back(a);

  Schema schema;
  for (const auto& [name, cols] : attrs)
    schema.add_relation({name, {cols.begin(), cols.end()}});
  schema.add_relation({s_name, s_attrs});

  ConstraintSet ic;
  ic.fds = fds;
  ic.inds = inds;
  ic.inds.push_back({s_name, s_attrs, f.relation, s_attrs});

  // Two S-tuples equal on f's left-hand side, differing on its right.
  std::set<Tuple> txn;
  for (int copy : {1, 2}) {
    std::vector<Value> row;
    for (std::size_t i = 0; i < f.lhs.size(); ++i)
      row.push_back(Value::symbol("v" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < f.rhs.size(); ++i)
      row.push_back(Value::symbol("a" + std::to_string(i + 1) + "_" +
                                  std::to_string(copy)));
    txn.insert(Tuple{s_name, row});
  }
  std::vector<Transaction> pending;
  pending.emplace_back("T_s", std::move(txn));

  SeparationSpec spec;
  spec.t_in.insert("T_s");

  ReductionInstance out{"undecidability_gadget",
                        BlockchainDatabase(DatabaseState(schema), ic,
                                           std::move(pending)),
                        std::nullopt, spec};
  return out;
}

}  // namespace bcdb
