#include "bcdb/query.hpp"

#include <algorithm>
#include <set>

#include "bcdb/errors.hpp"

namespace bcdb {

std::string Term::to_string() const {
  if (is_variable()) return variable_name();
  return constant_value().to_string();
}

std::string Atom::to_string() const {
  std::string out = relation + "(";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ", ";
    out += terms[i].to_string();
  }
  return out + ")";
}

std::string to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Lt: return "<";
    case CompareOp::Gt: return ">";
    default: return "!=";
  }
}

std::string Comparison::to_string() const {
  return left.to_string() + " " + bcdb::to_string(op) + " " +
         right.to_string();
}

std::string to_string(AggregateFunction f) {
  switch (f) {
    case AggregateFunction::Count: return "count";
    case AggregateFunction::CountDistinct: return "countd";
    case AggregateFunction::Sum: return "sum";
    default: return "max";
  }
}

namespace {

std::set<std::string> positive_variables(const ConjunctiveQuery& q) {
  std::set<std::string> out;
  for (const Atom& a : q.positive)
    for (const Term& t : a.terms)
      if (t.is_variable()) out.insert(t.variable_name());
  return out;
}

void collect_term_var(const Term& t, std::set<std::string>& vars) {
  if (t.is_variable()) vars.insert(t.variable_name());
}

}  // namespace

std::optional<std::string> check_safety(const ConjunctiveQuery& q) {
  std::set<std::string> bound = positive_variables(q);
  std::set<std::string> used;
  for (const Atom& a : q.negated)
    for (const Term& t : a.terms) collect_term_var(t, used);
  for (const Comparison& c : q.comparisons) {
    collect_term_var(c.left, used);
    collect_term_var(c.right, used);
  }
  for (const std::string& v : used)
    if (!bound.count(v)) return v;
  return std::nullopt;
}

std::optional<std::string> check_safety(const AggregateQuery& q) {
  if (auto bad = check_safety(q.body)) return bad;
  std::set<std::string> bound = positive_variables(q.body);
  std::set<std::string> grouped(q.grouped_vars.begin(), q.grouped_vars.end());
  for (const std::string& v : grouped)
    if (!bound.count(v)) return v;
  return std::nullopt;
}

std::optional<std::string> check_safety(const DenialConstraint& q) {
  return std::visit([](const auto& qq) { return check_safety(qq); }, q);
}

namespace {

bool comparison_holds(const Comparison& c, const Assignment& h) {
  auto resolve = [&](const Term& t) -> const Value& {
    if (t.is_variable()) return h.at(t.variable_name());
    return t.constant_value();
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

// Extends h over one atom's terms against a ground tuple; nullopt on clash.
std::optional<Assignment> unify(const Atom& atom, const Tuple& tuple,
                                const Assignment& h) {
  Assignment out = h;
  for (std::size_t i = 0; i < atom.terms.size(); ++i) {
    const Term& term = atom.terms[i];
    const Value& ground = tuple.values[i];
    if (term.is_variable()) {
      auto [it, inserted] = out.emplace(term.variable_name(), ground);
      if (!inserted && !(it->second == ground)) return std::nullopt;
    } else if (!(term.constant_value() == ground)) {
      return std::nullopt;
    }
  }
  return out;
}

Tuple image(const Atom& atom, const Assignment& h) {
  Tuple out{atom.relation, {}};
  out.values.reserve(atom.terms.size());
  for (const Term& t : atom.terms)
    out.values.push_back(t.is_variable() ? h.at(t.variable_name())
                                         : t.constant_value());
  return out;
}

}  // namespace

std::vector<Assignment> satisfying_assignments(const ConjunctiveQuery& body,
                                               const DatabaseState& state) {
  if (auto bad = check_safety(body)) throw SafetyError(*bad);
  for (const Atom& a : body.positive)
    if (state.schema().relation(a.relation).attributes.size() !=
        a.terms.size())
      throw SchemaError("atom arity mismatch: " + a.to_string());
  for (const Atom& a : body.negated)
    if (state.schema().relation(a.relation).attributes.size() !=
        a.terms.size())
      throw SchemaError("atom arity mismatch: " + a.to_string());

  // Left-to-right join over the positive atoms.
  std::vector<Assignment> partial{Assignment{}};
  for (const Atom& atom : body.positive) {
    std::vector<Assignment> next;
    for (const Assignment& h : partial) {
      for (const Tuple& t : state.tuples(atom.relation)) {
        if (auto extended = unify(atom, t, h)) next.push_back(*extended);
      }
    }
    partial = std::move(next);
    if (partial.empty()) return {};
  }

  std::vector<Assignment> out;
  for (const Assignment& h : partial) {
    bool ok = true;
    for (const Atom& a : body.negated)
      if (state.contains(image(a, h))) {
        ok = false;
        break;
      }
    if (ok)
      for (const Comparison& c : body.comparisons)
        if (!comparison_holds(c, h)) {
          ok = false;
          break;
        }
    if (ok) out.push_back(h);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool eval_boolean(const ConjunctiveQuery& q, const DatabaseState& state) {
  return !satisfying_assignments(q, state).empty();
}

Value aggregate_apply(AggregateFunction f, const Bag& bag) {
  if (bag.empty()) throw TypeError("aggregate applied to an empty bag");
  switch (f) {
    case AggregateFunction::Count:
      return Value::integer(static_cast<std::int64_t>(bag.size()));
    case AggregateFunction::CountDistinct: {
      std::set<std::vector<Value>> distinct(bag.begin(), bag.end());
      return Value::integer(static_cast<std::int64_t>(distinct.size()));
    }
    case AggregateFunction::Sum: {
      // Exact sum over integers/decimals at a common scale.
      __int128 acc = 0;
      int scale = 0;
      auto rescale = [](__int128 v, int from, int to) {
        for (int i = from; i < to; ++i) v *= 10;
        return v;
      };
      for (const auto& row : bag) {
        if (row.size() != 1)
          throw TypeError("sum requires arity-1 grouped values");
        const Value& v = row[0];
        if (!v.is_numeric())
          throw TypeError("sum over non-numeric value " + v.to_string());
        std::int64_t units =
            v.kind() == Value::Kind::Integer ? v.as_integer()
                                             : v.as_decimal().units;
        int s = v.kind() == Value::Kind::Integer ? 0 : v.as_decimal().scale;
        if (s > scale) {
          acc = rescale(acc, scale, s);
          scale = s;
        }
        acc += rescale(units, s, scale);
      }
      return Value::decimal(static_cast<std::int64_t>(acc), scale);
    }
    default: {  // Max
      const Value* best = nullptr;
      for (const auto& row : bag) {
        if (row.size() != 1)
          throw TypeError("max requires arity-1 grouped values");
        if (!row[0].is_numeric())
          throw TypeError("max over non-numeric value " + row[0].to_string());
        if (!best || Value::order_compare(row[0], *best) > 0) best = &row[0];
      }
      return *best;
    }
  }
}

bool eval_aggregate(const AggregateQuery& q, const DatabaseState& state) {
  if (auto bad = check_safety(q)) throw SafetyError(*bad);
  if ((q.function == AggregateFunction::Sum ||
       q.function == AggregateFunction::Max) &&
      q.grouped_vars.size() != 1)
    throw TypeError("sum/max require exactly one grouped variable");
  if (q.function == AggregateFunction::CountDistinct && q.grouped_vars.empty())
    throw TypeError("countd requires at least one grouped variable");

  std::vector<Assignment> hs = satisfying_assignments(q.body, state);
  if (hs.empty()) return false;  // empty bag: the query is false
  Bag bag;
  bag.reserve(hs.size());
  for (const Assignment& h : hs) {
    std::vector<Value> row;
    row.reserve(q.grouped_vars.size());
    for (const std::string& v : q.grouped_vars) row.push_back(h.at(v));
    bag.push_back(std::move(row));
  }
  Value result = aggregate_apply(q.function, bag);
  switch (q.comparator) {
    case CompareOp::Eq: return result == q.threshold;
    case CompareOp::Lt: return Value::order_compare(result, q.threshold) < 0;
    case CompareOp::Gt: return Value::order_compare(result, q.threshold) > 0;
    default: throw TypeError("aggregate comparator must be =, < or >");
  }
}

bool eval_denial_query(const DenialConstraint& q, const DatabaseState& state) {
  if (const auto* cq = std::get_if<ConjunctiveQuery>(&q))
    return eval_boolean(*cq, state);
  return eval_aggregate(std::get<AggregateQuery>(q), state);
}

std::size_t positive_atom_count(const DenialConstraint& q) {
  if (const auto* cq = std::get_if<ConjunctiveQuery>(&q))
    return cq->positive.size();
  return std::get<AggregateQuery>(q).body.positive.size();
}

bool is_positive(const DenialConstraint& q) {
  if (const auto* cq = std::get_if<ConjunctiveQuery>(&q))
    return cq->is_positive();
  return std::get<AggregateQuery>(q).body.is_positive();
}

std::vector<Value> query_constants(const DenialConstraint& q) {
  std::set<Value> out;
  auto scan_body = [&](const ConjunctiveQuery& body) {
    auto scan_atoms = [&](const std::vector<Atom>& atoms) {
      for (const Atom& a : atoms)
        for (const Term& t : a.terms)
          if (!t.is_variable()) out.insert(t.constant_value());
    };
    scan_atoms(body.positive);
    scan_atoms(body.negated);
    for (const Comparison& c : body.comparisons) {
      if (!c.left.is_variable()) out.insert(c.left.constant_value());
      if (!c.right.is_variable()) out.insert(c.right.constant_value());
    }
  };
  if (const auto* cq = std::get_if<ConjunctiveQuery>(&q)) {
    scan_body(*cq);
  } else {
    const auto& agg = std::get<AggregateQuery>(q);
    scan_body(agg.body);
    out.insert(agg.threshold);
  }
  return {out.begin(), out.end()};
}

}  // namespace bcdb
