#include "bcdb/state.hpp"

#include <algorithm>

#include "bcdb/errors.hpp"

namespace bcdb {

int RelationSchema::attribute_index(const std::string& attr) const {
  for (std::size_t i = 0; i < attributes.size(); ++i)
    if (attributes[i] == attr) return static_cast<int>(i);
  throw SchemaError("relation " + name + " has no attribute '" + attr + "'");
}

void Schema::add_relation(RelationSchema rel) {
  if (relations_.count(rel.name))
    throw SchemaError("duplicate relation declaration: " + rel.name);
  std::set<std::string> seen;
  for (const auto& a : rel.attributes)
    if (!seen.insert(a).second)
      throw SchemaError("relation " + rel.name + " repeats attribute '" + a +
                        "'");
  relations_.emplace(rel.name, std::move(rel));
}

const RelationSchema& Schema::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw SchemaError("unknown relation: " + name);
  return it->second;
}

bool operator==(const Schema& a, const Schema& b) {
  if (a.relations_.size() != b.relations_.size()) return false;
  auto ia = a.relations_.begin();
  auto ib = b.relations_.begin();
  for (; ia != a.relations_.end(); ++ia, ++ib) {
    if (ia->first != ib->first ||
        ia->second.attributes != ib->second.attributes)
      return false;
  }
  return true;
}

std::string Tuple::to_string() const {
  std::string out = relation + "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].to_string();
  }
  return out + ")";
}

bool operator<(const Tuple& a, const Tuple& b) {
  if (a.relation != b.relation) return a.relation < b.relation;
  if (a.values.size() != b.values.size())
    return a.values.size() < b.values.size();
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    int c = Value::canonical_compare(a.values[i], b.values[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

void DatabaseState::insert(Tuple t) {
  const RelationSchema& rel = schema_.relation(t.relation);
  if (t.values.size() != rel.attributes.size())
    throw SchemaError("arity mismatch for " + t.relation + ": got " +
                      std::to_string(t.values.size()) + ", declared " +
                      std::to_string(rel.attributes.size()));
  relations_[t.relation].insert(std::move(t));
}

bool DatabaseState::contains(const Tuple& t) const {
  auto it = relations_.find(t.relation);
  return it != relations_.end() && it->second.count(t) != 0;
}

const std::set<Tuple>& DatabaseState::tuples(
    const std::string& relation) const {
  schema_.relation(relation);  // validate
  static const std::set<Tuple> kEmpty;
  auto it = relations_.find(relation);
  return it == relations_.end() ? kEmpty : it->second;
}

std::size_t DatabaseState::tuple_count() const {
  std::size_t n = 0;
  for (const auto& [_, ts] : relations_) n += ts.size();
  return n;
}

std::vector<Tuple> DatabaseState::all_tuples() const {
  std::vector<Tuple> out;
  out.reserve(tuple_count());
  for (const auto& [_, ts] : relations_) out.insert(out.end(), ts.begin(), ts.end());
  return out;
}

bool DatabaseState::subset_of(const DatabaseState& other) const {
  for (const auto& [rel, ts] : relations_) {
    for (const Tuple& t : ts)
      if (!other.contains(t)) return false;
  }
  return true;
}

std::set<Value> DatabaseState::active_constants() const {
  std::set<Value> out;
  for (const auto& [_, ts] : relations_)
    for (const Tuple& t : ts) out.insert(t.values.begin(), t.values.end());
  return out;
}

}  // namespace bcdb
