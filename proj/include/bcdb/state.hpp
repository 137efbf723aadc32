#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bcdb/value.hpp"

namespace bcdb {

struct RelationSchema {
  std::string name;
  std::vector<std::string> attributes;  // all distinct

  int attribute_index(const std::string& attr) const;  // throws SchemaError
};

/// Declared relations of a database, keyed by name.
class Schema {
 public:
  void add_relation(RelationSchema rel);
  bool has_relation(const std::string& name) const {
    return relations_.count(name) != 0;
  }
  const RelationSchema& relation(const std::string& name) const;
  const std::map<std::string, RelationSchema>& relations() const {
    return relations_;
  }
  friend bool operator==(const Schema& a, const Schema& b);

 private:
  std::map<std::string, RelationSchema> relations_;
};

struct Tuple {
  std::string relation;
  std::vector<Value> values;

  std::string to_string() const;
  friend bool operator==(const Tuple&, const Tuple&) = default;
  friend bool operator<(const Tuple& a, const Tuple& b);
};

/// A set of relation instances over a fixed schema. Set semantics, no
/// duplicates; every tuple conforms to the schema. Iteration order is
/// canonical (relations by name, tuples sorted).
class DatabaseState {
 public:
  DatabaseState() = default;
  explicit DatabaseState(Schema schema) : schema_(std::move(schema)) {}

  const Schema& schema() const { return schema_; }

  void insert(Tuple t);  // idempotent; validates arity
  bool contains(const Tuple& t) const;
  const std::set<Tuple>& tuples(const std::string& relation) const;

  std::size_t tuple_count() const;
  std::vector<Tuple> all_tuples() const;  // canonical order

  template <typename Range>
  DatabaseState united(const Range& extra) const {
    DatabaseState out = *this;
    for (const Tuple& t : extra) out.insert(t);
    return out;
  }

  bool subset_of(const DatabaseState& other) const;

  /// All constants appearing anywhere in the state.
  std::set<Value> active_constants() const;

  friend bool operator==(const DatabaseState& a, const DatabaseState& b) {
    return a.relations_ == b.relations_;
  }
  friend bool operator<(const DatabaseState& a, const DatabaseState& b) {
    return a.relations_ < b.relations_;
  }

 private:
  Schema schema_;
  std::map<std::string, std::set<Tuple>> relations_;
};

}  // namespace bcdb
