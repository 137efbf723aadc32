#include "bcdb/constraints.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bcdb/errors.hpp"

namespace bcdb {

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i];
  }
  return out;
}

std::vector<Value> project(const Tuple& t, const std::vector<int>& idx) {
  std::vector<Value> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(t.values[i]);
  return out;
}

std::vector<int> attribute_indices(const RelationSchema& rel,
                                   const std::vector<std::string>& attrs) {
  std::vector<int> out;
  out.reserve(attrs.size());
  for (const auto& a : attrs) out.push_back(rel.attribute_index(a));
  return out;
}

}  // namespace

bool FunctionalDependency::is_key(const Schema& schema) const {
  const RelationSchema& rel = schema.relation(relation);
  std::set<std::string> rhs_set(rhs.begin(), rhs.end());
  for (const auto& a : rel.attributes)
    if (!rhs_set.count(a)) return false;
  return true;
}

std::string FunctionalDependency::to_string() const {
  return "fd " + relation + ": " + join(lhs) + " -> " + join(rhs);
}

std::string InclusionDependency::to_string() const {
  return "ind " + source_relation + "[" + join(source_attrs) + "] <= " +
         target_relation + "[" + join(target_attrs) + "]";
}

void ConstraintSet::validate(const Schema& schema) const {
  for (const auto& fd : fds) {
    const RelationSchema& rel = schema.relation(fd.relation);
    if (fd.lhs.empty())
      throw SchemaError("fd over " + fd.relation + " has empty left side");
    for (const auto& a : fd.lhs) rel.attribute_index(a);
    for (const auto& a : fd.rhs) rel.attribute_index(a);
  }
  for (const auto& ind : inds) {
    const RelationSchema& src = schema.relation(ind.source_relation);
    const RelationSchema& dst = schema.relation(ind.target_relation);
    if (ind.source_attrs.size() != ind.target_attrs.size())
      throw SchemaError("ind attribute lists differ in length: " +
                        ind.to_string());
    for (const auto& a : ind.source_attrs) src.attribute_index(a);
    for (const auto& a : ind.target_attrs) dst.attribute_index(a);
  }
}

ConstraintTypes ConstraintSet::types_present(const Schema& schema) const {
  ConstraintTypes out;
  for (const auto& fd : fds) {
    if (fd.is_key(schema))
      out.key = true;
    else
      out.fd = true;
  }
  out.ind = !inds.empty();
  return out;
}

std::vector<FunctionalDependency> ConstraintSet::normalized_fds() const {
  std::vector<FunctionalDependency> out;
  for (const auto& fd : fds)
    for (const auto& a : fd.rhs)
      out.push_back({fd.relation, fd.lhs, {a}});
  return out;
}

bool check_fd(const DatabaseState& state, const FunctionalDependency& fd) {
  const RelationSchema& rel = state.schema().relation(fd.relation);
  std::vector<int> lhs = attribute_indices(rel, fd.lhs);
  std::vector<int> rhs = attribute_indices(rel, fd.rhs);
  std::map<std::vector<Value>, std::vector<Value>> seen;
  for (const Tuple& t : state.tuples(fd.relation)) {
    auto key = project(t, lhs);
    auto val = project(t, rhs);
    auto [it, inserted] = seen.emplace(std::move(key), val);
    if (!inserted && it->second != val) return false;
  }
  return true;
}

bool check_ind(const DatabaseState& state, const InclusionDependency& ind) {
  const RelationSchema& src = state.schema().relation(ind.source_relation);
  const RelationSchema& dst = state.schema().relation(ind.target_relation);
  std::vector<int> si = attribute_indices(src, ind.source_attrs);
  std::vector<int> di = attribute_indices(dst, ind.target_attrs);
  std::set<std::vector<Value>> targets;
  for (const Tuple& t : state.tuples(ind.target_relation))
    targets.insert(project(t, di));
  for (const Tuple& t : state.tuples(ind.source_relation))
    if (!targets.count(project(t, si))) return false;
  return true;
}

bool satisfies(const DatabaseState& state, const ConstraintSet& ic) {
  for (const auto& fd : ic.fds)
    if (!check_fd(state, fd)) return false;
  for (const auto& ind : ic.inds)
    if (!check_ind(state, ind)) return false;
  return true;
}

std::vector<Violation> violations(const DatabaseState& state,
                                  const ConstraintSet& ic) {
  std::vector<Violation> out;
  for (const auto& fd : ic.fds) {
    const RelationSchema& rel = state.schema().relation(fd.relation);
    std::vector<int> lhs = attribute_indices(rel, fd.lhs);
    std::vector<int> rhs = attribute_indices(rel, fd.rhs);
    std::map<std::vector<Value>, Tuple> seen;
    for (const Tuple& t : state.tuples(fd.relation)) {
      auto key = project(t, lhs);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(std::move(key), t);
      } else if (project(it->second, rhs) != project(t, rhs)) {
        std::string label = fd.is_key(state.schema())
                                ? "key " + fd.relation + "(" + join(fd.lhs) + ")"
                                : fd.to_string();
        out.push_back({Violation::Kind::Fd, label, {it->second, t}});
      }
    }
  }
  for (const auto& ind : ic.inds) {
    const RelationSchema& src = state.schema().relation(ind.source_relation);
    const RelationSchema& dst = state.schema().relation(ind.target_relation);
    std::vector<int> si = attribute_indices(src, ind.source_attrs);
    std::vector<int> di = attribute_indices(dst, ind.target_attrs);
    std::set<std::vector<Value>> targets;
    for (const Tuple& t : state.tuples(ind.target_relation))
      targets.insert(project(t, di));
    for (const Tuple& t : state.tuples(ind.source_relation))
      if (!targets.count(project(t, si)))
        out.push_back({Violation::Kind::Ind, ind.to_string(), {t}});
  }
  return out;
}

}  // namespace bcdb
