#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcdb/state.hpp"

namespace bcdb {

/// X -> Y over a relation. A key is the special case Y = all attributes.
struct FunctionalDependency {
  std::string relation;
  std::vector<std::string> lhs;  // nonempty
  std::vector<std::string> rhs;

  bool is_key(const Schema& schema) const;
  std::string to_string() const;
  friend bool operator==(const FunctionalDependency&,
                         const FunctionalDependency&) = default;
};

/// source[attrs] subseteq target[attrs], attribute lists of equal length.
struct InclusionDependency {
  std::string source_relation;
  std::vector<std::string> source_attrs;
  std::string target_relation;
  std::vector<std::string> target_attrs;

  std::string to_string() const;
  friend bool operator==(const InclusionDependency&,
                         const InclusionDependency&) = default;
};

/// Which constraint types an instance uses (the dispatch key for the
/// specialized algorithms).
struct ConstraintTypes {
  bool key = false;
  bool fd = false;  // a non-key functional dependency
  bool ind = false;

  bool key_fd_only() const { return !ind; }
  bool ind_only() const { return !key && !fd; }
  bool empty() const { return !key && !fd && !ind; }
};

struct ConstraintSet {
  std::vector<FunctionalDependency> fds;
  std::vector<InclusionDependency> inds;

  void validate(const Schema& schema) const;
  ConstraintTypes types_present(const Schema& schema) const;

  /// FDs rewritten to single-attribute right-hand sides (chase form).
  std::vector<FunctionalDependency> normalized_fds() const;
};

struct Violation {
  enum class Kind { Fd, Ind };
  Kind kind;
  std::string constraint;       // printable form of the violated constraint
  std::vector<Tuple> witnesses; // offending tuple(s)
};

bool check_fd(const DatabaseState& state, const FunctionalDependency& fd);
bool check_ind(const DatabaseState& state, const InclusionDependency& ind);
bool satisfies(const DatabaseState& state, const ConstraintSet& ic);
std::vector<Violation> violations(const DatabaseState& state,
                                  const ConstraintSet& ic);

}  // namespace bcdb
