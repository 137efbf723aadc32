#pragma once

#include <string>
#include <vector>

#include "bcdb/chain.hpp"
#include "bcdb/denial.hpp"
#include "bcdb/query.hpp"
#include "bcdb/sepgen.hpp"

namespace bcdb {

/// Parses a .bcdb bundle: schema, constraints, state and pending pool.
/// Throws ParseError (positioned) or SchemaError (semantic).
BlockchainDatabase parse_bundle(const std::string& text);

/// Parses a .dq denial-constraint file (one `deny` form).
DenialConstraint parse_query(const std::string& text);

/// Parses a file of `txn LABEL { ... }` blocks against a known schema
/// (used for hypothetical dry-run transactions).
std::vector<Transaction> parse_transactions(const std::string& text,
                                            const Schema& schema);

/// Parses a `separate in = {...} out = {...} [bound = k]` spec.
SeparationSpec parse_separation_spec(const std::string& text);

/// Canonical serializers; parse(serialize(x)) == x for every model value.
std::string serialize_value(const Value& v);
std::string serialize_tuple(const Tuple& t);
std::string serialize_bundle(const BlockchainDatabase& db);
std::string serialize_transaction(const Transaction& t);
std::string serialize_query(const DenialConstraint& q);
std::string serialize_separation_spec(const SeparationSpec& spec);

/// Human-readable and machine-readable (JSON) renderings.
std::string render_worlds_text(const std::vector<World>& worlds);
std::string render_worlds_json(const std::vector<World>& worlds);
std::string render_verdict_text(const Verdict& v);
std::string render_verdict_json(const Verdict& v);
std::string render_classification_text(const Classification& c);
std::string render_classification_json(const Classification& c);
std::string render_sep_result_text(const SeparationResult& r);
std::string render_sep_result_json(const SeparationResult& r);

}  // namespace bcdb
