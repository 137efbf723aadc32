#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcdb/errors.hpp"
#include "bcdb/textio.hpp"
#include "helpers.hpp"

using namespace bcdb;
using namespace testutil;

namespace {

/// Random value of any model kind. Symbols avoid the two characters the
/// format cannot carry in a quoted string (double quote, newline).
Value random_value(Rng& rng) {
  switch (pick(rng, 0, 3)) {
    case 0:
      return Value::integer(pick(rng, -100000, 100000));
    case 1:
      return Value::decimal(pick(rng, -99999, 99999), pick(rng, 1, 4));
    case 2: {
      static const char kChars[] =
          "abcdefghijklmnopqrstuvwxyz"
          "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 _-.#':,()<>";
      std::string s;
      int len = pick(rng, 0, 12);
      for (int i = 0; i < len; ++i)
        s += kChars[pick(rng, 0, sizeof(kChars) - 2)];
      return Value::symbol(s);
    }
    default:
      return Value::fresh(pick(rng, 1, 1000));
  }
}

/// Random database exercising all value kinds and constraint sections.
BlockchainDatabase random_rich_db(Rng& rng) {
  Schema schema;
  std::vector<RelationSchema> rels;
  int nrel = pick(rng, 1, 3);
  for (int r = 1; r <= nrel; ++r) {
    std::vector<std::string> attrs;
    int arity = pick(rng, 1, 3);
    for (int a = 0; a < arity; ++a) attrs.push_back("c" + std::to_string(a));
    rels.push_back({"N" + std::to_string(r), attrs});
    schema.add_relation(rels.back());
  }
  ConstraintSet ic;
  for (const RelationSchema& rel : rels) {
    if (rel.attributes.size() >= 2 && chance(rng, 0.4)) {
      if (chance(rng, 0.5))
        ic.fds.push_back({rel.name, {rel.attributes[0]}, rel.attributes});
      else
        ic.fds.push_back({rel.name, {rel.attributes[0]}, {rel.attributes[1]}});
    }
  }
  if (chance(rng, 0.4)) {
    const RelationSchema& a = rels[pick(rng, 0, nrel - 1)];
    const RelationSchema& b = rels[pick(rng, 0, nrel - 1)];
    if (!(a.name == b.name))
      ic.inds.push_back({a.name, {a.attributes[0]}, b.name, {b.attributes[0]}});
  }
  auto random_tuple = [&]() {
    const RelationSchema& rel = rels[pick(rng, 0, nrel - 1)];
    std::vector<Value> vals;
    for (std::size_t i = 0; i < rel.attributes.size(); ++i)
      vals.push_back(random_value(rng));
    return Tuple{rel.name, vals};
  };
  DatabaseState state(schema);
  for (int i = pick(rng, 0, 5); i > 0; --i) {
    DatabaseState next = state;
    next.insert(random_tuple());
    if (satisfies(next, ic)) state = std::move(next);
  }
  std::vector<Transaction> pending;
  for (int i = pick(rng, 0, 4); i > 0; --i) {
    std::set<Tuple> tuples;
    for (int j = pick(rng, 1, 3); j > 0; --j) tuples.insert(random_tuple());
    pending.emplace_back("Tx" + std::to_string(i), std::move(tuples));
  }
  return BlockchainDatabase(std::move(state), std::move(ic),
                            std::move(pending));
}

bool same_cq(const ConjunctiveQuery& a, const ConjunctiveQuery& b) {
  return a.name == b.name && a.positive == b.positive &&
         a.negated == b.negated && a.comparisons == b.comparisons;
}

bool same_query(const DenialConstraint& a, const DenialConstraint& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<ConjunctiveQuery>(a))
    return same_cq(std::get<ConjunctiveQuery>(a),
                   std::get<ConjunctiveQuery>(b));
  const AggregateQuery& x = std::get<AggregateQuery>(a);
  const AggregateQuery& y = std::get<AggregateQuery>(b);
  return x.function == y.function && x.grouped_vars == y.grouped_vars &&
         x.comparator == y.comparator && x.threshold == y.threshold &&
         same_cq(x.body, y.body);
}

void check_same_db(const BlockchainDatabase& a, const BlockchainDatabase& b) {
  CHECK(a.state() == b.state());
  CHECK(a.state().schema() == b.state().schema());
  CHECK(a.ic().fds == b.ic().fds);
  CHECK(a.ic().inds == b.ic().inds);
  REQUIRE(a.pending().size() == b.pending().size());
  for (std::size_t i = 0; i < a.pending().size(); ++i) {
    CHECK(a.pending()[i].label == b.pending()[i].label);
    CHECK(a.pending()[i].tuples == b.pending()[i].tuples);
  }
}

}  // namespace

TEST_CASE("every value kind survives a serialize/parse round trip") {
  Rng rng(71001);
  for (int iter = 0; iter < 1200; ++iter) {
    Value v = random_value(rng);
    std::string text = "relation V(a)\nstate V(" + serialize_value(v) + ")\n";
    BlockchainDatabase db = parse_bundle(text);
    auto tuples = db.state().tuples("V");
    REQUIRE(tuples.size() == 1);
    CHECK(tuples.begin()->values[0] == v);
  }
}

TEST_CASE("bundle round trip is the identity") {
  Rng rng(71002);
  for (int iter = 0; iter < 400; ++iter) {
    BlockchainDatabase db = random_rich_db(rng);
    std::string text = serialize_bundle(db);
    BlockchainDatabase back = parse_bundle(text);
    check_same_db(db, back);
    // and serialization is canonical: a second pass is byte-identical
    CHECK(serialize_bundle(back) == text);
  }
}

TEST_CASE("golden fixture is byte-identical under reserialization") {
  std::string text = read_file(fixture_path("running_example.bcdb"));
  REQUIRE_FALSE(text.empty());
  CHECK(serialize_bundle(parse_bundle(text)) == text);
  std::string scenario = read_file(fixture_path("scenario.bcdb"));
  CHECK(serialize_bundle(parse_bundle(scenario)) == scenario);
}

TEST_CASE("query round trip: conjunctive and aggregate forms") {
  Rng rng(71003);
  BlockchainDatabase db = random_rich_db(rng);
  for (int iter = 0; iter < 600; ++iter) {
    DenialConstraint q;
    if (chance(rng, 0.5)) {
      q = DenialConstraint{random_cq(rng, db)};
    } else {
      AggregateQuery agg;
      agg.function = static_cast<AggregateFunction>(pick(rng, 0, 3));
      agg.body = random_cq(rng, db);
      std::vector<std::string> vars;
      for (const Term& t : agg.body.positive.front().terms)
        if (t.is_variable()) vars.push_back(t.variable_name());
      if (vars.empty()) continue;
      agg.grouped_vars = {vars.front()};
      agg.comparator =
          std::array{CompareOp::Eq, CompareOp::Lt, CompareOp::Gt}[pick(rng, 0, 2)];
      agg.threshold = Value::integer(pick(rng, -5, 20));
      q = DenialConstraint{agg};
    }
    std::string text = serialize_query(q);
    DenialConstraint back = parse_query(text);
    CHECK(same_query(q, back));
    CHECK(serialize_query(back) == text);
  }
}

TEST_CASE("separation spec round trip") {
  Rng rng(71004);
  for (int iter = 0; iter < 200; ++iter) {
    SeparationSpec spec;
    for (int i = pick(rng, 0, 3); i > 0; --i)
      spec.t_in.insert("A" + std::to_string(i));
    for (int i = pick(rng, 0, 3); i > 0; --i)
      spec.t_out.insert("B" + std::to_string(i));
    if (chance(rng, 0.5)) spec.bound = pick(rng, 1, 9);
    std::string text = serialize_separation_spec(spec);
    SeparationSpec back = parse_separation_spec(text);
    CHECK(back.t_in == spec.t_in);
    CHECK(back.t_out == spec.t_out);
    CHECK(back.bound == spec.bound);
  }
}

TEST_CASE("parse errors carry 1-based positions") {
  try {
    parse_bundle("relation R(a)\nstate R(1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);  // the missing ')' is discovered at end of input
  }
  try {
    parse_bundle("relation R(a)\nstate R(1) extra(2)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 1);
  }
  CHECK_THROWS_AS(parse_bundle("relation R(a)\nstate Q(1)\n"), SchemaError);
  CHECK_THROWS_AS(parse_bundle("relation R(a, a)\n"), ParseError);
  CHECK_THROWS_AS(parse_query("deny q :- R(x), !S(y)"), SafetyError);
  CHECK_THROWS_AS(parse_query("deny q :- R(x), x >= 3"), ParseError);
  CHECK_THROWS_AS(parse_query("deny [count(x) :- R(x)] != 3"), ParseError);
  CHECK_THROWS_AS(parse_separation_spec("separate in = {T1} out = {T1, T1}"),
                  ParseError);
  CHECK_THROWS_AS(parse_separation_spec("separate in = {} out = {} bound = 0"),
                  ParseError);
}

TEST_CASE("unnamed deny defaults the query name") {
  DenialConstraint q = parse_query("deny :- R(x)");
  CHECK(std::get<ConjunctiveQuery>(q).name == "q");
}

TEST_CASE("hypothetical transaction parsing validates against the schema") {
  Schema s;
  s.add_relation({"R", {"a"}});
  auto txns = parse_transactions("txn H1 { R(1); }\ntxn H2 { R(2); }", s);
  REQUIRE(txns.size() == 2);
  CHECK(txns[0].label == "H1");
  CHECK_THROWS_AS(parse_transactions("txn H { Q(1); }", s), ParseError);
  CHECK_THROWS_AS(parse_transactions("txn H { R(1, 2); }", s), ParseError);
}

TEST_CASE("fuzzed bundles never escape the documented error types") {
  Rng rng(71005);
  std::string base = read_file(fixture_path("running_example.bcdb"));
  REQUIRE_FALSE(base.empty());
  int parsed = 0, rejected = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    std::string text = base;
    int edits = pick(rng, 1, 4);
    for (int e = 0; e < edits && !text.empty(); ++e) {
      std::size_t at = pick(rng, 0, static_cast<int>(text.size()) - 1);
      switch (pick(rng, 0, 2)) {
        case 0: text[at] = static_cast<char>(pick(rng, 0, 255)); break;
        case 1: text.insert(at, 1, static_cast<char>(pick(rng, 0, 255))); break;
        default: text.erase(at, 1); break;
      }
    }
    try {
      parse_bundle(text);
      ++parsed;
    } catch (const ParseError&) {
      ++rejected;
    } catch (const SchemaError&) {
      ++rejected;
    }
    // anything else propagates and fails the test
  }
  CHECK(parsed + rejected == 10000);
  CHECK(rejected > 100);
}

TEST_CASE("fuzzed queries never escape the documented error types") {
  Rng rng(71006);
  std::string base = read_file(fixture_path("double_payment.dq"));
  REQUIRE_FALSE(base.empty());
  int outcomes = 0;
  for (int iter = 0; iter < 5000; ++iter) {
    std::string text = base;
    for (int e = pick(rng, 1, 3); e > 0 && !text.empty(); --e) {
      std::size_t at = pick(rng, 0, static_cast<int>(text.size()) - 1);
      if (chance(rng, 0.5))
        text[at] = static_cast<char>(pick(rng, 0, 255));
      else
        text.erase(at, 1);
    }
    try {
      parse_query(text);
    } catch (const ParseError&) {
    } catch (const SafetyError&) {
    } catch (const SchemaError&) {
    }
    ++outcomes;
  }
  CHECK(outcomes == 5000);
}
