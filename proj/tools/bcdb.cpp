// bcdb: blockchain-database engine front end.
//
// Exit codes (stable contract):
//   0  success / denial constraint holds / transaction generated
//   1  parse, semantic, safety or dispatch error
//   2  missing input file
//   3  resource guard exceeded
//   4  denial constraint violated
//   5  no separating transaction exists
//   6  t_in has no common possible world
//   7  undecidable constraint mix (unbounded fd+ind generation)
//   8  bounded search exhausted

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcdb/errors.hpp"
#include "bcdb/reductions.hpp"
#include "bcdb/textio.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitMissingFile = 2;
constexpr int kExitGuard = 3;
constexpr int kExitViolated = 4;
constexpr int kExitNoSeparating = 5;
constexpr int kExitTInInconsistent = 6;
constexpr int kExitUndecidable = 7;
constexpr int kExitBoundExhausted = 8;

struct MissingFile {
  std::string path;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile{path};
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct Options {
  std::string format = "text";
  std::size_t max_txns = 20;
  bool max_txns_set = false;
  unsigned seed = 0;

  bool structured() const { return format == "structured"; }
  bcdb::EnumerationGuard guard() const { return {max_txns, max_txns_set}; }
};

int sep_result_exit(const bcdb::SeparationResult& r) {
  if (r.status != bcdb::SeparationResult::Status::Failed) return kExitOk;
  switch (*r.failure) {
    case bcdb::SeparationFailure::NoSeparating: return kExitNoSeparating;
    case bcdb::SeparationFailure::TInInconsistent: return kExitTInInconsistent;
    case bcdb::SeparationFailure::UndecidableMix: return kExitUndecidable;
    default: return kExitBoundExhausted;
  }
}

int cmd_validate(const Options& opt, const std::string& bundle_path) {
  bcdb::BlockchainDatabase db = bcdb::parse_bundle(slurp(bundle_path));
  if (opt.structured()) {
    std::cout << "{\n  \"status\": \"ok\",\n  \"transactions\": "
              << db.pending().size() << "\n}\n";
  } else {
    std::cout << "ok: " << db.state().schema().relations().size()
              << " relations, " << db.state().tuple_count()
              << " committed tuples, " << db.pending().size()
              << " pending transactions\n";
  }
  return kExitOk;
}

int cmd_worlds(const Options& opt, const std::string& bundle_path) {
  bcdb::BlockchainDatabase db = bcdb::parse_bundle(slurp(bundle_path));
  std::vector<bcdb::World> worlds =
      bcdb::enumerate_possible_worlds(db, opt.guard());
  std::cout << (opt.structured() ? bcdb::render_worlds_json(worlds)
                                 : bcdb::render_worlds_text(worlds));
  return kExitOk;
}

int cmd_check(const Options& opt, const std::string& bundle_path,
              const std::string& query_path,
              const std::vector<std::string>& hypothetical) {
  bcdb::BlockchainDatabase db = bcdb::parse_bundle(slurp(bundle_path));
  bcdb::DenialConstraint q = bcdb::parse_query(slurp(query_path));
  for (const std::string& path : hypothetical)
    db = db.with_pending(
        bcdb::parse_transactions(slurp(path), db.state().schema()));
  bcdb::Verdict verdict = bcdb::holds_denial(db, q, opt.guard());
  std::cout << (opt.structured() ? bcdb::render_verdict_json(verdict)
                                 : bcdb::render_verdict_text(verdict));
  return verdict.holds ? kExitOk : kExitViolated;
}

int cmd_gensep(const Options& opt, const std::string& bundle_path,
               const std::string& spec_path) {
  bcdb::BlockchainDatabase db = bcdb::parse_bundle(slurp(bundle_path));
  bcdb::SeparationSpec spec = bcdb::parse_separation_spec(slurp(spec_path));
  bcdb::SeparationResult result = bcdb::gen_sep(db, spec, opt.guard());
  std::cout << (opt.structured() ? bcdb::render_sep_result_json(result)
                                 : bcdb::render_sep_result_text(result));
  return sep_result_exit(result);
}

int cmd_classify(const Options& opt, const std::string& bundle_path,
                 const std::string& query_path) {
  bcdb::BlockchainDatabase db = bcdb::parse_bundle(slurp(bundle_path));
  bcdb::DenialConstraint q = bcdb::parse_query(slurp(query_path));
  bcdb::Classification c =
      bcdb::classify(q, db.ic(), db.state().schema());
  std::cout << (opt.structured() ? bcdb::render_classification_json(c)
                                 : bcdb::render_classification_text(c));
  return kExitOk;
}

// ---- reduce: source-problem parsing -----------------------------------

// DIMACS-style CNF: optional "c" comment lines, one "p cnf VARS CLAUSES"
// header, clauses as whitespace-separated literals terminated by 0.
bcdb::CnfFormula parse_dimacs(const std::string& text) {
  bcdb::CnfFormula phi;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  std::vector<int> clause;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, kind;
      int clauses = 0;
      if (!(ls >> p >> kind >> phi.variable_count >> clauses) || kind != "cnf")
        throw bcdb::ParseError(lineno, 1, "malformed DIMACS header");
      seen_header = true;
      continue;
    }
    if (!seen_header)
      throw bcdb::ParseError(lineno, 1, "clause before the DIMACS header");
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        phi.clauses.push_back(clause);
        clause.clear();
      } else {
        clause.push_back(lit);
      }
    }
  }
  if (!clause.empty()) phi.clauses.push_back(clause);
  phi.validate();
  return phi;
}

// Hitting set: "universe a b c", one "set a b" line per set, "bound k".
void parse_hitting_set(const std::string& text,
                       std::vector<std::string>& universe,
                       std::vector<std::set<std::string>>& sets,
                       std::size_t& bound) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool seen_bound = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "universe") {
      std::string item;
      while (ls >> item) universe.push_back(item);
    } else if (head == "set") {
      std::set<std::string> s;
      std::string item;
      while (ls >> item) s.insert(item);
      sets.push_back(std::move(s));
    } else if (head == "bound") {
      long long k = 0;
      if (!(ls >> k) || k < 1)
        throw bcdb::ParseError(lineno, 1, "bound must be a positive integer");
      bound = static_cast<std::size_t>(k);
      seen_bound = true;
    } else {
      throw bcdb::ParseError(lineno, 1, "expected universe/set/bound");
    }
  }
  if (universe.empty())
    throw bcdb::ParseError(1, 1, "missing universe line");
  if (!seen_bound) throw bcdb::ParseError(1, 1, "missing bound line");
}

int cmd_reduce(const Options& opt, const std::string& kind,
               const std::string& source_path, const std::string& out_path,
               const std::string& agg, const std::string& cmp, bool negated) {
  auto alpha = [&]() -> bcdb::AggregateFunction {
    if (agg == "count") return bcdb::AggregateFunction::Count;
    if (agg == "countd") return bcdb::AggregateFunction::CountDistinct;
    if (agg == "sum") return bcdb::AggregateFunction::Sum;
    if (agg == "max") return bcdb::AggregateFunction::Max;
    throw bcdb::SchemaError("unknown aggregate '" + agg + "'");
  };
  auto theta = [&]() -> bcdb::CompareOp {
    if (cmp == "gt") return bcdb::CompareOp::Gt;
    if (cmp == "lt") return bcdb::CompareOp::Lt;
    if (cmp == "eq") return bcdb::CompareOp::Eq;
    throw bcdb::SchemaError("unknown comparator '" + cmp + "'");
  };

  bcdb::ReductionInstance instance = [&]() {
    if (kind == "sat-denial-key-ind")
      return bcdb::sat_to_denial_key_ind(parse_dimacs(slurp(source_path)));
    if (kind == "sat-denial-agg-count")
      return bcdb::sat_to_denial_agg_count(parse_dimacs(slurp(source_path)),
                                           alpha(), theta());
    if (kind == "sat-denial-agg-ind")
      return bcdb::sat_to_denial_agg_ind(parse_dimacs(slurp(source_path)),
                                         alpha(), theta(), negated);
    if (kind == "sat-ksep-ind")
      return bcdb::sat_to_ksep_ind(parse_dimacs(slurp(source_path)));
    if (kind == "hitting-set-ksep") {
      std::vector<std::string> universe;
      std::vector<std::set<std::string>> sets;
      std::size_t bound = 1;
      parse_hitting_set(slurp(source_path), universe, sets, bound);
      return bcdb::hitting_set_to_ksep(universe, sets, bound);
    }
    if (kind == "undecidability") {
      // Fixed textbook-style gadget; the source file is ignored.
      bcdb::FunctionalDependency in_f{"R", {"A"}, {"B"}};
      bcdb::InclusionDependency in_i{"R2", {"A"}, "R", {"A"}};
      bcdb::FunctionalDependency target{"R", {"B"}, {"A"}};
      return bcdb::undecidability_gadget({in_f}, {in_i}, target);
    }
    throw bcdb::SchemaError(
        "unknown reduction kind '" + kind +
        "' (expected sat-denial-key-ind, sat-denial-agg-count, "
        "sat-denial-agg-ind, sat-ksep-ind, hitting-set-ksep, "
        "undecidability)");
  }();

  std::ofstream bundle(out_path, std::ios::binary);
  if (!bundle) throw MissingFile{out_path};
  bundle << bcdb::serialize_bundle(instance.db);
  std::vector<std::string> written{out_path};
  if (instance.query) {
    std::string qpath = out_path + ".dq";
    std::ofstream qf(qpath, std::ios::binary);
    qf << bcdb::serialize_query(*instance.query) << "\n";
    written.push_back(std::move(qpath));
  }
  if (instance.sep_spec) {
    std::string spath = out_path + ".sep";
    std::ofstream sf(spath, std::ios::binary);
    sf << bcdb::serialize_separation_spec(*instance.sep_spec) << "\n";
    written.push_back(std::move(spath));
  }
  if (opt.structured()) {
    std::cout << "{\n  \"kind\": \"" << instance.kind << "\",\n  \"files\": [";
    for (std::size_t i = 0; i < written.size(); ++i)
      std::cout << (i ? ", " : "") << "\"" << written[i] << "\"";
    std::cout << "]\n}\n";
  } else {
    std::cout << "wrote " << instance.kind << " instance:";
    for (const std::string& w : written) std::cout << " " << w;
    std::cout << "\n";
  }
  return kExitOk;
}

// Canonical running-example bundle (a simplified UTXO ledger).
const char* kRunningExample = R"(relation TxInput(prevTxId, prevSer, pk, amount, newTxId, sig)
relation TxOutput(txId, ser, pk, amount)
key TxInput(prevTxId, prevSer)
key TxOutput(txId, ser)
ind TxInput[prevTxId, prevSer, pk, amount] <= TxOutput[txId, ser, pk, amount]
ind TxInput[newTxId] <= TxOutput[txId]
state TxInput(1, 1, "U1Pk", 1, 3, "U1Sig")
state TxInput(2, 1, "U1Pk", 1, 3, "U1Sig")
state TxOutput(1, 1, "U1Pk", 1)
state TxOutput(2, 1, "U1Pk", 1)
state TxOutput(2, 2, "U2Pk", 4)
state TxOutput(3, 1, "U3Pk", 1)
state TxOutput(3, 2, "U4Pk", 0.5)
state TxOutput(3, 3, "U1Pk", 0.5)
txn T1 { TxInput(2, 2, "U2Pk", 4, 4, "U2Sig"); TxOutput(4, 1, "U5Pk", 1); TxOutput(4, 2, "U2Pk", 3); }
txn T2 { TxInput(4, 2, "U2Pk", 3, 5, "U2Sig"); TxOutput(5, 1, "U4Pk", 3); }
txn T3 { TxInput(3, 3, "U1Pk", 0.5, 6, "U1Sig"); TxOutput(6, 1, "U4Pk", 0.5); }
txn T4 { TxInput(5, 1, "U4Pk", 3, 7, "U4Sig"); TxInput(6, 1, "U4Pk", 0.5, 7, "U4Sig"); TxOutput(7, 1, "U7Pk", 2.5); TxOutput(7, 2, "U8Pk", 1); }
txn T5 { TxInput(2, 2, "U2Pk", 4, 8, "U2Sig"); TxInput(3, 3, "U1Pk", 0.5, 8, "U2Sig"); TxOutput(8, 1, "U7Pk", 4); }
)";

// Alice/Bob double-payment scenario: key constraints only, one issued
// payment transaction pending.
const char* kScenarioBundle = R"(relation TxInput(prevTxId, prevSer, pk, amount, newTxId, sig)
relation TxOutput(txId, ser, pk, amount)
key TxInput(prevTxId, prevSer)
key TxOutput(txId, ser)
state TxOutput(1037, 2, "AlicePK", 1)
txn T1 { TxInput(1037, 2, "AlicePK", 1, 5043, "AliceSig"); TxOutput(5043, 1, "BobPK", 1); }
)";

const char* kDoublePaymentQuery =
    "deny q1 :- TxInput(pt1, ps1, \"AlicePK\", 1, ntx1, \"AliceSig\"), "
    "TxOutput(ntx1, ns1, \"BobPK\", 1), "
    "TxInput(pt2, ps2, \"AlicePK\", 1, ntx2, \"AliceSig\"), "
    "TxOutput(ntx2, ns2, \"BobPK\", 1), ntx1 != ntx2";

int cmd_demo(const Options& opt) {
  std::cout << "== bundle ==\n" << kRunningExample << "\n";

  bcdb::BlockchainDatabase db = bcdb::parse_bundle(kRunningExample);
  std::vector<bcdb::World> worlds =
      bcdb::enumerate_possible_worlds(db, opt.guard());
  std::cout << "== possible worlds (absorbed transaction sets) ==\n"
            << bcdb::render_worlds_text(worlds) << "\n";

  std::cout << "== denial check: did T5's output make it anywhere? ==\n";
  bcdb::DenialConstraint q =
      bcdb::parse_query("deny q :- TxOutput(8, s, pk, a)");
  bcdb::Verdict verdict = bcdb::holds_denial(db, q, opt.guard());
  std::cout << bcdb::render_verdict_text(verdict) << "\n";

  std::cout << "== generating a double-spend guard transaction ==\n";
  bcdb::BlockchainDatabase scenario = bcdb::parse_bundle(kScenarioBundle);
  bcdb::SeparationSpec spec;
  spec.t_out.insert("T1");
  bcdb::SeparationResult result = bcdb::gen_sep(scenario, spec, opt.guard());
  std::cout << bcdb::render_sep_result_text(result);

  if (result.transaction) {
    std::cout << "\n== double-payment constraint on the augmented pool ==\n";
    bcdb::BlockchainDatabase augmented =
        scenario.with_pending({*result.transaction});
    bcdb::Verdict recheck = bcdb::holds_denial(
        augmented, bcdb::parse_query(kDoublePaymentQuery), opt.guard());
    std::cout << bcdb::render_verdict_text(recheck);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bcdb: possible-world semantics, denial constraints and "
               "separating-transaction generation for append-only "
               "relational databases"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_option("--max-txns", opt.max_txns,
                 "Override the world-enumeration guard")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for randomized self-checks");

  std::string bundle_path, query_path, spec_path, kind, source_path, out_path;
  std::vector<std::string> hypothetical;
  std::string agg = "count", cmp = "gt";
  bool negated = false;

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a bundle");
  validate->add_option("bundle", bundle_path, "Bundle file (.bcdb)")->required();

  CLI::App* worlds = app.add_subcommand("worlds", "Enumerate possible worlds");
  worlds->add_option("bundle", bundle_path, "Bundle file (.bcdb)")->required();

  CLI::App* check = app.add_subcommand("check", "Check a denial constraint");
  check->add_option("bundle", bundle_path, "Bundle file (.bcdb)")->required();
  check->add_option("query", query_path, "Query file (.dq)")->required();
  check->add_option("--hypothetical", hypothetical,
                    "Dry-run transaction files to add to the pool");

  CLI::App* gensep =
      app.add_subcommand("gensep", "Generate a separating transaction");
  gensep->add_option("bundle", bundle_path, "Bundle file (.bcdb)")->required();
  gensep->add_option("spec", spec_path, "Separation spec file")->required();

  CLI::App* classify =
      app.add_subcommand("classify", "Classify a query/constraint combination");
  classify->add_option("bundle", bundle_path, "Bundle file (.bcdb)")->required();
  classify->add_option("query", query_path, "Query file (.dq)")->required();

  CLI::App* reduce =
      app.add_subcommand("reduce", "Compile a hard source problem to a bundle");
  reduce->add_option("kind", kind, "Reduction kind")->required();
  reduce->add_option("source", source_path, "Source problem file")->required();
  reduce->add_option("output", out_path, "Output bundle path")->required();
  reduce->add_option("--agg", agg, "Aggregate (count|countd|sum|max)");
  reduce->add_option("--cmp", cmp, "Comparator (gt|lt|eq)");
  reduce->add_flag("--negated", negated, "Use the negated-body variant");

  CLI::App* demo = app.add_subcommand("demo", "Run the worked walkthrough");

  CLI11_PARSE(app, argc, argv);
  opt.max_txns_set = app.count("--max-txns") > 0;

  try {
    if (*validate) return cmd_validate(opt, bundle_path);
    if (*worlds) return cmd_worlds(opt, bundle_path);
    if (*check) return cmd_check(opt, bundle_path, query_path, hypothetical);
    if (*gensep) return cmd_gensep(opt, bundle_path, spec_path);
    if (*classify) return cmd_classify(opt, bundle_path, query_path);
    if (*reduce)
      return cmd_reduce(opt, kind, source_path, out_path, agg, cmp, negated);
    if (*demo) return cmd_demo(opt);
  } catch (const MissingFile& e) {
    std::cerr << "error: cannot open file: " << e.path << "\n";
    return kExitMissingFile;
  } catch (const bcdb::GuardError& e) {
    std::cerr << "error: " << e.what()
              << " (raise --max-txns to override)\n";
    return kExitGuard;
  } catch (const bcdb::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
