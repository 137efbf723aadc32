#include "bcdb/textio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>

#include <json.hpp>

#include "bcdb/errors.hpp"

namespace bcdb {

namespace {

using json = nlohmann::json;

// ---------------------------------------------------------------- lexer

struct Token {
  enum class Kind {
    Ident,    // bare identifier
    Integer,  // optionally signed digits
    Decimal,  // digits '.' digits
    String,   // double-quoted symbol
    Fresh,    // fresh#N
    Punct,    // one of ( ) { } [ ] , ; plus the operators below
    End,
  };
  Kind kind;
  std::string text;  // identifier/punct spelling, or the literal body
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { tokenize(); }

  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(line_, column_, msg);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void push(Token::Kind kind, std::string text, int line, int column) {
    tokens_.push_back({kind, std::move(text), line, column});
  }

  void tokenize() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
        continue;
      }
      int line = line_, column = column_;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (std::isalnum(static_cast<unsigned char>(peek())) ||
               peek() == '_' || peek() == '\'')
          word += advance();
        // fresh#N is a value literal, not an identifier + comment.
        if (word == "fresh" && peek() == '#' &&
            std::isdigit(static_cast<unsigned char>(peek(1)))) {
          advance();  // '#'
          std::string digits;
          while (std::isdigit(static_cast<unsigned char>(peek())))
            digits += advance();
          push(Token::Kind::Fresh, digits, line, column);
        } else {
          push(Token::Kind::Ident, std::move(word), line, column);
        }
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        std::string num;
        if (c == '-') num += advance();
        while (std::isdigit(static_cast<unsigned char>(peek())))
          num += advance();
        if (peek() == '.') {
          if (!std::isdigit(static_cast<unsigned char>(peek(1))))
            fail("decimal needs a digit on each side of the point");
          num += advance();
          while (std::isdigit(static_cast<unsigned char>(peek())))
            num += advance();
          push(Token::Kind::Decimal, std::move(num), line, column);
        } else {
          push(Token::Kind::Integer, std::move(num), line, column);
        }
        continue;
      }
      if (c == '"') {
        advance();
        std::string body;
        while (pos_ < text_.size() && peek() != '"' && peek() != '\n')
          body += advance();
        if (peek() != '"') fail("unterminated string");
        advance();
        push(Token::Kind::String, std::move(body), line, column);
        continue;
      }
      // multi-character operators first
      auto two = [&](char a, char b) { return c == a && peek(1) == b; };
      if (two(':', '-') || two('<', '=') || two('>', '=') || two('!', '=') ||
          two('-', '>')) {
        std::string op;
        op += advance();
        op += advance();
        push(Token::Kind::Punct, std::move(op), line, column);
        continue;
      }
      if (std::string("(){}[],;:=<>!-").find(c) != std::string::npos) {
        std::string op(1, advance());
        push(Token::Kind::Punct, std::move(op), line, column);
        continue;
      }
      fail(std::string("unexpected character '") + c + "'");
    }
    push(Token::Kind::End, "", line_, column_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::vector<Token> tokens_;
};

// --------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, lexer_.tokens().size() - 1);
    return lexer_.tokens()[i];
  }

  const Token& next() {
    const Token& t = peek();
    if (t.kind != Token::Kind::End) ++pos_;
    return t;
  }

  bool at_end() const { return peek().kind == Token::Kind::End; }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw ParseError(at.line, at.column, msg);
  }

  bool is_punct(const std::string& p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Punct && peek(ahead).text == p;
  }

  bool is_keyword(const std::string& word, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Ident && peek(ahead).text == word;
  }

  void expect_punct(const std::string& p) {
    if (!is_punct(p)) fail(peek(), "expected '" + p + "'");
    next();
  }

  std::string expect_ident(const std::string& what) {
    if (peek().kind != Token::Kind::Ident) fail(peek(), "expected " + what);
    return next().text;
  }

  std::int64_t expect_integer(const std::string& what) {
    if (peek().kind != Token::Kind::Integer) fail(peek(), "expected " + what);
    return parse_int(next());
  }

  std::int64_t parse_int(const Token& t) const {
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      fail(t, "integer out of range");
    }
  }

  Value parse_value() {
    const Token& t = next();
    switch (t.kind) {
      case Token::Kind::Integer:
        return Value::integer(parse_int(t));
      case Token::Kind::Decimal: {
        std::size_t dot = t.text.find('.');
        std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
        int scale = static_cast<int>(t.text.size() - dot - 1);
        try {
          return Value::decimal(std::stoll(digits), scale);
        } catch (const std::exception&) {
          fail(t, "decimal out of range");
        }
      }
      case Token::Kind::String:
        return Value::symbol(t.text);
      case Token::Kind::Fresh:
        return Value::fresh(parse_int(t));
      case Token::Kind::Ident:
        return Value::symbol(t.text);  // bare identifiers are symbols
      default:
        fail(t, "expected a value");
    }
  }

  std::vector<Value> parse_value_list() {
    std::vector<Value> out;
    expect_punct("(");
    if (!is_punct(")")) {
      out.push_back(parse_value());
      while (is_punct(",")) {
        next();
        out.push_back(parse_value());
      }
    }
    expect_punct(")");
    return out;
  }

  std::vector<std::string> parse_ident_list(char open, char close) {
    std::vector<std::string> out;
    expect_punct(std::string(1, open));
    if (!is_punct(std::string(1, close))) {
      out.push_back(expect_ident("an identifier"));
      while (is_punct(",")) {
        next();
        out.push_back(expect_ident("an identifier"));
      }
    }
    expect_punct(std::string(1, close));
    return out;
  }

 private:
  Lexer lexer_;
  std::size_t pos_ = 0;
};

Tuple parse_tuple(Parser& p) {
  const Token& name = p.peek();
  std::string relation = p.expect_ident("a relation name");
  Tuple out{std::move(relation), p.parse_value_list()};
  (void)name;
  return out;
}

Transaction parse_txn_block(Parser& p) {
  // caller consumed the 'txn' keyword
  const Token& label_tok = p.peek();
  std::string label = p.expect_ident("a transaction label");
  p.expect_punct("{");
  std::set<Tuple> tuples;
  while (!p.is_punct("}")) {
    tuples.insert(parse_tuple(p));
    p.expect_punct(";");
  }
  p.expect_punct("}");
  if (tuples.empty()) p.fail(label_tok, "transaction " + label + " is empty");
  return Transaction(std::move(label), std::move(tuples));
}

// ------------------------------------------------------- query parsing

Term parse_term(Parser& p) {
  // Bare lowercase-or-any identifiers are variables inside queries;
  // constants are numbers, quoted symbols, or fresh literals.
  if (p.peek().kind == Token::Kind::Ident)
    return Term::variable(p.next().text);
  return Term::constant(p.parse_value());
}

std::optional<CompareOp> comparator_from(const std::string& text) {
  if (text == "=") return CompareOp::Eq;
  if (text == "<") return CompareOp::Lt;
  if (text == ">") return CompareOp::Gt;
  if (text == "!=") return CompareOp::Ne;
  return std::nullopt;
}

void parse_body(Parser& p, ConjunctiveQuery& q) {
  while (true) {
    if (p.is_punct("!")) {
      p.next();
      std::string rel = p.expect_ident("a relation name");
      Atom atom{std::move(rel), {}};
      p.expect_punct("(");
      if (!p.is_punct(")")) {
        atom.terms.push_back(parse_term(p));
        while (p.is_punct(",")) {
          p.next();
          atom.terms.push_back(parse_term(p));
        }
      }
      p.expect_punct(")");
      q.negated.push_back(std::move(atom));
    } else if (p.peek().kind == Token::Kind::Ident && p.is_punct("(", 1)) {
      std::string rel = p.next().text;
      Atom atom{std::move(rel), {}};
      p.expect_punct("(");
      if (!p.is_punct(")")) {
        atom.terms.push_back(parse_term(p));
        while (p.is_punct(",")) {
          p.next();
          atom.terms.push_back(parse_term(p));
        }
      }
      p.expect_punct(")");
      q.positive.push_back(std::move(atom));
    } else {
      // comparison: term OP term
      const Token& at = p.peek();
      Term left = parse_term(p);
      if (p.is_punct("<=") || p.is_punct(">="))
        p.fail(p.peek(), "'" + p.peek().text +
                             "' is not supported; use < or > (or split into "
                             "two constraints)");
      if (p.peek().kind != Token::Kind::Punct)
        p.fail(p.peek(), "expected a comparison operator");
      auto op = comparator_from(p.peek().text);
      if (!op) p.fail(p.peek(), "expected one of = < > !=");
      p.next();
      Term right = parse_term(p);
      q.comparisons.push_back({std::move(left), *op, std::move(right)});
      (void)at;
    }
    if (p.is_punct(","))
      p.next();
    else
      break;
  }
}

std::optional<AggregateFunction> aggregate_from(const std::string& word) {
  if (word == "count") return AggregateFunction::Count;
  if (word == "countd") return AggregateFunction::CountDistinct;
  if (word == "sum") return AggregateFunction::Sum;
  if (word == "max") return AggregateFunction::Max;
  return std::nullopt;
}

std::string aggregate_word(AggregateFunction f) {
  switch (f) {
    case AggregateFunction::Count: return "count";
    case AggregateFunction::CountDistinct: return "countd";
    case AggregateFunction::Sum: return "sum";
    default: return "max";
  }
}

DenialConstraint parse_query_impl(Parser& p) {
  if (!p.is_keyword("deny")) p.fail(p.peek(), "expected 'deny'");
  p.next();

  std::string name = "q";
  if (p.peek().kind == Token::Kind::Ident) name = p.next().text;

  if (p.is_punct("[")) {
    p.next();
    const Token& agg_tok = p.peek();
    std::string word = p.expect_ident("an aggregate (count/countd/sum/max)");
    auto f = aggregate_from(word);
    if (!f) p.fail(agg_tok, "unknown aggregate '" + word + "'");
    AggregateQuery agg;
    agg.function = *f;
    agg.grouped_vars = p.parse_ident_list('(', ')');
    if (!p.is_punct(":-")) p.fail(p.peek(), "expected ':-'");
    p.next();
    agg.body.name = name;
    parse_body(p, agg.body);
    p.expect_punct("]");
    if (p.is_punct("<=") || p.is_punct(">="))
      p.fail(p.peek(), "'" + p.peek().text +
                           "' is not supported; use < or > (adjust the "
                           "threshold by one for integers)");
    const Token& op_tok = p.peek();
    if (op_tok.kind != Token::Kind::Punct)
      p.fail(op_tok, "expected a comparator (= < >)");
    auto op = comparator_from(op_tok.text);
    if (!op || *op == CompareOp::Ne)
      p.fail(op_tok, "aggregate comparator must be one of = < >");
    p.next();
    agg.comparator = *op;
    agg.threshold = p.parse_value();
    if (auto bad = check_safety(agg)) throw SafetyError(*bad);
    return DenialConstraint{std::move(agg)};
  }

  if (!p.is_punct(":-")) p.fail(p.peek(), "expected ':-' or '['");
  p.next();
  ConjunctiveQuery q;
  q.name = name;
  parse_body(p, q);
  if (auto bad = check_safety(q)) throw SafetyError(*bad);
  return DenialConstraint{std::move(q)};
}

}  // namespace

BlockchainDatabase parse_bundle(const std::string& text) {
  Parser p(text);
  Schema schema;
  ConstraintSet ic;
  std::vector<Tuple> state_tuples;
  std::vector<Transaction> pending;

  while (!p.at_end()) {
    const Token& head = p.peek();
    std::string keyword = p.expect_ident("a section keyword");
    if (keyword == "relation") {
      std::string name = p.expect_ident("a relation name");
      std::vector<std::string> attrs = p.parse_ident_list('(', ')');
      try {
        schema.add_relation({std::move(name), std::move(attrs)});
      } catch (const SchemaError& e) {
        p.fail(head, e.what());
      }
    } else if (keyword == "key") {
      std::string name = p.expect_ident("a relation name");
      std::vector<std::string> attrs = p.parse_ident_list('(', ')');
      if (!schema.has_relation(name))
        p.fail(head, "unknown relation " + name);
      ic.fds.push_back(
          {name, std::move(attrs), schema.relation(name).attributes});
    } else if (keyword == "fd") {
      std::string name = p.expect_ident("a relation name");
      p.expect_punct(":");
      std::vector<std::string> lhs{p.expect_ident("an attribute")};
      while (p.is_punct(",")) {
        p.next();
        lhs.push_back(p.expect_ident("an attribute"));
      }
      p.expect_punct("->");
      std::vector<std::string> rhs{p.expect_ident("an attribute")};
      while (p.is_punct(",")) {
        p.next();
        rhs.push_back(p.expect_ident("an attribute"));
      }
      ic.fds.push_back({std::move(name), std::move(lhs), std::move(rhs)});
    } else if (keyword == "ind") {
      std::string src = p.expect_ident("a relation name");
      std::vector<std::string> src_attrs = p.parse_ident_list('[', ']');
      p.expect_punct("<=");
      std::string tgt = p.expect_ident("a relation name");
      std::vector<std::string> tgt_attrs = p.parse_ident_list('[', ']');
      ic.inds.push_back({std::move(src), std::move(src_attrs), std::move(tgt),
                         std::move(tgt_attrs)});
    } else if (keyword == "state") {
      state_tuples.push_back(parse_tuple(p));
    } else if (keyword == "txn") {
      pending.push_back(parse_txn_block(p));
    } else {
      p.fail(head, "unknown section keyword '" + keyword +
                       "' (expected relation/key/fd/ind/state/txn)");
    }
  }

  DatabaseState state(schema);
  for (Tuple& t : state_tuples) state.insert(std::move(t));
  return BlockchainDatabase(std::move(state), std::move(ic),
                            std::move(pending));
}

DenialConstraint parse_query(const std::string& text) {
  Parser p(text);
  DenialConstraint q = parse_query_impl(p);
  if (!p.at_end()) p.fail(p.peek(), "trailing input after the query");
  return q;
}

std::vector<Transaction> parse_transactions(const std::string& text,
                                            const Schema& schema) {
  Parser p(text);
  std::vector<Transaction> out;
  while (!p.at_end()) {
    const Token& head = p.peek();
    if (!p.is_keyword("txn")) p.fail(head, "expected 'txn'");
    p.next();
    Transaction txn = parse_txn_block(p);
    for (const Tuple& t : txn.tuples) {
      if (!schema.has_relation(t.relation))
        p.fail(head, "unknown relation " + t.relation);
      if (schema.relation(t.relation).attributes.size() != t.values.size())
        p.fail(head, "arity mismatch: " + t.to_string());
    }
    out.push_back(std::move(txn));
  }
  return out;
}

SeparationSpec parse_separation_spec(const std::string& text) {
  Parser p(text);
  if (!p.is_keyword("separate")) p.fail(p.peek(), "expected 'separate'");
  p.next();
  SeparationSpec spec;
  auto label_set = [&]() {
    std::set<std::string> out;
    for (std::string& label : p.parse_ident_list('{', '}'))
      if (!out.insert(std::move(label)).second)
        p.fail(p.peek(), "duplicate transaction label");
    return out;
  };
  if (!p.is_keyword("in")) p.fail(p.peek(), "expected 'in'");
  p.next();
  p.expect_punct("=");
  spec.t_in = label_set();
  if (!p.is_keyword("out")) p.fail(p.peek(), "expected 'out'");
  p.next();
  p.expect_punct("=");
  spec.t_out = label_set();
  if (p.is_keyword("bound")) {
    p.next();
    p.expect_punct("=");
    std::int64_t k = p.expect_integer("a bound");
    if (k < 1) p.fail(p.peek(), "bound must be >= 1");
    spec.bound = static_cast<std::size_t>(k);
  }
  if (!p.at_end()) p.fail(p.peek(), "trailing input after the spec");
  return spec;
}

// ----------------------------------------------------------- serializers

std::string serialize_value(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Symbol: {
      return "\"" + v.as_symbol() + "\"";
    }
    case Value::Kind::Fresh:
      return "fresh#" + std::to_string(v.fresh_index());
    default:
      return v.to_string();  // integers and decimals
  }
}

std::string serialize_tuple(const Tuple& t) {
  std::string out = t.relation + "(";
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (i) out += ", ";
    out += serialize_value(t.values[i]);
  }
  return out + ")";
}

std::string serialize_transaction(const Transaction& t) {
  std::string out = "txn " + t.label + " {";
  for (const Tuple& tuple : t.tuples) out += " " + serialize_tuple(tuple) + ";";
  return out + " }";
}

std::string serialize_bundle(const BlockchainDatabase& db) {
  std::ostringstream out;
  const Schema& schema = db.state().schema();
  for (const auto& [name, rel] : schema.relations()) {
    out << "relation " << name << "(";
    for (std::size_t i = 0; i < rel.attributes.size(); ++i) {
      if (i) out << ", ";
      out << rel.attributes[i];
    }
    out << ")\n";
  }
  for (const FunctionalDependency& fd : db.ic().fds) {
    if (fd.is_key(schema)) {
      out << "key " << fd.relation << "(";
      for (std::size_t i = 0; i < fd.lhs.size(); ++i) {
        if (i) out << ", ";
        out << fd.lhs[i];
      }
      out << ")\n";
    } else {
      out << "fd " << fd.relation << ": ";
      for (std::size_t i = 0; i < fd.lhs.size(); ++i) {
        if (i) out << ", ";
        out << fd.lhs[i];
      }
      out << " -> ";
      for (std::size_t i = 0; i < fd.rhs.size(); ++i) {
        if (i) out << ", ";
        out << fd.rhs[i];
      }
      out << "\n";
    }
  }
  for (const InclusionDependency& ind : db.ic().inds) {
    out << "ind " << ind.source_relation << "[";
    for (std::size_t i = 0; i < ind.source_attrs.size(); ++i) {
      if (i) out << ", ";
      out << ind.source_attrs[i];
    }
    out << "] <= " << ind.target_relation << "[";
    for (std::size_t i = 0; i < ind.target_attrs.size(); ++i) {
      if (i) out << ", ";
      out << ind.target_attrs[i];
    }
    out << "]\n";
  }
  for (const Tuple& t : db.state().all_tuples())
    out << "state " << serialize_tuple(t) << "\n";
  for (const Transaction& t : db.pending())
    out << serialize_transaction(t) << "\n";
  return out.str();
}

namespace {

std::string serialize_term(const Term& t) {
  if (t.is_variable()) return t.variable_name();
  return serialize_value(t.constant_value());
}

std::string serialize_body(const ConjunctiveQuery& q) {
  std::string out;
  bool first = true;
  auto sep = [&]() {
    if (!first) out += ", ";
    first = false;
  };
  for (const Atom& a : q.positive) {
    sep();
    out += a.relation + "(";
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
      if (i) out += ", ";
      out += serialize_term(a.terms[i]);
    }
    out += ")";
  }
  for (const Atom& a : q.negated) {
    sep();
    out += "!" + a.relation + "(";
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
      if (i) out += ", ";
      out += serialize_term(a.terms[i]);
    }
    out += ")";
  }
  for (const Comparison& c : q.comparisons) {
    sep();
    out += serialize_term(c.left) + " " + to_string(c.op) + " " +
           serialize_term(c.right);
  }
  return out;
}

}  // namespace

std::string serialize_query(const DenialConstraint& q) {
  if (const auto* cq = std::get_if<ConjunctiveQuery>(&q))
    return "deny " + cq->name + " :- " + serialize_body(*cq);
  const AggregateQuery& agg = std::get<AggregateQuery>(q);
  std::string out = "deny " + agg.body.name + " [" +
                    aggregate_word(agg.function) + "(";
  for (std::size_t i = 0; i < agg.grouped_vars.size(); ++i) {
    if (i) out += ", ";
    out += agg.grouped_vars[i];
  }
  out += ") :- " + serialize_body(agg.body) + "] " + to_string(agg.comparator) +
         " " + serialize_value(agg.threshold);
  return out;
}

std::string serialize_separation_spec(const SeparationSpec& spec) {
  auto braces = [](const std::set<std::string>& labels) {
    std::string out = "{";
    bool first = true;
    for (const std::string& l : labels) {
      if (!first) out += ", ";
      first = false;
      out += l;
    }
    return out + "}";
  };
  std::string out =
      "separate in = " + braces(spec.t_in) + " out = " + braces(spec.t_out);
  if (spec.bound) out += " bound = " + std::to_string(*spec.bound);
  return out;
}

// ------------------------------------------------------------ renderers

namespace {

json world_to_json(const World& w) {
  json out;
  out["absorbed"] = w.absorbed;
  json tuples = json::array();
  for (const Tuple& t : w.state.all_tuples())
    tuples.push_back(serialize_tuple(t));
  out["tuples"] = std::move(tuples);
  return out;
}

std::string absorbed_line(const World& w) {
  std::string out = "{";
  bool first = true;
  for (const std::string& label : w.absorbed) {
    if (!first) out += ", ";
    first = false;
    out += label;
  }
  return out + "}";
}

}  // namespace

std::string render_worlds_text(const std::vector<World>& worlds) {
  if (worlds.empty()) return "[]\n";
  std::string out;
  for (const World& w : worlds) out += absorbed_line(w) + "\n";
  return out;
}

std::string render_worlds_json(const std::vector<World>& worlds) {
  json out;
  out["count"] = worlds.size();
  json list = json::array();
  for (const World& w : worlds) list.push_back(world_to_json(w));
  out["worlds"] = std::move(list);
  return out.dump(2) + "\n";
}

std::string render_verdict_text(const Verdict& v) {
  std::string out = v.holds ? "holds" : "violated";
  out += "\nalgorithm: " + to_string(v.algorithm);
  out += "\ncomplexity: " + to_string(v.complexity) + "\n";
  if (v.counterexample) {
    out += "counterexample world " + absorbed_line(*v.counterexample) + ":\n";
    for (const Tuple& t : v.counterexample->state.all_tuples())
      out += "  " + serialize_tuple(t) + "\n";
  }
  return out;
}

std::string render_verdict_json(const Verdict& v) {
  json out;
  out["verdict"] = v.holds ? "holds" : "violated";
  out["algorithm"] = to_string(v.algorithm);
  out["complexity"] = to_string(v.complexity);
  out["counterexample"] =
      v.counterexample ? world_to_json(*v.counterexample) : json(nullptr);
  return out.dump(2) + "\n";
}

std::string render_classification_text(const Classification& c) {
  return "complexity: " + to_string(c.complexity) +
         "\nalgorithm: " + to_string(c.algorithm) + "\n";
}

std::string render_classification_json(const Classification& c) {
  json out;
  out["complexity"] = to_string(c.complexity);
  out["algorithm"] = to_string(c.algorithm);
  return out.dump(2) + "\n";
}

std::string render_sep_result_text(const SeparationResult& r) {
  std::string out;
  switch (r.status) {
    case SeparationResult::Status::Found:
      out = serialize_transaction(*r.transaction) + "\n";
      break;
    case SeparationResult::Status::TriviallySeparating:
      out = "trivially separating: nothing to issue\n";
      break;
    case SeparationResult::Status::Failed:
      out = "failed: " + to_string(*r.failure) + "\n";
      break;
  }
  if (r.domain_relative) out += "note: domain-relative result\n";
  return out;
}

std::string render_sep_result_json(const SeparationResult& r) {
  json out;
  switch (r.status) {
    case SeparationResult::Status::Found:
      out["status"] = "found";
      out["transaction"] = serialize_transaction(*r.transaction);
      break;
    case SeparationResult::Status::TriviallySeparating:
      out["status"] = "trivially-separating";
      out["transaction"] = json(nullptr);
      break;
    case SeparationResult::Status::Failed:
      out["status"] = "failed";
      out["reason"] = to_string(*r.failure);
      break;
  }
  out["domain_relative"] = r.domain_relative;
  return out.dump(2) + "\n";
}

}  // namespace bcdb
