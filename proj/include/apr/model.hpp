#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apr/error.hpp"

// Guarded-transition systems: processes are program graphs over shared
// finite-domain variables, interleaved asynchronously.
//
//   var b0: bool = false
//   var x: int[0..1] = 0 | 1
//   process P0 {
//     loc noncrit0 init
//     loc wait0
//     edge noncrit0 -> wait0 when !b1 do b0 := true; x := 1
//   }

namespace apr::model {

enum class ValueKind { Bool, Int, Location };

struct ValueType {
  ValueKind kind = ValueKind::Bool;
  std::size_t process = 0;  // meaningful for Location only

  friend bool operator==(const ValueType&, const ValueType&) = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Typed expression. Booleans evaluate to 0/1; locations to their index.
struct Expr {
  enum class Op { Literal, Variable, Location, Not, And, Or, Eq, Ne, Lt, Le, Gt, Ge };
  Op op = Op::Literal;
  int value = 0;  // literal value, variable index, or process index
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Variable {
  std::string name;
  bool is_bool = true;
  int lo = 0;
  int hi = 1;
  std::vector<int> initial;

  [[nodiscard]] bool in_domain(int v) const noexcept { return v >= lo && v <= hi; }
};

struct Assignment {
  std::size_t variable = 0;
  ExprPtr value;
};

struct ProcessEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  ExprPtr guard;  // null means `true`
  std::vector<Assignment> assignments;
};

struct Process {
  std::string name;
  std::vector<std::string> locations;
  std::vector<std::size_t> initial;
  std::vector<ProcessEdge> edges;

  [[nodiscard]] std::optional<std::size_t> find_location(std::string_view n) const {
    for (std::size_t i = 0; i < locations.size(); ++i) {
      if (locations[i] == n) return i;
    }
    return std::nullopt;
  }
};

struct Model {
  std::vector<Variable> variables;
  std::vector<Process> processes;

  [[nodiscard]] std::optional<std::size_t> find_variable(std::string_view n) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (variables[i].name == n) return i;
    }
    return std::nullopt;
  }

  [[nodiscard]] std::optional<std::size_t> find_process(std::string_view n) const {
    for (std::size_t i = 0; i < processes.size(); ++i) {
      if (processes[i].name == n) return i;
    }
    return std::nullopt;
  }
};

/// One location per process and one value per variable.
struct ModelState {
  std::vector<std::uint32_t> locations;
  std::vector<int> values;

  friend bool operator==(const ModelState&, const ModelState&) = default;
};

inline int evaluate(const Expr& e, const ModelState& s) {
  switch (e.op) {
    case Expr::Op::Literal: return e.value;
    case Expr::Op::Variable: return s.values[static_cast<std::size_t>(e.value)];
    case Expr::Op::Location: return static_cast<int>(s.locations[static_cast<std::size_t>(e.value)]);
    case Expr::Op::Not: return evaluate(*e.lhs, s) == 0 ? 1 : 0;
    case Expr::Op::And: return (evaluate(*e.lhs, s) != 0 && evaluate(*e.rhs, s) != 0) ? 1 : 0;
    case Expr::Op::Or: return (evaluate(*e.lhs, s) != 0 || evaluate(*e.rhs, s) != 0) ? 1 : 0;
    case Expr::Op::Eq: return evaluate(*e.lhs, s) == evaluate(*e.rhs, s) ? 1 : 0;
    case Expr::Op::Ne: return evaluate(*e.lhs, s) != evaluate(*e.rhs, s) ? 1 : 0;
    case Expr::Op::Lt: return evaluate(*e.lhs, s) < evaluate(*e.rhs, s) ? 1 : 0;
    case Expr::Op::Le: return evaluate(*e.lhs, s) <= evaluate(*e.rhs, s) ? 1 : 0;
    case Expr::Op::Gt: return evaluate(*e.lhs, s) > evaluate(*e.rhs, s) ? 1 : 0;
    case Expr::Op::Ge: return evaluate(*e.lhs, s) >= evaluate(*e.rhs, s) ? 1 : 0;
  }
  return 0;
}

inline bool holds(const ExprPtr& guard, const ModelState& s) { return !guard || evaluate(*guard, s) != 0; }

namespace detail {

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

[[noreturn]] inline void fail_at(Pos pos, const std::string& msg) {
  throw InputError("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + msg);
}

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int value = 0;
  Pos pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  Pos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  auto starts = [&](std::string_view p) { return src.substr(i, p.size()) == p; };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || starts("//")) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (is_digit(c) || (c == '-' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      std::size_t j = i + 1;
      while (j < src.size() && is_digit(src[j])) ++j;
      t.kind = Token::Kind::Int;
      t.text = std::string(src.substr(i, j - i));
      try {
        t.value = std::stoi(t.text);
      } catch (const std::exception&) {
        fail_at(pos, "integer literal out of range");
      }
      advance(j - i);
    } else {
      static constexpr std::string_view kPunct[] = {":=", "..", "->", "&&", "||", "!=", "<=", ">=", ":", "=", "|",
                                                    "[",  "]",  "{",  "}",  ";",  "(",  ")",  "!",  "<", ">"};
      t.kind = Token::Kind::Punct;
      for (std::string_view p : kPunct) {
        if (starts(p)) {
          t.text = std::string(p);
          break;
        }
      }
      if (t.text.empty()) fail_at(pos, std::string("unexpected character '") + c + "'");
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = pos;
  out.push_back(end);
  return out;
}

inline bool is_keyword(std::string_view s) {
  static constexpr std::string_view kKeywords[] = {"var", "bool", "int",  "process", "loc",  "init",
                                                   "edge", "when", "do", "true",    "false"};
  for (std::string_view k : kKeywords) {
    if (k == s) return true;
  }
  return false;
}

// Untyped syntax tree; names are resolved against the finished model.
struct RawExpr {
  enum class Kind { Int, Bool, Name, Loc, Not, And, Or, Cmp };
  Kind kind = Kind::Int;
  Expr::Op cmp = Expr::Op::Eq;
  int value = 0;
  std::string name;
  Pos pos;
  std::shared_ptr<RawExpr> lhs;
  std::shared_ptr<RawExpr> rhs;
};
using RawPtr = std::shared_ptr<RawExpr>;

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  [[nodiscard]] const Token& peek() const { return tokens_[i_]; }
  [[nodiscard]] bool at_end() const { return peek().kind == Token::Kind::End; }
  const Token& next() {
    const Token& t = tokens_[i_];
    if (i_ + 1 < tokens_.size()) ++i_;
    return t;
  }

  [[nodiscard]] bool is_punct(std::string_view p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }
  [[nodiscard]] bool is_word(std::string_view w) const {
    return peek().kind == Token::Kind::Ident && peek().text == w;
  }

  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }

  void expect(std::string_view p) {
    if (!accept(p)) fail_at(peek().pos, "expected '" + std::string(p) + "'" + found());
  }

  void expect_word(std::string_view w) {
    if (!is_word(w)) fail_at(peek().pos, "expected '" + std::string(w) + "'" + found());
    next();
  }

  std::string identifier(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || is_keyword(t.text)) fail_at(t.pos, "expected " + std::string(what) + found());
    return next().text;
  }

  int integer() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Int) fail_at(t.pos, "expected integer" + found());
    return next().value;
  }

  [[nodiscard]] std::string found() const {
    if (at_end()) return ", found end of input";
    return ", found '" + peek().text + "'";
  }

 private:
  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

inline RawPtr parse_or(TokenStream& ts);

inline RawPtr parse_primary(TokenStream& ts) {
  auto node = std::make_shared<RawExpr>();
  const Token& t = ts.peek();
  node->pos = t.pos;
  if (ts.accept("(")) {
    RawPtr inner = parse_or(ts);
    ts.expect(")");
    return inner;
  }
  if (t.kind == Token::Kind::Int) {
    node->kind = RawExpr::Kind::Int;
    node->value = ts.next().value;
    return node;
  }
  if (ts.is_word("true") || ts.is_word("false")) {
    node->kind = RawExpr::Kind::Bool;
    node->value = ts.next().text == "true" ? 1 : 0;
    return node;
  }
  if (ts.is_word("loc")) {
    ts.next();
    ts.expect("(");
    node->kind = RawExpr::Kind::Loc;
    node->name = ts.identifier("process name");
    ts.expect(")");
    return node;
  }
  node->kind = RawExpr::Kind::Name;
  node->name = ts.identifier("expression");
  return node;
}

inline RawPtr parse_comparison(TokenStream& ts) {
  RawPtr lhs = parse_primary(ts);
  static constexpr std::pair<std::string_view, Expr::Op> kOps[] = {
      {"=", Expr::Op::Eq}, {"!=", Expr::Op::Ne}, {"<", Expr::Op::Lt},
      {"<=", Expr::Op::Le}, {">", Expr::Op::Gt}, {">=", Expr::Op::Ge}};
  for (auto [text, op] : kOps) {
    if (ts.is_punct(text)) {
      auto node = std::make_shared<RawExpr>();
      node->kind = RawExpr::Kind::Cmp;
      node->cmp = op;
      node->pos = ts.next().pos;
      node->lhs = lhs;
      node->rhs = parse_primary(ts);
      return node;
    }
  }
  return lhs;
}

inline RawPtr parse_unary(TokenStream& ts) {
  if (ts.is_punct("!")) {
    auto node = std::make_shared<RawExpr>();
    node->kind = RawExpr::Kind::Not;
    node->pos = ts.next().pos;
    node->lhs = parse_unary(ts);
    return node;
  }
  return parse_comparison(ts);
}

inline RawPtr parse_binary(TokenStream& ts, std::string_view op, RawExpr::Kind kind, RawPtr (*operand)(TokenStream&)) {
  RawPtr lhs = operand(ts);
  while (ts.is_punct(op)) {
    auto node = std::make_shared<RawExpr>();
    node->kind = kind;
    node->pos = ts.next().pos;
    node->lhs = lhs;
    node->rhs = operand(ts);
    lhs = node;
  }
  return lhs;
}

inline RawPtr parse_and(TokenStream& ts) { return parse_binary(ts, "&&", RawExpr::Kind::And, parse_unary); }
inline RawPtr parse_or(TokenStream& ts) { return parse_binary(ts, "||", RawExpr::Kind::Or, parse_and); }

struct Typed {
  ExprPtr expr;
  ValueType type;
};

inline ExprPtr make(Expr::Op op, int value = 0, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->value = value;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

inline std::string_view kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::Bool: return "bool";
    case ValueKind::Int: return "int";
    case ValueKind::Location: return "location";
  }
  return "?";
}

class Resolver {
 public:
  explicit Resolver(const Model& m) : model_(m) {}

  Typed resolve(const RawExpr& r) const {
    switch (r.kind) {
      case RawExpr::Kind::Int: return {make(Expr::Op::Literal, r.value), {ValueKind::Int}};
      case RawExpr::Kind::Bool: return {make(Expr::Op::Literal, r.value), {ValueKind::Bool}};
      case RawExpr::Kind::Name: {
        auto v = model_.find_variable(r.name);
        if (!v) fail_at(r.pos, "unknown identifier '" + r.name + "'");
        const Variable& var = model_.variables[*v];
        return {make(Expr::Op::Variable, static_cast<int>(*v)), {var.is_bool ? ValueKind::Bool : ValueKind::Int}};
      }
      case RawExpr::Kind::Loc: {
        auto p = model_.find_process(r.name);
        if (!p) fail_at(r.pos, "unknown process '" + r.name + "'");
        return {make(Expr::Op::Location, static_cast<int>(*p)), {ValueKind::Location, *p}};
      }
      case RawExpr::Kind::Not: {
        Typed inner = expect_bool(*r.lhs);
        return {make(Expr::Op::Not, 0, inner.expr), {ValueKind::Bool}};
      }
      case RawExpr::Kind::And:
      case RawExpr::Kind::Or: {
        Typed l = expect_bool(*r.lhs);
        Typed rr = expect_bool(*r.rhs);
        auto op = r.kind == RawExpr::Kind::And ? Expr::Op::And : Expr::Op::Or;
        return {make(op, 0, l.expr, rr.expr), {ValueKind::Bool}};
      }
      case RawExpr::Kind::Cmp: return resolve_comparison(r);
    }
    fail_at(r.pos, "malformed expression");
  }

  Typed expect_bool(const RawExpr& r) const {
    Typed t = resolve(r);
    if (t.type.kind != ValueKind::Bool) {
      fail_at(r.pos, "expected a boolean, got " + std::string(kind_name(t.type.kind)));
    }
    return t;
  }

  /// Resolves `r` as a value to store in `var`, checking literals against its domain.
  ExprPtr resolve_value(const RawExpr& r, const Variable& var) const {
    Typed t = resolve(r);
    ValueKind want = var.is_bool ? ValueKind::Bool : ValueKind::Int;
    if (t.type.kind != want) {
      fail_at(r.pos, "cannot assign " + std::string(kind_name(t.type.kind)) + " to " + var.name);
    }
    return t.expr;
  }

 private:
  // `loc(P) = name` resolves `name` among P's locations.
  Typed resolve_comparison(const RawExpr& r) const {
    auto side = [&](const RawExpr& self, const RawExpr& other) -> Typed {
      if (self.kind == RawExpr::Kind::Name && !model_.find_variable(self.name) && other.kind == RawExpr::Kind::Loc) {
        auto p = model_.find_process(other.name);
        if (!p) fail_at(other.pos, "unknown process '" + other.name + "'");
        auto l = model_.processes[*p].find_location(self.name);
        if (!l) fail_at(self.pos, "process " + other.name + " has no location '" + self.name + "'");
        return {make(Expr::Op::Literal, static_cast<int>(*l)), {ValueKind::Location, *p}};
      }
      return resolve(self);
    };
    Typed l = side(*r.lhs, *r.rhs);
    Typed rr = side(*r.rhs, *r.lhs);
    if (l.type != rr.type) {
      fail_at(r.pos, "cannot compare " + std::string(kind_name(l.type.kind)) + " with " +
                         std::string(kind_name(rr.type.kind)));
    }
    const bool ordering = r.cmp != Expr::Op::Eq && r.cmp != Expr::Op::Ne;
    if (ordering && l.type.kind != ValueKind::Int) fail_at(r.pos, "ordering comparison needs integers");
    return {make(r.cmp, 0, l.expr, rr.expr), {ValueKind::Bool}};
  }

  const Model& model_;
};

struct PendingEdge {
  std::size_t process;
  std::string from;
  std::string to;
  Pos pos;
  RawPtr guard;
  std::vector<std::pair<std::string, RawPtr>> assignments;
  std::vector<Pos> assignment_pos;
};

inline int parse_value(TokenStream& ts, const Variable& var) {
  const Token& t = ts.peek();
  int v = 0;
  if (var.is_bool) {
    if (!ts.is_word("true") && !ts.is_word("false")) fail_at(t.pos, "expected true or false" + ts.found());
    v = ts.next().text == "true" ? 1 : 0;
  } else {
    v = ts.integer();
  }
  if (!var.in_domain(v)) fail_at(t.pos, "value " + t.text + " outside the domain of " + var.name);
  return v;
}

}  // namespace detail

inline Model parse_model(std::string_view text) {
  using namespace detail;
  TokenStream ts(tokenize(text));
  Model m;
  std::vector<PendingEdge> pending;

  auto check_fresh = [&](const std::string& name, Pos pos) {
    if (m.find_variable(name) || m.find_process(name)) fail_at(pos, "duplicate name '" + name + "'");
  };

  while (!ts.at_end()) {
    if (ts.is_word("var")) {
      ts.next();
      Pos pos = ts.peek().pos;
      Variable var;
      var.name = ts.identifier("variable name");
      check_fresh(var.name, pos);
      ts.expect(":");
      if (ts.is_word("bool")) {
        ts.next();
      } else if (ts.is_word("int")) {
        ts.next();
        var.is_bool = false;
        ts.expect("[");
        var.lo = ts.integer();
        ts.expect("..");
        var.hi = ts.integer();
        ts.expect("]");
        if (var.lo > var.hi) fail_at(pos, "empty integer range for " + var.name);
      } else {
        fail_at(ts.peek().pos, "expected bool or int" + ts.found());
      }
      ts.expect("=");
      do {
        var.initial.push_back(parse_value(ts, var));
      } while (ts.accept("|"));
      m.variables.push_back(std::move(var));
    } else if (ts.is_word("process")) {
      ts.next();
      Pos pos = ts.peek().pos;
      Process proc;
      proc.name = ts.identifier("process name");
      check_fresh(proc.name, pos);
      const std::size_t index = m.processes.size();
      ts.expect("{");
      while (!ts.accept("}")) {
        if (ts.is_word("loc")) {
          ts.next();
          Pos lpos = ts.peek().pos;
          std::string name = ts.identifier("location name");
          if (proc.find_location(name)) fail_at(lpos, "duplicate location '" + name + "'");
          for (const Process& other : m.processes) {
            if (other.find_location(name)) fail_at(lpos, "location '" + name + "' already used by " + other.name);
          }
          if (ts.is_word("init")) {
            ts.next();
            proc.initial.push_back(proc.locations.size());
          }
          proc.locations.push_back(std::move(name));
        } else if (ts.is_word("edge")) {
          PendingEdge e;
          e.process = index;
          e.pos = ts.next().pos;
          e.from = ts.identifier("source location");
          ts.expect("->");
          e.to = ts.identifier("target location");
          if (ts.is_word("when")) {
            ts.next();
            e.guard = parse_or(ts);
          }
          if (ts.is_word("do")) {
            ts.next();
            do {
              e.assignment_pos.push_back(ts.peek().pos);
              std::string target = ts.identifier("variable");
              ts.expect(":=");
              e.assignments.emplace_back(std::move(target), parse_or(ts));
            } while (ts.accept(";"));
          }
          pending.push_back(std::move(e));
        } else {
          fail_at(ts.peek().pos, "expected loc, edge or '}'" + ts.found());
        }
      }
      if (proc.locations.empty()) fail_at(pos, "process " + proc.name + " declares no location");
      if (proc.initial.empty()) fail_at(pos, "process " + proc.name + " has no init location");
      m.processes.push_back(std::move(proc));
    } else {
      fail_at(ts.peek().pos, "expected 'var' or 'process'" + ts.found());
    }
  }
  if (m.processes.empty()) throw InputError("no process declared");

  Resolver resolver(m);
  for (PendingEdge& pe : pending) {
    Process& proc = m.processes[pe.process];
    ProcessEdge edge;
    auto from = proc.find_location(pe.from);
    auto to = proc.find_location(pe.to);
    if (!from) fail_at(pe.pos, "process " + proc.name + " has no location '" + pe.from + "'");
    if (!to) fail_at(pe.pos, "process " + proc.name + " has no location '" + pe.to + "'");
    edge.from = *from;
    edge.to = *to;
    if (pe.guard) edge.guard = resolver.expect_bool(*pe.guard).expr;
    for (std::size_t k = 0; k < pe.assignments.size(); ++k) {
      const auto& [name, raw] = pe.assignments[k];
      auto v = m.find_variable(name);
      if (!v) fail_at(pe.assignment_pos[k], "unknown variable '" + name + "'");
      for (std::size_t j = 0; j < k; ++j) {
        if (pe.assignments[j].first == name) fail_at(pe.assignment_pos[k], "variable " + name + " assigned twice");
      }
      edge.assignments.push_back({*v, resolver.resolve_value(*raw, m.variables[*v])});
    }
    proc.edges.push_back(std::move(edge));
  }
  return m;
}

/// Parses a boolean state predicate (`loc(P0)=wait0 && b0=true`) against `m`.
inline ExprPtr parse_state_predicate(const Model& m, std::string_view text) {
  using namespace detail;
  TokenStream ts(tokenize(text));
  if (ts.at_end()) throw InputError("empty state predicate");
  RawPtr raw = parse_or(ts);
  if (!ts.at_end()) fail_at(ts.peek().pos, "unexpected trailing input" + ts.found());
  return Resolver(m).expect_bool(*raw).expr;
}

}  // namespace apr::model
