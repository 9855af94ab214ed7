/*
 * Copyright 2026 The odelump Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "odelump/ingest/parser.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <unordered_map>

namespace odelump::ingest {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

enum class Tok { ident, number, punct, arrow, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) advance(1);
      t.kind = Tok::ident;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() &&
                                                               std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '.')) advance(1);
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
          advance(j - i);
          while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
        }
      }
      t.kind = Tok::number;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      advance(2);
      t.kind = Tok::arrow;
    } else if (std::string_view("(){},;=+-*/^@").find(c) != std::string_view::npos) {
      advance(1);
      t.kind = Tok::punct;
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(src.substr(start, i - start));
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::end; }
  bool is_punct(char c, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::punct && t.text[0] == c;
  }
  bool accept(char c) {
    if (!is_punct(c)) return false;
    next();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(peek(), std::string("expected '") + c + "'");
  }
  std::string expect_ident() {
    if (peek().kind != Tok::ident) fail(peek(), "expected identifier");
    return next().text;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    std::string near = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, msg + " near " + near);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Shared symbol tables while parsing a model file.
struct Scope {
  std::unordered_map<std::string, std::uint32_t> variables;
  std::unordered_map<std::string, std::uint32_t> parameters;
  std::set<std::string> all;

  void declare(const Token& at, const std::string& name) {
    static const std::set<std::string> reserved = {"model", "param", "var", "species", "init", "d", "unlisted"};
    if (reserved.count(name) > 0) Cursor::fail(at, "'" + name + "' is a reserved word");
    if (!all.insert(name).second) Cursor::fail(at, "duplicate identifier '" + name + "'");
  }
};

class ExpressionParser {
 public:
  ExpressionParser(Cursor& cur, const Scope& scope, bool allow_variables)
      : cur_(cur), scope_(scope), allow_variables_(allow_variables) {}

  Polynomial expression() {
    Polynomial value = term();
    while (true) {
      if (cur_.accept('+')) {
        value += term();
      } else if (cur_.accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

 private:
  Polynomial term() {
    Polynomial value = unary();
    while (true) {
      if (cur_.accept('*')) {
        value = value * unary();
      } else if (cur_.is_punct('/')) {
        Token at = cur_.next();
        Polynomial divisor = unary();
        if (divisor.degree() != 0 || divisor.mentions_parameters() || divisor.is_zero()) {
          Cursor::fail(at, divisor.is_zero()            ? "division by zero"
                           : divisor.degree() == 0 ? "non-polynomial construct: division by a parameter"
                                                   : "non-polynomial construct: division by a non-constant");
        }
        Rational inverse = 1 / divisor.coefficient(Monomial{}).rational_value();
        Polynomial scaled;
        for (const auto& [m, c] : value.terms()) {
          Coefficient cc = c;
          cc *= inverse;
          scaled.add_term(m, cc);
        }
        value = std::move(scaled);
      } else {
        return value;
      }
    }
  }

  Polynomial unary() {
    if (cur_.accept('-')) return -unary();
    if (cur_.accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (cur_.is_punct('^')) {
      Token at = cur_.next();
      const Token& exp = cur_.peek();
      if (exp.kind != Tok::number || exp.text.find_first_not_of("0123456789") != std::string::npos) {
        Cursor::fail(at, "non-polynomial construct: exponent must be a non-negative integer");
      }
      cur_.next();
      if (exp.text.size() > 4) Cursor::fail(exp, "exponent too large");
      return base.pow(static_cast<std::uint32_t>(std::stoul(exp.text)));
    }
    return base;
  }

  Polynomial atom() {
    const Token& t = cur_.peek();
    if (t.kind == Tok::number) {
      cur_.next();
      try {
        return Polynomial::constant(Coefficient(parse_rational(t.text)));
      } catch (const std::invalid_argument& e) {
        Cursor::fail(t, e.what());
      }
    }
    if (t.kind == Tok::ident) {
      Token id = cur_.next();
      if (cur_.is_punct('(')) {
        Cursor::fail(id, "non-polynomial construct: function call '" + id.text + "(...)'");
      }
      if (auto it = scope_.parameters.find(id.text); it != scope_.parameters.end()) {
        return Polynomial::constant(Coefficient::parameter(it->second));
      }
      if (auto it = scope_.variables.find(id.text); it != scope_.variables.end()) {
        if (!allow_variables_) Cursor::fail(id, "variable '" + id.text + "' not allowed in a constant");
        return Polynomial::variable(it->second);
      }
      Cursor::fail(id, "unknown identifier '" + id.text + "'");
    }
    if (cur_.accept('(')) {
      Polynomial inner = expression();
      cur_.expect(')');
      return inner;
    }
    Cursor::fail(t, "expected an expression");
  }

  Cursor& cur_;
  const Scope& scope_;
  bool allow_variables_;
};

Rational parse_constant(Cursor& cur) {
  const Token& at = cur.peek();
  const Scope numbers_only;
  Polynomial p = ExpressionParser(cur, numbers_only, false).expression();
  if (p.degree() != 0 || p.mentions_parameters()) Cursor::fail(at, "expected a numeric constant");
  return p.coefficient(Monomial{}).rational_value();
}

enum class Kind { unknown, ode, rn };

struct RawModel {
  Kind kind = Kind::unknown;
  std::string name;
  std::vector<std::string> symbols;  // vars or species in declaration order
  std::vector<Parameter> parameters;
  std::vector<std::pair<std::size_t, Rational>> inits;
  std::vector<std::optional<Polynomial>> derivatives;
  std::vector<Reaction> reactions;
};

void set_kind(RawModel& model, Kind kind, const Token& at) {
  if (model.kind != Kind::unknown && model.kind != kind) {
    Cursor::fail(at, "cannot mix ODE statements with reaction-network statements");
  }
  model.kind = kind;
}

SpeciesMultiset parse_side(Cursor& cur, const Scope& scope) {
  if (cur.peek().kind == Tok::number && cur.peek().text == "0" &&
      !(cur.peek(1).kind == Tok::ident)) {
    cur.next();
    return {};
  }
  std::vector<std::pair<std::size_t, std::uint32_t>> entries;
  while (true) {
    std::uint32_t count = 1;
    if (cur.peek().kind == Tok::number) {
      const Token& n = cur.next();
      if (n.text.find_first_not_of("0123456789") != std::string::npos || n.text.size() > 6 ||
          std::stoul(n.text) == 0) {
        Cursor::fail(n, "stoichiometric multiplier must be a positive integer");
      }
      count = static_cast<std::uint32_t>(std::stoul(n.text));
    }
    const Token& id = cur.peek();
    std::string name = cur.expect_ident();
    auto it = scope.variables.find(name);
    if (it == scope.variables.end()) Cursor::fail(id, "undeclared species '" + name + "'");
    entries.emplace_back(it->second, count);
    if (!cur.accept('+')) break;
  }
  return make_multiset(std::move(entries));
}

RawModel parse_raw(std::string_view text) {
  Cursor cur(tokenize(text));
  Scope scope;
  RawModel model;
  auto declare_symbols = [&](Kind kind, const Token& kw) {
    set_kind(model, kind, kw);
    do {
      const Token& at = cur.peek();
      std::string name = cur.expect_ident();
      scope.declare(at, name);
      scope.variables.emplace(name, static_cast<std::uint32_t>(model.symbols.size()));
      model.symbols.push_back(name);
      model.derivatives.emplace_back();
    } while (cur.accept(','));
  };

  while (!cur.at_end()) {
    if (cur.accept(';')) continue;
    const Token& head = cur.peek();
    if (head.kind == Tok::ident && head.text == "model") {
      cur.next();
      model.name = cur.expect_ident();
    } else if (head.kind == Tok::ident && head.text == "param") {
      cur.next();
      do {
        const Token& at = cur.peek();
        std::string name = cur.expect_ident();
        scope.declare(at, name);
        Parameter p{name, std::nullopt};
        if (cur.accept('=')) p.value = parse_constant(cur);
        scope.parameters.emplace(name, static_cast<std::uint32_t>(model.parameters.size()));
        model.parameters.push_back(std::move(p));
      } while (cur.accept(','));
    } else if (head.kind == Tok::ident && head.text == "var") {
      Token kw = cur.next();
      declare_symbols(Kind::ode, kw);
    } else if (head.kind == Tok::ident && head.text == "species") {
      Token kw = cur.next();
      declare_symbols(Kind::rn, kw);
    } else if (head.kind == Tok::ident && head.text == "init") {
      cur.next();
      do {
        const Token& at = cur.peek();
        std::string name = cur.expect_ident();
        auto it = scope.variables.find(name);
        if (it == scope.variables.end()) Cursor::fail(at, "unknown identifier '" + name + "'");
        cur.expect('=');
        model.inits.emplace_back(it->second, parse_constant(cur));
      } while (cur.accept(','));
    } else if (head.kind == Tok::ident && head.text == "d" && cur.is_punct('(', 1)) {
      Token kw = cur.next();
      set_kind(model, Kind::ode, kw);
      cur.expect('(');
      const Token& at = cur.peek();
      std::string name = cur.expect_ident();
      auto it = scope.variables.find(name);
      if (it == scope.variables.end()) Cursor::fail(at, "unknown identifier '" + name + "'");
      cur.expect(')');
      cur.expect('=');
      if (model.derivatives[it->second]) Cursor::fail(at, "derivative of '" + name + "' given twice");
      model.derivatives[it->second] = ExpressionParser(cur, scope, true).expression();
    } else if (head.kind == Tok::ident || head.kind == Tok::number) {
      Token at = head;
      set_kind(model, Kind::rn, at);
      Reaction r;
      r.reagents = parse_side(cur, scope);
      if (cur.peek().kind != Tok::arrow) Cursor::fail(cur.peek(), "expected '->'");
      cur.next();
      r.products = parse_side(cur, scope);
      cur.expect('@');
      const Token& rate_at = cur.peek();
      Polynomial rate = ExpressionParser(cur, scope, false).expression();
      if (rate.degree() != 0) Cursor::fail(rate_at, "rate must be a constant or a parameter");
      Coefficient c = rate.coefficient(Monomial{});
      if (c.is_rational()) {
        if (c.rational_value() <= 0) Cursor::fail(rate_at, "non-positive rate");
      } else {
        const auto& terms = c.terms();
        if (terms.size() != 1 || terms.begin()->first.degree() != 1 || terms.begin()->second != 1) {
          Cursor::fail(rate_at, "rate must be a positive number or a single parameter");
        }
        const auto& p = model.parameters[terms.begin()->first.factors()[0].first];
        if (p.value && *p.value <= 0) Cursor::fail(rate_at, "non-positive rate parameter '" + p.name + "'");
      }
      if (r.reagents.empty() && r.products.empty()) Cursor::fail(at, "reaction with empty reagents and products");
      r.rate = std::move(c);
      model.reactions.push_back(std::move(r));
    } else {
      Cursor::fail(head, "unexpected token");
    }
    cur.expect(';');
  }
  return model;
}

std::vector<std::optional<Rational>> collect_initial(const RawModel& raw) {
  std::vector<std::optional<Rational>> initial;
  if (raw.inits.empty()) return initial;
  initial.resize(raw.symbols.size());
  for (const auto& [index, value] : raw.inits) {
    if (initial[index]) throw ModelError("initial value of '" + raw.symbols[index] + "' given twice");
    initial[index] = value;
  }
  return initial;
}

PolynomialODESystem to_system(RawModel raw) {
  PolynomialODESystem s;
  s.name = raw.name;
  s.variables = raw.symbols;
  s.parameters = raw.parameters;
  s.initial = collect_initial(raw);
  for (std::size_t i = 0; i < raw.symbols.size(); ++i) {
    if (!raw.derivatives[i]) {
      throw ParseError(1, 1, "missing derivative for variable '" + raw.symbols[i] + "'");
    }
    s.derivatives.push_back(std::move(*raw.derivatives[i]));
  }
  s.validate();
  return s;
}

ReactionNetwork to_network(RawModel raw) {
  ReactionNetwork n;
  n.name = raw.name;
  n.species = raw.symbols;
  n.parameters = raw.parameters;
  n.initial = collect_initial(raw);
  n.reactions = std::move(raw.reactions);
  n.validate();
  return n;
}

}  // namespace

ModelDocument parse_model(std::string_view text) {
  RawModel raw = parse_raw(text);
  if (raw.kind == Kind::rn) return to_network(std::move(raw));
  return to_system(std::move(raw));
}

PolynomialODESystem parse_ode(std::string_view text) {
  RawModel raw = parse_raw(text);
  if (raw.kind == Kind::rn) throw ParseError(1, 1, "expected an ODE model, found a reaction network");
  return to_system(std::move(raw));
}

ReactionNetwork parse_rn(std::string_view text) {
  RawModel raw = parse_raw(text);
  if (raw.kind == Kind::ode) throw ParseError(1, 1, "expected a reaction network, found an ODE model");
  return to_network(std::move(raw));
}

PartitionDocument parse_partition_document(std::string_view text) {
  Cursor cur(tokenize(text));
  PartitionDocument doc;
  std::set<std::string> seen;
  while (!cur.at_end()) {
    if (cur.accept(';')) continue;
    const Token& head = cur.peek();
    if (head.kind == Tok::ident && head.text == "unlisted") {
      cur.next();
      cur.expect('=');
      const Token& at = cur.peek();
      std::string policy = cur.expect_ident();
      if (policy == "shared") {
        doc.unlisted = UnlistedPolicy::shared_block;
      } else if (policy == "singleton" || policy == "singletons") {
        doc.unlisted = UnlistedPolicy::singletons;
      } else {
        Cursor::fail(at, "unlisted policy must be 'shared' or 'singleton'");
      }
      continue;
    }
    if (!cur.accept('{')) Cursor::fail(head, "expected '{'");
    std::vector<std::string> block;
    if (cur.is_punct('}')) Cursor::fail(cur.peek(), "empty block");
    do {
      const Token& at = cur.peek();
      std::string name = cur.expect_ident();
      if (!seen.insert(name).second) Cursor::fail(at, "duplicate membership of '" + name + "'");
      block.push_back(name);
    } while (cur.accept(','));
    cur.expect('}');
    doc.blocks.push_back(std::move(block));
  }
  return doc;
}

Partition resolve_partition(const PartitionDocument& doc, const std::vector<std::string>& names) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  std::vector<bool> listed(names.size(), false);
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& b : doc.blocks) {
    std::vector<std::size_t> ids;
    for (const auto& name : b) {
      auto it = index.find(name);
      if (it == index.end()) throw ModelError("partition names unknown variable '" + name + "'");
      if (listed[it->second]) throw ModelError("duplicate membership of '" + name + "'");
      listed[it->second] = true;
      ids.push_back(it->second);
    }
    blocks.push_back(std::move(ids));
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!listed[i]) rest.push_back(i);
  }
  if (!rest.empty()) {
    if (doc.unlisted == UnlistedPolicy::shared_block) {
      blocks.push_back(std::move(rest));
    } else {
      for (std::size_t i : rest) blocks.push_back({i});
    }
  }
  return Partition(names.size(), std::move(blocks));
}

}  // namespace odelump::ingest
