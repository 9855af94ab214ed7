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

#include "odelump/smt/sexpr.hpp"

#include <cctype>

namespace odelump::smt {

std::string_view SExpr::head() const {
  if (kind != Kind::list || items.empty() || items.front().kind != Kind::atom) return {};
  return items.front().text;
}

std::string SExpr::to_string() const {
  switch (kind) {
    case Kind::atom:
      return text;
    case Kind::string: {
      std::string out = "\"";
      for (char c : text) out += c == '"' ? std::string("\"\"") : std::string(1, c);
      return out + '"';
    }
    case Kind::list:
      break;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ' ';
    out += items[i].to_string();
  }
  return out + ')';
}

namespace {

/// Parses one expression starting at `pos`. Returns false if the input ends
/// before the expression does.
bool parse_one(std::string_view s, std::size_t& pos, SExpr& out) {
  auto skip = [&] {
    while (pos < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
      } else if (s[pos] == ';') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  };
  skip();
  if (pos >= s.size()) return false;
  char c = s[pos];
  if (c == ')') throw SolverError("unbalanced ')' in solver output");
  if (c == '(') {
    ++pos;
    out = SExpr{SExpr::Kind::list, {}, {}};
    while (true) {
      skip();
      if (pos >= s.size()) return false;
      if (s[pos] == ')') {
        ++pos;
        return true;
      }
      SExpr item;
      if (!parse_one(s, pos, item)) return false;
      out.items.push_back(std::move(item));
    }
  }
  if (c == '"') {
    std::string text;
    std::size_t p = pos + 1;
    while (true) {
      if (p >= s.size()) return false;
      if (s[p] == '"') {
        if (p + 1 >= s.size()) return false;  // could be an escaped quote
        if (s[p + 1] == '"') {
          text += '"';
          p += 2;
          continue;
        }
        break;
      }
      text += s[p++];
    }
    pos = p + 1;
    out = SExpr{SExpr::Kind::string, std::move(text), {}};
    return true;
  }
  if (c == '|') {
    std::size_t end = s.find('|', pos + 1);
    if (end == std::string_view::npos) return false;
    out = SExpr{SExpr::Kind::atom, std::string(s.substr(pos + 1, end - pos - 1)), {}};
    pos = end + 1;
    return true;
  }
  std::size_t p = pos;
  while (p < s.size() && !std::isspace(static_cast<unsigned char>(s[p])) && s[p] != '(' && s[p] != ')' &&
         s[p] != '"' && s[p] != ';') {
    ++p;
  }
  // An atom at the very end of the buffer may continue in the next chunk.
  if (p >= s.size()) return false;
  out = SExpr{SExpr::Kind::atom, std::string(s.substr(pos, p - pos)), {}};
  pos = p;
  return true;
}

}  // namespace

std::optional<SExpr> SExprReader::next() {
  std::size_t pos = 0;
  SExpr out;
  if (!parse_one(buffer_, pos, out)) return std::nullopt;
  buffer_.erase(0, pos);
  return out;
}

bool SExprReader::has_pending() const {
  for (char c : buffer_) {
    if (!std::isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  SExprReader reader;
  reader.feed(text);
  reader.feed("\n");
  std::vector<SExpr> out;
  while (auto e = reader.next()) out.push_back(std::move(*e));
  if (reader.has_pending()) throw SolverError("incomplete s-expression");
  return out;
}

}  // namespace odelump::smt
