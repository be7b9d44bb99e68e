// Copyright 2026 The Linkflows Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "linkflows/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "linkflows/errors.hpp"

namespace linkflows::rdf {

namespace {

bool is_pn_chars_base(unsigned char c) { return std::isalpha(c) || c >= 0x80; }
bool is_pn_chars(unsigned char c) {
  return is_pn_chars_base(c) || std::isdigit(c) || c == '_' || c == '-';
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TripleDocument run() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    return std::move(doc_);
  }

 private:
  // -- cursor ---------------------------------------------------------------
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  bool starts_with_keyword(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
    }
    const auto next = static_cast<unsigned char>(peek(kw.size()));
    return !is_pn_chars(next) && next != ':';
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_ws() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else {
        break;
      }
    }
  }

  // -- grammar --------------------------------------------------------------
  void statement() {
    if (peek() == '@') {
      get();
      if (starts_with("prefix")) {
        pos_ += 6;
        col_ += 6;
        prefix_decl();
        expect('.');
      } else if (starts_with("base")) {
        pos_ += 4;
        col_ += 4;
        skip_ws();
        base_ = iri_ref();
        expect('.');
      } else {
        fail("unknown directive");
      }
      return;
    }
    if (starts_with_keyword("PREFIX")) {
      pos_ += 6;
      col_ += 6;
      prefix_decl();
      return;
    }
    if (starts_with_keyword("BASE")) {
      pos_ += 4;
      col_ += 4;
      skip_ws();
      base_ = iri_ref();
      return;
    }
    triples();
    expect('.');
  }

  void prefix_decl() {
    skip_ws();
    std::string prefix;
    while (!at_end() && peek() != ':') {
      const auto c = static_cast<unsigned char>(peek());
      if (!is_pn_chars(c) && c != '.') fail("invalid prefix name");
      prefix += get();
    }
    if (at_end()) fail("expected ':' in prefix declaration");
    get();
    skip_ws();
    doc_.prefixes[prefix] = iri_ref();
  }

  void triples() {
    skip_ws();
    if (peek() == '[') {
      Term subject = blank_node_property_list();
      skip_ws();
      if (peek() != '.') predicate_object_list(subject);
      return;
    }
    Term subject = subject_term();
    predicate_object_list(subject);
  }

  Term subject_term() {
    skip_ws();
    if (peek() == '<') return Term::iri(iri_ref());
    if (peek() == '_' && peek(1) == ':') return blank_label();
    if (peek() == '(') fail("collections are not supported");
    return Term::iri(prefixed_name());
  }

  void predicate_object_list(const Term& subject) {
    for (;;) {
      skip_ws();
      Term predicate = verb();
      object_list(subject, predicate);
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      if (peek() == '.' || peek() == ']') return;
    }
  }

  Term verb() {
    if (peek() == 'a') {
      const auto next = static_cast<unsigned char>(peek(1));
      if (!is_pn_chars(next) && next != ':' && next != '.') {
        get();
        return Term::iri(std::string(kRdf) + "type");
      }
    }
    if (peek() == '<') return Term::iri(iri_ref());
    return Term::iri(prefixed_name());
  }

  void object_list(const Term& subject, const Term& predicate) {
    for (;;) {
      skip_ws();
      Term object = object_term();
      doc_.triples.push_back({subject, predicate, std::move(object)});
      skip_ws();
      if (peek() != ',') return;
      get();
    }
  }

  Term object_term() {
    const char c = peek();
    if (c == '<') return Term::iri(iri_ref());
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '[') return blank_node_property_list();
    if (c == '(') fail("collections are not supported");
    if (c == '"' || c == '\'') return literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return numeric();
    }
    if (starts_with("true") && !is_pn_chars(static_cast<unsigned char>(peek(4))) &&
        peek(4) != ':') {
      for (int i = 0; i < 4; ++i) get();
      return Term::literal("true", std::string(kXsd) + "boolean");
    }
    if (starts_with("false") && !is_pn_chars(static_cast<unsigned char>(peek(5))) &&
        peek(5) != ':') {
      for (int i = 0; i < 5; ++i) get();
      return Term::literal("false", std::string(kXsd) + "boolean");
    }
    return Term::iri(prefixed_name());
  }

  Term blank_node_property_list() {
    get();  // '['
    Term node = Term::blank("anon" + std::to_string(++blank_counter_));
    skip_ws();
    if (peek() == ']') {
      get();
      return node;
    }
    predicate_object_list(node);
    expect(']');
    return node;
  }

  Term blank_label() {
    get();
    get();  // "_:"
    std::string label;
    while (!at_end()) {
      const auto c = static_cast<unsigned char>(peek());
      if (is_pn_chars(c) || (c == '.' && is_pn_chars(static_cast<unsigned char>(peek(1))))) {
        label += get();
      } else {
        break;
      }
    }
    if (label.empty()) fail("empty blank node label");
    // Keeps document labels clear of the generated "anon<n>" ones.
    if (label.starts_with("anon") || label.starts_with("x")) label.insert(0, "x");
    return Term::blank(label);
  }

  std::string iri_ref() {
    if (peek() != '<') fail("expected IRI");
    get();
    std::string iri;
    for (;;) {
      if (at_end()) fail("unterminated IRI");
      const char c = get();
      if (c == '>') break;
      if (c == '\\') {
        iri_escape(iri);
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`') {
        fail("invalid character in IRI");
      }
      iri += c;
    }
    return resolve(iri);
  }

  void iri_escape(std::string& out) {
    const char kind = at_end() ? '\0' : get();
    if (kind == 'u') {
      append_utf8(out, hex_digits(4));
    } else if (kind == 'U') {
      append_utf8(out, hex_digits(8));
    } else {
      fail("invalid escape in IRI");
    }
  }

  unsigned long hex_digits(int n) {
    unsigned long v = 0;
    for (int i = 0; i < n; ++i) {
      const char c = at_end() ? '\0' : get();
      if (!std::isxdigit(static_cast<unsigned char>(c))) fail("invalid hex escape");
      v = v * 16 + static_cast<unsigned long>(std::isdigit(static_cast<unsigned char>(c))
                                                  ? c - '0'
                                                  : std::tolower(c) - 'a' + 10);
    }
    return v;
  }

  std::string resolve(const std::string& iri) const {
    const auto colon = iri.find(':');
    const bool absolute =
        colon != std::string::npos && colon > 0 &&
        std::all_of(iri.begin(), iri.begin() + static_cast<std::ptrdiff_t>(colon), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
                 c == '.';
        });
    if (absolute || base_.empty()) return iri;
    if (iri.empty()) return base_;
    if (iri[0] == '#') {
      return base_.substr(0, base_.find('#')) + iri;
    }
    return base_.substr(0, base_.find_last_of('/') + 1) + iri;
  }

  std::string prefixed_name() {
    const auto start_line = line_, start_col = col_;
    std::string prefix;
    while (!at_end() && peek() != ':') {
      const auto c = static_cast<unsigned char>(peek());
      if (!is_pn_chars(c) && c != '.') break;
      prefix += get();
    }
    if (peek() != ':') {
      throw ParseError(prefix.empty() ? "unexpected character '" + std::string(1, peek()) + "'"
                                      : "expected ':' after '" + prefix + "'",
                       start_line, start_col);
    }
    get();
    auto it = doc_.prefixes.find(prefix);
    if (it == doc_.prefixes.end()) {
      throw ParseError("undeclared prefix '" + prefix + ":'", start_line, start_col);
    }
    std::string local;
    while (!at_end()) {
      const auto c = static_cast<unsigned char>(peek());
      if (is_pn_chars(c) || c == ':' || (std::isdigit(c))) {
        local += get();
      } else if (c == '%') {
        local += get();
        for (int i = 0; i < 2; ++i) {
          if (!std::isxdigit(static_cast<unsigned char>(peek()))) fail("bad percent escape");
          local += get();
        }
      } else if (c == '\\') {
        get();
        local += get();
      } else if (c == '.' && (is_pn_chars(static_cast<unsigned char>(peek(1))) ||
                              peek(1) == ':' || peek(1) == '%')) {
        local += get();
      } else {
        break;
      }
    }
    return it->second + local;
  }

  Term literal() {
    const char quote = peek();
    const bool long_form = peek(1) == quote && peek(2) == quote;
    for (int i = 0; i < (long_form ? 3 : 1); ++i) get();
    std::string value;
    for (;;) {
      if (at_end()) fail("unterminated string literal");
      const char c = peek();
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote && peek(3) != quote) {
          get();
          get();
          get();
          break;
        }
      } else if (c == quote) {
        get();
        break;
      } else if (c == '\n' || c == '\r') {
        fail("newline in short string literal");
      }
      get();
      if (c == '\\') {
        string_escape(value);
      } else {
        value += c;
      }
    }
    if (peek() == '@') {
      get();
      std::string lang;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-') lang += get();
      if (lang.empty()) fail("empty language tag");
      return Term::literal(std::move(value), {}, std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      std::string datatype = peek() == '<' ? iri_ref() : prefixed_name();
      if (datatype == std::string(kXsd) + "string") datatype.clear();
      return Term::literal(std::move(value), std::move(datatype));
    }
    return Term::literal(std::move(value));
  }

  void string_escape(std::string& out) {
    if (at_end()) fail("unterminated escape");
    const char c = get();
    switch (c) {
      case 't': out += '\t'; break;
      case 'b': out += '\b'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 'f': out += '\f'; break;
      case '"': out += '"'; break;
      case '\'': out += '\''; break;
      case '\\': out += '\\'; break;
      case 'u': append_utf8(out, hex_digits(4)); break;
      case 'U': append_utf8(out, hex_digits(8)); break;
      default: fail(std::string("invalid escape '\\") + c + "'");
    }
  }

  Term numeric() {
    std::string lexical;
    if (peek() == '+' || peek() == '-') lexical += get();
    bool dot = false, exponent = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) lexical += get();
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      dot = true;
      lexical += get();
      while (std::isdigit(static_cast<unsigned char>(peek()))) lexical += get();
    }
    if (peek() == 'e' || peek() == 'E') {
      exponent = true;
      lexical += get();
      if (peek() == '+' || peek() == '-') lexical += get();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) lexical += get();
    }
    if (lexical.empty() || lexical == "+" || lexical == "-") fail("malformed number");
    const char* type = exponent ? "double" : dot ? "decimal" : "integer";
    return Term::literal(std::move(lexical), std::string(kXsd) + type);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::string base_;
  std::size_t blank_counter_ = 0;
  TripleDocument doc_;
};

bool simple_local_name(std::string_view s) {
  if (s.empty()) return false;
  const auto first = static_cast<unsigned char>(s.front());
  if (!std::isalpha(first) && first != '_') return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

std::string escape_literal(std::string_view v) {
  std::string out;
  for (char c : v) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

bool integer_lexical(std::string_view v) {
  if (!v.empty() && (v[0] == '-' || v[0] == '+')) v.remove_prefix(1);
  return !v.empty() && std::all_of(v.begin(), v.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

class Writer {
 public:
  explicit Writer(const std::map<std::string, std::string>& prefixes) : prefixes_(prefixes) {}

  std::string iri(const std::string& value) const {
    const std::pair<const std::string, std::string>* best = nullptr;
    for (const auto& entry : prefixes_) {
      const auto& ns = entry.second;
      if (value.size() > ns.size() && value.compare(0, ns.size(), ns) == 0 &&
          simple_local_name(std::string_view(value).substr(ns.size())) &&
          (!best || ns.size() > best->second.size())) {
        best = &entry;
      }
    }
    if (best) return best->first + ":" + value.substr(best->second.size());
    return "<" + value + ">";
  }

  std::string term(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::iri: return iri(t.value);
      case Term::Kind::blank: return "_:" + t.value;
      case Term::Kind::literal: {
        if (t.datatype == std::string(kXsd) + "integer" && integer_lexical(t.value)) {
          return t.value;
        }
        std::string out = "\"" + escape_literal(t.value) + "\"";
        if (!t.language.empty()) return out + "@" + t.language;
        if (!t.datatype.empty()) return out + "^^" + iri(t.datatype);
        return out;
      }
    }
    return {};
  }

 private:
  const std::map<std::string, std::string>& prefixes_;
};

}  // namespace

TripleDocument parse_turtle(std::string_view text) { return Parser(text).run(); }

std::string to_ntriples(const Term& t) {
  switch (t.kind) {
    case Term::Kind::iri: return "<" + t.value + ">";
    case Term::Kind::blank: return "_:" + t.value;
    case Term::Kind::literal: {
      std::string out = "\"" + escape_literal(t.value) + "\"";
      if (!t.language.empty()) return out + "@" + t.language;
      if (!t.datatype.empty()) return out + "^^<" + t.datatype + ">";
      return out;
    }
  }
  return {};
}

std::string write_turtle(const std::map<std::string, std::string>& prefixes,
                         std::vector<Triple> triples) {
  std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
    const auto ka = std::make_tuple(to_ntriples(a.subject), to_ntriples(a.predicate),
                                    to_ntriples(a.object));
    const auto kb = std::make_tuple(to_ntriples(b.subject), to_ntriples(b.predicate),
                                    to_ntriples(b.object));
    return ka < kb;
  });
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

  std::string out;
  for (const auto& [prefix, ns] : prefixes) {
    out += "@prefix " + prefix + ": <" + ns + "> .\n";
  }
  const Writer w(prefixes);
  const std::string rdf_type = std::string(kRdf) + "type";
  for (std::size_t i = 0; i < triples.size();) {
    const Term& subject = triples[i].subject;
    out += "\n" + w.term(subject) + "\n";
    bool first_predicate = true;
    while (i < triples.size() && triples[i].subject == subject) {
      const Term& predicate = triples[i].predicate;
      out += first_predicate ? "    " : " ;\n    ";
      first_predicate = false;
      out += predicate.value == rdf_type ? "a" : w.term(predicate);
      bool first_object = true;
      while (i < triples.size() && triples[i].subject == subject &&
             triples[i].predicate == predicate) {
        out += first_object ? " " : ", ";
        first_object = false;
        out += w.term(triples[i].object);
        ++i;
      }
    }
    out += " .\n";
  }
  return out;
}

}  // namespace linkflows::rdf
