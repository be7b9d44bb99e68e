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

#pragma once

// Minimal RDF term model plus a Turtle reader and a deterministic writer.
// The reader covers directives (@prefix, @base, PREFIX, BASE), IRIs,
// prefixed names, blank node labels, anonymous blank nodes "[ ... ]",
// string literals (short and long, with escapes), language tags, datatypes,
// numeric and boolean shorthands, and ';' / ',' predicate-object lists.
// Collections "( ... )" are rejected with a parse error.

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace linkflows::rdf {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";

struct Term {
  enum class Kind { iri, blank, literal };

  Kind kind = Kind::iri;
  std::string value;     // IRI, blank label, or lexical form
  std::string datatype;  // literals only; empty means xsd:string
  std::string language;  // literals only

  static Term iri(std::string v) { return {Kind::iri, std::move(v), {}, {}}; }
  static Term blank(std::string v) { return {Kind::blank, std::move(v), {}, {}}; }
  static Term literal(std::string v, std::string datatype = {}, std::string lang = {}) {
    return {Kind::literal, std::move(v), std::move(datatype), std::move(lang)};
  }

  bool is_iri() const { return kind == Kind::iri; }
  bool is_literal() const { return kind == Kind::literal; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

struct TripleDocument {
  std::map<std::string, std::string> prefixes;  // prefix -> namespace IRI
  std::vector<Triple> triples;
};

// Throws ParseError with 1-based line/column.
TripleDocument parse_turtle(std::string_view text);

// Subjects, then predicates, then objects in sorted order; prefixed names
// wherever a declared prefix applies. Literals of type xsd:integer are
// written bare. Byte-identical output for equal triple sets.
std::string write_turtle(const std::map<std::string, std::string>& prefixes,
                         std::vector<Triple> triples);

// N-Triples style rendering of one term, used for ordering and diagnostics.
std::string to_ntriples(const Term& term);

}  // namespace linkflows::rdf
