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

// Linkflows vocabulary and the Turtle mapping of store contents.
//
// Review comments are multi-typed: lf:ReviewComment plus one class from each
// classification dimension. Snippets and agents use a few standard terms
// (rdf:value, dcterms:isPartOf, schema:position, rdfs:label, dcterms:type,
// dcterms:created) because the vocabulary itself only covers comments.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "linkflows/canonical.hpp"
#include "linkflows/model.hpp"
#include "linkflows/turtle.hpp"

namespace linkflows {

// Repo-owned placeholder namespace; override with RdfOptions.
inline constexpr std::string_view kDefaultVocabNamespace = "http://linkflows.example.org/vocab#";

struct RdfOptions {
  std::string vocabNamespace{kDefaultVocabNamespace};
};

enum class TermKind { owlClass, objectProperty, datatypeProperty };

struct VocabularyTerm {
  std::string localName;
  TermKind termKind;

  auto operator<=>(const VocabularyTerm&) const = default;
};

// The 24 terms of the model, in declaration order.
const std::vector<VocabularyTerm>& vocabulary();

std::map<std::string, std::string> standard_prefixes(const RdfOptions& options);

// Triples describing one record.
std::vector<rdf::Triple> node_triples(const NodeRecord& record, const RdfOptions& options);

struct ExportOptions {
  RdfOptions rdf;
  std::optional<std::set<Iri>> subset;  // only these nodes when set
};

std::string export_turtle(const StoreView& view, const ExportOptions& options = {});

struct ImportResult {
  std::vector<NodeEnvelope> envelopes;  // in subject order
  std::vector<std::string> warnings;    // unknown terms and skipped subjects
};

// Throws ParseError on bad syntax, Error(kModelViolation) with the list of
// violations when the triples do not describe valid records.
ImportResult import_turtle(std::string_view text, const RdfOptions& options = {});

std::string emit_ontology(const RdfOptions& options = {});

// Schema mode: terms declared (owl:Class / owl:ObjectProperty /
// owl:DatatypeProperty) inside the vocabulary namespace, sorted by name.
std::vector<VocabularyTerm> import_schema(std::string_view text,
                                          const RdfOptions& options = {});

}  // namespace linkflows
