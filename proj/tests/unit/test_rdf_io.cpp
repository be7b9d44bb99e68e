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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "../support/fixtures.hpp"
#include "linkflows/errors.hpp"
#include "linkflows/rdf_io.hpp"

using namespace linkflows;
using linkflows::testing::fixed_time;
using linkflows::testing::random_nodes;
using rdf::Term;

namespace {

const std::string kLf(kDefaultVocabNamespace);
const std::string kType = std::string(rdf::kRdf) + "type";

std::vector<NodeEnvelope> sorted(std::vector<NodeEnvelope> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return v;
}

std::vector<std::string> violation_codes(std::string_view text) {
  try {
    import_turtle(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kModelViolation);
    std::vector<std::string> codes;
    for (const auto& v : e.violations()) codes.push_back(v.code);
    return codes;
  }
  FAIL("import accepted: " << text);
  return {};
}

const char* kHeader =
    "@prefix lf: <http://linkflows.example.org/vocab#> .\n"
    "@prefix dcterms: <http://purl.org/dc/terms/> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

std::string comment_doc(const std::string& types, const std::string& extra) {
  return std::string(kHeader) + "<http://ex.org/c1> a lf:ReviewComment" + types +
         " ;\n  lf:refersTo <http://ex.org/p1> ;\n  lf:hasCommentText \"t\" ;\n"
         "  lf:hasCommentAuthor <http://ex.org/a> ;\n"
         "  dcterms:created \"2024-01-01T00:00:00Z\"^^xsd:dateTime" +
         extra + " .\n";
}

}  // namespace

TEST_CASE("rdf: the vocabulary has 24 terms") {
  const auto& v = vocabulary();
  CHECK(v.size() == 24);
  auto count = [&](TermKind k) {
    return std::count_if(v.begin(), v.end(), [&](const auto& t) { return t.termKind == k; });
  };
  CHECK(count(TermKind::owlClass) == 18);
  CHECK(count(TermKind::objectProperty) == 4);
  CHECK(count(TermKind::datatypeProperty) == 2);
  std::set<std::string> names;
  for (const auto& t : v) names.insert(t.localName);
  CHECK(names.size() == 24);
  for (const char* n : {"ReviewComment", "PointPartiallyAddressedComment", "refersTo",
                        "isResponseTo", "isUpdateOf", "hasCommentAuthor", "hasCommentText",
                        "hasImpact"}) {
    CHECK(names.contains(n));
  }
}

TEST_CASE("rdf: emitted ontology declares exactly the vocabulary") {
  const auto ttl = emit_ontology();
  auto terms = import_schema(ttl);
  auto expected = vocabulary();
  std::sort(expected.begin(), expected.end());
  CHECK(terms == expected);
  CHECK(emit_ontology() == ttl);

  RdfOptions other;
  other.vocabNamespace = "http://other.org/v/";
  CHECK(import_schema(emit_ontology(other), other).size() == 24);
  CHECK(import_schema(emit_ontology(other)).empty());

  // Foreign declarations and undeclared names are ignored.
  const auto partial = import_schema(std::string(kHeader) +
                                     "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
                                     "lf:Foo a owl:Class .\nlf:bar a owl:ObjectProperty .\n"
                                     "<http://else/X> a owl:Class .\nlf:Baz lf:x lf:y .\n");
  CHECK(partial == std::vector<VocabularyTerm>{{"Foo", TermKind::owlClass},
                                               {"bar", TermKind::objectProperty}});
}

TEST_CASE("rdf: triple footprint per node kind") {
  const RdfOptions opts;
  auto lf_types = [&](const std::vector<rdf::Triple>& ts) {
    std::set<std::string> out;
    for (const auto& t : ts) {
      if (t.predicate.value == kType && t.object.value.starts_with(kLf)) {
        out.insert(t.object.value.substr(kLf.size()));
      }
    }
    return out;
  };
  auto predicates = [&](const std::vector<rdf::Triple>& ts) {
    std::multiset<std::string> out;
    for (const auto& t : ts) out.insert(t.predicate.value);
    return out;
  };

  ReviewComment c;
  c.id = Iri::parse("http://ex.org/c");
  c.refersTo = Iri::parse("http://ex.org/p");
  c.author = Iri::parse("http://ex.org/a");
  c.text = "Consider rephrasing";
  c.aspect = Aspect::style;
  c.polarity = Polarity::negative;
  c.actionNeeded = ActionNeeded::suggestion;
  c.impact = ImpactScore(2);
  c.createdAt = fixed_time();
  const auto ct = node_triples(c, opts);
  CHECK(lf_types(ct) ==
        std::set<std::string>{"ReviewComment", "StyleComment", "NegativeComment", "SuggestionComment"});
  const auto cp = predicates(ct);
  CHECK(cp.count(kType) == 4);
  CHECK(cp.count(kLf + "refersTo") == 1);
  CHECK(cp.count(kLf + "hasCommentText") == 1);
  CHECK(cp.count(kLf + "hasCommentAuthor") == 1);
  CHECK(cp.count(kLf + "hasImpact") == 1);
  CHECK(cp.count(kLf + "isUpdateOf") == 0);
  CHECK(ct.size() == 9);
  for (const auto& t : ct) {
    if (t.predicate.value == kLf + "hasImpact") {
      CHECK(t.object == Term::literal("2", std::string(rdf::kXsd) + "integer"));
    }
  }

  ResponseComment r;
  r.id = Iri::parse("http://ex.org/r");
  r.isResponseTo = c.id;
  r.author = c.author;
  r.text = "Done";
  r.agreement = Agreement::partiallyAgree;
  CHECK(lf_types(node_triples(r, opts)) ==
        std::set<std::string>{"ResponseComment", "PartialAgreementComment"});

  ActionCheckComment k;
  k.id = Iri::parse("http://ex.org/k");
  k.isResponseTo = r.id;
  k.author = c.author;
  k.text = "ok";
  k.status = CheckStatus::notAddressed;
  CHECK(lf_types(node_triples(k, opts)) ==
        std::set<std::string>{"ActionCheckComment", "PointNotAddressedComment"});

  SnippetNode s;
  s.id = Iri::parse("http://ex.org/s");
  s.level = GranularityLevel::section;
  s.text = "Methods";
  CHECK(lf_types(node_triples(s, opts)).empty());
}

TEST_CASE("rdf: export and import round-trip random stores") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 100; ++round) {
    const auto nodes = random_nodes(rng, 5 + round % 60);
    auto store = GraphStore::in_memory(std::string(linkflows::testing::kBase));
    store.put_batch(nodes);
    const auto ttl = export_turtle(*store.snapshot());
    const auto imported = import_turtle(ttl);
    CHECK(imported.warnings.empty());
    CHECK(sorted(imported.envelopes) == sorted(nodes));
    for (const auto& e : imported.envelopes) CHECK(verify_envelope(e));

    auto again = GraphStore::in_memory(std::string(linkflows::testing::kBase));
    again.put_batch(imported.envelopes);
    CHECK(export_turtle(*again.snapshot()) == ttl);
  }
}

TEST_CASE("rdf: a custom vocabulary namespace round-trips when used on both sides") {
  std::mt19937_64 rng(22);
  const auto nodes = random_nodes(rng, 40);
  auto store = GraphStore::in_memory(std::string(linkflows::testing::kBase));
  store.put_batch(nodes);
  ExportOptions opts;
  opts.rdf.vocabNamespace = "http://mirror.org/lf#";
  const auto ttl = export_turtle(*store.snapshot(), opts);
  CHECK(ttl.find("http://mirror.org/lf#") != std::string::npos);
  CHECK(ttl.find(kLf) == std::string::npos);
  CHECK(sorted(import_turtle(ttl, opts.rdf).envelopes) == sorted(nodes));
}

TEST_CASE("rdf: model violations are collected") {
  const std::string ok_extra = " ;\n  lf:hasImpact 3";
  CHECK_NOTHROW(import_turtle(comment_doc(", lf:StyleComment, lf:PositiveComment, lf:SuggestionComment", ok_extra)));

  auto codes = violation_codes(
      comment_doc(", lf:StyleComment, lf:PositiveComment, lf:NegativeComment, lf:SuggestionComment", ok_extra));
  CHECK(codes == std::vector<std::string>{"dimension-conflict"});

  codes = violation_codes(comment_doc(", lf:StyleComment, lf:PositiveComment, lf:SuggestionComment", ""));
  CHECK(codes == std::vector<std::string>{"missing-property"});

  codes = violation_codes(
      comment_doc(", lf:StyleComment, lf:PositiveComment, lf:SuggestionComment", " ;\n  lf:hasImpact 9"));
  CHECK(codes == std::vector<std::string>{"impact-out-of-range"});

  codes = violation_codes(comment_doc(", lf:PositiveComment", ok_extra));
  CHECK(codes == std::vector<std::string>{"dimension-missing", "dimension-missing"});

  codes = violation_codes(
      comment_doc(", lf:StyleComment, lf:PositiveComment, lf:SuggestionComment, lf:AgreementComment", ok_extra));
  CHECK(codes == std::vector<std::string>{"kind-conflict"});

  codes = violation_codes(comment_doc(", lf:ResponseComment", ok_extra));
  CHECK(codes == std::vector<std::string>{"kind-conflict"});

  codes = violation_codes(std::string(kHeader) + "<http://ex.org/x> a lf:PositiveComment .\n");
  CHECK(codes == std::vector<std::string>{"kind-missing"});

  codes = violation_codes(
      comment_doc(", lf:StyleComment, lf:PositiveComment, lf:SuggestionComment", " ;\n  lf:hasImpact \"3\""));
  CHECK(codes == std::vector<std::string>{"not-an-integer"});
}

TEST_CASE("rdf: unknown content becomes warnings") {
  const auto doc = comment_doc(", lf:StyleComment, lf:PositiveComment, lf:SuggestionComment, lf:Bogus",
                               " ;\n  lf:hasImpact 3 ;\n  lf:mystery \"x\"") +
                   "<http://ex.org/loose> <http://ex.org/p> \"q\" .\n"
                   "_:b <http://ex.org/p> \"q\" .\n";
  const auto result = import_turtle(doc);
  CHECK(result.envelopes.size() == 1);
  REQUIRE(result.warnings.size() == 4);
  auto mentions = [&](std::string_view needle) {
    return std::any_of(result.warnings.begin(), result.warnings.end(),
                       [&](const std::string& w) { return w.find(needle) != std::string::npos; });
  };
  CHECK(mentions("Bogus"));
  CHECK(mentions("mystery"));
  CHECK(mentions("untyped subject <http://ex.org/loose>"));
  CHECK(mentions("blank-node subject"));
}

TEST_CASE("rdf: subset export") {
  std::mt19937_64 rng(23);
  const auto nodes = random_nodes(rng, 20);
  auto store = GraphStore::in_memory(std::string(linkflows::testing::kBase));
  store.put_batch(nodes);
  ExportOptions opts;
  opts.subset = std::set<Iri>{nodes.back().id};
  const auto imported = import_turtle(export_turtle(*store.snapshot(), opts));
  REQUIRE(imported.envelopes.size() == 1);
  CHECK(imported.envelopes.front() == nodes.back());
}
