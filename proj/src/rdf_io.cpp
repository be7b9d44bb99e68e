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

#include "linkflows/rdf_io.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "linkflows/sha256.hpp"

namespace linkflows {

using rdf::Term;
using rdf::Triple;

namespace {

constexpr std::string_view kDoco = "http://purl.org/spar/doco/";
constexpr std::string_view kFabio = "http://purl.org/spar/fabio/";
constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
constexpr std::string_view kSchema = "http://schema.org/";

std::string cat(std::string_view a, std::string_view b) {
  std::string out(a);
  out += b;
  return out;
}

struct Terms {
  explicit Terms(const RdfOptions& o) : ns(o.vocabNamespace) {}

  std::string lf(std::string_view local) const { return cat(ns, local); }

  std::string ns;
  std::string type = cat(rdf::kRdf, "type");
  std::string value = cat(rdf::kRdf, "value");
  std::string label = cat(rdf::kRdfs, "label");
  std::string sub_class_of = cat(rdf::kRdfs, "subClassOf");
  std::string range = cat(rdf::kRdfs, "range");
  std::string created = cat(rdf::kDcterms, "created");
  std::string is_part_of = cat(rdf::kDcterms, "isPartOf");
  std::string dc_type = cat(rdf::kDcterms, "type");
  std::string position = cat(kSchema, "position");
  std::string xsd_integer = cat(rdf::kXsd, "integer");
  std::string xsd_string = cat(rdf::kXsd, "string");
  std::string xsd_datetime = cat(rdf::kXsd, "dateTime");
  std::string agent_class = cat(kFoaf, "Agent");
};

std::string_view level_class(GranularityLevel level) {
  switch (level) {
    case GranularityLevel::article: return "ResearchPaper";
    case GranularityLevel::section: return "Section";
    case GranularityLevel::paragraph: return "Paragraph";
  }
  return "";
}

std::string level_class_iri(GranularityLevel level) {
  return cat(level == GranularityLevel::article ? kFabio : kDoco, level_class(level));
}

std::string_view aspect_class(Aspect a) {
  switch (a) {
    case Aspect::syntax: return "SyntaxComment";
    case Aspect::style: return "StyleComment";
    case Aspect::content: return "ContentComment";
  }
  return "";
}

std::string_view polarity_class(Polarity p) {
  switch (p) {
    case Polarity::negative: return "NegativeComment";
    case Polarity::neutral: return "NeutralComment";
    case Polarity::positive: return "PositiveComment";
  }
  return "";
}

std::string_view action_class(ActionNeeded a) {
  switch (a) {
    case ActionNeeded::actionNeeded: return "ActionNeededComment";
    case ActionNeeded::suggestion: return "SuggestionComment";
    case ActionNeeded::noActionNeeded: return "NoActionNeededComment";
  }
  return "";
}

std::string_view agreement_class(Agreement a) {
  switch (a) {
    case Agreement::agree: return "AgreementComment";
    case Agreement::partiallyAgree: return "PartialAgreementComment";
    case Agreement::disagree: return "DisagreementComment";
  }
  return "";
}

std::string_view status_class(CheckStatus s) {
  switch (s) {
    case CheckStatus::addressed: return "PointAddressedComment";
    case CheckStatus::partiallyAddressed: return "PointPartiallyAddressedComment";
    case CheckStatus::notAddressed: return "PointNotAddressedComment";
  }
  return "";
}

template <typename E, std::size_t N>
std::optional<E> enum_for_class(std::string_view local, const std::array<E, N>& values,
                                std::string_view (*name)(E)) {
  for (E v : values) {
    if (name(v) == local) return v;
  }
  return std::nullopt;
}

constexpr std::array kAspects{Aspect::syntax, Aspect::style, Aspect::content};
constexpr std::array kPolarities{Polarity::negative, Polarity::neutral, Polarity::positive};
constexpr std::array kActions{ActionNeeded::actionNeeded, ActionNeeded::suggestion,
                              ActionNeeded::noActionNeeded};
constexpr std::array kAgreements{Agreement::agree, Agreement::partiallyAgree,
                                 Agreement::disagree};
constexpr std::array kStatuses{CheckStatus::addressed, CheckStatus::partiallyAddressed,
                               CheckStatus::notAddressed};
constexpr std::array kLevels{GranularityLevel::article, GranularityLevel::section,
                             GranularityLevel::paragraph};

Term iri(const Iri& i) { return Term::iri(i.str()); }
Term timestamp(const Timestamp& t, const Terms& v) {
  return Term::literal(format_timestamp(t), v.xsd_datetime);
}

}  // namespace

const std::vector<VocabularyTerm>& vocabulary() {
  static const std::vector<VocabularyTerm> kTerms = [] {
    std::vector<VocabularyTerm> t;
    for (const char* c :
         {"ReviewComment", "SyntaxComment", "StyleComment", "ContentComment",
          "PositiveComment", "NeutralComment", "NegativeComment", "ActionNeededComment",
          "SuggestionComment", "NoActionNeededComment", "ResponseComment",
          "AgreementComment", "PartialAgreementComment", "DisagreementComment",
          "ActionCheckComment", "PointAddressedComment", "PointPartiallyAddressedComment",
          "PointNotAddressedComment"}) {
      t.push_back({c, TermKind::owlClass});
    }
    for (const char* p : {"refersTo", "isResponseTo", "isUpdateOf", "hasCommentAuthor"}) {
      t.push_back({p, TermKind::objectProperty});
    }
    t.push_back({"hasCommentText", TermKind::datatypeProperty});
    t.push_back({"hasImpact", TermKind::datatypeProperty});
    return t;
  }();
  return kTerms;
}

std::map<std::string, std::string> standard_prefixes(const RdfOptions& options) {
  return {
      {"dcterms", std::string(rdf::kDcterms)},
      {"doco", std::string(kDoco)},
      {"fabio", std::string(kFabio)},
      {"foaf", std::string(kFoaf)},
      {"lf", options.vocabNamespace},
      {"owl", std::string(rdf::kOwl)},
      {"rdf", std::string(rdf::kRdf)},
      {"rdfs", std::string(rdf::kRdfs)},
      {"schema", std::string(kSchema)},
      {"xsd", std::string(rdf::kXsd)},
  };
}

std::vector<Triple> node_triples(const NodeRecord& record, const RdfOptions& options) {
  const Terms v(options);
  const Term subject = iri(id_of(record));
  std::vector<Triple> out;
  auto add = [&](const std::string& predicate, Term object) {
    out.push_back({subject, Term::iri(predicate), std::move(object)});
  };
  auto add_type = [&](std::string_view local) { add(v.type, Term::iri(v.lf(local))); };

  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SnippetNode>) {
          add(v.type, Term::iri(level_class_iri(r.level)));
          add(v.value, Term::literal(r.text));
          add(v.position, Term::literal(std::to_string(r.order), v.xsd_integer));
          if (r.parent) add(v.is_part_of, iri(*r.parent));
          if (r.previousVersion) add(v.lf("isUpdateOf"), iri(*r.previousVersion));
          if (!r.subtype.empty()) add(v.dc_type, Term::literal(r.subtype));
          add(v.created, timestamp(r.createdAt, v));
        } else if constexpr (std::is_same_v<T, ReviewComment>) {
          add_type("ReviewComment");
          if (r.aspect) add_type(aspect_class(*r.aspect));
          if (r.polarity) add_type(polarity_class(*r.polarity));
          if (r.actionNeeded) add_type(action_class(*r.actionNeeded));
          add(v.lf("refersTo"), iri(r.refersTo));
          add(v.lf("hasCommentText"), Term::literal(r.text));
          add(v.lf("hasCommentAuthor"), iri(r.author));
          if (r.impact) {
            add(v.lf("hasImpact"), Term::literal(std::to_string(r.impact->value()), v.xsd_integer));
          }
          if (r.previousVersion) add(v.lf("isUpdateOf"), iri(*r.previousVersion));
          add(v.created, timestamp(r.createdAt, v));
        } else if constexpr (std::is_same_v<T, ResponseComment>) {
          add_type("ResponseComment");
          add_type(agreement_class(r.agreement));
          add(v.lf("isResponseTo"), iri(r.isResponseTo));
          add(v.lf("hasCommentText"), Term::literal(r.text));
          add(v.lf("hasCommentAuthor"), iri(r.author));
          add(v.created, timestamp(r.createdAt, v));
        } else if constexpr (std::is_same_v<T, ActionCheckComment>) {
          add_type("ActionCheckComment");
          add_type(status_class(r.status));
          add(v.lf("isResponseTo"), iri(r.isResponseTo));
          add(v.lf("hasCommentText"), Term::literal(r.text));
          add(v.lf("hasCommentAuthor"), iri(r.author));
          add(v.created, timestamp(r.createdAt, v));
        } else {
          add(v.type, Term::iri(v.agent_class));
          add(v.label, Term::literal(r.displayName));
          add(v.dc_type, Term::literal(std::string(to_string(r.role))));
        }
      },
      record);
  return out;
}

std::string export_turtle(const StoreView& view, const ExportOptions& options) {
  std::vector<Triple> triples;
  for (const auto* node : view.all()) {
    if (options.subset && !options.subset->contains(id_of(*node))) continue;
    auto t = node_triples(*node, options.rdf);
    triples.insert(triples.end(), std::make_move_iterator(t.begin()),
                   std::make_move_iterator(t.end()));
  }
  return rdf::write_turtle(standard_prefixes(options.rdf), std::move(triples));
}

// ---------------------------------------------------------------------------
// Import

namespace {

struct SubjectData {
  std::vector<const Term*> types;
  std::multimap<std::string, const Term*> values;  // predicate -> object
};

class RecordBuilder {
 public:
  RecordBuilder(const Terms& v, const std::string& subject, const SubjectData& data,
                std::vector<Violation>& violations, std::vector<std::string>& warnings)
      : v_(v), subject_(subject), data_(data), violations_(violations), warnings_(warnings) {}

  std::optional<NodeRecord> build() {
    std::vector<std::string> lf_types;
    std::optional<GranularityLevel> level;
    bool agent = false;
    for (const Term* t : data_.types) {
      if (!t->is_iri()) {
        violate("type-literal", "rdf:type object must be an IRI");
        continue;
      }
      if (t->value.starts_with(v_.ns)) {
        const auto local = t->value.substr(v_.ns.size());
        const auto& vocab = vocabulary();
        const bool known = std::any_of(vocab.begin(), vocab.end(), [&](const auto& term) {
          return term.localName == local && term.termKind == TermKind::owlClass;
        });
        if (known) {
          lf_types.push_back(local);
        } else {
          warnings_.push_back("unknown term <" + t->value + "> on <" + subject_ + ">");
        }
        continue;
      }
      bool matched = false;
      for (auto l : kLevels) {
        if (t->value == level_class_iri(l)) {
          if (level && *level != l) violate("level-conflict", "snippet typed with two levels");
          level = l;
          matched = true;
        }
      }
      if (t->value == v_.agent_class) {
        agent = true;
        matched = true;
      }
      if (!matched) warnings_.push_back("unknown type <" + t->value + "> on <" + subject_ + ">");
    }

    auto has = [&](std::string_view local) {
      return std::find(lf_types.begin(), lf_types.end(), local) != lf_types.end();
    };
    const int kinds = has("ReviewComment") + has("ResponseComment") +
                      has("ActionCheckComment") + (level ? 1 : 0) + (agent ? 1 : 0);
    if (kinds == 0) {
      if (!lf_types.empty()) {
        violate("kind-missing", "dimension classes without a comment class");
      } else {
        warnings_.push_back("skipped untyped subject <" + subject_ + ">");
      }
      return std::nullopt;
    }
    if (kinds > 1) {
      violate("kind-conflict", "subject typed as more than one node kind");
      return std::nullopt;
    }
    auto id = Iri::try_parse(subject_);
    if (!id) {
      violate("invalid-iri", "subject is not an absolute IRI");
      return std::nullopt;
    }

    if (level) return snippet(*id, *level, lf_types);
    if (agent) return agent_record(*id, lf_types);
    if (has("ReviewComment")) return review(*id, lf_types);
    if (has("ResponseComment")) return response(*id, lf_types);
    return check(*id, lf_types);
  }

  void check_predicates(const std::set<std::string>& allowed) {
    for (const auto& [predicate, object] : data_.values) {
      (void)object;
      if (!allowed.contains(predicate)) {
        warnings_.push_back("unknown term <" + predicate + "> on <" + subject_ + ">");
      }
    }
  }

 private:
  void violate(std::string code, const std::string& message) {
    violations_.push_back({std::move(code), "<" + subject_ + ">: " + message});
  }

  void no_lf_types(const std::vector<std::string>& lf_types) {
    if (!lf_types.empty()) violate("kind-conflict", "vocabulary class on a non-comment node");
  }

  // Exactly one object for `predicate`, or none when optional.
  const Term* single(const std::string& predicate, bool required) {
    const auto [first, last] = data_.values.equal_range(predicate);
    const auto n = std::distance(first, last);
    if (n == 0) {
      if (required) violate("missing-property", "missing <" + predicate + ">");
      return nullptr;
    }
    if (n > 1) {
      violate("duplicate-property", "more than one <" + predicate + ">");
      return nullptr;
    }
    return first->second;
  }

  std::optional<Iri> iri_value(const std::string& predicate, bool required) {
    const Term* t = single(predicate, required);
    if (!t) return std::nullopt;
    auto parsed = t->is_iri() ? Iri::try_parse(t->value) : std::nullopt;
    if (!parsed) violate("not-an-iri", "<" + predicate + "> must be an absolute IRI");
    return parsed;
  }

  std::optional<std::string> string_value(const std::string& predicate, bool required) {
    const Term* t = single(predicate, required);
    if (!t) return std::nullopt;
    if (!t->is_literal() || !t->datatype.empty() || !t->language.empty()) {
      violate("not-a-string", "<" + predicate + "> must be a plain string literal");
      return std::nullopt;
    }
    return t->value;
  }

  std::optional<long long> integer_value(const std::string& predicate, bool required) {
    const Term* t = single(predicate, required);
    if (!t) return std::nullopt;
    if (!t->is_literal() || t->datatype != v_.xsd_integer) {
      violate("not-an-integer", "<" + predicate + "> must be an xsd:integer literal");
      return std::nullopt;
    }
    try {
      return std::stoll(t->value);
    } catch (const std::exception&) {
      violate("not-an-integer", "<" + predicate + "> is out of range");
      return std::nullopt;
    }
  }

  Timestamp created() {
    const Term* t = single(v_.created, true);
    if (!t) return {};
    std::optional<Timestamp> ts;
    if (t->is_literal() && t->datatype == v_.xsd_datetime) ts = parse_timestamp(t->value);
    if (!ts) {
      violate("bad-timestamp", "dcterms:created must be a UTC xsd:dateTime");
      return {};
    }
    return *ts;
  }

  template <typename E, std::size_t N>
  std::optional<E> dimension(const std::vector<std::string>& lf_types,
                             const std::array<E, N>& values, std::string_view (*name)(E),
                             const char* dim, bool required) {
    std::optional<E> found;
    int count = 0;
    for (const auto& t : lf_types) {
      if (auto e = enum_for_class(t, values, name)) {
        found = e;
        ++count;
      }
    }
    if (count > 1) {
      violate("dimension-conflict", std::string("more than one ") + dim + " class");
      return std::nullopt;
    }
    if (count == 0 && required) violate("dimension-missing", std::string("no ") + dim + " class");
    return found;
  }

  void only_classes(const std::vector<std::string>& lf_types,
                    std::initializer_list<std::string_view> base) {
    for (const auto& t : lf_types) {
      if (std::find(base.begin(), base.end(), t) != base.end()) continue;
      violate("kind-conflict", "class lf:" + t + " does not apply to this comment kind");
    }
  }

  NodeRecord snippet(const Iri& id, GranularityLevel level,
                     const std::vector<std::string>& lf_types) {
    no_lf_types(lf_types);
    check_predicates({v_.type, v_.value, v_.position, v_.is_part_of, v_.lf("isUpdateOf"),
                      v_.dc_type, v_.created});
    SnippetNode n;
    n.id = id;
    n.level = level;
    n.text = string_value(v_.value, true).value_or("");
    const auto order = integer_value(v_.position, true).value_or(0);
    if (order < 0 || order > 0xffffffffLL) violate("bad-position", "position out of range");
    n.order = static_cast<std::uint32_t>(order);
    n.parent = iri_value(v_.is_part_of, false);
    n.previousVersion = iri_value(v_.lf("isUpdateOf"), false);
    n.subtype = string_value(v_.dc_type, false).value_or("");
    n.createdAt = created();
    return n;
  }

  NodeRecord agent_record(const Iri& id, const std::vector<std::string>& lf_types) {
    no_lf_types(lf_types);
    check_predicates({v_.type, v_.label, v_.dc_type});
    Agent a;
    a.id = id;
    a.displayName = string_value(v_.label, true).value_or("");
    const auto role = string_value(v_.dc_type, true);
    if (role) {
      if (auto r = parse_agent_role(*role)) {
        a.role = *r;
      } else {
        violate("bad-role", "unknown agent role '" + *role + "'");
      }
    }
    return a;
  }

  NodeRecord review(const Iri& id, const std::vector<std::string>& lf_types) {
    check_predicates({v_.type, v_.lf("refersTo"), v_.lf("hasCommentText"),
                      v_.lf("hasCommentAuthor"), v_.lf("hasImpact"), v_.lf("isUpdateOf"),
                      v_.created});
    std::vector<std::string> base{"ReviewComment"};
    for (auto a : kAspects) base.emplace_back(aspect_class(a));
    for (auto p : kPolarities) base.emplace_back(polarity_class(p));
    for (auto a : kActions) base.emplace_back(action_class(a));
    for (const auto& t : lf_types) {
      if (std::find(base.begin(), base.end(), t) == base.end()) {
        violate("kind-conflict", "class lf:" + t + " does not apply to a review comment");
      }
    }
    ReviewComment c;
    c.id = id;
    c.aspect = dimension(lf_types, kAspects, aspect_class, "aspect", true);
    c.polarity = dimension(lf_types, kPolarities, polarity_class, "polarity", true);
    c.actionNeeded = dimension(lf_types, kActions, action_class, "action-needed", true);
    c.refersTo = iri_value(v_.lf("refersTo"), true).value_or(Iri{});
    c.text = string_value(v_.lf("hasCommentText"), true).value_or("");
    c.author = iri_value(v_.lf("hasCommentAuthor"), true).value_or(Iri{});
    if (auto impact = integer_value(v_.lf("hasImpact"), true)) {
      c.impact = ImpactScore(static_cast<int>(std::clamp<long long>(*impact, -1000, 1000)));
      if (!c.impact->valid()) violate("impact-out-of-range", "impact out of range");
    }
    c.previousVersion = iri_value(v_.lf("isUpdateOf"), false);
    c.createdAt = created();
    return c;
  }

  NodeRecord response(const Iri& id, const std::vector<std::string>& lf_types) {
    check_predicates({v_.type, v_.lf("isResponseTo"), v_.lf("hasCommentText"),
                      v_.lf("hasCommentAuthor"), v_.created});
    only_classes(lf_types, {"ResponseComment", "AgreementComment", "PartialAgreementComment",
                            "DisagreementComment"});
    ResponseComment r;
    r.id = id;
    r.agreement = dimension(lf_types, kAgreements, agreement_class, "agreement", true)
                      .value_or(Agreement::agree);
    r.isResponseTo = iri_value(v_.lf("isResponseTo"), true).value_or(Iri{});
    r.text = string_value(v_.lf("hasCommentText"), true).value_or("");
    r.author = iri_value(v_.lf("hasCommentAuthor"), true).value_or(Iri{});
    r.createdAt = created();
    return r;
  }

  NodeRecord check(const Iri& id, const std::vector<std::string>& lf_types) {
    check_predicates({v_.type, v_.lf("isResponseTo"), v_.lf("hasCommentText"),
                      v_.lf("hasCommentAuthor"), v_.created});
    only_classes(lf_types, {"ActionCheckComment", "PointAddressedComment",
                            "PointPartiallyAddressedComment", "PointNotAddressedComment"});
    ActionCheckComment c;
    c.id = id;
    c.status = dimension(lf_types, kStatuses, status_class, "status", true)
                   .value_or(CheckStatus::addressed);
    c.isResponseTo = iri_value(v_.lf("isResponseTo"), true).value_or(Iri{});
    c.text = string_value(v_.lf("hasCommentText"), true).value_or("");
    c.author = iri_value(v_.lf("hasCommentAuthor"), true).value_or(Iri{});
    c.createdAt = created();
    return c;
  }

  const Terms& v_;
  const std::string& subject_;
  const SubjectData& data_;
  std::vector<Violation>& violations_;
  std::vector<std::string>& warnings_;
};

}  // namespace

ImportResult import_turtle(std::string_view text, const RdfOptions& options) {
  const auto doc = rdf::parse_turtle(text);
  const Terms v(options);

  std::map<std::string, SubjectData> subjects;
  std::vector<Violation> violations;
  ImportResult result;
  for (const auto& t : doc.triples) {
    if (t.subject.kind != Term::Kind::iri) {
      result.warnings.push_back("skipped blank-node subject _:" + t.subject.value);
      continue;
    }
    auto& data = subjects[t.subject.value];
    if (t.predicate.value == v.type) {
      data.types.push_back(&t.object);
    } else {
      data.values.emplace(t.predicate.value, &t.object);
    }
  }

  for (const auto& [subject, data] : subjects) {
    RecordBuilder builder(v, subject, data, violations, result.warnings);
    auto record = builder.build();
    if (!record) continue;
    const auto digest = sha256_hex(canonical_payload(*record));
    const auto kind = kind_of(*record);
    Iri id = id_of(*record);
    result.envelopes.push_back(NodeEnvelope{std::move(id), kind, std::move(*record), digest});
  }
  if (!violations.empty()) {
    std::string detail = "document violates the model: " + violations.front().message;
    throw Error(ErrorCode::kModelViolation, std::move(detail), std::move(violations));
  }
  return result;
}

std::string emit_ontology(const RdfOptions& options) {
  const Terms v(options);
  std::vector<Triple> triples;
  auto add = [&](const std::string& s, const std::string& p, Term o) {
    triples.push_back({Term::iri(s), Term::iri(p), std::move(o)});
  };
  std::string ontology = options.vocabNamespace;
  while (!ontology.empty() && (ontology.back() == '#' || ontology.back() == '/')) {
    ontology.pop_back();
  }
  add(ontology, v.type, Term::iri(cat(rdf::kOwl, "Ontology")));
  add(ontology, v.label, Term::literal("Linkflows model for reviewing"));

  auto parent_of = [](std::string_view cls) -> std::string_view {
    if (cls == "ReviewComment" || cls == "ResponseComment" || cls == "ActionCheckComment") {
      return "Comment";
    }
    for (auto a : kAgreements) {
      if (agreement_class(a) == cls) return "ResponseComment";
    }
    for (auto s : kStatuses) {
      if (status_class(s) == cls) return "ActionCheckComment";
    }
    return "ReviewComment";
  };

  for (const auto& term : vocabulary()) {
    const auto s = v.lf(term.localName);
    switch (term.termKind) {
      case TermKind::owlClass:
        add(s, v.type, Term::iri(cat(rdf::kOwl, "Class")));
        add(s, v.sub_class_of, Term::iri(v.lf(parent_of(term.localName))));
        break;
      case TermKind::objectProperty:
        add(s, v.type, Term::iri(cat(rdf::kOwl, "ObjectProperty")));
        break;
      case TermKind::datatypeProperty:
        add(s, v.type, Term::iri(cat(rdf::kOwl, "DatatypeProperty")));
        add(s, v.range,
            Term::iri(term.localName == "hasImpact" ? v.xsd_integer : v.xsd_string));
        break;
    }
    add(s, v.label, Term::literal(term.localName));
  }
  return rdf::write_turtle(standard_prefixes(options), std::move(triples));
}

std::vector<VocabularyTerm> import_schema(std::string_view text, const RdfOptions& options) {
  const auto doc = rdf::parse_turtle(text);
  const Terms v(options);
  const std::map<std::string, TermKind> declarations{
      {cat(rdf::kOwl, "Class"), TermKind::owlClass},
      {cat(rdf::kOwl, "ObjectProperty"), TermKind::objectProperty},
      {cat(rdf::kOwl, "DatatypeProperty"), TermKind::datatypeProperty},
  };
  std::set<VocabularyTerm> terms;
  for (const auto& t : doc.triples) {
    if (t.predicate.value != v.type || !t.subject.is_iri() ||
        !t.subject.value.starts_with(v.ns)) {
      continue;
    }
    if (auto it = declarations.find(t.object.value); it != declarations.end()) {
      terms.insert({t.subject.value.substr(v.ns.size()), it->second});
    }
  }
  return {terms.begin(), terms.end()};
}

}  // namespace linkflows
