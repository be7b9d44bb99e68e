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

// linkflows: command line front end for the review-graph store, analytics
// and sentiment baseline.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "linkflows/annotations.hpp"
#include "linkflows/envelope_json.hpp"
#include "linkflows/ingest.hpp"
#include "linkflows/rdf_io.hpp"
#include "linkflows/reports.hpp"
#include "linkflows/sentiment.hpp"
#include "linkflows/server.hpp"
#include "linkflows/service.hpp"
#include "linkflows/store.hpp"

using nlohmann::json;
using namespace linkflows;

namespace {

struct Globals {
  std::string store;
  std::string base = "http://localhost:8080/nodes/";
  std::optional<std::uint64_t> seed;
  std::string outFormat = "table";

  bool json_lines() const { return outFormat == "json-lines"; }
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void require_store_path(const Globals& g) {
  if (g.store.empty()) throw Error(ErrorCode::kInvalidArgument, "no store given (--store or LINKFLOWS_STORE)");
}

GraphStore open_store(const Globals& g) {
  require_store_path(g);
  return GraphStore::open(g.store);
}

GraphStore open_or_create_store(const Globals& g) {
  require_store_path(g);
  return GraphStore::open_or_create(g.store, g.base);
}

void emit(const Globals& g, const json& report) {
  if (g.json_lines()) {
    std::cout << report.dump() << '\n';
  } else {
    std::cout << reports::render_table(report);
  }
}

void emit_id(const Globals& g, const service::WriteOutcome& out) {
  if (g.json_lines()) {
    std::cout << out.body.dump() << '\n';
  } else {
    std::cout << out.body["id"].get<std::string>() << '\n';
  }
}

// Option values only end up in a request body when the user set them.
void put_if(json& body, const char* key, const std::string& value) {
  if (!value.empty()) body[key] = value;
}

std::vector<std::pair<std::string, std::string>> read_items(const std::string& path) {
  std::vector<std::pair<std::string, std::string>> items;
  std::istringstream in(read_input(path));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      items.emplace_back("line-" + std::to_string(n), line);
    } else {
      items.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
  }
  return items;
}

json prediction_json(const sentiment::PolarityPrediction& p) {
  json evidence = json::array();
  for (const auto& e : p.evidence) evidence.push_back({{"term", e.term}, {"contribution", e.contribution}});
  return {{"item", p.item},
          {"rawScore", p.rawScore},
          {"label", to_string(p.label)},
          {"evidence", evidence},
          {"warning", p.warning}};
}

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

int report_failure(const Error& e) {
  json problem{{"status", http_status(e.code())},
               {"code", to_string(e.code())},
               {"detail", e.what()},
               {"violations", json::array()}};
  for (const auto& v : e.violations()) problem["violations"].push_back({{"code", v.code}, {"message", v.message}});
  std::cerr << problem.dump(2) << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linkflows review graph: store, Turtle, analytics and sentiment baseline"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--store", g.store, "Store directory")->envname("LINKFLOWS_STORE");
  app.add_option("--base", g.base, "Base namespace for minted IRIs")
      ->envname("LINKFLOWS_BASE")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized reports");
  app.add_option("--out-format", g.outFormat, "Output format")
      ->check(CLI::IsMember({"table", "json-lines"}))
      ->capture_default_str();

  // ingest ------------------------------------------------------------------
  auto* ingest = app.add_subcommand("ingest", "Segment an article into snippets, or split a review");
  std::string ingest_file;
  bool as_review = false;
  ingest->add_option("file", ingest_file, "Text file ('-' or omitted: stdin)");
  ingest->add_flag("--review", as_review, "Split review text into single-point snippets instead");

  // comment / respond / check -------------------------------------------------
  auto* comment = app.add_subcommand("comment", "Attach a classified review comment to a snippet");
  std::string c_target, c_text, c_aspect, c_polarity, c_action, c_impact, c_author, c_prev;
  comment->add_option("--target", c_target, "Snippet IRI")->required();
  comment->add_option("--text", c_text, "Comment text")->required();
  comment->add_option("--aspect", c_aspect, "syntax|style|content");
  comment->add_option("--polarity", c_polarity, "negative|neutral|positive");
  comment->add_option("--action-needed", c_action, "actionNeeded|suggestion|noActionNeeded");
  comment->add_option("--impact", c_impact, "1..5");
  comment->add_option("--author", c_author, "Agent IRI or display name")->required();
  comment->add_option("--previous-version", c_prev, "IRI of the comment this one updates");

  auto* respond = app.add_subcommand("respond", "Author response to a comment");
  std::string r_to, r_text, r_agreement, r_author;
  respond->add_option("--to", r_to, "Comment IRI")->required();
  respond->add_option("--text", r_text, "Response text")->required();
  respond->add_option("--agreement", r_agreement, "agree|partiallyAgree|disagree")->required();
  respond->add_option("--author", r_author, "Agent IRI or display name")->required();

  auto* check = app.add_subcommand("check", "Record whether a point was addressed");
  std::string k_to, k_text, k_status, k_author;
  check->add_option("--to", k_to, "Comment IRI")->required();
  check->add_option("--text", k_text, "Check text")->required();
  check->add_option("--status", k_status, "addressed|partiallyAddressed|notAddressed")->required();
  check->add_option("--author", k_author, "Agent IRI or display name")->required();

  // export / import -----------------------------------------------------------
  auto* exp = app.add_subcommand("export", "Write the store (or the vocabulary) as Turtle");
  std::string export_out;
  bool export_ontology = false;
  RdfOptions rdf_options;
  exp->add_option("--out", export_out, "Output file (default stdout)");
  exp->add_flag("--ontology", export_ontology, "Emit the vocabulary declarations instead");
  exp->add_option("--vocab", rdf_options.vocabNamespace, "Vocabulary namespace")->capture_default_str();

  auto* imp = app.add_subcommand("import", "Load Turtle into a store");
  std::string import_file;
  bool import_schema_only = false;
  imp->add_option("file", import_file, "Turtle file ('-' or omitted: stdin)");
  imp->add_option("--into", g.store, "Target store directory (same as --store)");
  imp->add_flag("--schema", import_schema_only, "List the vocabulary terms declared in the file");
  imp->add_option("--vocab", rdf_options.vocabNamespace, "Vocabulary namespace")->capture_default_str();

  // analyze -------------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "Run an analytics report");
  std::string metric, annotations_file;
  std::map<std::string, std::string> ap;
  std::vector<std::string> extra_params;
  analyze->add_option("metric", metric, "Report name")->required()->check(CLI::IsMember(reports::metrics()));
  analyze->add_option("--annotations", annotations_file, "Annotation table (TSV)");
  for (const auto& [flag, key] : std::vector<std::pair<std::string, std::string>>{
           {"--dimension", "dimension"}, {"--group", "group"},         {"--group-a", "groupA"},
           {"--group-b", "groupB"},     {"--reference", "reference"}, {"--size", "size"},
           {"--trials", "trials"},      {"--method", "method"},       {"--differences", "differences"},
           {"--predicted", "predicted"}, {"--truth", "truth"}}) {
    analyze->add_option(flag, ap[key], "Report parameter '" + key + "'");
  }
  analyze->add_option("-p,--param", extra_params, "Extra parameter key=value");

  // sentiment -----------------------------------------------------------------
  auto* sent = app.add_subcommand("sentiment", "Lexicon-based polarity baseline");
  sent->require_subcommand(1);
  sent->fallthrough();
  std::string lexicon_file, sent_input, truth_file;
  sentiment::SentimentConfig sent_config;
  auto* classify = sent->add_subcommand("classify", "Classify item<TAB>text lines (or the store's comments)");
  auto* evaluate = sent->add_subcommand("evaluate", "Compare predictions with reviewer polarity");
  for (auto* sub : {classify, evaluate}) {
    sub->add_option("--lexicon", lexicon_file, "Lexicon file")->required();
    sub->add_option("--input", sent_input, "item<TAB>text lines; omitted: review comments in the store");
    sub->add_option("--epsilon", sent_config.epsilon, "Neutral band half-width")->capture_default_str();
  }
  evaluate->add_option("--truth", truth_file, "item<TAB>polarity lines (required with --input)");

  // sample --------------------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "Pick k lines by smallest SHA-256");
  std::size_t sample_k = 0;
  std::string sample_input;
  sample->add_option("--k", sample_k, "Number of items")->required();
  sample->add_option("--input", sample_input, "One item per line ('-' or omitted: stdin)");

  // serve ---------------------------------------------------------------------
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  std::string bind_address = "127.0.0.1:8080";
  bool serve_init = false, read_only = false;
  std::string serve_annotations, ui_dir;
  serve->add_option("--bind", bind_address, "host:port")->capture_default_str();
  serve->add_flag("--init", serve_init, "Create the store when missing");
  serve->add_flag("--read-only", read_only, "Reject all writes with 403");
  serve->add_option("--annotations", serve_annotations, "Annotation table for analytics endpoints");
  serve->add_option("--ui", ui_dir, "Directory of static UI assets served at /");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const auto text = read_input(ingest_file);
      if (as_review) {
        for (const auto& s : split_review(text)) {
          json row{{"index", s.index}, {"startLine", s.startLine}, {"endLine", s.endLine}, {"text", s.text}};
          if (s.suggestedTarget) {
            row["suggestedTarget"] = {{"level", to_string(s.suggestedTarget->level)},
                                      {"hint", s.suggestedTarget->hint}};
          }
          if (g.json_lines()) {
            std::cout << row.dump() << '\n';
          } else {
            std::cout << s.index << '\t' << json(s.text).dump() << '\n';
          }
        }
        return 0;
      }
      auto store = open_or_create_store(g);
      const auto out = service::ingest_article(store, text, now_utc());
      if (g.json_lines()) {
        std::cout << out.body.dump() << '\n';
      } else {
        for (const char* level : {"article", "section", "paragraph"}) {
          for (const auto& id : out.body[level]) std::cout << level << '\t' << id.get<std::string>() << '\n';
        }
      }
      return 0;
    }

    if (*comment) {
      auto store = open_or_create_store(g);
      json body{{"refersTo", c_target}, {"text", c_text}, {"author", c_author}};
      put_if(body, "aspect", c_aspect);
      put_if(body, "polarity", c_polarity);
      put_if(body, "actionNeeded", c_action);
      put_if(body, "impact", c_impact);
      put_if(body, "previousVersion", c_prev);
      emit_id(g, service::add_comment(store, body, now_utc()));
      return 0;
    }
    if (*respond) {
      auto store = open_or_create_store(g);
      json body{{"isResponseTo", r_to}, {"text", r_text}, {"agreement", r_agreement}, {"author", r_author}};
      emit_id(g, service::add_response(store, body, now_utc()));
      return 0;
    }
    if (*check) {
      auto store = open_or_create_store(g);
      json body{{"isResponseTo", k_to}, {"text", k_text}, {"status", k_status}, {"author", k_author}};
      emit_id(g, service::add_check(store, body, now_utc()));
      return 0;
    }

    if (*exp) {
      std::string turtle;
      if (export_ontology) {
        turtle = emit_ontology(rdf_options);
      } else {
        auto store = open_store(g);
        ExportOptions opts;
        opts.rdf = rdf_options;
        turtle = export_turtle(*store.snapshot(), opts);
      }
      if (export_out.empty()) {
        std::cout << turtle;
      } else {
        std::ofstream out(export_out, std::ios::binary);
        if (!(out << turtle)) throw Error(ErrorCode::kIo, "cannot write " + export_out);
      }
      return 0;
    }

    if (*imp) {
      const auto text = read_input(import_file);
      if (import_schema_only) {
        for (const auto& t : import_schema(text, rdf_options)) {
          const char* kind = t.termKind == TermKind::owlClass         ? "class"
                             : t.termKind == TermKind::objectProperty ? "objectProperty"
                                                                      : "datatypeProperty";
          std::cout << t.localName << '\t' << kind << '\n';
        }
        return 0;
      }
      const auto result = import_turtle(text, rdf_options);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
      auto store = open_or_create_store(g);
      const auto put = store.put_batch(result.envelopes);
      emit(g, json{{"imported", result.envelopes.size()},
                   {"added", put.added},
                   {"warnings", result.warnings.size()}});
      return 0;
    }

    if (*analyze) {
      reports::Params params;
      for (const auto& [k, v] : ap) {
        if (!v.empty()) params[k] = v;
      }
      for (const auto& kv : extra_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "expected key=value: " + kv);
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      if (g.seed) params["seed"] = std::to_string(*g.seed);

      std::optional<GraphStore> store;
      std::shared_ptr<const Snapshot> snap;
      if (!g.store.empty() && GraphStore::exists(g.store)) {
        store.emplace(GraphStore::open(g.store));
        snap = store->snapshot();
      }
      std::optional<std::vector<analytics::AnnotationRecord>> records;
      if (!annotations_file.empty()) records = analytics::load_annotations(annotations_file);
      reports::Context ctx{snap.get(), records ? &*records : nullptr};
      emit(g, reports::run_analysis(metric, params, ctx));
      return 0;
    }

    if (*sent) {
      const auto lexicon = sentiment::load_lexicon(lexicon_file);
      std::vector<std::pair<std::string, std::string>> items;
      std::map<std::string, Polarity> truth;
      if (!sent_input.empty()) {
        items = read_items(sent_input);
        if (*evaluate) {
          if (truth_file.empty()) throw Error(ErrorCode::kInvalidArgument, "--truth is required with --input");
          for (const auto& [item, label] : read_items(truth_file)) {
            auto p = parse_polarity(label);
            if (!p) throw Error(ErrorCode::kInvalidArgument, "bad polarity '" + label + "' for " + item);
            truth[item] = *p;
          }
        }
      } else {
        auto store = open_store(g);
        for (const auto& env : store.query(QueryFilter{.kind = NodeKind::reviewComment})) {
          const auto& c = std::get<ReviewComment>(env.payload);
          items.emplace_back(c.id.str(), c.text);
          if (c.polarity) truth[c.id.str()] = *c.polarity;
        }
      }
      const auto predictions = sentiment::batch_classify(items, lexicon, sent_config);
      if (*classify) {
        for (const auto& p : predictions) {
          if (g.json_lines()) {
            std::cout << prediction_json(p).dump() << '\n';
          } else {
            char score[32];
            std::snprintf(score, sizeof score, "%.4f", p.rawScore);
            std::cout << p.item << '\t' << to_string(p.label) << '\t' << score << '\n';
          }
        }
        if (!g.json_lines()) std::cerr << "note: " << sentiment::kMethodologicalWarning << '\n';
        return 0;
      }
      const auto eval = sentiment::evaluate_against_ground_truth(predictions, truth);
      json confusion = json::object();
      for (auto t : {Polarity::negative, Polarity::neutral, Polarity::positive}) {
        for (auto p : {Polarity::negative, Polarity::neutral, Polarity::positive}) {
          confusion[std::string(to_string(t))][std::string(to_string(p))] =
              eval.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
        }
      }
      emit(g, json{{"metric", "sentiment-accuracy"},
                   {"accuracy", eval.accuracy.accuracy},
                   {"items", eval.accuracy.items},
                   {"correct", eval.accuracy.correct},
                   {"epsilon", sent_config.epsilon},
                   {"confusion", confusion},
                   {"warning", sentiment::kMethodologicalWarning}});
      return 0;
    }

    if (*sample) {
      std::vector<std::string> lines;
      std::istringstream in(read_input(sample_input));
      for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
      }
      for (const auto& s : sample_smallest_hash(std::move(lines), sample_k)) std::cout << s << '\n';
      return 0;
    }

    if (*serve) {
      require_store_path(g);
      if (!serve_init && !GraphStore::exists(g.store)) {
        throw Error(ErrorCode::kNotFound, "no store at " + g.store + " (use --init to create one)");
      }
      auto store = serve_init ? GraphStore::open_or_create(g.store, g.base) : GraphStore::open(g.store);
      ApiConfig config;
      const auto colon = bind_address.rfind(':');
      if (colon == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "--bind expects host:port");
      config.host = bind_address.substr(0, colon);
      config.port = std::stoi(bind_address.substr(colon + 1));
      config.readOnly = read_only;
      if (!serve_annotations.empty()) config.annotationsPath = serve_annotations;
      if (!ui_dir.empty()) config.uiDir = ui_dir;

      ApiServer server(store, config);
      const int port = server.bind();
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::thread watcher([&] {
        while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
        server.stop();
      });
      std::cerr << "serving " << store.base_namespace() << " on http://" << config.host << ':' << port
                << (read_only ? " (read-only)" : "") << '\n';
      server.serve();
      g_stop = true;
      watcher.join();
      return 0;
    }
  } catch (const Error& e) {
    return report_failure(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
