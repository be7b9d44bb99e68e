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

#include "linkflows/server.hpp"

#include <httplib.h>

#include <json.hpp>

#include "linkflows/annotations.hpp"
#include "linkflows/envelope_json.hpp"
#include "linkflows/rdf_io.hpp"
#include "linkflows/reports.hpp"
#include "linkflows/service.hpp"

namespace linkflows {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownId:
    case ErrorCode::kReferenceUnresolved:
      return 404;
    case ErrorCode::kCollision:
      return 409;
    case ErrorCode::kReadOnly:
      return 403;
    case ErrorCode::kEmptyOverlap:
    case ErrorCode::kTooFewRaters:
    case ErrorCode::kAllZeroDifferences:
    case ErrorCode::kEmptyStore:
    case ErrorCode::kUnequalRaterCounts:
    case ErrorCode::kDegenerate:
    case ErrorCode::kCycleDetected:
      return 422;
    case ErrorCode::kIntegrity:
    case ErrorCode::kIo:
      return 500;
    default:
      return 400;
  }
}

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kTurtle = "text/turtle";
constexpr const char* kProblem = "application/problem+json";

void problem(httplib::Response& res, int status, std::string_view code, const std::string& detail,
             const std::vector<Violation>& violations = {}) {
  json body{{"status", status}, {"code", code}, {"detail", detail}, {"violations", json::array()}};
  for (const auto& v : violations) body["violations"].push_back({{"code", v.code}, {"message", v.message}});
  res.status = status;
  res.set_content(body.dump(), kProblem);
}

enum class Format { json, turtle, unacceptable };

// Highest q wins; on a tie the more specific range, then JSON.
Format negotiate(const httplib::Request& req) {
  const auto accept = req.get_header_value("Accept");
  if (accept.find_first_not_of(" \t") == std::string::npos) return Format::json;
  // [q, specificity] per format
  std::pair<double, int> best[2] = {{0, -1}, {0, -1}};
  std::size_t pos = 0;
  while (pos <= accept.size()) {
    auto comma = accept.find(',', pos);
    if (comma == std::string::npos) comma = accept.size();
    std::string range = accept.substr(pos, comma - pos);
    pos = comma + 1;
    double q = 1;
    if (auto semi = range.find(';'); semi != std::string::npos) {
      auto qp = range.find("q=", semi);
      if (qp != std::string::npos) q = std::atof(range.c_str() + qp + 2);
      range.resize(semi);
    }
    range.erase(0, range.find_first_not_of(" \t"));
    range.erase(range.find_last_not_of(" \t") + 1);
    auto offer = [&](int f, int specificity) {
      if (specificity > best[f].second) best[f] = {q, specificity};
    };
    if (range == "*/*") {
      offer(0, 0);
      offer(1, 0);
    } else if (range == "application/*") {
      offer(0, 1);
    } else if (range == "text/*") {
      offer(1, 1);
    } else if (range == kJson) {
      offer(0, 2);
    } else if (range == kTurtle) {
      offer(1, 2);
    }
  }
  const double qj = best[0].first, qt = best[1].first;
  if (qj <= 0 && qt <= 0) return Format::unacceptable;
  return qt > qj ? Format::turtle : Format::json;
}

}  // namespace

struct ApiServer::Impl {
  GraphStore& store;
  ApiConfig config;
  std::optional<std::vector<analytics::AnnotationRecord>> annotations;
  httplib::Server http;

  Impl(GraphStore& s, ApiConfig c) : store(s), config(std::move(c)) {
    if (!config.baseNamespace.empty() && config.baseNamespace != store.base_namespace()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "base namespace " + config.baseNamespace + " does not match the store's " +
                      store.base_namespace());
    }
    if (config.annotationsPath) annotations = analytics::load_annotations(*config.annotationsPath);
    routes();
  }

  // Runs `body`, turning exceptions into problem reports.
  template <typename F>
  void guarded(httplib::Response& res, F&& body, bool analytics_route = false) {
    try {
      body();
    } catch (const Error& e) {
      int status = http_status(e.code());
      if (analytics_route && e.code() == ErrorCode::kEmptyInput) status = 422;
      problem(res, status, to_string(e.code()), e.what(), e.violations());
    } catch (const json::exception& e) {
      problem(res, 400, "parse", std::string("invalid JSON body: ") + e.what());
    } catch (const std::exception& e) {
      problem(res, 500, "internal", e.what());
    }
  }

  bool writable(httplib::Response& res) {
    if (!config.readOnly) return true;
    problem(res, 403, to_string(ErrorCode::kReadOnly), "server is read-only");
    return false;
  }

  void reply_write(httplib::Response& res, const service::WriteOutcome& out) {
    res.status = out.created ? 201 : 200;
    if (out.body.contains("id")) res.set_header("Location", out.body["id"].get<std::string>());
    res.set_content(out.body.dump(), kJson);
  }

  using WriteOp = service::WriteOutcome (*)(GraphStore&, const json&, Timestamp);

  void post_route(const char* path, WriteOp op) {
    http.Post(path, [this, op](const httplib::Request& req, httplib::Response& res) {
      if (!writable(res)) return;
      guarded(res, [&] { reply_write(res, op(store, json::parse(req.body), now_utc())); });
    });
  }

  void routes() {
    http.Get(R"(/nodes/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto format = negotiate(req);
        if (format == Format::unacceptable) {
          problem(res, 406, "not-acceptable", "supported formats: application/json, text/turtle");
          return;
        }
        const auto snap = store.snapshot();
        const auto* env = service::resolve_node(*snap, store.base_namespace(), req.matches[1].str());
        if (!env) throw Error(ErrorCode::kNotFound, "unknown node " + req.matches[1].str());
        // Re-verify before serving.
        store.get(env->id);
        const std::string etag = "\"" + env->contentHash + "\"";
        res.set_header("ETag", etag);
        res.set_header("Vary", "Accept");
        res.set_header("Cache-Control", "public, max-age=31536000, immutable");
        if (req.has_header("If-None-Match")) {
          const auto inm = req.get_header_value("If-None-Match");
          if (inm == "*" || inm.find(etag) != std::string::npos) {
            res.status = 304;
            return;
          }
        }
        if (format == Format::turtle) {
          ExportOptions opts;
          opts.subset = std::set<Iri>{env->id};
          res.set_content(export_turtle(*snap, opts), kTurtle);
        } else {
          res.set_content(envelope_to_json(*env).dump(), kJson);
        }
      });
    });

    http.Post("/api/articles", [this](const httplib::Request& req, httplib::Response& res) {
      if (!writable(res)) return;
      guarded(res, [&] {
        const auto body = json::parse(req.body);
        if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
          throw Error(ErrorCode::kEmptyInput, "body must be {\"text\": \"...\"}");
        }
        reply_write(res, service::ingest_article(store, body["text"].get<std::string>(), now_utc()));
      });
    });
    post_route("/api/comments", service::add_comment);
    post_route("/api/responses", service::add_response);
    post_route("/api/checks", service::add_check);

    http.Get(R"(/api/threads/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto snap = store.snapshot();
        const auto* env = service::resolve_node(*snap, store.base_namespace(), req.matches[1].str());
        if (!env) {
          auto iri = Iri::try_parse(req.matches[1].str());
          env = iri ? snap->envelope(*iri) : nullptr;
        }
        if (!env) throw Error(ErrorCode::kNotFound, "unknown node " + req.matches[1].str());
        res.set_content(service::threads_on(*snap, env->id).dump(), kJson);
      });
    });

    http.Get("/api/query", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        QueryFilter f;
        auto param = [&](const char* key) -> std::optional<std::string> {
          if (!req.has_param(key)) return std::nullopt;
          return req.get_param_value(key);
        };
        auto enum_param = [&](const char* key, auto parse, auto& slot) {
          if (auto v = param(key)) {
            auto parsed = parse(*v);
            if (!parsed) throw Error(ErrorCode::kInvalidArgument, std::string("bad ") + key + ": " + *v);
            slot = *parsed;
          }
        };
        enum_param("kind", parse_node_kind, f.kind);
        enum_param("level", parse_granularity, f.level);
        enum_param("aspect", parse_aspect, f.aspect);
        enum_param("polarity", parse_polarity, f.polarity);
        enum_param("actionNeeded", parse_action_needed, f.actionNeeded);
        enum_param("agreement", parse_agreement, f.agreement);
        enum_param("status", parse_check_status, f.status);
        if (auto v = param("target")) f.target = Iri::parse(*v);
        if (auto v = param("author")) f.author = Iri::parse(*v);
        if (auto v = param("impact")) {
          try {
            f.impact = std::stoi(*v);
          } catch (const std::exception&) {
            throw Error(ErrorCode::kInvalidArgument, "bad impact: " + *v);
          }
        }
        json out = json::array();
        for (const auto& e : store.query(f)) out.push_back(envelope_to_json(e));
        res.set_content(out.dump(), kJson);
      });
    });

    http.Get("/api/store", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] {
        const auto m = store.manifest();
        json out{{"baseNamespace", m.baseNamespace},
                 {"nodeCount", m.nodeCount},
                 {"createdAt", format_timestamp(m.createdAt)},
                 {"schemaVersion", m.schemaVersion},
                 {"readOnly", config.readOnly}};
        res.set_content(out.dump(), kJson);
      });
    });

    http.Get(R"(/api/analytics/([a-z-]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(
          res,
          [&] {
            reports::Params params;
            for (const auto& [k, v] : req.params) params[k] = v;
            const auto snap = store.snapshot();
            reports::Context ctx{snap.get(), annotations ? &*annotations : nullptr};
            res.set_content(reports::run_analysis(req.matches[1].str(), params, ctx).dump(), kJson);
          },
          true);
    });

    if (config.uiDir) http.set_mount_point("/", config.uiDir->string());

    http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (res.body.empty()) {
        problem(res, res.status, res.status == 404 ? "not-found" : "error",
                "no route for " + req.method + " " + req.path);
      }
    });
  }
};

ApiServer::ApiServer(GraphStore& store, ApiConfig config)
    : impl_(std::make_unique<Impl>(store, std::move(config))) {}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind() {
  auto& c = impl_->config;
  if (c.port == 0) {
    c.port = impl_->http.bind_to_any_port(c.host);
    if (c.port < 0) throw Error(ErrorCode::kIo, "cannot bind " + c.host);
  } else if (!impl_->http.bind_to_port(c.host, c.port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + c.host + ":" + std::to_string(c.port));
  }
  return c.port;
}

void ApiServer::serve() { impl_->http.listen_after_bind(); }

void ApiServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

void ApiServer::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

}  // namespace linkflows
