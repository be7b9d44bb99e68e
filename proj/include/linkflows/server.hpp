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

// HTTP API over a GraphStore.
//
//   GET  /nodes/{path}              node; JSON (default) or text/turtle
//   POST /api/articles              {"text"}
//   POST /api/comments              review comment fields
//   POST /api/responses             {isResponseTo, text, agreement, author}
//   POST /api/checks                {isResponseTo, text, status, author}
//   GET  /api/threads/{nodeId}      reply trees of every comment on the node
//   GET  /api/query?kind=&target=.. store query
//   GET  /api/store                 manifest
//   GET  /api/analytics/{metric}    reports::run_analysis
//
// Non-2xx responses carry one application/problem+json body:
// {"status","code","detail","violations"}.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "linkflows/errors.hpp"
#include "linkflows/store.hpp"

namespace linkflows {

struct ApiConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string baseNamespace;  // empty: use the store's
  bool readOnly = false;
  std::optional<std::filesystem::path> annotationsPath;
  std::optional<std::filesystem::path> uiDir;
};

// HTTP status for an error code.
int http_status(ErrorCode code);

class ApiServer {
 public:
  // Throws kInvalidArgument when config.baseNamespace differs from the
  // store's namespace.
  ApiServer(GraphStore& store, ApiConfig config);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds the socket and returns the port. Throws kIo.
  int bind();
  // Serves until stop(); call after bind().
  void serve();
  // Blocks until serve() accepts connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace linkflows
