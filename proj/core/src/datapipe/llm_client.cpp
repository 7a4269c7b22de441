// core/src/datapipe/llm_client.cpp

// Copyright 2026  The mmclap Authors

// See ../../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>

#include <httplib.h>

#include "mmclap/datapipe/augment.hpp"
#include "mmclap/error.hpp"

namespace mmclap::datapipe {

HttpLlmClient::HttpLlmClient(std::string endpoint, int timeout_seconds) : timeout_seconds_(timeout_seconds) {
  const auto scheme = endpoint.find("://");
  if (scheme == std::string::npos || endpoint.substr(0, scheme) != "http")
    throw ValidationError("llm_endpoint", "expected an http:// URL, got '" + endpoint + "'");
  const auto slash = endpoint.find('/', scheme + 3);
  base_ = endpoint.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : endpoint.substr(slash);
}

std::string HttpLlmClient::complete(const std::string& prompt) {
  httplib::Client client(base_);
  client.set_connection_timeout(timeout_seconds_);
  client.set_read_timeout(timeout_seconds_);
  const nlohmann::json body = {{"prompt", prompt}};
  auto res = client.Post(path_, body.dump(), "application/json");
  if (!res) throw RetriableError("llm request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw RetriableError("llm returned HTTP " + std::to_string(res->status));
  const auto doc = nlohmann::json::parse(res->body, nullptr, false);
  if (!doc.is_discarded() && doc.is_object() && doc.contains("text") && doc["text"].is_string())
    return doc["text"].get<std::string>();
  return res->body;
}

std::unique_ptr<LlmClient> make_llm_client_from_env() {
  const char* endpoint = std::getenv(kLlmEndpointEnv);
  if (endpoint && *endpoint) return std::make_unique<HttpLlmClient>(endpoint);
  return std::make_unique<StubLlmClient>();
}

}  // namespace mmclap::datapipe
