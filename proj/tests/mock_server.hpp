// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <httplib.h>

#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pats/remote.hpp"

namespace pats::testing {

// Local HTTP server replaying queued (status, body) replies per path. When a
// path's queue is empty it answers with its fallback reply.
class MockServer {
 public:
  MockServer() {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu_);
      requests_.push_back({req.path, req.body, req.get_header_value("Authorization")});
      auto& route = routes_[req.path];
      std::pair<int, std::string> reply = route.fallback;
      if (!route.queue.empty()) {
        reply = route.queue.front();
        route.queue.pop_front();
      }
      res.status = reply.first;
      res.set_content(reply.second, "application/json");
    };
    server_.Post(R"(/.*)", handler);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockServer() {
    server_.stop();
    thread_.join();
  }

  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  void queue(const std::string& path, int status, std::string body) {
    std::lock_guard lock(mu_);
    routes_[path].queue.emplace_back(status, std::move(body));
  }
  void fallback(const std::string& path, int status, std::string body) {
    std::lock_guard lock(mu_);
    routes_[path].fallback = {status, std::move(body)};
  }

  struct Seen {
    std::string path;
    std::string body;
    std::string authorization;
  };
  std::vector<Seen> requests() {
    std::lock_guard lock(mu_);
    return requests_;
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

  RemoteEndpointConfig endpoint() const {
    RemoteEndpointConfig cfg;
    cfg.base_url = base_url();
    cfg.model_name = "mock-model";
    cfg.api_key_env = "";
    cfg.timeout = std::chrono::milliseconds(5'000);
    cfg.retry_backoff = {std::chrono::milliseconds(1)};
    return cfg;
  }

 private:
  struct Route {
    std::deque<std::pair<int, std::string>> queue;
    std::pair<int, std::string> fallback{404, "{}"};
  };

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mu_;
  std::map<std::string, Route> routes_;
  std::vector<Seen> requests_;
};

// A chat-completions body with `n` choices and per-response usage.
inline std::string completion_body(int n, int tokens_each = 7) {
  std::string choices;
  for (int i = 0; i < n; ++i) {
    if (i) choices += ",";
    choices += R"({"index":)" + std::to_string(i) +
               R"(,"message":{"role":"assistant","content":"step )" + std::to_string(i) + R"("}})";
  }
  return R"({"choices":[)" + choices + R"(],"usage":{"completion_tokens":)" +
         std::to_string(n * tokens_each) + "}}";
}

}  // namespace pats::testing
