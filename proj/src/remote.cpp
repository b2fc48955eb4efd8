// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pats/remote.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <numeric>
#include <thread>

#include <fmt/core.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

namespace pats {

namespace {

using ojson = nlohmann::ordered_json;

bool is_transient_status(int status) {
  return status == 408 || status == 429 || status >= 500;
}

// Splits an aggregate completion-token count across choices in proportion to
// their whitespace units (largest remainder), so the parts sum to the total.
std::vector<std::int64_t> apportion(std::int64_t total,
                                    const std::vector<std::int64_t>& weights) {
  const std::size_t n = weights.size();
  std::vector<std::int64_t> out(n, 0);
  std::int64_t weight_sum = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  if (n == 0) return out;
  if (weight_sum == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = total / static_cast<std::int64_t>(n);
    for (std::size_t i = 0; i < static_cast<std::size_t>(total % static_cast<std::int64_t>(n)); ++i) ++out[i];
    return out;
  }
  std::vector<std::pair<std::int64_t, std::size_t>> remainders;
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t num = total * weights[i];
    out[i] = num / weight_sum;
    assigned += out[i];
    remainders.emplace_back(num % weight_sum, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out[remainders[k % n].second];
  return out;
}

}  // namespace

std::string_view to_string(RemoteErrorKind kind) {
  switch (kind) {
    case RemoteErrorKind::config:
      return "config";
    case RemoteErrorKind::auth:
      return "auth";
    case RemoteErrorKind::exhausted_retries:
      return "exhausted_retries";
    case RemoteErrorKind::http_status:
      return "http_status";
    case RemoteErrorKind::malformed_response:
      return "malformed_response";
  }
  return "unknown";
}

void RemoteEndpointConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw RemoteError(RemoteErrorKind::config, "remote endpoint: " + what);
  };
  if (!(base_url.starts_with("http://") || base_url.starts_with("https://"))) {
    fail("base_url must start with http:// or https:// (got '" + base_url + "')");
  }
  if (timeout.count() <= 0) fail("timeout must be > 0");
  if (max_retries < 0) fail("max_retries must be >= 0");
  if (max_in_flight < 1) fail("max_in_flight must be >= 1");
  for (auto d : retry_backoff) {
    if (d.count() < 0) fail("retry_backoff entries must be >= 0");
  }
}

ConcurrencyLimiter::ConcurrencyLimiter(int max_in_flight)
    : available_(std::max(1, max_in_flight)) {}

ConcurrencyLimiter::Permit::Permit(ConcurrencyLimiter& owner) : owner_(owner) {
  std::unique_lock lock(owner_.mu_);
  owner_.cv_.wait(lock, [this] { return owner_.available_ > 0; });
  --owner_.available_;
}

ConcurrencyLimiter::Permit::~Permit() {
  {
    std::lock_guard lock(owner_.mu_);
    ++owner_.available_;
  }
  owner_.cv_.notify_one();
}

std::string resolve_api_key(const RemoteEndpointConfig& cfg) {
  if (cfg.api_key_env.empty()) return {};
  const char* value = std::getenv(cfg.api_key_env.c_str());
  if (value == nullptr || *value == '\0') {
    throw RemoteError(RemoteErrorKind::config,
                      "API key environment variable " + cfg.api_key_env + " is not set");
  }
  return value;
}

RemoteTransport::RemoteTransport(RemoteEndpointConfig cfg,
                                 std::shared_ptr<ConcurrencyLimiter> limiter)
    : cfg_(std::move(cfg)), limiter_(std::move(limiter)) {
  cfg_.validate();
  api_key_ = resolve_api_key(cfg_);
  const auto scheme_end = cfg_.base_url.find("://") + 3;
  const auto path_start = cfg_.base_url.find('/', scheme_end);
  if (path_start == std::string::npos) {
    scheme_host_port_ = cfg_.base_url;
  } else {
    scheme_host_port_ = cfg_.base_url.substr(0, path_start);
    path_prefix_ = cfg_.base_url.substr(path_start);
  }
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  if (!limiter_) limiter_ = std::make_shared<ConcurrencyLimiter>(cfg_.max_in_flight);
}

RemoteTransport::~RemoteTransport() = default;

RemoteTransport::Reply RemoteTransport::post_json(const std::string& path,
                                                  const std::string& body) {
  const std::string target = path_prefix_ + path;
  for (int attempt = 0;; ++attempt) {
    std::string failure;
    {
      ConcurrencyLimiter::Permit permit(*limiter_);
      httplib::Client client(scheme_host_port_);
      const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
      const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
          cfg_.timeout - seconds);
      client.set_connection_timeout(seconds.count(), micros.count());
      client.set_read_timeout(seconds.count(), micros.count());
      client.set_write_timeout(seconds.count(), micros.count());
      httplib::Headers headers;
      if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

      auto res = client.Post(target, headers, body, "application/json");
      if (!res) {
        failure = "transport error: " + httplib::to_string(res.error());
      } else if (res->status >= 200 && res->status < 300) {
        return {res->body, attempt};
      } else if (res->status == 401 || res->status == 403) {
        throw RemoteError(RemoteErrorKind::auth,
                          fmt::format("{} rejected credentials (HTTP {})", target, res->status));
      } else if (is_transient_status(res->status)) {
        failure = fmt::format("HTTP {}", res->status);
      } else {
        throw RemoteError(RemoteErrorKind::http_status,
                          fmt::format("{} returned HTTP {}: {}", target, res->status,
                                      res->body.substr(0, 200)));
      }
    }
    if (attempt >= cfg_.max_retries) {
      throw RemoteError(RemoteErrorKind::exhausted_retries,
                        fmt::format("{} failed after {} retries: {}", target, attempt, failure));
    }
    if (!cfg_.retry_backoff.empty()) {
      const auto k = std::min(static_cast<std::size_t>(attempt), cfg_.retry_backoff.size() - 1);
      std::this_thread::sleep_for(cfg_.retry_backoff[k]);
    }
  }
}

RemoteGenerator::RemoteGenerator(RemoteEndpointConfig cfg, GeneratorOptions options,
                                 std::shared_ptr<ConcurrencyLimiter> limiter)
    : transport_(std::move(cfg), std::move(limiter)), options_(std::move(options)) {}

std::string RemoteGenerator::build_request(const StepContext& context, int n,
                                           double temperature) const {
  ojson messages = ojson::array();
  messages.push_back({{"role", "system"}, {"content", options_.system_prompt}});
  messages.push_back({{"role", "user"}, {"content", context.problem.question}});
  if (!context.accepted_steps.empty()) {
    std::string so_far;
    for (std::size_t i = 0; i < context.accepted_steps.size(); ++i) {
      if (i) so_far += options_.stop;
      so_far += context.accepted_steps[i];
    }
    messages.push_back({{"role", "assistant"}, {"content", so_far}});
  }
  ojson j;
  j["model"] = transport_.config().model_name;
  j["messages"] = std::move(messages);
  j["n"] = n;
  j["temperature"] = temperature;
  j["stop"] = ojson::array({options_.stop});
  return j.dump();
}

std::vector<CandidateStep> RemoteGenerator::parse_response(const std::string& body, int n) {
  auto malformed = [](const std::string& what) {
    return RemoteError(RemoteErrorKind::malformed_response, "chat completion: " + what);
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    throw malformed("body is not JSON");
  }
  if (!j.is_object() || !j.contains("choices") || !j["choices"].is_array()) {
    throw malformed("missing choices array");
  }
  const auto& choices = j["choices"];
  if (choices.size() != static_cast<std::size_t>(n)) {
    throw malformed(fmt::format("expected {} choices, got {}", n, choices.size()));
  }

  // Order by the choice index when the backend supplies a full permutation.
  std::vector<const nlohmann::json*> ordered(choices.size(), nullptr);
  bool indexed = true;
  for (const auto& c : choices) {
    if (!c.is_object()) throw malformed("choice is not an object");
    if (!c.contains("index") || !c["index"].is_number_unsigned()) {
      indexed = false;
      break;
    }
    const auto idx = c["index"].get<std::size_t>();
    if (idx >= ordered.size() || ordered[idx] != nullptr) {
      indexed = false;
      break;
    }
    ordered[idx] = &c;
  }
  if (!indexed) {
    for (std::size_t i = 0; i < choices.size(); ++i) ordered[i] = &choices[i];
  }

  std::vector<CandidateStep> out;
  std::vector<std::int64_t> units;
  bool per_choice_tokens = true;
  for (const auto* c : ordered) {
    const nlohmann::json* content = nullptr;
    if (c->contains("message") && (*c)["message"].is_object() &&
        (*c)["message"].contains("content")) {
      content = &(*c)["message"]["content"];
    } else if (c->contains("text")) {
      content = &(*c)["text"];
    }
    if (content == nullptr || !content->is_string()) throw malformed("choice has no text content");
    CandidateStep step;
    step.text = content->get<std::string>();
    if (c->contains("completion_tokens") && (*c)["completion_tokens"].is_number_integer()) {
      step.tokens = (*c)["completion_tokens"].get<std::int64_t>();
    } else if (c->contains("usage") && (*c)["usage"].is_object() &&
               (*c)["usage"].contains("completion_tokens")) {
      step.tokens = (*c)["usage"]["completion_tokens"].get<std::int64_t>();
    } else {
      per_choice_tokens = false;
    }
    units.push_back(count_whitespace_units(step.text));
    out.push_back(std::move(step));
  }
  if (!per_choice_tokens) {
    const bool has_usage = j.contains("usage") && j["usage"].is_object() &&
                           j["usage"].contains("completion_tokens") &&
                           j["usage"]["completion_tokens"].is_number_integer();
    const auto tokens = has_usage
                            ? apportion(j["usage"]["completion_tokens"].get<std::int64_t>(), units)
                            : units;
    for (std::size_t i = 0; i < out.size(); ++i) out[i].tokens = tokens[i];
  }
  for (const auto& step : out) {
    if (step.tokens < 0) throw malformed("negative token count");
  }
  return out;
}

std::vector<CandidateStep> RemoteGenerator::generate(const StepContext& context, int n,
                                                     double temperature,
                                                     std::uint64_t /*seed*/) {
  if (n < 1) throw std::invalid_argument("candidate count must be >= 1");
  if (options_.backend_supports_n) {
    const auto reply = transport_.post_json("/chat/completions",
                                            build_request(context, n, temperature));
    return parse_response(reply.body, n);
  }
  const std::string request = build_request(context, 1, temperature);
  std::vector<std::future<std::vector<CandidateStep>>> pending;
  pending.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    pending.push_back(std::async(std::launch::async, [this, &request] {
      return parse_response(transport_.post_json("/chat/completions", request).body, 1);
    }));
  }
  // Collect in issue order; get() rethrows the first failure.
  std::vector<CandidateStep> out;
  for (auto& f : pending) {
    auto one = f.get();
    out.push_back(std::move(one.front()));
  }
  return out;
}

RemoteScorer::RemoteScorer(RemoteEndpointConfig cfg, std::shared_ptr<ConcurrencyLimiter> limiter)
    : transport_(std::move(cfg), std::move(limiter)) {}

double RemoteScorer::score(const Problem& problem, std::span<const std::string> steps,
                           std::string_view candidate) {
  ojson req;
  req["problem"] = problem.question;
  req["steps"] = std::vector<std::string>(steps.begin(), steps.end());
  req["candidate"] = std::string(candidate);
  const auto reply = transport_.post_json("/score", req.dump());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(reply.body);
  } catch (const nlohmann::json::parse_error&) {
    throw RemoteError(RemoteErrorKind::malformed_response, "score: body is not JSON");
  }
  if (!j.is_object() || !j.contains("score") || !j["score"].is_number()) {
    throw RemoteError(RemoteErrorKind::malformed_response, "score: missing numeric 'score'");
  }
  return clamp_score(j["score"].get<double>());
}

}  // namespace pats
