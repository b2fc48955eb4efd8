// Copyright 2026 The PATS Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "pats/model.hpp"

namespace pats {

struct RemoteEndpointConfig {
  // Scheme, host, optional port and path prefix, e.g. http://127.0.0.1:8000/v1
  std::string base_url;
  std::string model_name;
  // Environment variable holding the bearer token. Empty disables auth.
  std::string api_key_env = "PATS_API_KEY";
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 3;
  // Delay before retry k is retry_backoff[min(k, size-1)].
  std::vector<std::chrono::milliseconds> retry_backoff = {
      std::chrono::milliseconds(500), std::chrono::milliseconds(2'000),
      std::chrono::milliseconds(8'000)};
  // Upper bound on requests in flight across every client sharing a limiter.
  int max_in_flight = 16;

  void validate() const;
};

struct GeneratorOptions {
  std::string system_prompt =
      "Solve the problem step by step. Write exactly one reasoning step per "
      "reply and end it with a blank line. When you reach the result, write "
      "it as \\boxed{answer}.";
  // Generation stops at the step delimiter: one candidate is one step.
  std::string stop = "\n\n";
  // When false, n candidates are requested as n concurrent n=1 calls.
  bool backend_supports_n = true;
};

enum class RemoteErrorKind {
  config,             // missing key, bad URL
  auth,               // 401/403; never retried
  exhausted_retries,  // transient failures outlasted max_retries
  http_status,        // other non-2xx status; not retried
  malformed_response, // body parsed but broke the response contract
};

std::string_view to_string(RemoteErrorKind kind);

class RemoteError : public std::runtime_error {
 public:
  RemoteError(RemoteErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  RemoteErrorKind kind() const { return kind_; }

 private:
  RemoteErrorKind kind_;
};

// Counting gate over in-flight requests.
class ConcurrencyLimiter {
 public:
  explicit ConcurrencyLimiter(int max_in_flight);

  class Permit {
   public:
    explicit Permit(ConcurrencyLimiter& owner);
    ~Permit();
    Permit(const Permit&) = delete;
    Permit& operator=(const Permit&) = delete;

   private:
    ConcurrencyLimiter& owner_;
  };

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int available_;
};

// Reads the API key named by cfg.api_key_env; throws RemoteError(config) if
// the variable is named but unset or empty.
std::string resolve_api_key(const RemoteEndpointConfig& cfg);

// Minimal HTTP transport with the retry policy shared by both clients.
class RemoteTransport {
 public:
  RemoteTransport(RemoteEndpointConfig cfg,
                  std::shared_ptr<ConcurrencyLimiter> limiter);
  ~RemoteTransport();

  struct Reply {
    std::string body;
    int retries = 0;
  };

  // POSTs a JSON body to base path + `path` and returns the body of the first
  // 2xx reply. Retries 408/429/5xx and transport errors; a request is only
  // retried when no response body was accepted.
  Reply post_json(const std::string& path, const std::string& body);

  const RemoteEndpointConfig& config() const { return cfg_; }

 private:
  RemoteEndpointConfig cfg_;
  std::string api_key_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::shared_ptr<ConcurrencyLimiter> limiter_;
};

// OpenAI-compatible chat completions generator. Request body:
// {model, messages, n, temperature, stop}.
class RemoteGenerator final : public StepGenerator {
 public:
  RemoteGenerator(RemoteEndpointConfig cfg, GeneratorOptions options = {},
                  std::shared_ptr<ConcurrencyLimiter> limiter = nullptr);

  std::vector<CandidateStep> generate(const StepContext& context, int n,
                                      double temperature,
                                      std::uint64_t seed) override;

  // The serialized request for `n` candidates; exposed for conformance checks.
  std::string build_request(const StepContext& context, int n,
                            double temperature) const;

  // Maps a chat-completions response onto exactly `n` candidates.
  static std::vector<CandidateStep> parse_response(const std::string& body,
                                                   int n);

 private:
  RemoteTransport transport_;
  GeneratorOptions options_;
};

// POST /score {problem, steps, candidate} -> {score}; clamped to [0, 1].
class RemoteScorer final : public StepScorer {
 public:
  explicit RemoteScorer(RemoteEndpointConfig cfg,
                        std::shared_ptr<ConcurrencyLimiter> limiter = nullptr);

  double score(const Problem& problem, std::span<const std::string> steps,
               std::string_view candidate) override;

 private:
  RemoteTransport transport_;
};

}  // namespace pats
