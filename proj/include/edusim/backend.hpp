#pragma once

#include <memory>
#include <string>

#include "edusim/types.hpp"

namespace edusim {

struct GenParams {
    double temperature = 0.0;
    int max_tokens = 512;
};

// The only capability a text-generation backend exposes. Implementations
// must be safe for concurrent complete() calls.
class LlmBackend {
  public:
    virtual ~LlmBackend() = default;
    virtual std::string complete(const std::string& prompt, const GenParams& params) = 0;
};

struct HttpBackendConfig {
    std::string base_url;    // e.g. http://localhost:8080/v1
    std::string model;
    std::string api_key;     // sent as a Bearer token when non-empty
    int max_retries = 2;     // transport-level retries
    int backoff_ms = 250;    // doubled per retry
    int timeout_sec = 60;
};

// OpenAI-compatible chat-completions client. Transport failures are retried
// with exponential backoff, then surfaced as BackendError.
class HttpBackend : public LlmBackend {
  public:
    explicit HttpBackend(HttpBackendConfig cfg);
    std::string complete(const std::string& prompt, const GenParams& params) override;

  private:
    HttpBackendConfig cfg_;
    std::string host_;
    std::string path_prefix_;
    bool tls_ = false;
};

}  // namespace edusim
