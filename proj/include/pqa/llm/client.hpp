#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqa/errors.hpp"

// Transport, caching and rate limiting for every LLM-backed module. The
// cache is content-addressed and record/replay: with a populated cache
// directory an entire simulation replays offline, byte for byte.

namespace pqa::llm {

struct LLMConfig {
    std::string endpoint_url = "http://127.0.0.1:8080/v1/chat/completions";
    std::string model_name = "gpt-4o-mini";
    double temperature = 0.1;
    int max_tokens = 512;
    std::string api_key_env_var = "OPENAI_API_KEY";
    std::filesystem::path cache_dir = ".pqa-cache";
    int max_retries = 3;
    int requests_per_minute = 60; // 0 disables the limiter
    bool offline = false;

    void validate() const;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Stable across process restarts; the iteration index keeps repeated
// same-prompt samples distinct.
struct CacheKey {
    std::string model_name;
    std::string prompt_hash;
    double temperature = 0.0;
    int iteration = 0;

    static CacheKey make(const LLMConfig& config, const std::string& prompt, int iteration);
    std::string to_string() const;
};

struct CacheRecord {
    std::string key;
    std::string prompt;
    std::string response;
    std::string model;
    std::string timestamp;
};

// One JSON file per key; writes go through a temp file and an atomic
// rename.
class PromptCache {
public:
    explicit PromptCache(std::filesystem::path dir);

    std::optional<std::string> lookup(const CacheKey& key, const std::string& prompt) const;
    void store(const CacheKey& key, const std::string& prompt, const std::string& response,
               const std::string& model) const;

    std::vector<CacheRecord> records() const;
    std::size_t purge() const;
    void export_archive(const std::filesystem::path& archive) const;
    static std::size_t import_archive(const std::filesystem::path& archive,
                                      const std::filesystem::path& dir);

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

// Sliding-window limiter: never admits more than `per_minute` requests in
// any 60 second window. Clock and sleep are injectable for tests.
class RateLimiter {
public:
    using ClockFn = std::function<double()>;
    using SleepFn = std::function<void(double)>;

    explicit RateLimiter(int per_minute, ClockFn clock = {}, SleepFn sleep = {});
    void acquire();

private:
    int per_minute_;
    ClockFn clock_;
    SleepFn sleep_;
    std::deque<double> grants_;
    std::mutex mutex_;
};

class ChatClient {
public:
    virtual ~ChatClient() = default;
    /// Completion text for a single-user-message prompt. The iteration
    /// index separates repeated samples of the same prompt.
    virtual std::string chat(const std::string& prompt, int iteration) = 0;
};

// Deterministic in-process backend for tests and fixtures.
class ScriptedClient final : public ChatClient {
public:
    using Script = std::function<std::string(const std::string& prompt, int iteration)>;
    explicit ScriptedClient(Script script) : script_(std::move(script)) {}
    std::string chat(const std::string& prompt, int iteration) override {
        return script_(prompt, iteration);
    }

private:
    Script script_;
};

// Speaks the common chat-completion JSON shape over HTTP, with retries,
// exponential backoff, rate limiting and the record/replay cache.
// Concurrent identical keys issue a single network call.
class HttpChatClient final : public ChatClient {
public:
    explicit HttpChatClient(LLMConfig config);

    std::string chat(const std::string& prompt, int iteration) override;

    const PromptCache& cache() const { return cache_; }
    const LLMConfig& config() const { return config_; }

    /// Test hook: replaces the backoff sleep.
    void set_backoff_sleep(RateLimiter::SleepFn sleep) { backoff_sleep_ = std::move(sleep); }

private:
    std::string perform_request(const std::string& prompt);

    LLMConfig config_;
    PromptCache cache_;
    RateLimiter limiter_;
    RateLimiter::SleepFn backoff_sleep_;
    std::mutex inflight_mutex_;
    std::map<std::string, std::shared_future<std::string>> inflight_;
};

} // namespace pqa::llm
