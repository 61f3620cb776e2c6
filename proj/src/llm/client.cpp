#include "pqa/llm/client.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <httplib.h>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace pqa::llm {

using nlohmann::json;

void LLMConfig::validate() const {
    if (temperature < 0.0) throw ConfigError("temperature must be non-negative");
    if (max_retries < 0) throw ConfigError("max_retries must be non-negative");
    if (max_tokens < 1) throw ConfigError("max_tokens must be positive");
    if (requests_per_minute < 0) throw ConfigError("requests_per_minute must be non-negative");
    if (endpoint_url.empty()) throw ConfigError("endpoint_url must be set");
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        hash ^= static_cast<std::uint64_t>(c);
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

CacheKey CacheKey::make(const LLMConfig& config, const std::string& prompt, int iteration) {
    CacheKey key;
    key.model_name = config.model_name;
    key.prompt_hash = hex64(fnv1a64(prompt));
    key.temperature = config.temperature;
    key.iteration = iteration;
    return key;
}

std::string CacheKey::to_string() const {
    std::ostringstream out;
    std::string model = model_name;
    for (char& c : model)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
    out << model << "_t" << temperature << "_i" << iteration << "_" << prompt_hash;
    return out.str();
}

// --- PromptCache ----------------------------------------------------------

PromptCache::PromptCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::optional<std::string> PromptCache::lookup(const CacheKey& key,
                                               const std::string& prompt) const {
    const auto path = dir_ / (key.to_string() + ".json");
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    try {
        const json record = json::parse(in);
        // Guard against hash collisions: the stored prompt must match.
        if (record.at("prompt").get<std::string>() != prompt) return std::nullopt;
        return record.at("response").get<std::string>();
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

void PromptCache::store(const CacheKey& key, const std::string& prompt,
                        const std::string& response, const std::string& model) const {
    json record;
    record["key"] = key.to_string();
    record["prompt"] = prompt;
    record["response"] = response;
    record["model"] = model;
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    record["timestamp"] =
        std::to_string(std::chrono::duration_cast<std::chrono::seconds>(now).count());

    const auto final_path = dir_ / (key.to_string() + ".json");
    const auto tmp_path = dir_ / (key.to_string() + ".tmp");
    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out) throw TransportError("cannot write cache file: " + tmp_path.string());
        out << record.dump(2) << "\n";
    }
    std::filesystem::rename(tmp_path, final_path);
}

std::vector<CacheRecord> PromptCache::records() const {
    std::vector<CacheRecord> out;
    if (!std::filesystem::exists(dir_)) return out;
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir_))
        if (entry.path().extension() == ".json") paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) continue;
        try {
            const json j = json::parse(in);
            CacheRecord record;
            record.key = j.value("key", path.stem().string());
            record.prompt = j.at("prompt").get<std::string>();
            record.response = j.at("response").get<std::string>();
            record.model = j.value("model", "");
            record.timestamp = j.value("timestamp", "");
            out.push_back(std::move(record));
        } catch (const json::exception&) {
            // Unreadable records are skipped by listing, not fatal.
        }
    }
    return out;
}

std::size_t PromptCache::purge() const {
    std::size_t removed = 0;
    if (!std::filesystem::exists(dir_)) return removed;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (entry.path().extension() == ".json" || entry.path().extension() == ".tmp") {
            std::filesystem::remove(entry.path());
            ++removed;
        }
    }
    return removed;
}

void PromptCache::export_archive(const std::filesystem::path& archive) const {
    json doc = json::array();
    for (const auto& record : records()) {
        doc.push_back({{"key", record.key},
                       {"prompt", record.prompt},
                       {"response", record.response},
                       {"model", record.model},
                       {"timestamp", record.timestamp}});
    }
    std::ofstream out(archive, std::ios::binary | std::ios::trunc);
    if (!out) throw TransportError("cannot write archive: " + archive.string());
    out << doc.dump(2) << "\n";
}

std::size_t PromptCache::import_archive(const std::filesystem::path& archive,
                                        const std::filesystem::path& dir) {
    std::ifstream in(archive, std::ios::binary);
    if (!in) throw TransportError("cannot open archive: " + archive.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw TransportError("malformed archive " + archive.string() + ": " + e.what());
    }
    if (!doc.is_array()) throw TransportError("archive must be a JSON array");

    std::filesystem::create_directories(dir);
    std::size_t imported = 0;
    for (const auto& j : doc) {
        json record = j;
        const std::string key = record.at("key").get<std::string>();
        const auto tmp_path = dir / (key + ".tmp");
        const auto final_path = dir / (key + ".json");
        {
            std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
            out << record.dump(2) << "\n";
        }
        std::filesystem::rename(tmp_path, final_path);
        ++imported;
    }
    return imported;
}

// --- RateLimiter ----------------------------------------------------------

RateLimiter::RateLimiter(int per_minute, ClockFn clock, SleepFn sleep)
    : per_minute_(per_minute), clock_(std::move(clock)), sleep_(std::move(sleep)) {
    if (!clock_) {
        clock_ = [] {
            return std::chrono::duration<double>(
                       std::chrono::steady_clock::now().time_since_epoch())
                .count();
        };
    }
    if (!sleep_) {
        sleep_ = [](double seconds) {
            std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
        };
    }
}

void RateLimiter::acquire() {
    if (per_minute_ <= 0) return;
    std::lock_guard<std::mutex> lock(mutex_);
    for (;;) {
        const double now = clock_();
        while (!grants_.empty() && grants_.front() <= now - 60.0) grants_.pop_front();
        if (grants_.size() < static_cast<std::size_t>(per_minute_)) {
            grants_.push_back(now);
            return;
        }
        // Floor the wait so rounding in front+60-now cannot stall a mock
        // clock that only advances through sleep.
        sleep_(std::max(grants_.front() + 60.0 - now, 1e-6));
    }
}

// --- HttpChatClient -------------------------------------------------------

namespace {

struct ParsedUrl {
    std::string base; // scheme://host[:port]
    std::string path;
};

ParsedUrl parse_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ConfigError("endpoint must be a full URL: " + url);
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https")
        throw ConfigError("unsupported scheme: " + scheme);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https")
        throw ConfigError("https endpoint requires an OpenSSL-enabled build");
#endif
    const auto path_start = url.find('/', scheme_end + 3);
    ParsedUrl out;
    if (path_start == std::string::npos) {
        out.base = url;
        out.path = "/v1/chat/completions";
    } else {
        out.base = url.substr(0, path_start);
        out.path = url.substr(path_start);
    }
    return out;
}

bool retryable_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

} // namespace

HttpChatClient::HttpChatClient(LLMConfig config)
    : config_(std::move(config)),
      cache_(config_.cache_dir),
      limiter_(config_.requests_per_minute) {
    config_.validate();
    backoff_sleep_ = [](double seconds) {
        std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    };
}

std::string HttpChatClient::chat(const std::string& prompt, int iteration) {
    const CacheKey key = CacheKey::make(config_, prompt, iteration);
    if (auto hit = cache_.lookup(key, prompt)) return *hit;
    if (config_.offline)
        throw TransportError("offline mode: missing cache entry " + key.to_string());

    // Concurrent identical keys share one network call.
    std::shared_future<std::string> pending;
    std::promise<std::string> mine;
    bool owner = false;
    {
        std::lock_guard<std::mutex> lock(inflight_mutex_);
        const auto it = inflight_.find(key.to_string());
        if (it != inflight_.end()) {
            pending = it->second;
        } else {
            pending = mine.get_future().share();
            inflight_[key.to_string()] = pending;
            owner = true;
        }
    }
    if (!owner) return pending.get();

    try {
        const std::string response = perform_request(prompt);
        cache_.store(key, prompt, response, config_.model_name);
        mine.set_value(response);
        std::lock_guard<std::mutex> lock(inflight_mutex_);
        inflight_.erase(key.to_string());
        return response;
    } catch (...) {
        mine.set_exception(std::current_exception());
        std::lock_guard<std::mutex> lock(inflight_mutex_);
        inflight_.erase(key.to_string());
        throw;
    }
}

std::string HttpChatClient::perform_request(const std::string& prompt) {
    const ParsedUrl url = parse_url(config_.endpoint_url);

    json body;
    body["model"] = config_.model_name;
    body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
    body["temperature"] = config_.temperature;
    body["max_tokens"] = config_.max_tokens;
    const std::string payload = body.dump();

    const char* key_env = config_.api_key_env_var.empty()
                              ? nullptr
                              : std::getenv(config_.api_key_env_var.c_str());

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0)
            backoff_sleep_(0.25 * std::pow(2.0, attempt - 1));
        limiter_.acquire();

        httplib::Client client(url.base);
        client.set_connection_timeout(30);
        client.set_read_timeout(120);
        httplib::Headers headers{{"Content-Type", "application/json"}};
        if (key_env && *key_env)
            headers.emplace("Authorization", std::string("Bearer ") + key_env);

        const auto result = client.Post(url.path, headers, payload, "application/json");
        if (!result) {
            last_error = "connection failure: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status == 200) {
            try {
                const json reply = json::parse(result->body);
                return reply.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const json::exception& e) {
                throw TransportError(std::string("malformed completion response: ") + e.what());
            }
        }
        if (retryable_status(result->status)) {
            last_error = "HTTP " + std::to_string(result->status);
            continue;
        }
        throw ConfigError("endpoint rejected request: HTTP " + std::to_string(result->status) +
                          " " + result->body);
    }
    throw TransportError("retries exhausted (" + std::to_string(config_.max_retries) +
                         "): " + last_error);
}

} // namespace pqa::llm
