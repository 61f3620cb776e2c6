#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <httplib.h>
#include <json.hpp>
#include <thread>

#include "pqa/llm/client.hpp"

using namespace pqa;
using namespace pqa::llm;
namespace fs = std::filesystem;

namespace {

std::string completion_body(const std::string& content) {
    nlohmann::json j;
    j["choices"] = nlohmann::json::array(
        {{{"message", {{"role", "assistant"}, {"content", content}}}}});
    return j.dump();
}

struct MockServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;
    std::atomic<int> requests{0};

    explicit MockServer(std::function<void(MockServer&, const httplib::Request&,
                                           httplib::Response&)> handler) {
        server.Post("/v1/chat/completions",
                    [this, handler](const httplib::Request& req, httplib::Response& res) {
                        ++requests;
                        handler(*this, req, res);
                    });
        port = server.bind_to_any_port("127.0.0.1");
        REQUIRE(port > 0);
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~MockServer() {
        server.stop();
        thread.join();
    }

    std::string url() const {
        return "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    }
};

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

LLMConfig test_config(const std::string& url, const fs::path& cache_dir) {
    LLMConfig config;
    config.endpoint_url = url;
    config.model_name = "mock-model";
    config.cache_dir = cache_dir;
    config.requests_per_minute = 0;
    config.max_retries = 3;
    return config;
}

} // namespace

TEST_CASE("cache returns recorded bytes without a second request") {
    MockServer server([](MockServer&, const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        CHECK(body.at("model") == "mock-model");
        CHECK(body.at("messages").at(0).at("role") == "user");
        CHECK(body.at("temperature").get<double>() == doctest::Approx(0.1));
        res.set_content(completion_body("hello there"), "application/json");
    });

    HttpChatClient client(test_config(server.url(), fresh_dir("pqa_cache_hit")));
    const std::string first = client.chat("say hello", 0);
    CHECK(first == "hello there");
    CHECK(server.requests == 1);

    const std::string second = client.chat("say hello", 0);
    CHECK(second == first);
    CHECK(server.requests == 1); // served from the cache

    // A different iteration index is a different sample.
    (void)client.chat("say hello", 1);
    CHECK(server.requests == 2);
}

TEST_CASE("two transient failures then success") {
    MockServer server([](MockServer& s, const httplib::Request&, httplib::Response& res) {
        if (s.requests <= 2) {
            res.status = 500;
            res.set_content("boom", "text/plain");
        } else {
            res.set_content(completion_body("recovered"), "application/json");
        }
    });

    HttpChatClient client(test_config(server.url(), fresh_dir("pqa_cache_retry")));
    client.set_backoff_sleep([](double) {});
    CHECK(client.chat("flaky", 0) == "recovered");
    CHECK(server.requests == 3);
}

TEST_CASE("retries exhausted raises a transport error") {
    MockServer server([](MockServer&, const httplib::Request&, httplib::Response& res) {
        res.status = 503;
    });
    auto config = test_config(server.url(), fresh_dir("pqa_cache_exhaust"));
    config.max_retries = 1;
    HttpChatClient client(config);
    client.set_backoff_sleep([](double) {});
    CHECK_THROWS_AS((void)client.chat("always down", 0), TransportError);
    CHECK(server.requests == 2);
}

TEST_CASE("client errors are not retried") {
    MockServer server([](MockServer&, const httplib::Request&, httplib::Response& res) {
        res.status = 404;
    });
    HttpChatClient client(test_config(server.url(), fresh_dir("pqa_cache_4xx")));
    client.set_backoff_sleep([](double) {});
    CHECK_THROWS_AS((void)client.chat("bad path", 0), ConfigError);
    CHECK(server.requests == 1);
}

TEST_CASE("malformed completion body is a transport error") {
    MockServer server([](MockServer&, const httplib::Request&, httplib::Response& res) {
        res.set_content("{\"unexpected\": true}", "application/json");
    });
    HttpChatClient client(test_config(server.url(), fresh_dir("pqa_cache_malformed")));
    CHECK_THROWS_AS((void)client.chat("whatever", 0), TransportError);
}

TEST_CASE("offline mode fails fast naming the missing key") {
    auto config = test_config("http://127.0.0.1:1/v1/chat/completions",
                              fresh_dir("pqa_cache_offline"));
    config.offline = true;
    HttpChatClient client(config);
    try {
        (void)client.chat("never recorded", 0);
        FAIL("expected TransportError");
    } catch (const TransportError& e) {
        const std::string what = e.what();
        CHECK(what.find("offline") != std::string::npos);
        CHECK(what.find(CacheKey::make(config, "never recorded", 0).to_string()) !=
              std::string::npos);
    }
}

TEST_CASE("cache export/import round trip enables offline replay") {
    const fs::path dir_a = fresh_dir("pqa_cache_export");
    const fs::path dir_b = fresh_dir("pqa_cache_import");
    const fs::path archive = fs::temp_directory_path() / "pqa_cache_archive.json";

    MockServer server([](MockServer&, const httplib::Request&, httplib::Response& res) {
        res.set_content(completion_body("recorded answer"), "application/json");
    });
    {
        HttpChatClient recorder(test_config(server.url(), dir_a));
        CHECK(recorder.chat("prompt one", 0) == "recorded answer");
        CHECK(recorder.chat("prompt two", 3) == "recorded answer");
        recorder.cache().export_archive(archive);
    }

    CHECK(PromptCache::import_archive(archive, dir_b) == 2);

    auto offline_config = test_config("http://127.0.0.1:1/none", dir_b);
    offline_config.offline = true;
    HttpChatClient replayer(offline_config);
    CHECK(replayer.chat("prompt one", 0) == "recorded answer");
    CHECK(replayer.chat("prompt two", 3) == "recorded answer");

    // purge then list is empty
    PromptCache cache(dir_b);
    CHECK(cache.records().size() == 2);
    CHECK(cache.purge() == 2);
    CHECK(cache.records().empty());
}

TEST_CASE("concurrent identical keys issue one network call") {
    MockServer server([](MockServer&, const httplib::Request&, httplib::Response& res) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        res.set_content(completion_body("slow answer"), "application/json");
    });
    HttpChatClient client(test_config(server.url(), fresh_dir("pqa_cache_inflight")));

    std::string a;
    std::string b;
    std::thread t1([&] { a = client.chat("same prompt", 0); });
    std::thread t2([&] { b = client.chat("same prompt", 0); });
    t1.join();
    t2.join();
    CHECK(a == "slow answer");
    CHECK(b == "slow answer");
    CHECK(server.requests == 1);
}

TEST_CASE("rate limiter never exceeds the per-minute bound in any window") {
    double now = 0.0;
    std::vector<double> grants;
    RateLimiter limiter(
        5, [&] { return now; }, [&](double seconds) { now += seconds; });

    for (int i = 0; i < 23; ++i) {
        limiter.acquire();
        grants.push_back(now);
        now += 1.0; // a little work between requests
    }
    REQUIRE(grants.size() == 23);
    for (std::size_t i = 0; i + 5 < grants.size(); ++i)
        CHECK(grants[i + 5] - grants[i] >= 60.0 - 1e-9);

    // Zero disables the limiter.
    RateLimiter unlimited(0, [&] { return now; }, [&](double) { FAIL("must not sleep"); });
    for (int i = 0; i < 100; ++i) unlimited.acquire();
}

TEST_CASE("cache keys are stable and collision-checked") {
    LLMConfig config;
    config.model_name = "m";
    config.temperature = 0.1;
    const CacheKey k1 = CacheKey::make(config, "same", 0);
    const CacheKey k2 = CacheKey::make(config, "same", 0);
    CHECK(k1.to_string() == k2.to_string());
    CHECK(k1.to_string() != CacheKey::make(config, "other", 0).to_string());
    CHECK(k1.to_string() != CacheKey::make(config, "same", 1).to_string());

    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(hex64(0x1234) == "0000000000001234");

    // A stored record with a different prompt (hash collision) is a miss.
    const fs::path dir = fresh_dir("pqa_cache_collision");
    PromptCache cache(dir);
    cache.store(k1, "same", "answer", "m");
    CHECK(cache.lookup(k1, "same").has_value());
    CHECK_FALSE(cache.lookup(k1, "not the stored prompt").has_value());
}
