// Operator entry point: run model variants over a vignette corpus, validate
// corpora, and manage the record/replay cache.
//
// Exit codes: 0 success, 1 configuration error, 2 corpus error,
// 3 LLM/transport error, 4 partial-failure threshold exceeded.

#include <CLI11.hpp>
#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pqa/report.hpp"
#include "pqa/variants.hpp"

namespace fs = std::filesystem;
using namespace pqa;

namespace {

std::atomic<bool> g_interrupted{false};

void handle_signal(int) { g_interrupted = true; }

fs::path resolve_bundled(const std::string& value, const char* relative) {
    if (value == "bundled") return fs::path(PQA_SOURCE_DIR) / relative;
    return fs::path(value);
}

struct RunFlags {
    std::string variant = "pcm";
    std::string corpus = "bundled";
    std::string utilities = "bundled";
    std::string prompts_dir = (fs::path(PQA_SOURCE_DIR) / "prompts").string();
    std::string out_dir = "out";
    std::string config_file;
    int iterations = 5;
    unsigned seed = 0;
    int workers = 2;
    int bootstrap_reps = 1000;
    double alpha_questioner = 5.0;
    double alpha_respondent = 5.0;
    double alpha_policy = 0.05;
    double lambda_info = 0.3;
    int n_responses = 10;
    int n_questions = 3;
    int n_goals = 4;
    double max_failure_rate = 0.5;
    bool joint_renorm = false;
    // llm
    std::string endpoint = "http://127.0.0.1:8080/v1/chat/completions";
    std::string model = "gpt-4o-mini";
    double temperature = 0.1;
    int max_tokens = 512;
    std::string api_key_env = "OPENAI_API_KEY";
    std::string cache_dir = ".pqa-cache";
    int max_retries = 3;
    int rpm = 60;
    bool offline = false;
};

// Precedence: explicit flags > config file > defaults.
ModelConfig resolve_config(const CLI::App& cmd, const RunFlags& flags) {
    ModelConfig config;
    if (!flags.config_file.empty()) {
        std::ifstream in(flags.config_file);
        if (!in) throw ConfigError("cannot open config file: " + flags.config_file);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config file " + flags.config_file + ": " + e.what());
        }
        config = config_from_json(j, config);
    }

    const auto passed = [&](const std::string& name) { return cmd.count(name) > 0; };
    if (passed("--variant")) config.variant = variant_from_name(flags.variant);
    if (passed("--iterations")) config.iterations = flags.iterations;
    if (passed("--seed")) config.seed = flags.seed;
    if (passed("--workers")) config.workers = flags.workers;
    if (passed("--alpha-questioner")) config.agent_params.alpha_questioner = flags.alpha_questioner;
    if (passed("--alpha-respondent")) config.agent_params.alpha_respondent = flags.alpha_respondent;
    if (passed("--alpha-policy")) config.agent_params.alpha_policy = flags.alpha_policy;
    if (passed("--lambda-info")) config.agent_params.lambda_info = flags.lambda_info;
    if (passed("--n-responses")) config.n_response_proposals = flags.n_responses;
    if (passed("--n-questions")) config.n_question_proposals = flags.n_questions;
    if (passed("--n-goals")) config.n_goal_proposals = flags.n_goals;
    if (passed("--max-failure-rate")) config.max_failure_rate = flags.max_failure_rate;
    if (passed("--joint-renorm")) config.joint_renormalization = flags.joint_renorm;
    if (passed("--llm-endpoint")) config.llm.endpoint_url = flags.endpoint;
    if (passed("--model")) config.llm.model_name = flags.model;
    if (passed("--temperature")) config.llm.temperature = flags.temperature;
    if (passed("--max-tokens")) config.llm.max_tokens = flags.max_tokens;
    if (passed("--api-key-env")) config.llm.api_key_env_var = flags.api_key_env;
    if (passed("--cache-dir")) config.llm.cache_dir = flags.cache_dir;
    if (passed("--max-retries")) config.llm.max_retries = flags.max_retries;
    if (passed("--rpm")) config.llm.requests_per_minute = flags.rpm;
    if (passed("--offline")) config.llm.offline = flags.offline;
    return config;
}

int cmd_run(const CLI::App& cmd, const RunFlags& flags) {
    const ModelConfig config = resolve_config(cmd, flags);
    const fs::path corpus_path = resolve_bundled(flags.corpus, "data/vignettes.json");
    const fs::path utilities_path = resolve_bundled(flags.utilities, "data/utilities.csv");

    const auto corpus = load_vignettes(corpus_path);
    const auto table = UtilityTable::load_csv(utilities_path);
    const auto prompts = llm::PromptLibrary::load(flags.prompts_dir);

    Services services;
    services.utilities = &table;
    services.prompts = &prompts;
    std::unique_ptr<llm::HttpChatClient> client;
    if (bindings_for(config.variant).uses_llm()) {
        client = std::make_unique<llm::HttpChatClient>(config.llm);
        services.client = client.get();
    }

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);

    const RunResult run = run_variant(config, corpus, services, &g_interrupted);

    // Collect failures for diagnostics and exit-code selection.
    std::vector<std::string> missing_keys;
    int transport_failures = 0;
    for (const auto& v : run.vignettes) {
        for (const auto& it : v.iterations) {
            if (it.ok) continue;
            const auto pos = it.error.find("missing cache entry ");
            if (pos != std::string::npos)
                missing_keys.push_back(it.error.substr(pos + 20));
            if (it.error.find("offline mode") != std::string::npos ||
                it.error.find("retries exhausted") != std::string::npos ||
                it.error.find("connection failure") != std::string::npos)
                ++transport_failures;
            std::cerr << "fail " << v.vignette_id << " iteration: stage=" << it.stage << ": "
                      << it.error << "\n";
        }
    }
    if (!missing_keys.empty()) {
        std::sort(missing_keys.begin(), missing_keys.end());
        missing_keys.erase(std::unique(missing_keys.begin(), missing_keys.end()),
                           missing_keys.end());
        std::cerr << "offline run is missing " << missing_keys.size() << " cache entries:\n";
        for (const auto& key : missing_keys) std::cerr << "  " << key << "\n";
        return 3;
    }

    bool any_ok = false;
    for (const auto& v : run.vignettes) any_ok = any_ok || v.ok_count() > 0;
    if (!any_ok) {
        std::cerr << "no iteration succeeded\n";
        return transport_failures > 0 ? 3 : 4;
    }

    const auto report = evaluate_run(variant_name(config.variant), run, human_reference(),
                                     flags.bootstrap_reps, 0.95, config.seed);
    RunPaths paths{fs::path(flags.out_dir)};
    write_run_outputs(paths, config, corpus_path, prompts.hashes(), report);

    std::cout << "variant " << report.variant << ": delta=" << report.delta
              << " jsd=" << report.jsd_to_human << " ci=[" << report.delta_ci.low << ", "
              << report.delta_ci.high << "] failures=" << run.failed_iterations() << "/"
              << run.total_iterations() << "\n";
    std::cout << "reports written to " << paths.out_dir.string() << "\n";

    const double failure_rate = run.total_iterations() == 0
                                    ? 0.0
                                    : static_cast<double>(run.failed_iterations()) /
                                          static_cast<double>(run.total_iterations());
    if (run.interrupted || failure_rate > config.max_failure_rate) {
        std::cerr << (run.interrupted ? "run interrupted; partial results written\n"
                                      : "failure threshold exceeded\n");
        return 4;
    }
    return 0;
}

int cmd_validate(const std::string& corpus) {
    const fs::path path = resolve_bundled(corpus, "data/vignettes.json");
    const auto vignettes = load_vignettes(path);
    for (const auto& v : vignettes) {
        const auto items = v.all_items();
        SymbolicSemantics sem{std::set<OptionId>(items.begin(), items.end())};
        if (!sem.is_true_and_safe(v.actual_world(), v.observed_question(),
                                  Response::literal_no(), SemanticsMode::BaseLevel))
            throw CorpusError("vignette '" + v.id + "': denying the target is not true");
    }
    std::cout << "ok: " << vignettes.size() << " vignettes\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pragmatic question answering: model variants, simulation and reports"};
    app.require_subcommand(1);

    RunFlags flags;
    CLI::App* run = app.add_subcommand("run", "Run a model variant over a corpus");
    run->add_option("--variant", flags.variant, "Model variant name");
    run->add_option("--corpus", flags.corpus, "Corpus JSON path, or 'bundled'");
    run->add_option("--utilities", flags.utilities, "Utility table CSV path, or 'bundled'");
    run->add_option("--prompts", flags.prompts_dir, "Prompt template directory");
    run->add_option("--out-dir", flags.out_dir, "Output directory");
    run->add_option("--config", flags.config_file, "JSON config file (flags win)");
    run->add_option("--iterations", flags.iterations, "Simulation iterations");
    run->add_option("--seed", flags.seed, "Bootstrap seed");
    run->add_option("--workers", flags.workers, "Concurrent workers");
    run->add_option("--bootstrap-reps", flags.bootstrap_reps, "Bootstrap replicates");
    run->add_option("--alpha-questioner", flags.alpha_questioner, "Questioner rationality");
    run->add_option("--alpha-respondent", flags.alpha_respondent, "Respondent rationality");
    run->add_option("--alpha-policy", flags.alpha_policy, "Action policy temperature");
    run->add_option("--lambda-info", flags.lambda_info, "Belief-change weight");
    run->add_option("--n-responses", flags.n_responses, "Response proposals per call");
    run->add_option("--n-questions", flags.n_questions, "Question proposals per call");
    run->add_option("--n-goals", flags.n_goals, "Goal proposals per call");
    run->add_option("--max-failure-rate", flags.max_failure_rate,
                    "Failed-iteration fraction tolerated before exit 4");
    run->add_flag("--joint-renorm", flags.joint_renorm,
                  "Renormalize prompted-questioner scores over the whole grid");
    run->add_option("--llm-endpoint", flags.endpoint, "Chat-completion endpoint URL");
    run->add_option("--model", flags.model, "Model name");
    run->add_option("--temperature", flags.temperature, "Sampling temperature");
    run->add_option("--max-tokens", flags.max_tokens, "Completion token limit");
    run->add_option("--api-key-env", flags.api_key_env, "Env var holding the API key");
    run->add_option("--cache-dir", flags.cache_dir, "Record/replay cache directory");
    run->add_option("--max-retries", flags.max_retries, "Transport retries");
    run->add_option("--rpm", flags.rpm, "Requests per minute (0 = unlimited)");
    run->add_flag("--offline", flags.offline, "Serve only from the cache; fail on misses");

    std::string validate_target = "bundled";
    CLI::App* validate = app.add_subcommand("validate", "Check a corpus file");
    validate->add_option("corpus", validate_target, "Corpus JSON path, or 'bundled'");

    CLI::App* cache = app.add_subcommand("cache", "Inspect or move the prompt cache");
    cache->require_subcommand(1);
    std::string cache_dir = ".pqa-cache";
    std::string archive_path;
    CLI::App* cache_list = cache->add_subcommand("list", "List cached completions");
    CLI::App* cache_purge = cache->add_subcommand("purge", "Delete cached completions");
    CLI::App* cache_export = cache->add_subcommand("export", "Write a portable archive");
    cache_export->add_option("archive", archive_path, "Archive file")->required();
    CLI::App* cache_import = cache->add_subcommand("import", "Load a portable archive");
    cache_import->add_option("archive", archive_path, "Archive file")->required();
    for (CLI::App* sub : {cache_list, cache_purge, cache_export, cache_import})
        sub->add_option("--cache-dir", cache_dir, "Cache directory");

    try {
        app.parse(argc, argv);

        if (run->parsed()) return cmd_run(*run, flags);
        if (validate->parsed()) return cmd_validate(validate_target);
        if (cache->parsed()) {
            llm::PromptCache store{fs::path(cache_dir)};
            if (cache_list->parsed()) {
                for (const auto& record : store.records())
                    std::cout << record.key << "\t" << record.model << "\t"
                              << record.prompt.substr(0, 48) << "\n";
            } else if (cache_purge->parsed()) {
                std::cout << "purged " << store.purge() << " entries\n";
            } else if (cache_export->parsed()) {
                store.export_archive(archive_path);
                std::cout << "exported " << store.records().size() << " entries to "
                          << archive_path << "\n";
            } else if (cache_import->parsed()) {
                const auto n = llm::PromptCache::import_archive(archive_path, cache_dir);
                std::cout << "imported " << n << " entries into " << cache_dir << "\n";
            }
            return 0;
        }
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const CorpusError& e) {
        std::cerr << "corpus error: " << e.what() << "\n";
        return 2;
    } catch (const TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
