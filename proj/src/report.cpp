#include "pqa/report.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "pqa/llm/client.hpp"

namespace pqa {

using nlohmann::json;

namespace {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string now_iso() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

} // namespace

EvaluationReport evaluate_run(const std::string& variant, const RunResult& run,
                              const HumanReference& human, int bootstrap_reps, double level,
                              unsigned seed) {
    EvaluationReport report;
    report.variant = variant;
    report.run = run;
    report.aggregate = run.aggregate();
    report.jsd_to_human = jsd(report.aggregate, human.proportions);
    report.delta = delta_score(report.aggregate, human);
    report.bootstrap_reps = bootstrap_reps;

    std::vector<Eigen::VectorXd> per_vignette;
    for (const auto& v : run.vignettes)
        if (v.ok_count() > 0) per_vignette.push_back(v.mean_probs());

    if (per_vignette.size() >= 2 && bootstrap_reps > 1) {
        report.delta_ci = bootstrap_ci(
            per_vignette.size(),
            [&](const std::vector<std::size_t>& indices) {
                Eigen::VectorXd mean = Eigen::VectorXd::Zero(5);
                for (const auto ix : indices) mean += per_vignette[ix];
                mean /= static_cast<double>(indices.size());
                return delta_score(mean, human);
            },
            bootstrap_reps, level, seed);
    } else {
        report.delta_ci = {report.delta, report.delta};
    }

    for (const auto& v : run.vignettes)
        for (const auto& it : v.iterations) {
            report.partial_mention_responses += it.partial_mention_responses;
            report.unclassified_mass += it.unclassified_mass;
        }
    return report;
}

std::string report_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "variant,vignette,category,proportion\n";
    const auto emit = [&](const std::string& vignette, const Eigen::VectorXd& probs) {
        for (std::size_t c = 0; c < kCategoryOrder.size(); ++c)
            out << report.variant << ',' << vignette << ','
                << category_label(kCategoryOrder[c]) << ','
                << format_double(probs(static_cast<Eigen::Index>(c))) << '\n';
    };
    for (const auto& v : report.run.vignettes) {
        if (v.ok_count() == 0) continue;
        emit(v.vignette_id, v.mean_probs());
    }
    emit("aggregate", report.aggregate);
    return out.str();
}

json report_summary(const EvaluationReport& report) {
    json j;
    j["variant"] = report.variant;
    j["jsd_to_human"] = report.jsd_to_human;
    j["delta"] = report.delta;
    j["delta_ci"] = {report.delta_ci.low, report.delta_ci.high};
    j["bootstrap_reps"] = report.bootstrap_reps;
    j["iterations_total"] = report.run.total_iterations();
    j["iterations_failed"] = report.run.failed_iterations();
    j["partial_mention_responses"] = report.partial_mention_responses;
    j["unclassified_mass"] = report.unclassified_mass;
    j["interrupted"] = report.run.interrupted;

    json aggregate;
    for (std::size_t c = 0; c < kCategoryOrder.size(); ++c)
        aggregate[category_label(kCategoryOrder[c])] =
            report.aggregate(static_cast<Eigen::Index>(c));
    j["aggregate"] = aggregate;

    json per_vignette = json::object();
    for (const auto& v : report.run.vignettes) {
        json entry;
        entry["iterations_failed"] = static_cast<int>(v.iterations.size()) - v.ok_count();
        if (v.ok_count() > 0) {
            const Eigen::VectorXd probs = v.mean_probs();
            json cats;
            for (std::size_t c = 0; c < kCategoryOrder.size(); ++c)
                cats[category_label(kCategoryOrder[c])] =
                    probs(static_cast<Eigen::Index>(c));
            entry["proportions"] = cats;
        }
        json failures = json::array();
        for (const auto& it : v.iterations)
            if (!it.ok) failures.push_back({{"stage", it.stage}, {"error", it.error}});
        if (!failures.empty()) entry["failures"] = failures;
        per_vignette[v.vignette_id] = entry;
    }
    j["vignettes"] = per_vignette;
    return j;
}

json config_to_json(const ModelConfig& config) {
    json j;
    j["variant"] = variant_name(config.variant);
    j["iterations"] = config.iterations;
    j["seed"] = config.seed;
    j["workers"] = config.workers;
    j["n_response_proposals"] = config.n_response_proposals;
    j["n_question_proposals"] = config.n_question_proposals;
    j["n_goal_proposals"] = config.n_goal_proposals;
    j["joint_renormalization"] = config.joint_renormalization;
    j["max_failure_rate"] = config.max_failure_rate;
    j["agent_params"] = {{"alpha_questioner", config.agent_params.alpha_questioner},
                         {"alpha_respondent", config.agent_params.alpha_respondent},
                         {"alpha_policy", config.agent_params.alpha_policy},
                         {"lambda_info", config.agent_params.lambda_info}};
    j["llm"] = {{"endpoint_url", config.llm.endpoint_url},
                {"model_name", config.llm.model_name},
                {"temperature", config.llm.temperature},
                {"max_tokens", config.llm.max_tokens},
                {"api_key_env_var", config.llm.api_key_env_var},
                {"cache_dir", config.llm.cache_dir.string()},
                {"max_retries", config.llm.max_retries},
                {"requests_per_minute", config.llm.requests_per_minute},
                {"offline", config.llm.offline}};
    return j;
}

ModelConfig config_from_json(const json& j, ModelConfig base) {
    if (j.contains("variant")) base.variant = variant_from_name(j["variant"].get<std::string>());
    base.iterations = j.value("iterations", base.iterations);
    base.seed = j.value("seed", base.seed);
    base.workers = j.value("workers", base.workers);
    base.n_response_proposals = j.value("n_response_proposals", base.n_response_proposals);
    base.n_question_proposals = j.value("n_question_proposals", base.n_question_proposals);
    base.n_goal_proposals = j.value("n_goal_proposals", base.n_goal_proposals);
    base.joint_renormalization = j.value("joint_renormalization", base.joint_renormalization);
    base.max_failure_rate = j.value("max_failure_rate", base.max_failure_rate);
    if (j.contains("agent_params")) {
        const auto& a = j["agent_params"];
        base.agent_params.alpha_questioner =
            a.value("alpha_questioner", base.agent_params.alpha_questioner);
        base.agent_params.alpha_respondent =
            a.value("alpha_respondent", base.agent_params.alpha_respondent);
        base.agent_params.alpha_policy = a.value("alpha_policy", base.agent_params.alpha_policy);
        base.agent_params.lambda_info = a.value("lambda_info", base.agent_params.lambda_info);
    }
    if (j.contains("llm")) {
        const auto& l = j["llm"];
        base.llm.endpoint_url = l.value("endpoint_url", base.llm.endpoint_url);
        base.llm.model_name = l.value("model_name", base.llm.model_name);
        base.llm.temperature = l.value("temperature", base.llm.temperature);
        base.llm.max_tokens = l.value("max_tokens", base.llm.max_tokens);
        base.llm.api_key_env_var = l.value("api_key_env_var", base.llm.api_key_env_var);
        if (l.contains("cache_dir"))
            base.llm.cache_dir = l["cache_dir"].get<std::string>();
        base.llm.max_retries = l.value("max_retries", base.llm.max_retries);
        base.llm.requests_per_minute =
            l.value("requests_per_minute", base.llm.requests_per_minute);
        base.llm.offline = l.value("offline", base.llm.offline);
    }
    return base;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return llm::hex64(llm::fnv1a64(buf.str()));
}

void write_run_outputs(const RunPaths& paths, const ModelConfig& config,
                       const std::filesystem::path& corpus_path,
                       const std::map<std::string, std::string>& prompt_hashes,
                       const EvaluationReport& report) {
    std::filesystem::create_directories(paths.out_dir);

    json manifest;
    manifest["config"] = config_to_json(config);
    manifest["corpus"] = corpus_path.string();
    manifest["corpus_hash"] = file_digest(corpus_path);
    manifest["prompt_hashes"] = prompt_hashes;
    manifest["started_at"] = now_iso();
    manifest["status"] = "running";
    write_file(paths.manifest(), manifest.dump(2) + "\n");

    write_file(paths.report(), report_csv(report));
    write_file(paths.summary(), report_summary(report).dump(2) + "\n");

    manifest["status"] = report.run.interrupted ? "partial" : "complete";
    manifest["finished_at"] = now_iso();
    manifest["outputs"] = {
        {"report_csv",
         {{"path", paths.report().filename().string()}, {"digest", file_digest(paths.report())}}},
        {"summary_json",
         {{"path", paths.summary().filename().string()},
          {"digest", file_digest(paths.summary())}}}};
    write_file(paths.manifest(), manifest.dump(2) + "\n");
}

} // namespace pqa
