#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "pqa/stats.hpp"
#include "pqa/variants.hpp"

// Fit statistics, report files and the run manifest. Reports carry no
// timestamps so that a replayed run is byte-identical; timing lives in the
// manifest.

namespace pqa {

struct EvaluationReport {
    std::string variant;
    Eigen::VectorXd aggregate; // canonical category order
    double jsd_to_human = 0.0;
    double delta = 0.0;
    Interval delta_ci;
    int bootstrap_reps = 0;
    RunResult run;
    int partial_mention_responses = 0;
    double unclassified_mass = 0.0;
};

EvaluationReport evaluate_run(const std::string& variant, const RunResult& run,
                              const HumanReference& human, int bootstrap_reps, double level,
                              unsigned seed);

/// Long-format rows: variant,vignette,category,proportion. The aggregate
/// appears under the vignette name "aggregate".
std::string report_csv(const EvaluationReport& report);

nlohmann::json report_summary(const EvaluationReport& report);

nlohmann::json config_to_json(const ModelConfig& config);
ModelConfig config_from_json(const nlohmann::json& j, ModelConfig base);

std::string file_digest(const std::filesystem::path& path);

struct RunPaths {
    std::filesystem::path out_dir;
    std::filesystem::path manifest() const { return out_dir / "manifest.json"; }
    std::filesystem::path report() const { return out_dir / "report.csv"; }
    std::filesystem::path summary() const { return out_dir / "summary.json"; }
};

// Writes the manifest (status "running") before any report, then the report
// files, then the final manifest with content digests and status "complete"
// or "partial".
void write_run_outputs(const RunPaths& paths, const ModelConfig& config,
                       const std::filesystem::path& corpus_path,
                       const std::map<std::string, std::string>& prompt_hashes,
                       const EvaluationReport& report);

} // namespace pqa
