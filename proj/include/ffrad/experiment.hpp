#pragma once

#include "ffrad/theorems.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace ffrad {

enum class Family { Random, PlaneSubset, PlaneUnion, FullPlane };

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view text);

/// One grid sweep of one checker. Cells are the cartesian product
/// q x n x k x size x param; every cell runs `trials` instances.
struct ExperimentConfig {
    TheoremId theorem = TheoremId::WeakProjBound;
    std::vector<std::uint32_t> q_values;
    std::vector<int> n_values;
    std::vector<int> k_values;           // empty: k = n-1 in each cell
    std::vector<std::uint64_t> sizes;    // ignored by the full_plane family
    std::vector<Rational> params;        // M (LargeESC, FullDim) or C (WeakProjBound)
    Family family = Family::Random;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::uint32_t max_q = kDefaultMaxFieldOrder;
    std::uint64_t max_space_size = kDefaultMaxSpaceSize;
    std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
    double wall_clock_seconds = 0;       // 0: unlimited
    std::uint64_t max_trials = kDefaultMaxTrials;
    unsigned jobs = 1;

    /// Throws ConfigInvalid.
    void validate() const;
    bool needs_param() const noexcept;
};

enum class RowStatus { Checked, PreconditionSkip, BudgetSkip, Error };

std::string_view to_string(RowStatus s);

struct ReportRow {
    std::uint64_t cell = 0;
    std::uint64_t trial = 0;
    RowStatus status = RowStatus::Checked;
    BoundReport report;
};

struct ExperimentSummary {
    std::uint64_t rows = 0;
    std::uint64_t checked = 0;
    std::uint64_t holds = 0;
    std::uint64_t violations = 0;
    std::uint64_t precondition_skips = 0;
    std::uint64_t budget_skips = 0;
    std::uint64_t errors = 0;

    bool success() const noexcept { return violations == 0 && errors == 0; }
};

struct ExperimentResult {
    std::vector<ReportRow> rows;
    ExperimentSummary summary;
};

/// Deterministic in (config, seed); independent of config.jobs.
ExperimentResult run_experiment(const ExperimentConfig& config);

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const ReportRow& row);
nlohmann::json to_json(const ExperimentSummary& s);
nlohmann::json to_json(const PipelineTrace& t);

void write_json(std::ostream& out, const ExperimentResult& result);
void write_csv(std::ostream& out, const ExperimentResult& result);

std::vector<std::string> csv_columns();

}  // namespace ffrad
