#pragma once

#include "dstrust/simulation.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dstrust {

/// One row of the attack-comparison table.
struct SummaryRow {
    std::string label;
    double mae_mean = 0.0;
    double mae_std = 0.0;
    double abs_mean = 0.0;
    double abs_std = 0.0;
    std::size_t cells = 0;
    std::size_t skipped = 0;
    std::uint64_t seed = 0;
};

SummaryRow summary_row(const ScenarioResult& result);

/// Tab-separated table with a comment header explaining both error columns.
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary(std::istream& in);

/// Columns: iteration, mean_mae, mean_attacker_credibility,
/// mean_honest_credibility, mean_abs_error. Missing values print as NA.
void write_series(std::ostream& out, const ScenarioResult& result);

/// Per-item error matrix, one row per iteration.
void write_item_matrix(std::ostream& out, const std::vector<std::vector<std::optional<double>>>& cells);

/// Writes summary.txt, series.tsv, item_mae.tsv, item_abs_error.tsv,
/// trace.jsonl, credibility.tsv and inquiries.tsv into `dir`.
void write_scenario_outputs(const std::filesystem::path& dir, const ScenarioResult& result);

/// Reads summary.txt from each directory. Labels that occur more than once
/// are suffixed with `#<directory name>`. Throws std::invalid_argument when
/// the list is empty or a directory has no summary.
std::vector<SummaryRow> merge_summaries(const std::vector<std::filesystem::path>& dirs);

} // namespace dstrust
