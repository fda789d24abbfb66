#include "dstrust/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace dstrust {

namespace {

std::string fixed(double v, int digits = 6)
{
    if (std::isnan(v)) {
        return "NA";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double parse_cell(const std::string& cell)
{
    if (cell == "NA") {
        return std::nan("");
    }
    return std::stod(cell);
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

constexpr const char* kSummaryHeader = "attack\tmae_mean\tmae_std\tabs_mean\tabs_std\tcells\tskipped\tseed";

} // namespace

SummaryRow summary_row(const ScenarioResult& result)
{
    return {to_string(result.config.attack),
            result.summary.mean,
            result.summary.stddev,
            result.conventional.mean,
            result.conventional.stddev,
            result.summary.cells,
            result.summary.skipped,
            result.config.seed.value_or(0)};
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows)
{
    out << "# mae = |actual - estimated| / advisors consulted, per item and iteration\n"
        << "# abs = |actual - estimated|, per item and iteration\n"
        << "# mean and sample std over all evaluated cells; skipped = cells with no responders\n"
        << kSummaryHeader << '\n';
    for (const auto& r : rows) {
        out << r.label << '\t' << fixed(r.mae_mean) << '\t' << fixed(r.mae_std) << '\t' << fixed(r.abs_mean) << '\t'
            << fixed(r.abs_std) << '\t' << r.cells << '\t' << r.skipped << '\t' << r.seed << '\n';
    }
}

std::vector<SummaryRow> read_summary(std::istream& in)
{
    std::vector<SummaryRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != kSummaryHeader) {
                throw std::invalid_argument("unexpected summary header: " + line);
            }
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        SummaryRow r;
        std::string mae_mean, mae_std, abs_mean, abs_std;
        if (!(row >> r.label >> mae_mean >> mae_std >> abs_mean >> abs_std >> r.cells >> r.skipped >> r.seed)) {
            throw std::invalid_argument("malformed summary row: " + line);
        }
        r.mae_mean = parse_cell(mae_mean);
        r.mae_std = parse_cell(mae_std);
        r.abs_mean = parse_cell(abs_mean);
        r.abs_std = parse_cell(abs_std);
        rows.push_back(std::move(r));
    }
    if (!header_seen) {
        throw std::invalid_argument("summary has no header row");
    }
    return rows;
}

void write_series(std::ostream& out, const ScenarioResult& result)
{
    out << "iteration\tmean_mae\tmean_attacker_credibility\tmean_honest_credibility\tmean_abs_error\n";
    for (const auto& it : result.iterations) {
        out << it.iteration << '\t' << fixed(it.mean_mae, 8) << '\t' << fixed(it.mean_attacker_credibility) << '\t'
            << fixed(it.mean_honest_credibility) << '\t' << fixed(it.mean_abs_error) << '\n';
    }
}

void write_item_matrix(std::ostream& out, const std::vector<std::vector<std::optional<double>>>& cells)
{
    out << "iteration";
    const std::size_t items = cells.empty() ? 0 : cells.front().size();
    for (std::size_t i = 0; i < items; ++i) {
        out << "\titem" << i;
    }
    out << '\n';
    for (std::size_t t = 0; t < cells.size(); ++t) {
        out << t + 1;
        for (const auto& c : cells[t]) {
            out << '\t' << (c ? fixed(*c, 8) : std::string("NA"));
        }
        out << '\n';
    }
}

void write_scenario_outputs(const std::filesystem::path& dir, const ScenarioResult& result)
{
    std::filesystem::create_directories(dir);
    {
        auto out = open_output(dir / "summary.txt");
        write_summary(out, {summary_row(result)});
        out << "# round failures (total conflict): " << result.round_failures << '\n'
            << "# abstentions: " << result.abstentions << '\n';
    }
    {
        auto out = open_output(dir / "series.tsv");
        write_series(out, result);
    }
    {
        auto out = open_output(dir / "item_mae.tsv");
        write_item_matrix(out, result.item_mae);
    }
    {
        auto out = open_output(dir / "item_abs_error.tsv");
        write_item_matrix(out, result.item_abs_error);
    }
    {
        auto out = open_output(dir / "trace.jsonl");
        for (const auto& line : result.round_traces) {
            out << line << '\n';
        }
    }
    {
        auto out = open_output(dir / "credibility.tsv");
        result.credibility.write(out);
    }
    {
        auto out = open_output(dir / "inquiries.tsv");
        result.inquiries.write(out);
    }
}

std::vector<SummaryRow> merge_summaries(const std::vector<std::filesystem::path>& dirs)
{
    if (dirs.empty()) {
        throw std::invalid_argument("no scenario directories given");
    }
    std::vector<std::pair<std::string, SummaryRow>> tagged;
    for (const auto& dir : dirs) {
        std::ifstream in(dir / "summary.txt");
        if (!in) {
            throw std::invalid_argument("no summary.txt in " + dir.string());
        }
        auto name = dir.filename().empty() ? dir.parent_path().filename() : dir.filename();
        for (auto& row : read_summary(in)) {
            tagged.emplace_back(name.string(), std::move(row));
        }
    }
    std::map<std::string, std::size_t> occurrences;
    for (const auto& [run, row] : tagged) {
        ++occurrences[row.label];
    }
    std::vector<SummaryRow> rows;
    for (auto& [run, row] : tagged) {
        if (occurrences[row.label] > 1) {
            row.label += "#" + run;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace dstrust
