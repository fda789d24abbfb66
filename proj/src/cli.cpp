#include "dstrust/cli.hpp"

#include "dstrust/report.hpp"
#include "dstrust/simulation.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace dstrust {

namespace {

struct SimulateFlags {
    ScenarioConfig scenario;
    std::uint64_t seed = 0;
    std::string attack = "none";
    std::string ratings;
    std::string trust;
    std::string out = "trustsim_out";
    std::string config;
};

void add_simulate_options(CLI::App& cmd, SimulateFlags& f)
{
    auto& s = f.scenario;
    // Config file values are spliced in ahead of the real flags, so the last
    // occurrence of an option is the one that counts.
    cmd.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd.add_option("--config", f.config, "TOML file whose keys mirror the long flag names");
    cmd.add_option("--seed", f.seed, "Seed for every random draw (required)");
    cmd.add_option("--attack", f.attack, "none | sybil | camouflage | whitewash")->capture_default_str();
    cmd.add_option("--attacker-fraction", s.attacker_fraction, "Share of principals that attack")
        ->capture_default_str();
    cmd.add_option("--advisors", s.advisors, "Advisor principals before Sybil expansion")->capture_default_str();
    cmd.add_option("--items", s.items, "Subjects evaluated per iteration")->capture_default_str();
    cmd.add_option("--iterations", s.iterations, "Iterations of requests")->capture_default_str();
    cmd.add_option("--sybil-count", s.sybil_count, "Fake identities per Sybil attacker")->capture_default_str();
    cmd.add_option("--switch-iteration", s.switch_iteration, "Iteration at which camouflage attackers turn")
        ->capture_default_str();
    cmd.add_option("--reset-period", s.reset_period, "Iterations between whitewashing resets")
        ->capture_default_str();
    cmd.add_option("--participation-threshold", s.participation_threshold,
                   "Minimum cross-validated accuracy for an advisor to answer")
        ->capture_default_str();
    cmd.add_option("--k-folds", s.k_folds, "Cross-validation folds")->capture_default_str();
    cmd.add_option("--max-depth", s.tree.max_depth, "Decision tree depth limit")->capture_default_str();
    cmd.add_option("--min-leaf", s.tree.min_leaf, "Minimum records per tree leaf")->capture_default_str();
    cmd.add_option("--initial-credibility", s.initial_credibility, "Credibility of newcomers")
        ->capture_default_str();
    cmd.add_option("--initial-budget", s.initial_budget, "Starting inquiry budget per pair")->capture_default_str();
    cmd.add_option("--budget-period", s.budget_period, "Rounds between budget replenishments")
        ->capture_default_str();
    cmd.add_option("--noise", s.noise, "Label flip probability of the synthetic generator")->capture_default_str();
    cmd.add_option("--records-per-advisor", s.records_per_advisor, "Synthetic interactions per advisor")
        ->capture_default_str();
    cmd.add_option("--ratings-per-item", s.ratings_per_item, "Synthetic ratings per item")->capture_default_str();
    cmd.add_option("--ratings", f.ratings, "Ratings file to use instead of synthetic data");
    cmd.add_option("--trust", f.trust, "Trust statements file accompanying --ratings");
    cmd.add_option("--out", f.out, "Output directory")->capture_default_str();
}

int cmd_simulate(CLI::App& cmd, SimulateFlags& f, std::ostream& out, std::ostream& err)
{
    ScenarioConfig config = f.scenario;
    if (cmd.count("--seed") > 0) {
        config.seed = f.seed;
    }
    try {
        config.attack = parse_attack_kind(f.attack);
    } catch (const std::invalid_argument& e) {
        err << "attack: " << e.what() << '\n';
        return kExitUsage;
    }
    if (!f.ratings.empty()) {
        config.ratings_path = f.ratings;
    }
    if (!f.trust.empty()) {
        config.trust_path = f.trust;
    }
    try {
        config.validate();
    } catch (const ConfigError& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kExitUsage;
    }

    ScenarioResult result;
    try {
        result = run_scenario(config);
    } catch (const ConfigError& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "simulation failed: " << e.what() << '\n';
        return kExitRuntime;
    }

    try {
        const std::filesystem::path dir(f.out);
        write_scenario_outputs(dir, result);
        std::ofstream echo(dir / "effective_config.toml", std::ios::binary);
        echo << "# effective configuration; pass back with --config to rerun\n";
        std::istringstream lines(cmd.config_to_str(true, false));
        for (std::string line; std::getline(lines, line);) {
            if (line.rfind("config=", 0) != 0) {
                echo << line << '\n';
            }
        }
    } catch (const std::exception& e) {
        err << "writing outputs failed: " << e.what() << '\n';
        return kExitRuntime;
    }
    write_summary(out, {summary_row(result)});
    return kExitOk;
}

std::string safe_file_name(const std::string& label)
{
    std::string name;
    for (char c : label) {
        name.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_');
    }
    return name;
}

int cmd_ingest(const std::string& ratings, const std::string& trust, const std::string& out_dir, std::ostream& out,
               std::ostream& err)
{
    IngestResult ingested;
    try {
        std::optional<std::filesystem::path> trust_path;
        if (!trust.empty()) {
            trust_path = trust;
        }
        ingested = ingest_epinions(ratings, trust_path);
    } catch (const std::exception& e) {
        err << "ingest failed: " << e.what() << '\n';
        return kExitRuntime;
    }

    const auto& s = ingested.stats;
    std::ostringstream stats;
    stats << s.users << " users, " << s.items << " items, " << s.reviews << " reviews, " << s.skipped
          << " skipped\n";
    if (!trust.empty()) {
        stats << s.trust_statements << " trust statements, " << s.trust_skipped << " skipped\n";
    }

    try {
        const std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir / "datasets");
        const auto& pop = ingested.population;
        for (std::size_t i = 0; i < pop.advisors.size(); ++i) {
            std::ofstream f(dir / "datasets" / (safe_file_name(pop.advisor_labels[i]) + ".csv"), std::ios::binary);
            pop.advisors[i].write_csv(f);
        }
        std::ofstream items(dir / "items.csv", std::ios::binary);
        items << "item";
        for (const auto& name : pop.schema) {
            items << ',' << name;
        }
        items << ",ratings,ground_truth\n";
        items << std::setprecision(17);
        for (const auto& item : pop.items) {
            items << item.label;
            for (double v : item.features) {
                items << ',' << v;
            }
            items << ',' << item.ratings.size() << ',' << item.ground_truth.value() << '\n';
        }
        std::ofstream(dir / "stats.txt", std::ios::binary) << stats.str();
    } catch (const std::exception& e) {
        err << "writing outputs failed: " << e.what() << '\n';
        return kExitRuntime;
    }
    out << stats.str();
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& dirs, const std::string& out_file, std::ostream& out,
               std::ostream& err)
{
    std::vector<SummaryRow> rows;
    try {
        std::vector<std::filesystem::path> paths(dirs.begin(), dirs.end());
        rows = merge_summaries(paths);
    } catch (const std::exception& e) {
        err << "report: " << e.what() << '\n';
        return kExitUsage;
    }
    if (out_file.empty()) {
        write_summary(out, rows);
        return kExitOk;
    }
    std::ofstream f(out_file, std::ios::binary);
    if (!f) {
        err << "report: cannot write " << out_file << '\n';
        return kExitRuntime;
    }
    write_summary(f, rows);
    return kExitOk;
}

// Turns `simulate --config FILE` into the equivalent flags, placed right
// after the subcommand name. Keys may sit at top level or under [simulate].
std::vector<std::string> expand_config(const std::vector<std::string>& args)
{
    auto sub = std::find(args.begin(), args.end(), "simulate");
    if (sub == args.end()) {
        return args;
    }
    std::string path;
    for (auto it = sub + 1; it != args.end(); ++it) {
        if (*it == "--config" && it + 1 != args.end()) {
            path = *(it + 1);
        } else if (it->rfind("--config=", 0) == 0) {
            path = it->substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream in(path);
    if (!in) {
        throw CLI::FileError::Missing(path);
    }
    std::vector<std::string> injected;
    for (const auto& item : CLI::ConfigTOML().from_config(in)) {
        if (item.name == "++" || item.name == "--" || item.name == "config") {
            continue;
        }
        if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents.front() == "simulate")) {
            throw CLI::ConversionError("config section '" + item.parents.front() + "' is not recognised");
        }
        injected.push_back("--" + item.name);
        injected.insert(injected.end(), item.inputs.begin(), item.inputs.end());
    }
    std::vector<std::string> out(args.begin(), sub + 1);
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), sub + 1, args.end());
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Credibility-weighted trust aggregation and attack simulator", "trustsim"};
    app.require_subcommand(1);

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Run one attack scenario and write its reports");
    add_simulate_options(*simulate, sim);

    std::string ratings, trust, ingest_out = "ingest_out";
    auto* ingest = app.add_subcommand("ingest", "Convert a ratings file into advisor datasets");
    ingest->add_option("--ratings", ratings, "user item rating lines")->required()->check(CLI::ExistingFile);
    ingest->add_option("--trust", trust, "truster trustee value lines")->check(CLI::ExistingFile);
    ingest->add_option("--out", ingest_out, "Output directory")->capture_default_str();

    std::vector<std::string> dirs;
    std::string report_out;
    auto* report = app.add_subcommand("report", "Merge scenario summaries into one table");
    report->add_option("dirs", dirs, "Scenario output directories")->required();
    report->add_option("--out", report_out, "Write the table here instead of stdout");

    std::vector<std::string> expanded;
    std::vector<const char*> argv;
    try {
        expanded = expand_config(args);
        argv.reserve(expanded.size());
        for (const auto& a : expanded) {
            argv.push_back(a.c_str());
        }
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    if (simulate->parsed()) {
        return cmd_simulate(*simulate, sim, out, err);
    }
    if (ingest->parsed()) {
        return cmd_ingest(ratings, trust, ingest_out, out, err);
    }
    return cmd_report(dirs, report_out, out, err);
}

} // namespace dstrust
