#include "dstrust/adversary.hpp"
#include "dstrust/credibility.hpp"
#include "dstrust/dst.hpp"
#include "dstrust/incentives.hpp"
#include "dstrust/learner.hpp"
#include "dstrust/report.hpp"
#include "dstrust/simulation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace dstrust;

namespace {

using Triple = std::tuple<double, double, double>;

FrameDistribution to_mass(const Triple& t)
{
    return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

Triple to_tuple(const FrameDistribution& d)
{
    return {d.trust(), d.distrust(), d.uncertainty()};
}

Verdict to_verdict(const std::string& s)
{
    if (s.size() != 1) {
        throw std::invalid_argument("verdict must be 'T' or 'N'");
    }
    return verdict_from_char(s[0]);
}

std::string from_verdict(Verdict v)
{
    return std::string(1, to_char(v));
}

AdvisorDataset make_dataset(const std::vector<std::vector<double>>& features, const std::vector<std::string>& labels,
                            std::vector<std::string> schema)
{
    if (features.size() != labels.size()) {
        throw std::invalid_argument("features and labels differ in length");
    }
    if (schema.empty() && !features.empty()) {
        for (std::size_t i = 0; i < features.front().size(); ++i) {
            schema.push_back("x" + std::to_string(i));
        }
    }
    AdvisorDataset data(std::move(schema));
    for (std::size_t i = 0; i < features.size(); ++i) {
        data.add({features[i], to_verdict(labels[i])});
    }
    return data;
}

py::dict result_to_dict(const ScenarioResult& r)
{
    py::dict d;
    py::list iterations;
    for (const auto& it : r.iterations) {
        py::dict row;
        row["iteration"] = it.iteration;
        row["mean_mae"] = it.mean_mae;
        row["mean_abs_error"] = it.mean_abs_error;
        row["mean_attacker_credibility"] = it.mean_attacker_credibility;
        row["mean_honest_credibility"] = it.mean_honest_credibility;
        row["cells"] = it.cells;
        row["skipped"] = it.skipped;
        iterations.append(row);
    }
    d["iterations"] = iterations;
    d["summary"] = py::make_tuple(r.summary.mean, r.summary.stddev);
    d["conventional"] = py::make_tuple(r.conventional.mean, r.conventional.stddev);
    d["cells"] = r.summary.cells;
    d["skipped"] = r.summary.skipped;
    d["round_failures"] = r.round_failures;
    d["abstentions"] = r.abstentions;
    d["item_mae"] = r.item_mae;
    d["reentry_credibility"] = [&] {
        std::vector<double> v;
        for (const auto& e : r.reentries) {
            v.push_back(e.credibility);
        }
        return v;
    }();
    std::ostringstream summary, series;
    write_summary(summary, {summary_row(r)});
    write_series(series, r);
    d["summary_text"] = summary.str();
    d["series_text"] = series.str();
    return d;
}

} // namespace

PYBIND11_MODULE(_dstrust, m)
{
    m.doc() = "Credibility-weighted Dempster-Shafer trust aggregation and attack simulation";

    py::register_exception<TotalConflict>(m, "TotalConflict", PyExc_ArithmeticError);
    py::register_exception<EmptyEvidence>(m, "EmptyEvidence", PyExc_ValueError);
    py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);

    m.def(
        "mass_from_recommendation",
        [](const std::string& verdict, double credibility) {
            return to_tuple(mass_from_recommendation(to_verdict(verdict), Probability(credibility)));
        },
        py::arg("verdict"), py::arg("credibility"), "(m_T, m_N, m_U) for one verdict at a credibility");
    m.def(
        "combine", [](const Triple& a, const Triple& b) { return to_tuple(combine(to_mass(a), to_mass(b))); },
        py::arg("a"), py::arg("b"));
    m.def(
        "combine_all",
        [](const std::vector<Triple>& masses) {
            std::vector<MassFunction> ms;
            for (const auto& t : masses) {
                ms.push_back(to_mass(t));
            }
            return to_tuple(combine_all(ms));
        },
        py::arg("masses"));
    m.def(
        "decide", [](const Triple& beliefs) { return from_verdict(decide(to_mass(beliefs))); }, py::arg("beliefs"));
    m.def(
        "estimated_trust", [](const Triple& beliefs) { return estimated_trust(to_mass(beliefs)).value(); },
        py::arg("beliefs"));
    m.def(
        "updated_credibility",
        [](double current, const std::string& given, const Triple& beliefs) {
            return updated_credibility(Probability(current), to_verdict(given), to_mass(beliefs)).value();
        },
        py::arg("current"), py::arg("given"), py::arg("beliefs"));
    m.def(
        "replenishment",
        [](std::uint64_t answered, double credibility) { return replenishment(answered, Probability(credibility)); },
        py::arg("answered"), py::arg("credibility"), "|E| + ceil(|E| * Cr) + 1");
    m.def(
        "camouflage_verdict",
        [](const std::string& honest, std::size_t iteration, std::size_t switch_iteration) {
            return from_verdict(camouflage_verdict(to_verdict(honest), iteration, switch_iteration));
        },
        py::arg("honest"), py::arg("iteration"), py::arg("switch_iteration"));
    m.def(
        "ground_truth_trust", [](const std::vector<int>& ratings) { return ground_truth_trust(ratings).value(); },
        py::arg("ratings"));
    m.def(
        "mae",
        [](double actual, double estimated, std::size_t consulted) {
            return mae(Probability(actual), Probability(estimated), consulted);
        },
        py::arg("actual"), py::arg("estimated"), py::arg("consulted"));

    py::class_<DecisionTree>(m, "DecisionTree")
        .def(
            "predict", [](const DecisionTree& t, const std::vector<double>& x) { return from_verdict(t.predict(x)); },
            py::arg("features"))
        .def_property_readonly("depth", &DecisionTree::depth)
        .def_property_readonly("leaf_count", &DecisionTree::leaf_count)
        .def_property_readonly("node_count", &DecisionTree::node_count);

    m.def(
        "train_tree",
        [](const std::vector<std::vector<double>>& features, const std::vector<std::string>& labels,
           std::size_t max_depth, std::size_t min_leaf) {
            return train_tree(make_dataset(features, labels, {}), TreeParams{max_depth, min_leaf});
        },
        py::arg("features"), py::arg("labels"), py::arg("max_depth") = 8, py::arg("min_leaf") = 2);
    m.def(
        "self_assess",
        [](const std::vector<std::vector<double>>& features, const std::vector<std::string>& labels,
           std::size_t folds, double threshold, bool resources_available, std::uint64_t seed, std::size_t max_depth,
           std::size_t min_leaf) {
            const auto a = self_assess(make_dataset(features, labels, {}),
                                       {folds, threshold, resources_available, seed, {max_depth, min_leaf}});
            py::dict d;
            d["accuracy"] = a.accuracy.value();
            d["folds"] = a.folds;
            d["participate"] = a.participate;
            d["reduced_folds"] = a.reduced_folds;
            return d;
        },
        py::arg("features"), py::arg("labels"), py::arg("folds") = 10, py::arg("threshold") = 0.7,
        py::arg("resources_available") = true, py::arg("seed") = 0, py::arg("max_depth") = 8,
        py::arg("min_leaf") = 2);

    m.def(
        "run_scenario",
        [](std::uint64_t seed, const std::string& attack, std::size_t advisors, double attacker_fraction,
           std::size_t items, std::size_t iterations, std::size_t sybil_count, std::size_t switch_iteration,
           std::size_t reset_period, double noise, double participation_threshold, std::size_t k_folds) {
            ScenarioConfig c;
            c.seed = seed;
            c.attack = parse_attack_kind(attack);
            c.advisors = advisors;
            c.attacker_fraction = attacker_fraction;
            c.items = items;
            c.iterations = iterations;
            c.sybil_count = sybil_count;
            c.switch_iteration = switch_iteration;
            c.reset_period = reset_period;
            c.noise = noise;
            c.participation_threshold = participation_threshold;
            c.k_folds = k_folds;
            ScenarioResult result;
            {
                py::gil_scoped_release release;
                result = run_scenario(c);
            }
            return result_to_dict(result);
        },
        py::arg("seed"), py::arg("attack") = "none", py::arg("advisors") = 20, py::arg("attacker_fraction") = 0.3,
        py::arg("items") = 10, py::arg("iterations") = 10, py::arg("sybil_count") = 4,
        py::arg("switch_iteration") = 5, py::arg("reset_period") = 3, py::arg("noise") = 0.1,
        py::arg("participation_threshold") = 0.7, py::arg("k_folds") = 10);
}
