// Command-line front end: builds single configurations, sweeps the catalog,
// reports the flat circle-quotient models, and runs the acceptance suite.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "k3g2/acceptance.hpp"
#include "k3g2/pipeline.hpp"
#include "k3g2/report.hpp"

namespace {

// "none" keeps no nodes (full smoothing); "1,3,4" keeps those nodes.
k3g2::KeepSet parse_keep(const std::string& text) {
    if (text == "none")
        return std::set<int>{};
    std::set<int> nodes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(item, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != item.size())
            throw CLI::ValidationError("--keep", "'" + item + "' is not an integer");
        nodes.insert(value);
    }
    if (nodes.empty())
        throw CLI::ValidationError("--keep", "expected 'none' or a comma-separated list");
    return nodes;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic builder for torus quotients modeled on K3 configurations"};
    app.require_subcommand(1);

    // --- build ---------------------------------------------------------
    auto* build = app.add_subcommand("build", "Build one configuration and report it");
    int build_kind = 0;
    std::string keep1_text;
    std::string keep2_text;
    std::string config_path;
    std::string build_format = "json";
    bool no_crosscheck = false;
    auto* kind_opt = build->add_option("--kind", build_kind, "Family selector (1 or 2)")
                         ->check(CLI::IsMember({1, 2}));
    auto* keep1_opt = build->add_option(
        "--keep1", keep1_text, "Nodes kept singular in the first definite block ('none' or e.g. '1,3,4')");
    auto* keep2_opt = build->add_option(
        "--keep2", keep2_text, "Nodes kept singular in the second definite block");
    auto* config_opt = build->add_option("--config", config_path, "JSON config file")
                           ->excludes(kind_opt)
                           ->excludes(keep1_opt)
                           ->excludes(keep2_opt);
    build->add_option("--format", build_format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    build->add_flag("--no-crosscheck", no_crosscheck, "Skip the independent double computations");

    // --- catalog -------------------------------------------------------
    auto* catalog = app.add_subcommand("catalog", "Sweep every named configuration in one family");
    int catalog_kind = 0;
    std::string catalog_format = "json";
    catalog->add_option("--kind", catalog_kind, "Family selector (1 or 2)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    catalog->add_option("--format", catalog_format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));

    // --- flat ----------------------------------------------------------
    auto* flat = app.add_subcommand("flat", "Report one flat circle-quotient model");
    int flat_kind = 0;
    int flat_n = 0;
    std::string flat_format = "json";
    flat->add_option("--kind", flat_kind, "Family selector (1 or 2)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    flat->add_option("--n", flat_n, "Cyclic fiber order (1..8)")
        ->required()
        ->check(CLI::Range(1, 8));
    flat->add_option("--format", flat_format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));

    // --- verify-all ----------------------------------------------------
    auto* verify = app.add_subcommand("verify-all", "Run the full acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            k3g2::OrbifoldSpec spec;
            if (config_opt->count() > 0) {
                spec = k3g2::parse_spec_json(read_file(config_path));
            } else {
                if (kind_opt->count() == 0)
                    throw std::runtime_error("build requires --kind (or --config)");
                spec.kind = build_kind;
                if (keep1_opt->count() > 0)
                    spec.keep1 = parse_keep(keep1_text);
                if (keep2_opt->count() > 0)
                    spec.keep2 = parse_keep(keep2_text);
            }
            if (no_crosscheck)
                spec.crosscheck = false;
            k3g2::OrbifoldReport rep = k3g2::run_pipeline(spec);
            std::cout << (build_format == "text" ? k3g2::report_to_text(rep)
                                                 : k3g2::report_to_json(rep))
                      << "\n";
            return rep.valid ? 0 : 1;
        }
        if (catalog->parsed()) {
            k3g2::CatalogResult cat = k3g2::run_catalog(catalog_kind);
            std::cout << (catalog_format == "text" ? k3g2::catalog_to_text(cat)
                                                   : k3g2::catalog_to_json(cat))
                      << "\n";
            return cat.all_valid && cat.labels_complete ? 0 : 1;
        }
        if (flat->parsed()) {
            k3g2::FlatModelReport rep = k3g2::flat_model_report(flat_kind, flat_n);
            std::cout << (flat_format == "text" ? k3g2::flat_report_to_text(rep)
                                                : k3g2::flat_report_to_json(rep))
                      << "\n";
            return rep.valid ? 0 : 1;
        }
        if (verify->parsed()) {
            k3g2::AcceptanceSummary summary = k3g2::run_acceptance();
            std::cout << k3g2::acceptance_lines(summary);
            return summary.all_passed ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
