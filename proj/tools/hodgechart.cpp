// Command-line front end; talks to the library only through hodgechart.h.

#include "hodgechart.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kUsage = 64;
constexpr int kNoInput = 66;
constexpr int kCantCreate = 73;

struct RunConfig {
    std::string subcommand;
    std::string input;
    std::string output;
    std::string csv;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string family, parabolic, mode;
};

std::string fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << data;
    return static_cast<bool>(out);
}

int run(const RunConfig& cfg) {
    std::string input;
    if (!read_file(cfg.input, input)) {
        std::cerr << "error: cannot read input file '" << cfg.input << "'\n";
        return kNoInput;
    }
    double tol = cfg.tol ? *cfg.tol : hc_default_tolerance(cfg.subcommand.c_str());
    nlohmann::json options = {{"tol", tol}, {"seed", cfg.seed}, {"jobs", cfg.jobs}};
    nlohmann::json config = options;
    if (cfg.subcommand == "siegel") {
        options["family"] = config["family"] = cfg.family;
        options["parabolic"] = config["parabolic"] = cfg.parabolic;
    }
    if (cfg.subcommand == "positivity") options["mode"] = config["mode"] = cfg.mode;

    char* json_out = nullptr;
    char* csv_out = nullptr;
    int status = hc_report(cfg.subcommand.c_str(), input.c_str(), options.dump().c_str(), &json_out, &csv_out);
    if (status != HC_OK) {
        std::cerr << "error: " << hc_last_error() << "\n";
        return status;
    }
    nlohmann::json result = nlohmann::json::parse(json_out);
    std::string csv = csv_out ? csv_out : "";
    hc_free_string(json_out);
    hc_free_string(csv_out);

    nlohmann::json report = {{"tool", "hodgechart"},
                             {"version", hc_version()},
                             {"subcommand", cfg.subcommand},
                             {"input_hash", "fnv1a64:" + fnv1a64(input)},
                             {"config", config},
                             {"result", result}};
    std::string text = report.dump(2) + "\n";
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << text;
    } else if (!write_file(cfg.output, text)) {
        std::cerr << "error: cannot write '" << cfg.output << "'\n";
        return kCantCreate;
    }
    if (!cfg.csv.empty()) {
        if (csv.empty()) std::cerr << "warning: subcommand '" << cfg.subcommand << "' produces no CSV table\n";
        if (!write_file(cfg.csv, csv)) {
            std::cerr << "error: cannot write '" << cfg.csv << "'\n";
            return kCantCreate;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hodgechart: nilpotent cones, monomial charts, LMHS bookkeeping and Hodge metric checks"};
    app.set_version_flag("--version", std::string(hc_version()));
    app.require_subcommand(1, 1);
    RunConfig cfg;
    double tol = 0;

    auto common = [&](CLI::App* sub, bool input_required = true) {
        auto* in = sub->add_option("--input,-i", cfg.input, "input JSON file");
        if (input_required) in->required();
        sub->add_option("--output,-o", cfg.output, "report path (default stdout)");
        sub->add_option("--csv", cfg.csv, "CSV table path");
        sub->add_option("--tol", tol, "tolerance (subcommand specific)")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    };

    auto* charts = app.add_subcommand("charts", "relation spaces, index map and monomial atlas of a nilpotent cone");
    common(charts);
    auto* lmhs = app.add_subcommand("lmhs", "graded LMHS dimensions of a normal crossing degeneration");
    common(lmhs);
    auto* curvature = app.add_subcommand("curvature", "Hodge metric asymptotics: curvature limit, expansion fit, residue");
    common(curvature);
    auto* siegel = app.add_subcommand("siegel", "Siegel-set boundedness probe in Sp(4)");
    common(siegel, false);
    siegel->add_option("--cone", cfg.input, "cone JSON file (same as --input)");
    siegel->add_option("--family", cfg.family, "ray family, e.g. \"y=(T,1)\"");
    siegel->add_option("--parabolic", cfg.parabolic, "minimal or maximal")
        ->check(CLI::IsMember({"minimal", "maximal"}));
    auto* positivity = app.add_subcommand("positivity", "curvature identity, numerical dimension and sigma(Q) ranks");
    common(positivity);
    positivity->add_option("--mode", cfg.mode, "sigma1, sigma2 or ndim")
        ->required()
        ->check(CLI::IsMember({"sigma1", "sigma2", "ndim"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    for (auto* sub : app.get_subcommands()) {
        cfg.subcommand = sub->get_name();
        if (sub->count("--tol")) cfg.tol = tol;
    }
    if (cfg.input.empty()) {
        std::cerr << "error: an input file is required (--input or --cone)\n";
        return kUsage;
    }
    return run(cfg);
}
