#include <iostream>

#include <CLI11.hpp>

#include "coindex/verify.hpp"

int main(int argc, char** argv) {
    CLI::App app{"coindex - coincidence invariants and index-theorem verification for pairs of holomorphic self-maps"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run a verification from a JSON config");
    std::string config_path;
    int order = 0;
    std::string mode;
    std::string report_format = "text";
    bool calibrate = false;
    bool timing = false;
    verify->add_option("config", config_path, "config file (JSON)")->required();
    verify->add_option("--order", order, "truncation order override");
    verify->add_option("--mode", mode, "exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    verify->add_option("--report", report_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    verify->add_flag("--calibrate", calibrate, "print the sign-calibration record first");
    verify->add_flag("--timing", timing, "include timing in the report");

    auto* examples = app.add_subcommand("examples", "print a built-in example config");
    std::string example_name;
    examples->add_option("name", example_name, "example name (omit to list)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (examples->parsed()) {
            auto all = coindex::builtin_configs();
            if (example_name.empty()) {
                for (const auto& [k, v] : all) std::cout << k << "\n";
                return 0;
            }
            auto it = all.find(example_name);
            if (it == all.end()) {
                std::cerr << "unknown example: " << example_name << "\n";
                return 2;
            }
            std::cout << it->second << "\n";
            return 0;
        }
        auto cfg = coindex::VerificationConfig::from_file(config_path);
        if (order > 0) cfg.order = order;
        if (!mode.empty()) cfg.mode = mode;
        if (calibrate) {
            auto rec = coindex::calibrate_signs(cfg.order > 0 ? cfg.order : 10);
            std::cout << "calibration: cs: " << rec.cs_note << "\n";
            std::cout << "calibration: bb: sign " << (rec.bb_sign > 0 ? "+1" : "-1") << " ("
                      << rec.bb_note << ")\n";
            std::cout << "calibration: ls: sign " << (rec.ls_sign > 0 ? "+1" : "-1") << " ("
                      << rec.ls_note << ")\n";
            if (!rec.consistent) {
                std::cerr << "calibration inconsistent; refusing to verify\n";
                return 1;
            }
        }
        auto report = coindex::run_verification(cfg);
        if (report_format == "json")
            std::cout << report.to_json(timing) << "\n";
        else
            std::cout << report.to_text();
        return report.exit_code();
    } catch (const coindex::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const coindex::hypothesis_error& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
