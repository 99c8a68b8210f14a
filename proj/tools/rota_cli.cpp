#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rota/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rota: exact Rota-Baxter algebra toolkit"};
    app.require_subcommand(1);

    rota::RunConfig config;

    const auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input", config.input_path, "input JSON file");
        if (needs_input) in->required();
        sub->add_option("--output", config.output_path, "output file (default stdout)");
        sub->add_option("--precision", config.precision, "Laurent degree budget")
            ->default_val(24);
        sub->add_option("--seed", config.seed, "seed for sampled law checks")
            ->default_val(1);
    };

    add_common(app.add_subcommand("check", "run the law suites on an instance"), true);
    add_common(app.add_subcommand("urb-mul", "multiply two operator-ring elements"), true);
    add_common(app.add_subcommand("urb-dim", "dimension of the operator ring"), true);
    add_common(app.add_subcommand("split", "regular-singular split of an operator"), true);
    add_common(app.add_subcommand("birkhoff", "factorize a character over rooted forests"),
               true);
    auto* demo = app.add_subcommand("demo", "emit a deterministic worked example");
    demo->add_option("name", config.demo_name,
                     "one of: hecke, kernel, zerodiv, laurent, divided")
        ->required();
    add_common(demo, false);

    CLI11_PARSE(app, argc, argv);
    config.command = app.get_subcommands().front()->get_name();

    const rota::CommandResult result = rota::run_command(config);
    const std::string text = rota::render_report(result.report);
    if (config.output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(config.output_path);
        if (!out) {
            std::cerr << "cannot write " << config.output_path << "\n";
            return 2;
        }
        out << text;
    }
    if (result.exit_code != 0 && result.report.contains("error"))
        std::cerr << result.report["error"].get<std::string>() << "\n";
    return result.exit_code;
}
