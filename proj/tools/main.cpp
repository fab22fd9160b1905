#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "flagvar/cli.hpp"

namespace {

void add_common(CLI::App* cmd, flagvar::RunOptions& opt) {
    cmd->add_option("--field", opt.field, "field tag: a prime, or q for the rationals")
        ->capture_default_str();
    cmd->add_flag("--text", opt.text, "render the report as plain text instead of JSON");
}

void add_sampling(CLI::App* cmd, flagvar::RunOptions& opt) {
    cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    cmd->add_option("--trials", opt.trials, "number of random trials")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    flagvar::RunOptions opt;
    CLI::App app{"flag space and flag variety verification toolkit"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    struct CommandSpec {
        const char* name;
        const char* help;
        bool sampling;
    };
    const CommandSpec table[] = {
        {"stats", "incidence counts of the space and its pencils", false},
        {"verify-pencils", "pencils are exactly the maximal cliques of relatedness", false},
        {"verify-net", "flags on each line form a net of rows and columns", false},
        {"verify-4path", "closed 4-paths avoid type-1 pencils", false},
        {"verify-incidence", "kernel membership reads as geometric incidence", true},
        {"verify-pencil-lines", "pencil images are the full lines of the variety", false},
        {"verify-variety", "Segre census: members of both kernels are the flag images",
         false},
        {"dims", "kernel dimensions of the incidence maps", false},
        {"span-report", "span dimensions of the variety and its named subspaces", false},
        {"decompose", "recover the generator of a flag map", true},
        {"extend", "extend random flag maps to the ambient tensor space", true},
        {"autcount", "count the automorphisms of the flag-pencil incidence graph", false},
        {"path", "connect two flags by a short chain of related flags", true},
        {"export", "write matrices, kernel bases, images or the span report", false},
    };
    for (const CommandSpec& c : table) {
        CLI::App* cmd = app.add_subcommand(c.name, c.help);
        add_common(cmd, opt);
        if (c.sampling) add_sampling(cmd, opt);
        if (std::string(c.name) == "decompose") {
            cmd->add_option("--in", opt.in_path, "flag map JSON file");
            cmd->add_option("--random", opt.random_kind,
                            "draw a random generator: collineation or duality");
        }
        if (std::string(c.name) == "path") {
            cmd->add_option("--from", opt.from, "source flag index");
            cmd->add_option("--to", opt.to, "target flag index");
        }
        if (std::string(c.name) == "export") {
            cmd->add_option("--what", opt.what,
                            "artifact: i01|i12|ker01|ker12|intersection|images|char3")
                ->required();
            cmd->add_option("--out", opt.out_path, "output file (default: standard output)");
        }
        cmd->callback([&opt, c] { opt.command = c.name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return flagvar::kExitUsage;
    }
    return flagvar::run_command(opt, std::cout);
}
