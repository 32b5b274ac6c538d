#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tamesym/pipeline.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw tamesym::Unsupported("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Cli {
    std::string input = "-";
    std::string format = "json";
    unsigned long seed = 1;
    int rounds = 12;
    int factor_bound = 8;
    bool seed_set = false;
    bool rounds_set = false;
    bool factor_bound_set = false;
};

void add_common(CLI::App* cmd, Cli& cli, bool takes_input) {
    if (takes_input)
        cmd->add_option("input", cli.input, "job file (JSON), or - for stdin")
            ->default_val("-");
    cmd->add_option("--format", cli.format, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", cli.seed, "seed for the specialization certificates");
    cmd->add_option("--rounds", cli.rounds, "specialization attempts per undetermined residue");
    cmd->add_option("--factor-bound", cli.factor_bound,
                    "degree bound for exact x-polynomial factorization");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "tamesym: exact tame-symbol residues, Faddeev reciprocity, quartic branch-curve "
        "normalization, and verified cyclic presentations over k0(x)"};
    app.require_subcommand(1);

    Cli cli;
    const char* subs[] = {"residues", "reciprocity", "transform", "cyclify", "pipeline"};
    const char* descs[] = {
        "survey the ramification of a symbol presentation over the projected line",
        "check Faddeev reciprocity over the full support",
        "classify a quartic branch configuration and normalize its coordinates",
        "build one cyclic algebra with prescribed residues and verify it",
        "full run: classify, normalize, survey, construct, verify",
    };
    for (int i = 0; i < 5; ++i) add_common(app.add_subcommand(subs[i], descs[i]), cli, true);
    add_common(app.add_subcommand("selftest", "run the built-in worked examples"), cli, false);

    CLI11_PARSE(app, argc, argv);
    CLI::App* cmd = app.get_subcommands().front();

    try {
        tamesym::JobSpec job;
        if (cmd->get_name() != "selftest") {
            tamesym::Json doc;
            try {
                doc = tamesym::Json::parse(read_input(cli.input));
            } catch (const tamesym::Json::parse_error& e) {
                std::cerr << "tamesym: input is not valid JSON: " << e.what() << "\n";
                return 2;
            }
            job = tamesym::jobspec_from_json(doc);
            if (cmd->count("--seed")) job.options.seed = cli.seed;
            if (cmd->count("--rounds")) job.options.rounds = cli.rounds;
            if (cmd->count("--factor-bound")) job.options.factor_bound = cli.factor_bound;
            if (job.options.rounds < 1 || job.options.factor_bound < 1) {
                std::cerr << "tamesym: rounds and factor bound must be positive\n";
                return 2;
            }
        }
        tamesym::RunResult rr = tamesym::run_job(cmd->get_name(), job);
        std::cout << tamesym::emit_report(rr.report, cli.format);
        return rr.exit_code;
    } catch (const tamesym::InvariantViolation& e) {
        std::cerr << "tamesym: verification failed: " << e.what() << "\n";
        return 1;
    } catch (const tamesym::Error& e) {
        std::cerr << "tamesym: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tamesym: " << e.what() << "\n";
        return 2;
    }
}
