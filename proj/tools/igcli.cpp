#include "ig/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace {

std::string read_all(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int fail(const std::string& command, const std::string& kind, const std::string& msg, int code) {
    std::cout << ig::cli::error_report(command, kind, msg).dump(2) << "\n";
    std::cerr << "igcli: " << msg << "\n";
    return code;
}

}  // namespace

const std::map<std::string, std::string> kHelp = {
    {"zeta", "zeta function of a graph, deterministic graphing or kernel"},
    {"exec", "execution of one kernel, or of two graphs, kernels, graphings or objects"},
    {"measure", "measurement of two graphs or two graphings"},
    {"zeta-kernel", "kernel zeta of one kernel or of two bulleted kernels"},
    {"check-cocycle", "cocycle law on three graphs or kernels"},
    {"check-trefoil", "trefoil identity on three graphs"},
    {"check-orth", "orthogonality of two proof-objects"},
    {"typecheck", "membership of an object in a type or an implication"},
    {"exp", "exponentials: bang, der, dig, promote"},
    {"check-laws", "randomized law suites"},
};

int main(int argc, char** argv) {
    CLI::App app{"interaction-graph toolkit"};
    app.require_subcommand(1, 1);

    ig::cli::Flags flags;
    std::string file;
    std::uint64_t seed = 0;
    std::vector<std::string> names;

    for (const auto& cmd : ig::cli::command_names()) {
        auto* sub = app.add_subcommand(cmd, kHelp.at(cmd));
        sub->add_option("names", names, "declared names")->expected(0, -1);
        sub->add_option("--file,-f", file, "input document (default: stdin)");
        sub->add_option("--order", flags.order, "series truncation order")->capture_default_str();
        sub->add_option("--tolerance", flags.tolerance, "float comparison tolerance")->capture_default_str();
        sub->add_option("--mode", flags.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
        sub->add_option("--convention", flags.convention, "degree or literal")
            ->check(CLI::IsMember({"degree", "literal"}))
            ->capture_default_str();
        sub->add_option("--cut", flags.cut, "cut points for graphing execution")->delimiter(',');
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--samples", flags.samples, "cases per law")->capture_default_str();
        sub->add_option("--suite", flags.suite, "law suite or 'all'");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    if (app.get_subcommands().front()->count("--seed")) flags.seed = seed;

    try {
        ig::cli::Document doc;
        if (command != "check-laws") {
            std::string text;
            if (file.empty() || file == "-") {
                text = read_all(std::cin);
            } else {
                std::ifstream in(file);
                if (!in) return fail(command, "usage", "cannot open '" + file + "'", 2);
                text = read_all(in);
            }
            doc = ig::cli::parse(text);
        }
        auto out = ig::cli::run(command, doc, names, flags);
        std::cout << out.report.dump(2) << "\n";
        return out.exit_code;
    } catch (const ig::cli::ParseError& e) {
        return fail(command, "parse", e.what(), 2);
    } catch (const ig::cli::UsageError& e) {
        return fail(command, "usage", e.what(), 2);
    } catch (const ig::Error& e) {
        return fail(command, "precondition", e.what(), 2);
    }
}
