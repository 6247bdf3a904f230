// Command-line front end: exact counting for election control problems,
// winner-probability prediction under turnout uncertainty, self-verification,
// and hardness-reduction instance generation.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "electctl/io.hpp"
#include "electctl/prediction.hpp"
#include "electctl/verify.hpp"

using namespace electctl;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitCertification = 4;

Rule parse_rule(const std::string& text) {
    if (text == "plurality") return Rule::plurality();
    if (text == "approval") return Rule::approval();
    if (text == "condorcet") return Rule::condorcet();
    if (text == "maximin") return Rule::maximin();
    const std::string prefix = "k-approval:";
    if (text.rfind(prefix, 0) == 0) {
        int k = std::stoi(text.substr(prefix.size()));
        if (k < 1) throw IncompatibleError("k-approval requires k >= 1");
        return Rule::k_approval(k);
    }
    throw IncompatibleError("unknown rule '" + text + "'");
}

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw IncompatibleError("invalid rational '" + text + "'");
    q.canonicalize();
    return q;
}

TurnoutModel parse_turnout(const std::string& text) {
    const std::string binomial_prefix = "binomial:";
    const std::string table_prefix = "table:";
    if (text.rfind(binomial_prefix, 0) == 0)
        return TurnoutModel::bernoulli(parse_rational(text.substr(binomial_prefix.size())));
    if (text.rfind(table_prefix, 0) == 0) {
        std::istringstream in(read_file(text.substr(table_prefix.size())));
        std::vector<Rational> table;
        std::string token;
        while (in >> token)
            if (token[0] != '#') table.push_back(parse_rational(token));
        return TurnoutModel::explicit_table(std::move(table));
    }
    throw IncompatibleError("turnout must be binomial:<rational> or table:<file>");
}

struct CountArgs {
    std::string problem, rule, designated, file;
    long long budget = 0;
    long long exact_size = -1;
    std::string algorithm = "auto";
    std::uint64_t cap = std::uint64_t(1) << 24;
    bool as_json = false;
};

int run_count(const CountArgs& args) {
    auto [mode, action] = parse_problem_code(args.problem);
    Election election = parse_election(read_file(args.file));
    auto designated = election.find(args.designated);
    if (!designated)
        throw IncompatibleError("designated candidate '" + args.designated +
                                "' is not in the election");

    ControlInstance inst{std::move(election), parse_rule(args.rule), action, mode, *designated,
                         args.budget};
    DispatchOptions opts;
    opts.oracle.max_subsets = args.cap;
    if (args.algorithm == "oracle")
        opts.strategy = Strategy::ForceOracle;
    else if (args.algorithm == "dp")
        opts.strategy = Strategy::ForceDp;
    else if (args.algorithm != "auto")
        throw IncompatibleError("algorithm must be auto, oracle, or dp");

    const auto start = std::chrono::steady_clock::now();
    Count count;
    std::vector<AlgorithmTag> tags;
    CountResult result;
    if (args.exact_size >= 0) {
        count = dispatch_exact_size(with_budget(inst, args.exact_size), args.exact_size, opts,
                                    &tags);
        result.algorithm = tags.empty() ? AlgorithmTag::Oracle : tags.front();
        result.immune_cell = dispatch(with_budget(inst, 0), opts).immune_cell;
    } else {
        result = dispatch(inst, opts);
        count = result.count;
        tags.push_back(result.algorithm);
    }
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    if (args.as_json) {
        json out{{"problem", args.problem},
                 {"rule", inst.rule.name()},
                 {"designated", args.designated},
                 {"budget", args.budget},
                 {"count", count.get_str()},
                 {"algorithm", to_string(result.algorithm)},
                 {"immune_cell", result.immune_cell},
                 {"elapsed_ms", elapsed_ms}};
        if (args.exact_size >= 0) {
            out["exact_size"] = args.exact_size;
            json tag_list = json::array();
            for (AlgorithmTag t : tags) tag_list.push_back(to_string(t));
            out["algorithms"] = tag_list;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << count.get_str() << "\n";
        std::cout << "algorithm: " << to_string(result.algorithm) << "\n";
        if (result.immune_cell)
            std::cout
                << "note: classically immune cell; the literal count includes the status quo\n";
    }
    return 0;
}

struct PredictArgs {
    std::string rule, uncertain, turnout, file;
    int digits = 6;
    bool as_json = false;
};

int run_predict(const PredictArgs& args) {
    Election election = parse_election(read_file(args.file));
    UncertainSide side;
    if (args.uncertain == "voters")
        side = UncertainSide::Voters;
    else if (args.uncertain == "candidates")
        side = UncertainSide::Candidates;
    else
        throw IncompatibleError("--uncertain must be voters or candidates");

    TurnoutModel model = parse_turnout(args.turnout);
    const auto start = std::chrono::steady_clock::now();
    VictoryReport report = full_report(election, parse_rule(args.rule), model, side);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    if (args.as_json) {
        json entries = json::array();
        for (const VictoryEntry& entry : report.entries) {
            json tags = json::array();
            for (AlgorithmTag t : entry.algorithms) tags.push_back(to_string(t));
            entries.push_back({{"candidate", election.names[entry.candidate]},
                               {"probability", entry.probability.get_str()},
                               {"decimal", decimal_string(entry.probability, args.digits)},
                               {"algorithms", tags}});
        }
        json out{{"rule", parse_rule(args.rule).name()},
                 {"uncertain", args.uncertain},
                 {"turnout", args.turnout},
                 {"report", entries},
                 {"elapsed_ms", elapsed_ms}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const VictoryEntry& entry : report.entries) {
            std::cout << election.names[entry.candidate] << ": " << entry.probability.get_str()
                      << " (" << decimal_string(entry.probability, args.digits) << ")";
            if (!entry.algorithms.empty()) {
                std::cout << "  [";
                for (std::size_t i = 0; i < entry.algorithms.size(); ++i)
                    std::cout << (i ? ", " : "") << to_string(entry.algorithms[i]);
                std::cout << "]";
            }
            std::cout << "\n";
        }
    }
    return 0;
}

struct GenArgs {
    std::string from, target, source_file, out_dir;
    bool do_certify = false;
    std::uint64_t cap = std::uint64_t(1) << 24;
};

int run_gen(const GenArgs& args) {
    ReductionArtifact artifact;
    if (args.from == "x3c") {
        if (args.target != "condorcet-ccav")
            throw IncompatibleError("x3c sources generate condorcet-ccav only");
        artifact = x3c_to_condorcet_ccav(parse_x3c(read_file(args.source_file)));
    } else if (args.from == "bipartite") {
        BipartiteGraph g = parse_bipartite(read_file(args.source_file));
        if (args.target == "2approval-ccav")
            artifact = matching_to_2approval_ccav(g);
        else if (args.target == "2approval-ccdv")
            artifact = matching_to_2approval_ccdv(g);
        else if (args.target == "3approval-ccav")
            artifact = matching_to_3approval_ccav(g);
        else if (args.target == "maximin-ccdc")
            artifact = matching_to_maximin_ccdc(g);
        else
            throw IncompatibleError("unknown bipartite target '" + args.target + "'");
    } else {
        throw IncompatibleError("--from must be x3c or bipartite");
    }

    std::filesystem::create_directories(args.out_dir);
    const std::string election_file = args.out_dir + "/election.txt";
    write_file(election_file, serialize_election(artifact.instances.front().election));

    json instances = json::array();
    for (const ControlInstance& inst : artifact.instances) {
        instances.push_back(
            {{"problem", problem_code(inst.mode, inst.action)},
             {"rule", inst.rule.kind == Rule::Kind::KApproval
                          ? "k-approval:" + std::to_string(inst.rule.approval_k)
                          : inst.rule.name()},
             {"designated", inst.election.names[inst.designated]},
             {"budget", inst.budget}});
    }
    json manifest{{"target", artifact.target},
                  {"election_file", "election.txt"},
                  {"relationship", artifact.relationship == ReductionKind::Parsimonious
                                       ? "parsimonious"
                                       : artifact.relationship == ReductionKind::DifferenceOfTwo
                                             ? "difference-of-two"
                                             : "turing-profile"},
                  {"blocker_count", artifact.blocker_count},
                  {"instances", instances}};

    int exit_code = 0;
    if (args.do_certify) {
        OracleOptions opts;
        opts.max_subsets = args.cap;
        CertificationReport report = certify(artifact, opts);
        std::cout << "certification " << (report.pass ? "PASS" : "FAIL") << ": " << report.detail
                  << "\n";
        json expected = json::array(), actual = json::array();
        for (const Count& c : report.expected) expected.push_back(c.get_str());
        for (const Count& c : report.actual) actual.push_back(c.get_str());
        manifest["certification"] = {{"pass", report.pass},
                                     {"detail", report.detail},
                                     {"expected", expected},
                                     {"actual", actual}};
        if (!report.pass) exit_code = kExitCertification;
    }

    write_file(args.out_dir + "/manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << election_file << " and manifest.json (" << artifact.instances.size()
              << " instance" << (artifact.instances.size() == 1 ? "" : "s") << ")\n";
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact counting for election control, and winner prediction built on it"};
    app.require_subcommand(1);

    CountArgs count_args;
    CLI::App* count = app.add_subcommand("count", "Count control actions reaching the goal");
    count->add_option("--problem", count_args.problem,
                      "ccav|ccdv|ccac|ccdc|dcav|dcdv|dcac|dcdc")
        ->required();
    count->add_option("--rule", count_args.rule,
                      "plurality|k-approval:K|approval|condorcet|maximin")
        ->required();
    count->add_option("--designated", count_args.designated, "designated candidate")->required();
    count->add_option("--budget", count_args.budget, "action budget k")->required();
    count->add_option("--exact-size", count_args.exact_size,
                      "count subsets of exactly this size instead");
    count->add_option("--algorithm", count_args.algorithm, "auto|oracle|dp");
    count->add_option("--cap", count_args.cap, "oracle subset cap");
    count->add_flag("--json", count_args.as_json, "machine-readable output");
    count->add_option("file", count_args.file, "election file")->required();

    PredictArgs predict_args;
    CLI::App* predict = app.add_subcommand("predict", "Winner probabilities under turnout");
    predict->add_option("--rule", predict_args.rule)->required();
    predict->add_option("--uncertain", predict_args.uncertain, "voters|candidates")->required();
    predict->add_option("--turnout", predict_args.turnout, "binomial:<rational> or table:<file>")
        ->required();
    predict->add_option("--digits", predict_args.digits, "decimal rendering precision");
    predict->add_flag("--json", predict_args.as_json);
    predict->add_option("file", predict_args.file, "election file")->required();

    verify::VerifyConfig verify_config;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Oracle-equivalence and identity suites");
    verify_cmd->add_option("--seed", verify_config.seed);
    verify_cmd->add_option("--trials", verify_config.trials);
    verify_cmd->add_option("--max-candidates", verify_config.max_candidates);
    verify_cmd->add_option("--max-voters", verify_config.max_voters);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate control instances from counting sources");
    gen->add_option("--from", gen_args.from, "x3c|bipartite")->required();
    gen->add_option("--target", gen_args.target,
                    "condorcet-ccav|2approval-ccav|2approval-ccdv|3approval-ccav|maximin-ccdc")
        ->required();
    gen->add_option("source", gen_args.source_file, "source instance file")->required();
    gen->add_option("--out", gen_args.out_dir, "output directory")->required();
    gen->add_flag("--certify", gen_args.do_certify, "re-derive both sides of the count relation");
    gen->add_option("--cap", gen_args.cap, "oracle subset cap for certification");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (count->parsed()) return run_count(count_args);
        if (predict->parsed()) return run_predict(predict_args);
        if (gen->parsed()) return run_gen(gen_args);
        if (verify_cmd->parsed()) {
            auto outcome = verify::run_verification(verify_config, std::cout);
            return outcome.ok() ? 0 : kExitError;
        }
    } catch (const CapExceededError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitCap;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
