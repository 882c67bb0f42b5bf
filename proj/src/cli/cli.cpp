#include "anonq/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "anonq/ops.hpp"
#include "anonq/protocols.hpp"
#include "anonq/state_io.hpp"
#include "anonq/states.hpp"
#include "anonq/tree_io.hpp"
#include "anonq/verify.hpp"

namespace anonq::cli {

namespace {

struct CommonOpts {
    std::string state_spec;
    std::string protocol = "qle_w";
    std::string protocol_json;
    std::string topology = "broadcast";
    int max_rounds = defaults::max_rounds;
    std::string byzantine;
    std::string strategy = "silent";
    bool waive_anonymity = false;
    std::uint64_t seed = defaults::seed;
    int trials = defaults::random_trials;
    int grid = defaults::grid_resolution;
    std::string out;
    std::string basis = "computational";
    std::string leader_labels;
    int m = 1;
};

std::set<int> parse_int_set(const std::string& csv) {
    std::set<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.insert(std::stoi(item));
    }
    return out;
}

std::set<std::size_t> parse_label_set(const std::string& csv) {
    std::set<std::size_t> out;
    for (int v : parse_int_set(csv)) {
        if (v < 0) throw InvalidParameter("labels must be non-negative");
        out.insert(static_cast<std::size_t>(v));
    }
    return out;
}

LocalBasis parse_basis(const std::string& name, int m) {
    if (name == "computational") return LocalBasis::computational(m);
    if (name == "hadamard") return LocalBasis::hadamard(m);
    if (name == "fourier") return LocalBasis::fourier(m);
    throw InvalidParameter("unknown basis name: " + name);
}

StateVector parse_state(const std::string& spec, int m) {
    const auto colon = spec.find(':');
    const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "w") return make_w(std::stoi(arg));
    if (kind == "wbar") return make_w_complement(std::stoi(arg));
    if (kind == "ghz") return make_ghz(std::stoi(arg));
    if (kind == "perm") {
        if (arg.size() % static_cast<std::size_t>(m) != 0) {
            throw InvalidParameter("pattern length must be a multiple of m");
        }
        const int n = static_cast<int>(arg.size()) / m;
        return make_perm_closure(arg, ProcessorLayout(n, m));
    }
    const std::string path = kind == "file" ? arg : spec;
    std::ifstream in(path);
    if (!in) {
        throw InvalidParameter("cannot open state file: " + path);
    }
    nlohmann::json j;
    in >> j;
    return state_from_json(j);
}

protocols::ProtocolSpec build_protocol(const CommonOpts& opts, const StateVector& state) {
    std::string name = opts.protocol;
    nlohmann::json params = nlohmann::json::object();
    if (!opts.protocol_json.empty()) {
        const nlohmann::json doc = nlohmann::json::parse(opts.protocol_json);
        name = doc.at("protocol").get<std::string>();
        if (doc.contains("params")) params = doc.at("params");
    }
    const int n = state.layout().n_processors;
    const int m = state.layout().qubits_per_processor;
    if (name == "qle_w") {
        return protocols::qle_w(params.value("n", n));
    }
    if (name == "qle_w_complement") {
        return protocols::qle_w_complement(params.value("n", n));
    }
    if (name == "qle_gen") {
        std::set<std::size_t> labels;
        if (params.contains("leader_labels")) {
            for (const auto& l : params.at("leader_labels")) {
                labels.insert(l.get<std::size_t>());
            }
        } else {
            labels = parse_label_set(opts.leader_labels);
        }
        const std::string basis_name = params.value("basis", opts.basis);
        return protocols::qle_generalized(params.value("n", n), params.value("m", m), labels,
                                          parse_basis(basis_name, params.value("m", m)));
    }
    if (name == "qdc_ghz") {
        return protocols::qdc_ghz(params.value("n", n));
    }
    if (name == "qdc_gen") {
        const std::string basis_name = params.value("basis", opts.basis);
        return protocols::qdc_generalized(params.value("n", n), params.value("m", m),
                                          parse_basis(basis_name, params.value("m", m)));
    }
    if (name == "candidate_voter") {
        const std::string topo = params.value("topology", opts.topology);
        return protocols::candidate_voter(params.value("n", n),
                                          netsim::parse_topology(topo));
    }
    throw InvalidParameter("unknown protocol: " + name);
}

netsim::NetworkConfig build_config(const CommonOpts& opts, const StateVector& state) {
    netsim::NetworkConfig config;
    config.layout = state.layout();
    config.topology = netsim::parse_topology(opts.topology);
    config.max_rounds = opts.max_rounds;
    config.allow_non_anonymous = opts.waive_anonymity;
    if (!opts.byzantine.empty()) {
        config = netsim::inject_byzantine(config, parse_int_set(opts.byzantine), opts.strategy);
    }
    return config;
}

symmetry::SearchBudget build_budget(const CommonOpts& opts) {
    return {opts.grid, opts.trials, opts.seed};
}

nlohmann::json provenance(const CommonOpts& opts) {
    return {{"grid_resolution", opts.grid},
            {"trials", opts.trials},
            {"seed", opts.seed},
            {"max_rounds", opts.max_rounds},
            {"tolerances",
             {{"norm", tol::norm},
              {"ortho", tol::ortho},
              {"coeff", tol::coeff},
              {"prune", tol::prune},
              {"prob_sum", tol::prob_sum},
              {"residual", tol::residual},
              {"purity", tol::purity},
              {"fairness", tol::fairness}}}};
}

void emit(const nlohmann::json& doc, const CommonOpts& opts, std::ostream& out) {
    const std::string text = doc.dump(2);
    if (!opts.out.empty()) {
        std::ofstream file(opts.out);
        if (!file) {
            throw InvalidParameter("cannot open output file: " + opts.out);
        }
        file << text << "\n";
    }
    out << text << "\n";
}

void add_state_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--state", opts.state_spec,
                    "State: w:N, wbar:N, ghz:N, perm:BITS, or a JSON file path")
        ->required();
    cmd->add_option("--m", opts.m, "Qubits per processor for perm: states");
    cmd->add_option("--out", opts.out, "Also write the JSON document to this file");
}

void add_budget_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--grid", opts.grid, "Grid resolution per rotation angle");
    cmd->add_option("--trials", opts.trials, "Random basis trials");
    cmd->add_option("--seed", opts.seed, "Seed for all randomized phases");
}

void add_network_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--protocol", opts.protocol,
                    "qle_w | qle_w_complement | qle_gen | qdc_ghz | qdc_gen | candidate_voter");
    cmd->add_option("--protocol-json", opts.protocol_json,
                    "Protocol selection document {\"protocol\":..., \"params\":{...}}");
    cmd->add_option("--topology", opts.topology, "broadcast | ring");
    cmd->add_option("--max-rounds", opts.max_rounds, "Round cutoff");
    cmd->add_option("--byzantine", opts.byzantine, "Comma-separated processor indices");
    cmd->add_option("--strategy", opts.strategy, "silent | flip | constant:<payload>");
    cmd->add_option("--basis", opts.basis, "computational | hadamard | fourier");
    cmd->add_option("--leader-labels", opts.leader_labels,
                    "Comma-separated leader outcome labels (qle_gen)");
    cmd->add_flag("--waive-anonymity", opts.waive_anonymity,
                  "Allow a non-anonymous initial state (failure demos)");
}

int exit_code_for(const verify::CorrectnessReport& report) {
    if (!report.conclusive) return 2;
    return report.totally_correct ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"anonymous quantum network simulator and verifier"};
    app.require_subcommand(1);

    CommonOpts opts;

    // make-state
    auto* mk = app.add_subcommand("make-state", "Construct a state and print its JSON");
    std::string builtin;
    int mk_n = 3;
    std::string mk_pattern;
    int mk_leader = 1;
    std::string mk_followers;
    std::string mk_coefficients;
    mk->add_option("builtin", builtin, "w | ghz | perm | gen_w | gen_ghz")->required();
    mk->add_option("--n", mk_n, "Number of processors");
    mk->add_option("--m", opts.m, "Qubits per processor");
    mk->add_option("--pattern", mk_pattern, "Bit pattern for perm");
    mk->add_option("--leader-label", mk_leader, "Leader label for gen_w");
    mk->add_option("--follower-labels", mk_followers,
                   "Comma-separated follower labels for gen_w (n-1 entries)");
    mk->add_option("--coefficients", mk_coefficients,
                   "Comma-separated real coefficients for gen_ghz (2^m entries)");
    mk->add_option("--basis", opts.basis, "computational | hadamard | fourier");
    mk->add_option("--out", opts.out, "Also write the JSON document to this file");

    auto* run_cmd = app.add_subcommand("run", "Sample one seeded execution");
    add_state_flags(run_cmd, opts);
    add_network_flags(run_cmd, opts);
    run_cmd->add_option("--seed", opts.seed, "Sampling seed");

    auto* tree_cmd = app.add_subcommand("tree", "Full execution tree plus reports");
    add_state_flags(tree_cmd, opts);
    add_network_flags(tree_cmd, opts);

    auto* verify_cmd = app.add_subcommand("verify", "Correctness/fairness reports only");
    add_state_flags(verify_cmd, opts);
    add_network_flags(verify_cmd, opts);

    auto* classify_cmd = app.add_subcommand("classify", "W/GHZ family classification");
    add_state_flags(classify_cmd, opts);
    add_budget_flags(classify_cmd, opts);

    auto* witness_cmd = app.add_subcommand("witness", "Forbidden-move impossibility report");
    add_state_flags(witness_cmd, opts);
    add_budget_flags(witness_cmd, opts);
    std::string task_name = "leader_election";
    witness_cmd->add_option("--task", task_name, "leader_election | consensus");

    std::vector<char*> argv;
    std::vector<std::string> storage;
    storage.push_back("anonq");
    storage.insert(storage.end(), args.begin(), args.end());
    argv.reserve(storage.size());
    for (std::string& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (mk->parsed()) {
            StateVector state = [&]() -> StateVector {
                if (builtin == "w") return make_w(mk_n);
                if (builtin == "ghz") return make_ghz(mk_n);
                if (builtin == "wbar") return make_w_complement(mk_n);
                if (builtin == "perm") {
                    const int n = static_cast<int>(mk_pattern.size()) / opts.m;
                    return make_perm_closure(mk_pattern, ProcessorLayout(n, opts.m));
                }
                if (builtin == "gen_w") {
                    std::vector<std::size_t> followers;
                    for (int v : parse_int_set(mk_followers)) {
                        followers.push_back(static_cast<std::size_t>(v));
                    }
                    // parse_int_set dedupes; rebuild the multiset from the csv
                    followers.clear();
                    std::stringstream ss(mk_followers);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        if (!item.empty()) followers.push_back(std::stoul(item));
                    }
                    return make_generalized_w(static_cast<std::size_t>(mk_leader), followers,
                                              parse_basis(opts.basis, opts.m),
                                              ProcessorLayout(mk_n, opts.m));
                }
                if (builtin == "gen_ghz") {
                    std::vector<cplx> coefficients;
                    std::stringstream ss(mk_coefficients);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        if (!item.empty()) coefficients.push_back(cplx{std::stod(item), 0.0});
                    }
                    return make_generalized_ghz(coefficients, parse_basis(opts.basis, opts.m),
                                                ProcessorLayout(mk_n, opts.m));
                }
                throw InvalidParameter("unknown builtin state: " + builtin);
            }();
            nlohmann::json doc = state_to_json(state);
            doc["normalization_factor"] = state.normalization_factor();
            doc["anonymous"] = is_anonymous(state).anonymous;
            emit(doc, opts, out);
            err << "normalization factor " << state.normalization_factor() << ", anonymous="
                << (doc["anonymous"].get<bool>() ? "true" : "false") << "\n";
            return 0;
        }

        if (run_cmd->parsed()) {
            const StateVector state = parse_state(opts.state_spec, opts.m);
            const protocols::ProtocolSpec spec = build_protocol(opts, state);
            const netsim::NetworkConfig config = build_config(opts, state);
            const netsim::SampleResult sample =
                netsim::sample_run(spec.protocol, state, config, opts.seed);
            nlohmann::json statuses = nlohmann::json::array();
            for (const auto& cs : sample.leaf.classical) statuses.push_back(cs.status);
            nlohmann::json doc = {
                {"transcript", sample.transcript},
                {"leaf",
                 {{"round", sample.leaf.round},
                  {"statuses", std::move(statuses)},
                  {"kind", sample.kind == netsim::LeafKind::terminal ? "terminal" : "cutoff"}}},
                {"messages", sample.messages},
                {"protocol", spec.protocol.name},
                {"provenance", provenance(opts)}};
            emit(doc, opts, out);
            return 0;
        }

        if (tree_cmd->parsed() || verify_cmd->parsed()) {
            const StateVector state = parse_state(opts.state_spec, opts.m);
            const protocols::ProtocolSpec spec = build_protocol(opts, state);
            const netsim::NetworkConfig config = build_config(opts, state);
            const netsim::ExecutionTree tree =
                netsim::run_full_tree(spec.protocol, state, config);
            const verify::CorrectnessReport correctness =
                verify::check_total_correctness(tree, spec.outcome);
            nlohmann::json doc = {{"protocol", spec.protocol.name},
                                  {"correctness", verify::correctness_to_json(correctness)},
                                  {"provenance", provenance(opts)}};
            if (spec.outcome.task == protocols::Task::leader_election &&
                correctness.totally_correct) {
                doc["fairness"] = verify::fairness_to_json(verify::check_fairness(tree));
            }
            if (tree_cmd->parsed()) {
                doc["tree"] = netsim::tree_to_json(tree);
            } else {
                doc["leaves"] = tree.leaves().size();
            }
            emit(doc, opts, out);
            return exit_code_for(correctness);
        }

        if (classify_cmd->parsed()) {
            const StateVector state = parse_state(opts.state_spec, opts.m);
            const verify::ClassificationResult result =
                verify::classify_state(state, build_budget(opts));
            nlohmann::json doc = verify::classification_to_json(result);
            doc["provenance"] = provenance(opts);
            emit(doc, opts, out);
            return 0;
        }

        if (witness_cmd->parsed()) {
            const StateVector state = parse_state(opts.state_spec, opts.m);
            const verify::ImpossibilityReport report = verify::impossibility_report(
                state, protocols::parse_task(task_name), build_budget(opts));
            nlohmann::json doc = verify::impossibility_to_json(report);
            doc["provenance"] = provenance(opts);
            emit(doc, opts, out);
            return report.witness ? 1 : 0;
        }

        err << "no subcommand selected\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends print through CLI11.
            std::ostringstream help;
            help << app.help();
            out << help.str();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "json error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

}  // namespace anonq::cli
