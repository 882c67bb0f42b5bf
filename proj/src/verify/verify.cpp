#include "anonq/verify.hpp"

#include <algorithm>
#include <cmath>

#include "anonq/ops.hpp"

namespace anonq::verify {

namespace {

// Task predicate on one leaf configuration. Returns an empty string when the
// configuration satisfies the goal, else the reason.
std::string leaf_violation(const netsim::TreeNode& node, const protocols::OutcomeSpec& outcome,
                           const netsim::NetworkConfig& net) {
    const auto& classical = node.config.classical;
    if (outcome.task == protocols::Task::leader_election) {
        int leaders = 0;
        int followers = 0;
        for (std::size_t i = 0; i < classical.size(); ++i) {
            if (classical[i].status == "leader") ++leaders;
            else if (classical[i].status == "follower") ++followers;
        }
        if (leaders != 1) {
            return "expected exactly one leader, found " + std::to_string(leaders);
        }
        if (followers != static_cast<int>(classical.size()) - 1) {
            return "expected all non-leaders to be followers";
        }
        return "";
    }
    // Consensus: all non-Byzantine decided, identical value.
    std::string value;
    for (std::size_t i = 0; i < classical.size(); ++i) {
        const int p = static_cast<int>(i) + 1;
        if (net.byzantine.count(p)) continue;
        const std::string& status = classical[i].status;
        if (status.rfind("decided", 0) != 0) {
            return "processor " + std::to_string(p) + " did not decide";
        }
        if (value.empty()) value = status;
        else if (status != value) {
            return "decisions disagree: " + value + " vs " + status;
        }
    }
    return "";
}

}  // namespace

CorrectnessReport check_total_correctness(const netsim::ExecutionTree& tree,
                                          const protocols::OutcomeSpec& outcome) {
    CorrectnessReport report;
    report.conclusive = !tree.budget_exceeded;
    report.terminating = true;
    report.partially_correct = true;
    report.rounds = tree.max_depth();
    report.messages = tree.max_messages_on_path();
    for (std::size_t id : tree.leaves()) {
        const netsim::TreeNode& node = tree.nodes[id];
        if (node.leaf == netsim::LeafKind::cutoff) {
            report.terminating = false;
            report.violations.push_back({id, "cutoff leaf: no terminal configuration reached"});
            continue;
        }
        const std::string reason = leaf_violation(node, outcome, tree.config);
        if (!reason.empty()) {
            report.partially_correct = false;
            report.violations.push_back({id, reason});
        }
    }
    report.totally_correct =
        report.conclusive && report.terminating && report.partially_correct;
    return report;
}

FairnessReport check_fairness(const netsim::ExecutionTree& tree) {
    const int n = tree.config.layout.n_processors;
    FairnessReport report;
    report.leader_probability.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t id : tree.leaves()) {
        const netsim::TreeNode& node = tree.nodes[id];
        if (node.leaf == netsim::LeafKind::cutoff) {
            throw InvalidInput("check_fairness requires a totally correct tree");
        }
        int leader = -1;
        for (std::size_t i = 0; i < node.config.classical.size(); ++i) {
            if (node.config.classical[i].status == "leader") {
                if (leader >= 0) {
                    throw InvalidInput("check_fairness: leaf with multiple leaders");
                }
                leader = static_cast<int>(i);
            }
        }
        if (leader < 0) {
            throw InvalidInput("check_fairness: leaf without a leader");
        }
        report.leader_probability[static_cast<std::size_t>(leader)] += node.path_probability;
    }
    const double expect = 1.0 / static_cast<double>(n);
    for (double p : report.leader_probability) {
        report.max_deviation = std::max(report.max_deviation, std::abs(p - expect));
    }
    return report;
}

EntanglementReport check_entanglement_required(const StateVector& state) {
    const int n = state.layout().n_processors;
    EntanglementReport report;
    report.product = true;
    for (int p = 1; p <= n; ++p) {
        const ReducedDensityMatrix rho = reduced_density_matrix(state, p);
        const double purity = rho.purity();
        report.purities.push_back(purity);
        if (purity < 1.0 - tol::purity) {
            report.product = false;
        }
    }
    if (!report.product) {
        return report;
    }
    for (int p = 1; p <= n; ++p) {
        // Pure RDM = |chi><chi|: recover chi from its strongest column.
        const CMat& rho = reduced_density_matrix(state, p).entries;
        const std::size_t d = rho.rows();
        std::size_t best = 0;
        for (std::size_t j = 1; j < d; ++j) {
            if (rho.at(j, j).real() > rho.at(best, best).real()) best = j;
        }
        std::vector<cplx> chi(d);
        const double scale = std::sqrt(rho.at(best, best).real());
        for (std::size_t i = 0; i < d; ++i) {
            chi[i] = rho.at(i, best) / scale;
        }
        // Canonical phase, matching StateVector's convention.
        for (const cplx& c : chi) {
            if (std::abs(c) > tol::phase_floor) {
                const cplx phase = std::conj(c) / std::abs(c);
                for (cplx& x : chi) x *= phase;
                break;
            }
        }
        report.factors.push_back(std::move(chi));
    }
    return report;
}

std::string family_name(Family family) {
    switch (family) {
        case Family::w_family: return "W_family";
        case Family::ghz_family: return "GHZ_family";
        case Family::other: return "other";
    }
    return "other";
}

namespace {

// Off-pattern norm of the expansion coefficients for the two structural
// patterns. W (m = 1 only): exactly one block carries label a, the rest b,
// minimized over (a, b) in {(1,0), (0,1)}. GHZ: diagonal tuples only.
struct StructuralResiduals {
    double w = 1.0;
    double ghz = 1.0;
};

StructuralResiduals residuals_in_basis(const StateVector& state, const LocalBasis& basis) {
    const ProcessorLayout& layout = state.layout();
    const int n = layout.n_processors;
    const std::size_t d = layout.local_dim();
    std::vector<cplx> coeffs = state.amplitudes();
    apply_to_all_blocks(coeffs, layout, basis.as_matrix().adjoint());

    StructuralResiduals res;
    double total = 0.0;
    double diag = 0.0;
    double exactly_one_10 = 0.0;  // one block 1, rest 0
    double exactly_one_01 = 0.0;  // one block 0, rest 1
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
        const double w2 = std::norm(coeffs[t]);
        total += w2;
        const auto digits = layout.digits(t);
        bool is_diag = true;
        for (int p = 1; p < n; ++p) {
            if (digits[static_cast<std::size_t>(p)] != digits[0]) is_diag = false;
        }
        if (is_diag) diag += w2;
        if (d == 2) {
            int ones = 0;
            for (std::size_t x : digits) ones += (x == 1);
            if (ones == 1) exactly_one_10 += w2;
            if (ones == n - 1) exactly_one_01 += w2;
        }
    }
    res.ghz = std::sqrt(std::max(0.0, total - diag));
    if (d == 2) {
        res.w = std::sqrt(std::max(0.0, total - std::max(exactly_one_10, exactly_one_01)));
    }
    return res;
}

std::optional<ClassificationResult> classify_in_basis(const StateVector& state,
                                                      const LocalBasis& basis,
                                                      const std::string& phase) {
    const StructuralResiduals res = residuals_in_basis(state, basis);
    if (state.layout().local_dim() == 2 && res.w <= tol::residual && res.w <= res.ghz) {
        return ClassificationResult{Family::w_family, basis, res.w, phase, 0};
    }
    if (res.ghz <= tol::residual) {
        return ClassificationResult{Family::ghz_family, basis, res.ghz, phase, 0};
    }
    if (state.layout().local_dim() == 2 && res.w <= tol::residual) {
        return ClassificationResult{Family::w_family, basis, res.w, phase, 0};
    }
    return std::nullopt;
}

}  // namespace

ClassificationResult classify_state(const StateVector& state,
                                    const symmetry::SearchBudget& budget) {
    if (!is_anonymous(state).anonymous) {
        throw InvalidInput("classify_state requires an anonymous state");
    }
    const int m = state.layout().qubits_per_processor;
    std::size_t examined = 1;
    if (auto hit = classify_in_basis(state, LocalBasis::computational(m), "computational")) {
        hit->bases_examined = examined;
        return *hit;
    }
    const symmetry::BasisGrid grid(m, budget.grid_resolution);
    const auto grid_hit = symmetry::first_index_where(grid.total(), [&](std::size_t i) {
        return classify_in_basis(state, grid.basis(i), "grid").has_value();
    });
    if (grid_hit) {
        auto hit = classify_in_basis(state, grid.basis(*grid_hit), "grid");
        hit->bases_examined = examined + *grid_hit + 1;
        return *hit;
    }
    examined += grid.total();
    const auto random_hit = symmetry::first_index_where(
        static_cast<std::size_t>(budget.trials), [&](std::size_t t) {
            return classify_in_basis(state, symmetry::random_basis(m, budget.seed,
                                                                   static_cast<int>(t)),
                                     "random")
                .has_value();
        });
    if (random_hit) {
        auto hit = classify_in_basis(
            state, symmetry::random_basis(m, budget.seed, static_cast<int>(*random_hit)),
            "random");
        hit->bases_examined = examined + *random_hit + 1;
        return *hit;
    }
    examined += static_cast<std::size_t>(budget.trials);
    ClassificationResult result;
    result.family = Family::other;
    result.phase = "exhausted";
    result.bases_examined = examined;
    // Report the closest miss in the computational basis for diagnostics.
    const StructuralResiduals res =
        residuals_in_basis(state, LocalBasis::computational(m));
    result.residual = std::min(res.w, res.ghz);
    return result;
}

ImpossibilityReport impossibility_report(
    const StateVector& state, protocols::Task task, const symmetry::SearchBudget& budget,
    const std::optional<std::set<std::size_t>>& leader_labels) {
    const int n = state.layout().n_processors;
    const int m = state.layout().qubits_per_processor;
    ImpossibilityReport report;
    report.task = task;
    std::optional<std::set<std::size_t>> restrict_l;
    if (task == protocols::Task::leader_election) {
        if (m == 1) {
            report.allowed_k = {1, n - 1};
        } else {
            // Moves are forbidden only with respect to the leader subspace.
            if (!leader_labels) {
                throw InvalidParameter(
                    "generalized leader election requires the leader label set");
            }
            report.allowed_k = {1};
            restrict_l = leader_labels;
        }
    } else {
        report.allowed_k = {n};
    }
    report.witness = symmetry::forbidden_move_witness(state, report.allowed_k, budget, restrict_l);
    if (report.witness && m == 1) {
        // Realize the move as a path in the task's one-round measurement tree.
        const protocols::ProtocolSpec spec = task == protocols::Task::leader_election
                                                 ? protocols::qle_w(n)
                                                 : protocols::qdc_ghz(n);
        netsim::NetworkConfig net;
        net.layout = state.layout();
        net.allow_non_anonymous = true;
        const netsim::ExecutionTree tree = netsim::run_full_tree(spec.protocol, state, net);
        report.path_tree_leaves = tree.leaves().size();
        report.path = symmetry::find_symmetric_path(tree, report.witness->k);
    }
    return report;
}

nlohmann::json correctness_to_json(const CorrectnessReport& report) {
    nlohmann::json violations = nlohmann::json::array();
    for (const Violation& v : report.violations) {
        violations.push_back({{"leaf", v.leaf}, {"reason", v.reason}});
    }
    return {{"conclusive", report.conclusive},
            {"terminating", report.terminating},
            {"partially_correct", report.partially_correct},
            {"totally_correct", report.totally_correct},
            {"violations", std::move(violations)},
            {"rounds", report.rounds},
            {"messages", report.messages}};
}

nlohmann::json fairness_to_json(const FairnessReport& report) {
    return {{"leader_probability", report.leader_probability},
            {"max_deviation", report.max_deviation}};
}

nlohmann::json entanglement_to_json(const EntanglementReport& report) {
    nlohmann::json j = {{"product", report.product}, {"purities", report.purities}};
    if (report.product) {
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& chi : report.factors) {
            nlohmann::json vec = nlohmann::json::array();
            for (const cplx& c : chi) {
                vec.push_back({{"re", c.real()}, {"im", c.imag()}});
            }
            factors.push_back(std::move(vec));
        }
        j["factors"] = std::move(factors);
    }
    return j;
}

nlohmann::json classification_to_json(const ClassificationResult& result) {
    nlohmann::json j = {{"family", family_name(result.family)},
                        {"residual", result.residual},
                        {"phase", result.phase},
                        {"bases_examined", result.bases_examined}};
    if (result.basis) {
        j["basis"] = symmetry::basis_to_json(*result.basis);
    }
    return j;
}

nlohmann::json impossibility_to_json(const ImpossibilityReport& report) {
    nlohmann::json j = {{"task", protocols::task_name(report.task)},
                        {"allowed_k", report.allowed_k}};
    if (report.witness) {
        j["witness"] = symmetry::witness_to_json(*report.witness);
    } else {
        j["witness"] = nullptr;
    }
    if (report.path) {
        j["path"] = {{"processors", report.path->processors},
                     {"nodes", report.path->nodes},
                     {"outcomes", report.path->outcomes}};
        j["path_tree_leaves"] = report.path_tree_leaves;
    }
    return j;
}

}  // namespace anonq::verify
