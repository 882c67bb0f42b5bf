#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "anonq/cli.hpp"

namespace {

struct CliResult {
    int exit_code;
    nlohmann::json doc;
    std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = anonq::cli::run(args, out, err);
    CliResult result{code, nlohmann::json(), err.str()};
    if (!out.str().empty()) {
        result.doc = nlohmann::json::parse(out.str());  // exactly one document
    }
    return result;
}

}  // namespace

TEST_CASE("make-state w") {
    const CliResult r = invoke({"make-state", "w", "--n", "3"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.doc.at("n") == 3);
    CHECK(r.doc.at("amplitudes").size() == 3);
    CHECK(r.doc.at("amplitudes")[0].at("re").get<double>() ==
          doctest::Approx(0.5773502691896258));
    CHECK(r.doc.at("anonymous").get<bool>());
    CHECK(r.doc.at("normalization_factor").get<double>() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("make-state ghz and perm") {
    const CliResult ghz = invoke({"make-state", "ghz", "--n", "2"});
    REQUIRE(ghz.exit_code == 0);
    CHECK(ghz.doc.at("amplitudes").size() == 2);
    CHECK(ghz.doc.at("amplitudes")[0].at("re").get<double>() ==
          doctest::Approx(0.7071067811865476));

    const CliResult perm = invoke({"make-state", "perm", "--pattern", "0011"});
    REQUIRE(perm.exit_code == 0);
    CHECK(perm.doc.at("amplitudes").size() == 6);
}

TEST_CASE("invalid parameters exit 2") {
    CHECK(invoke({"make-state", "w", "--n", "1"}).exit_code == 2);
    CHECK(invoke({"tree", "--state", "nosuch.json", "--protocol", "qle_w"}).exit_code == 2);
    CHECK(invoke({"tree", "--state", "w:3", "--protocol", "nosuch"}).exit_code == 2);
}

TEST_CASE("round trip through a state file") {
    const std::string path = "cli_roundtrip_state.json";
    const CliResult made = invoke({"make-state", "perm", "--pattern", "110", "--out", path});
    REQUIRE(made.exit_code == 0);

    const CliResult verified =
        invoke({"verify", "--state", path, "--protocol", "qle_w_complement"});
    CHECK(verified.exit_code == 0);
    CHECK(verified.doc.at("correctness").at("totally_correct").get<bool>());
    std::remove(path.c_str());
}

TEST_CASE("tree command reports correctness and fairness") {
    const CliResult r = invoke({"tree", "--state", "w:3", "--protocol", "qle_w"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.doc.at("correctness").at("totally_correct").get<bool>());
    const auto probs = r.doc.at("fairness").at("leader_probability");
    REQUIRE(probs.size() == 3);
    for (const auto& p : probs) {
        CHECK(p.get<double>() == doctest::Approx(1.0 / 3.0));
    }
    CHECK(r.doc.at("tree").at("nodes").size() == 4);
    CHECK(r.doc.contains("provenance"));
}

TEST_CASE("witness command exit codes") {
    const CliResult hit =
        invoke({"witness", "--state", "ghz:3", "--task", "leader_election", "--trials", "20"});
    CHECK(hit.exit_code == 1);
    CHECK(hit.doc.at("witness").at("k") == 3);

    const CliResult miss =
        invoke({"witness", "--state", "w:3", "--task", "leader_election", "--trials", "20"});
    CHECK(miss.exit_code == 0);
    CHECK(miss.doc.at("witness").is_null());
}

TEST_CASE("classify command") {
    const CliResult r = invoke({"classify", "--state", "ghz:4", "--trials", "20"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.doc.at("family") == "GHZ_family");
}

TEST_CASE("candidate_voter through the CLI") {
    const CliResult ring = invoke({"verify", "--state", "perm:11000", "--protocol",
                                   "candidate_voter", "--topology", "ring"});
    CHECK(ring.exit_code == 0);
    CHECK(ring.doc.at("correctness").at("totally_correct").get<bool>());

    const CliResult broadcast = invoke({"verify", "--state", "perm:110", "--protocol",
                                        "candidate_voter", "--topology", "broadcast"});
    CHECK(broadcast.exit_code == 1);
    CHECK_FALSE(broadcast.doc.at("correctness").at("partially_correct").get<bool>());
}

TEST_CASE("run command transcript") {
    const CliResult r =
        invoke({"run", "--state", "ghz:5", "--protocol", "qdc_ghz", "--seed", "1"});
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.doc.at("transcript").size() == 1);
    const std::string line = r.doc.at("transcript")[0].get<std::string>();
    CHECK(line.rfind("round=1 outcomes=[", 0) == 0);
    CHECK(r.doc.at("leaf").at("kind") == "terminal");
    const auto statuses = r.doc.at("leaf").at("statuses");
    for (std::size_t i = 1; i < statuses.size(); ++i) {
        CHECK(statuses[i] == statuses[0]);
    }
}

TEST_CASE("protocol selection by json document") {
    const CliResult r = invoke({"verify", "--state", "ghz:3", "--protocol-json",
                                R"({"protocol": "qdc_ghz", "params": {}})"});
    CHECK(r.exit_code == 0);
    CHECK(r.doc.at("protocol") == "qdc_ghz");
}

TEST_CASE("byzantine flags reach the engine") {
    const CliResult r = invoke({"verify", "--state", "ghz:4", "--protocol", "qdc_ghz",
                                "--byzantine", "1,2,3", "--strategy", "constant:junk"});
    CHECK(r.exit_code == 0);
    CHECK(r.doc.at("correctness").at("totally_correct").get<bool>());
}
