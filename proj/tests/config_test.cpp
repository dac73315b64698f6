#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oulevy/commands.hpp"
#include "oulevy/config.hpp"
#include "oulevy/errors.hpp"
#include "oulevy/json_io.hpp"
#include "oulevy/numerics.hpp"

using namespace oulevy;
using nlohmann::json;

namespace {

json minimal_config() {
    return json::parse(R"({
      "model": {
        "dim": 4,
        "a": {"expr": "n^2"},
        "a_tilde": {"expr": "n^2+1"},
        "q": {"expr": "n^-2"},
        "xi": {"expr": "1/n"}
      },
      "levy": {
        "gaussian_enabled": true,
        "rate_lambda": 1.0,
        "jump_law": {"kind": "diagonal_gaussian", "sigma": [0.5, 0.5, 0.5, 0.5]}
      },
      "grid": {"T": 1.0, "base_steps": 32},
      "run": {"replicas": 200, "master_seed": 99, "functional": "squared_norm"},
      "output": {"directory": "out", "formats": ["json"]}
    })");
}

std::string strip_timestamp(json j) {
    j.erase("timestamp");
    return j.dump(2);
}

}  // namespace

TEST_CASE("config round-trip is the identity on the resolved form") {
    const auto cfg = parse_config(minimal_config());
    const json first = resolved_json(cfg);
    const auto cfg2 = parse_config(first);
    const json second = resolved_json(cfg2);
    CHECK(first.dump() == second.dump());
}

TEST_CASE("config errors carry field diagnostics") {
    auto expect_error = [](json j, const std::string& needle) {
        bool caught = false;
        try {
            parse_config(j);
        } catch (const ConfigError& e) {
            caught = true;
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
        CHECK_MESSAGE(caught, "expected a config error mentioning ", needle);
    };
    json j = minimal_config();
    j["model"].erase("a");
    expect_error(j, "a");

    j = minimal_config();
    j["model"]["q"] = json{{"expr", "exp("}};
    expect_error(j, "expression");

    j = minimal_config();
    j["grid"]["T"] = -1.0;
    expect_error(j, "grid.T");

    j = minimal_config();
    j["run"]["functional"] = "mean";
    expect_error(j, "functional");

    j = minimal_config();
    j["levy"]["jump_law"]["kind"] = "levy-flight";
    expect_error(j, "kind");

    j = minimal_config();
    j["levy"]["jump_law"]["sigma"] = json::array({0.5});  // wrong length
    expect_error(j, "levy");
}

TEST_CASE("symbolic sequences attach when all three are expressions") {
    const auto cfg = parse_config(minimal_config());
    const auto model = build_model(cfg);
    CHECK(model.has_symbolic());
    CHECK(model.dim() == 4);
    CHECK(model.a()[1] == doctest::Approx(4.0));
    CHECK(model.series_modes() == 512);

    json j = minimal_config();
    j["model"]["a"] = json::array({1.0, 2.0, 3.0, 4.0});
    const auto mixed = build_model(parse_config(j));
    CHECK_FALSE(mixed.has_symbolic());
}

TEST_CASE("check bundle on a null perturbation is trivial") {
    json j = minimal_config();
    j["model"]["a_tilde"] = json{{"expr", "n^2"}};
    j["levy"]["rate_lambda"] = 0.0;
    j["levy"].erase("jump_law");
    const auto outcome = run_check(parse_config(j));
    CHECK(outcome.exit_code == 0);
    for (const auto& c : outcome.report.at("criteria")) {
        const std::string name = c.at("criterion").get<std::string>();
        if (name == "novikov_bound") {
            CHECK(c.at("satisfied").get<bool>());
        } else if (name == "resolvent_criterion") {
            CHECK(c.at("value").get<double>() == 0.0);
        } else {
            CHECK(c.at("converged").get<bool>());
            CHECK(c.at("value").get<double>() == 0.0);
        }
    }
}

TEST_CASE("check bundle on the shipped counterexample config matches the verdicts") {
    const auto cfg = load_config_file(std::string(CONFIG_DIR) + "/one_sided.json");
    const auto outcome = run_check(cfg);
    bool saw_fwd = false, saw_rev = false;
    for (const auto& c : outcome.report.at("criteria")) {
        const std::string name = c.at("criterion").get<std::string>();
        if (name == "cm_l2_norm_a_to_atilde") {
            saw_fwd = true;
            CHECK(c.at("converged").get<bool>());
        }
        if (name == "cm_l2_norm_atilde_to_a") {
            saw_rev = true;
            CHECK_FALSE(c.at("converged").get<bool>());
            CHECK_FALSE(c.at("divergence_witness").is_null());
        }
    }
    CHECK(saw_fwd);
    CHECK(saw_rev);
}

TEST_CASE("reports embed the resolved config and reproduce byte-identically") {
    const auto cfg = parse_config(minimal_config());
    const auto first = run_check(cfg);
    const auto second = run_check(cfg);
    CHECK(first.report.dump() == second.report.dump());
    CHECK(first.report.at("config").dump() == resolved_json(cfg).dump());

    // re-running from the embedded config reproduces everything
    const auto cfg2 = parse_config(first.report.at("config"));
    const auto third = run_check(cfg2);
    CHECK(third.report.dump() == first.report.dump());
}

TEST_CASE("girsanov and rigidity commands reproduce under a fixed seed") {
    json j = minimal_config();
    j["run"]["replicas"] = 300;
    j["grid"]["base_steps"] = 16;
    const auto cfg = parse_config(j);
    const auto a = run_girsanov(cfg);
    const auto b = run_girsanov(cfg);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.exit_code == 0);

    json jr = minimal_config();
    jr["levy"]["gaussian_enabled"] = false;
    jr["levy"]["jump_law"] = json{{"kind", "point_mass"}, {"xi", {1.0, 0.5, 0.25, 0.125}}};
    jr["run"]["replicas"] = 40;
    const auto cfg_r = parse_config(jr);
    const auto ra = run_rigidity(cfg_r);
    const auto rb = run_rigidity(cfg_r);
    CHECK(ra.report.dump() == rb.report.dump());
    CHECK(ra.exit_code == 0);
}

TEST_CASE("written reports differ only in the timestamp") {
    namespace fs = std::filesystem;
    const auto cfg = parse_config(minimal_config());
    const auto out = run_check(cfg);
    const std::string dir = (fs::temp_directory_path() / "oulevy_cfg_test").string();
    write_report(out.report, dir, "check");
    write_report(out.report, dir + "_b", "check");
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        return json::parse(in);
    };
    const json a = slurp(dir + "/check_report.json");
    const json b = slurp(dir + "_b/check_report.json");
    CHECK(a.contains("timestamp"));
    CHECK(strip_timestamp(a) == strip_timestamp(b));
    fs::remove_all(dir);
    fs::remove_all(dir + "_b");
}

TEST_CASE("simulate writes csv with the documented header") {
    namespace fs = std::filesystem;
    json j = minimal_config();
    j["run"]["replicas"] = 2;
    j["grid"]["base_steps"] = 4;
    j["output"]["formats"] = json::array({"csv", "json"});
    const std::string dir = (fs::temp_directory_path() / "oulevy_sim_test").string();
    fs::remove_all(dir);
    const auto outcome = run_simulate(parse_config(j), dir);
    CHECK(outcome.exit_code == 0);
    std::ifstream in(dir + "/path_0.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "time,mode_1,mode_2,mode_3,mode_4");
    CHECK(fs::exists(dir + "/path_0.json"));
    CHECK(fs::exists(dir + "/path_1.csv"));
    fs::remove_all(dir);
}

TEST_CASE("reproduce command verdicts") {
    for (const auto& id : example_ids()) {
        const auto outcome = run_reproduce(id);
        CHECK(outcome.exit_code == 0);
        CHECK(outcome.report.at("example").at("matches_expected").get<bool>());
    }
    CHECK_THROWS_AS(run_reproduce("nope"), InputError);
}

TEST_CASE("series verdict json encodes witnesses and infinities") {
    SeriesVerdict v;
    v.value = kInf;
    v.converged = false;
    v.terms_examined = 24;
    v.divergence_witness = DivergenceWitness{24, 576.0};
    const json j = to_json(v);
    CHECK(j.at("value").is_null());
    CHECK_FALSE(j.at("converged").get<bool>());
    CHECK(j.at("divergence_witness").at("index").get<int>() == 24);
    CHECK(json_real(kInf).at("finite").get<bool>() == false);
    CHECK(json_real(1.5).at("value").get<double>() == 1.5);
}
