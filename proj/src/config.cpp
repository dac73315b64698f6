#include "oulevy/config.hpp"

#include <fstream>

#include "oulevy/errors.hpp"

namespace oulevy {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
}

double need_number(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number()) bad(field, "expected a number");
    return j[field].get<double>();
}

double number_or(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number()) bad(field, "expected a number");
    return j[field].get<double>();
}

int int_or(const json& j, const std::string& field, int fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number_integer()) bad(field, "expected an integer");
    return j[field].get<int>();
}

std::vector<double> need_array(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_array()) bad(field, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j[field]) {
        if (!v.is_number()) bad(field, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

SequenceSpec parse_sequence(const json& j, const std::string& field) {
    if (!j.contains(field)) bad(field, "missing");
    SequenceSpec s;
    const auto& v = j[field];
    if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number()) bad(field, "expected numbers");
            s.values.push_back(x.get<double>());
        }
        if (s.values.empty()) bad(field, "empty array");
    } else if (v.is_object() && v.contains("expr") && v["expr"].is_string()) {
        s.expr = v["expr"].get<std::string>();
        Expr::parse(s.expr);  // validate now, fail with the field name
    } else {
        bad(field, "expected an array or {\"expr\": \"...\"}");
    }
    return s;
}

json sequence_json(const SequenceSpec& s) {
    if (s.is_expr()) return json{{"expr", s.expr}};
    return json(s.values);
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be an object");
    ExperimentConfig cfg;

    if (!j.contains("model") || !j["model"].is_object())
        throw ConfigError("config field 'model': missing object");
    const json& jm = j["model"];
    cfg.model.dim = int_or(jm, "dim", 8);
    if (cfg.model.dim < 1) bad("model.dim", "must be >= 1");
    cfg.model.n_max = int_or(jm, "n_max", 512);
    if (cfg.model.n_max < cfg.model.dim) bad("model.n_max", "must be >= dim");
    cfg.model.a = parse_sequence(jm, "a");
    cfg.model.a_tilde = parse_sequence(jm, "a_tilde");
    cfg.model.q = parse_sequence(jm, "q");
    if (jm.contains("xi")) {
        if (!jm["xi"].is_object() || !jm["xi"].contains("expr"))
            bad("model.xi", "expected {\"expr\": \"...\"}");
        cfg.model.xi_expr = jm["xi"]["expr"].get<std::string>();
        Expr::parse(cfg.model.xi_expr);
    }

    const json jl = j.value("levy", json::object());
    if (jl.contains("drift_b")) cfg.levy.drift_b = need_array(jl, "drift_b");
    cfg.levy.gaussian_enabled = jl.value("gaussian_enabled", true);
    cfg.levy.rate_lambda = number_or(jl, "rate_lambda", 0.0);
    if (cfg.levy.rate_lambda < 0.0) bad("levy.rate_lambda", "must be >= 0");
    if (jl.contains("jump_law")) {
        const json& jj = jl["jump_law"];
        if (!jj.is_object() || !jj.contains("kind") || !jj["kind"].is_string())
            bad("levy.jump_law", "expected an object with a string 'kind'");
        cfg.levy.jump_law.kind = jj["kind"].get<std::string>();
        const std::string& kind = cfg.levy.jump_law.kind;
        if (kind == "diagonal_gaussian") {
            cfg.levy.jump_law.sigma = need_array(jj, "sigma");
        } else if (kind == "deterministic_profile" || kind == "point_mass") {
            cfg.levy.jump_law.xi = need_array(jj, "xi");
        } else if (kind == "scalar_student_t") {
            cfg.levy.jump_law.nu = need_number(jj, "nu");
            if (!(cfg.levy.jump_law.nu > 2.0)) bad("levy.jump_law.nu", "must be > 2");
        } else {
            bad("levy.jump_law.kind", "unknown kind '" + kind + "'");
        }
    } else if (cfg.levy.rate_lambda > 0.0) {
        bad("levy.jump_law", "required when rate_lambda > 0");
    }

    const json jg = j.value("grid", json::object());
    cfg.grid.T = number_or(jg, "T", 1.0);
    if (!(cfg.grid.T > 0.0)) bad("grid.T", "must be > 0");
    cfg.grid.base_steps = int_or(jg, "base_steps", 256);
    if (cfg.grid.base_steps < 1) bad("grid.base_steps", "must be >= 1");

    const json jr = j.value("run", json::object());
    cfg.run.beta = number_or(jr, "beta", 0.25);
    if (!(cfg.run.beta > 0.0 && cfg.run.beta < 1.0)) bad("run.beta", "must lie in (0,1)");
    cfg.run.theta = number_or(jr, "theta", cfg.run.theta);
    if (!(cfg.run.theta > 0.0 && cfg.run.theta < 1.5707963267948966))
        bad("run.theta", "must lie in (0, pi/2)");
    if (jr.contains("lambda_grid")) {
        const json& lg = jr["lambda_grid"];
        cfg.run.lambda_grid.mod_min = number_or(lg, "mod_min", 1e-3);
        cfg.run.lambda_grid.mod_max = number_or(lg, "mod_max", 1e3);
        cfg.run.lambda_grid.moduli = int_or(lg, "moduli", 61);
        cfg.run.lambda_grid.rays = int_or(lg, "rays", 5);
    }
    cfg.run.replicas = int_or(jr, "replicas", 10000);
    if (cfg.run.replicas < 2) bad("run.replicas", "must be >= 2");
    if (jr.contains("master_seed")) {
        if (!jr["master_seed"].is_number_unsigned() && !jr["master_seed"].is_number_integer())
            bad("run.master_seed", "expected an unsigned integer");
        cfg.run.master_seed = jr["master_seed"].get<std::uint64_t>();
    }
    cfg.run.epsilon = number_or(jr, "epsilon", 0.0);
    cfg.run.functional = jr.value("functional", std::string("coordinate"));
    parse_functional(cfg.run.functional);
    cfg.run.weight_mode = jr.value("weight_mode", std::string("full_density"));
    parse_weight_mode(cfg.run.weight_mode);
    cfg.run.jump_time = number_or(jr, "jump_time", 0.5);
    if (!(cfg.run.jump_time > 0.0 && cfg.run.jump_time < cfg.grid.T))
        bad("run.jump_time", "must lie in (0, T)");

    const json jo = j.value("output", json::object());
    cfg.output.directory = jo.value("directory", std::string("out"));
    if (jo.contains("formats")) {
        cfg.output.formats.clear();
        for (const auto& f : jo["formats"]) {
            const std::string name = f.get<std::string>();
            if (name != "json" && name != "csv") bad("output.formats", "unknown format " + name);
            cfg.output.formats.push_back(name);
        }
    }

    // Dimension cross-checks happen in build_model / build_levy.
    build_levy(cfg, build_model(cfg).dim());
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_config(j);
}

json resolved_json(const ExperimentConfig& cfg) {
    json jm{{"dim", cfg.model.dim},
            {"n_max", cfg.model.n_max},
            {"a", sequence_json(cfg.model.a)},
            {"a_tilde", sequence_json(cfg.model.a_tilde)},
            {"q", sequence_json(cfg.model.q)}};
    if (!cfg.model.xi_expr.empty()) jm["xi"] = json{{"expr", cfg.model.xi_expr}};

    json jlaw;
    const auto& law = cfg.levy.jump_law;
    if (!law.kind.empty()) {
        jlaw = json{{"kind", law.kind}};
        if (law.kind == "diagonal_gaussian") jlaw["sigma"] = law.sigma;
        if (law.kind == "deterministic_profile" || law.kind == "point_mass")
            jlaw["xi"] = law.xi;
        if (law.kind == "scalar_student_t") jlaw["nu"] = law.nu;
    }
    json jl{{"gaussian_enabled", cfg.levy.gaussian_enabled},
            {"rate_lambda", cfg.levy.rate_lambda}};
    if (!cfg.levy.drift_b.empty()) jl["drift_b"] = cfg.levy.drift_b;
    if (!jlaw.is_null()) jl["jump_law"] = jlaw;

    return json{
        {"model", jm},
        {"levy", jl},
        {"grid", json{{"T", cfg.grid.T}, {"base_steps", cfg.grid.base_steps}}},
        {"run",
         json{{"beta", cfg.run.beta},
              {"theta", cfg.run.theta},
              {"lambda_grid", json{{"mod_min", cfg.run.lambda_grid.mod_min},
                                   {"mod_max", cfg.run.lambda_grid.mod_max},
                                   {"moduli", cfg.run.lambda_grid.moduli},
                                   {"rays", cfg.run.lambda_grid.rays}}},
              {"replicas", cfg.run.replicas},
              {"master_seed", cfg.run.master_seed},
              {"epsilon", cfg.run.epsilon},
              {"functional", cfg.run.functional},
              {"weight_mode", cfg.run.weight_mode},
              {"jump_time", cfg.run.jump_time}}},
        {"output",
         json{{"directory", cfg.output.directory}, {"formats", cfg.output.formats}}}};
}

SpectralModel build_model(const ExperimentConfig& cfg) {
    const int dim = cfg.model.dim;
    auto materialize = [&](const SequenceSpec& s, const char* field) {
        if (s.is_expr()) {
            const Expr e = Expr::parse(s.expr);
            std::vector<double> v(dim);
            for (int n = 1; n <= dim; ++n) v[n - 1] = e.eval(n);
            return v;
        }
        if (static_cast<int>(s.values.size()) != dim)
            throw ConfigError(std::string("config field 'model.") + field +
                              "': array length must equal dim");
        return s.values;
    };
    SpectralModel model(materialize(cfg.model.a, "a"),
                        materialize(cfg.model.a_tilde, "a_tilde"),
                        materialize(cfg.model.q, "q"));
    if (cfg.model.a.is_expr() && cfg.model.a_tilde.is_expr() && cfg.model.q.is_expr()) {
        SymbolicSequences seq;
        seq.a = Expr::parse(cfg.model.a.expr);
        seq.a_tilde = Expr::parse(cfg.model.a_tilde.expr);
        seq.q = Expr::parse(cfg.model.q.expr);
        if (!cfg.model.xi_expr.empty()) seq.xi = Expr::parse(cfg.model.xi_expr);
        seq.n_max = cfg.model.n_max;
        model.attach_symbolic(std::move(seq));
    }
    return model;
}

LevyConfig build_levy(const ExperimentConfig& cfg, int dim) {
    LevyConfig levy;
    levy.drift_b = cfg.levy.drift_b.empty() ? std::vector<double>(dim, 0.0)
                                            : cfg.levy.drift_b;
    levy.gaussian_enabled = cfg.levy.gaussian_enabled;
    levy.rate_lambda = cfg.levy.rate_lambda;
    const auto& spec = cfg.levy.jump_law;
    if (levy.rate_lambda > 0.0) {
        if (spec.kind == "diagonal_gaussian")
            levy.jump_law = JumpLaw::diagonal_gaussian(spec.sigma);
        else if (spec.kind == "deterministic_profile")
            levy.jump_law = JumpLaw::deterministic_profile(spec.xi);
        else if (spec.kind == "point_mass")
            levy.jump_law = JumpLaw::point_mass(spec.xi);
        else if (spec.kind == "scalar_student_t")
            levy.jump_law = JumpLaw::student_t(spec.nu, dim);
        else
            throw ConfigError("config field 'levy.jump_law.kind': unknown kind");
    }
    try {
        levy.validate(dim);
    } catch (const InputError& e) {
        throw ConfigError(std::string("config field 'levy': ") + e.what());
    }
    return levy;
}

Functional parse_functional(const std::string& name) {
    if (name == "coordinate") return Functional::coordinate;
    if (name == "squared_norm") return Functional::squared_norm;
    throw ConfigError("config field 'run.functional': expected coordinate | squared_norm");
}

WeightMode parse_weight_mode(const std::string& name) {
    if (name == "cm_translation") return WeightMode::cm_translation;
    if (name == "full_density") return WeightMode::full_density;
    throw ConfigError(
        "config field 'run.weight_mode': expected cm_translation | full_density");
}

}  // namespace oulevy
