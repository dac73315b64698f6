#include "oulevy/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oulevy/errors.hpp"

namespace oulevy {

json json_real(double v) {
    if (std::isfinite(v)) return json{{"finite", true}, {"value", v}};
    return json{{"finite", false}, {"value", nullptr}};
}

json to_json(const SeriesVerdict& v) {
    json j{{"value", v.converged ? json(v.value) : json(nullptr)},
           {"converged", v.converged},
           {"terms_examined", v.terms_examined},
           {"tail_increasing", v.tail_increasing}};
    if (v.divergence_witness)
        j["divergence_witness"] = {{"index", v.divergence_witness->index},
                                   {"term", std::isfinite(v.divergence_witness->term)
                                                ? json(v.divergence_witness->term)
                                                : json("overflow")}};
    else
        j["divergence_witness"] = nullptr;
    return j;
}

json to_json(const NovikovReport& r) {
    return json{{"C_T", r.C_T},
                {"required_c", r.required_c},
                {"exp_moment_value", json_real(r.exp_moment_value)},
                {"bound_value", json_real(r.bound_value)},
                {"satisfied", r.satisfied},
                {"subinterval_T", json_real(r.subinterval_T)}};
}

json to_json(const CMReport& r) {
    return json{{"direction", to_string(r.direction)},
                {"l2_norm_sq", to_json(r.l2_norm_sq)},
                {"per_mode_terms", r.per_mode_terms},
                {"representable", r.representable},
                {"novikov", to_json(r.novikov)}};
}

json to_json(const MeanSe& m) { return json{{"mean", m.mean}, {"se", m.se}}; }

json to_json(const DensityReport& r) {
    return json{{"replicas", r.replicas},
                {"mean_weight", r.mean_weight},
                {"weight_se", r.weight_se},
                {"ess", r.ess},
                {"functional", to_string(r.functional)},
                {"weight_mode", to_string(r.mode)},
                {"functional_direct", to_json(r.functional_direct)},
                {"functional_reweighted", to_json(r.functional_reweighted)},
                {"z_score", r.z_score}};
}

json to_json(const RigidityReplica& r) {
    return json{{"residual_own", r.residual_own},
                {"residual_other", r.residual_other},
                {"jumps_recovered", r.jumps_recovered},
                {"paths_equal", r.paths_equal},
                {"jump_count", r.jump_count},
                {"analytic_lower_bound", r.analytic_lower_bound},
                {"jump_identity_error", r.jump_identity_error}};
}

json to_json(const RigidityReport& r) {
    json reps = json::array();
    for (const auto& rep : r.replicas) reps.push_back(to_json(rep));
    return json{{"replicas", std::move(reps)},
                {"max_residual_own", r.max_residual_own},
                {"min_residual_other_jumpy", json_real(r.min_residual_other_jumpy)},
                {"all_bounds_exceeded", r.all_bounds_exceeded},
                {"max_jump_identity_error", r.max_jump_identity_error},
                {"replicas_with_jumps", r.replicas_with_jumps},
                {"vacuous", r.vacuous},
                {"paths_equal_all", r.paths_equal_all}};
}

json to_json(const ExampleOutcome& o) {
    json j{{"id", o.id},
           {"matches_expected", o.matches_expected},
           {"expected", o.expected_summary}};
    if (o.cm_forward) j["cm_a_to_atilde"] = to_json(*o.cm_forward);
    if (o.cm_reverse) j["cm_atilde_to_a"] = to_json(*o.cm_reverse);
    if (o.hs) j["hs_criterion"] = to_json(*o.hs);
    if (o.factorisation) j["factorisation"] = to_json(*o.factorisation);
    if (o.expected_l2_norm_sq) j["expected_l2_norm_sq"] = *o.expected_l2_norm_sq;
    if (o.novikov) j["novikov"] = to_json(*o.novikov);
    return j;
}

json to_json(const MarkedPointSet& z) {
    return json{{"times", z.times}, {"marks", z.marks}};
}

json to_json(const SamplePath& p) {
    return json{{"times", p.grid.times()},
                {"values", p.values},
                {"jumps", to_json(p.jumps)}};
}

std::string path_to_csv(const SamplePath& p) {
    std::ostringstream os;
    os.precision(17);
    os << "time";
    for (int n = 1; n <= p.dim(); ++n) os << ",mode_" << n;
    os << "\n";
    for (int k = 0; k < p.grid.size(); ++k) {
        os << p.grid.times()[k];
        for (int n = 0; n < p.dim(); ++n) os << "," << p.values[k][n];
        os << "\n";
    }
    return os.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush()) throw ConfigError("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace oulevy
