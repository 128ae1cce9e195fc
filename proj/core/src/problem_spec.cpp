#include "pcm/problem_spec.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcm/errors.hpp"

namespace pcm {

using nlohmann::json;

namespace {

json input_to_json(const InputSpec& s) {
    json j;
    j["name"] = s.name;
    j["family"] = family_name(s.family);
    switch (s.family) {
        case Family::Uniform:
            j["a"] = s.p1;
            j["b"] = s.p2;
            break;
        case Family::Normal:
            j["mean"] = s.p1;
            j["std"] = s.p2;
            break;
        case Family::Lognormal:
            j["mu"] = s.p1;
            j["sigma"] = s.p2;
            break;
        case Family::Gamma:
            j["shape"] = s.p1;
            j["scale"] = s.p2;
            break;
        case Family::Weibull:
            j["shape"] = s.p1;
            break;
    }
    if (s.truncation) j["truncation"] = *s.truncation;
    return j;
}

double need_number(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_number())
        throw SpecError(ctx + ": missing numeric field '" + key + "'");
    return j[key].get<double>();
}

InputSpec input_from_json(const json& j) {
    if (!j.contains("name") || !j["name"].is_string())
        throw SpecError("input: missing string field 'name'");
    InputSpec s;
    s.name = j["name"].get<std::string>();
    if (!j.contains("family") || !j["family"].is_string())
        throw SpecError("input '" + s.name + "': missing string field 'family'");
    s.family = family_from_name(j["family"].get<std::string>());
    const std::string ctx = "input '" + s.name + "'";
    switch (s.family) {
        case Family::Uniform:
            s.p1 = need_number(j, "a", ctx);
            s.p2 = need_number(j, "b", ctx);
            break;
        case Family::Normal:
            s.p1 = need_number(j, "mean", ctx);
            s.p2 = need_number(j, "std", ctx);
            break;
        case Family::Lognormal:
            s.p1 = need_number(j, "mu", ctx);
            s.p2 = need_number(j, "sigma", ctx);
            break;
        case Family::Gamma:
            s.p1 = need_number(j, "shape", ctx);
            s.p2 = need_number(j, "scale", ctx);
            break;
        case Family::Weibull:
            s.p1 = need_number(j, "shape", ctx);
            break;
    }
    if (j.contains("truncation")) s.truncation = need_number(j, "truncation", ctx);
    return s;
}

json model_to_json(const GateModel& m) {
    json j;
    j["kind"] = gate_kind_name(m.kind);
    if (m.kind != GateKind::External) j["d0"] = m.d0;
    j["L0"] = m.L0;
    j["Tox0"] = m.Tox0;
    j["W0"] = m.W0;
    if (m.kind == GateKind::InverterChain) j["stages"] = m.stages;
    if (m.kind == GateKind::External) {
        j["command"] = m.command;
        j["timeout_ms"] = m.timeout.count();
    }
    json b = json::object();
    for (const auto& [name, arg] : m.binding) b[name] = arg;
    j["binding"] = b;
    return j;
}

GateModel model_from_json(const json& j) {
    if (!j.contains("kind") || !j["kind"].is_string())
        throw SpecError("model: missing string field 'kind'");
    GateModel m;
    m.kind = gate_kind_from_name(j["kind"].get<std::string>());
    if (m.kind != GateKind::External) m.d0 = need_number(j, "d0", "model");
    if (j.contains("L0")) m.L0 = need_number(j, "L0", "model");
    if (j.contains("Tox0")) m.Tox0 = need_number(j, "Tox0", "model");
    if (j.contains("W0")) m.W0 = need_number(j, "W0", "model");
    if (j.contains("stages")) m.stages = j["stages"].get<unsigned>();
    if (m.kind == GateKind::External) {
        if (!j.contains("command") || !j["command"].is_string())
            throw SpecError("external model: missing string field 'command'");
        m.command = j["command"].get<std::string>();
        if (j.contains("timeout_ms"))
            m.timeout = std::chrono::milliseconds(j["timeout_ms"].get<long>());
    }
    if (!j.contains("binding") || !j["binding"].is_object())
        throw SpecError("model: missing object field 'binding'");
    for (const auto& [name, arg] : j["binding"].items()) {
        if (!arg.is_string()) throw SpecError("model binding '" + name + "' must be a string");
        m.binding[name] = arg.get<std::string>();
    }
    return m;
}

}  // namespace

void validate(const ProblemSpec& spec) {
    if (spec.degree < 1) throw SpecError("spec '" + spec.name + "': degree must be >= 1");
    if (spec.inputs.empty()) throw SpecError("spec '" + spec.name + "': no inputs");
    std::set<std::string> names;
    for (const auto& in : spec.inputs) {
        try {
            pcm::validate(in);
        } catch (const ParamDomainError& e) {
            throw SpecError("spec '" + spec.name + "': " + e.what());
        }
        if (!names.insert(in.name).second)
            throw SpecError("spec '" + spec.name + "': duplicate input '" + in.name + "'");
    }
    try {
        pcm::validate(spec.model);
    } catch (const ParamDomainError& e) {
        throw SpecError("spec '" + spec.name + "': " + e.what());
    }
    // Input names and model bindings must match one-to-one.
    for (const auto& [name, arg] : spec.model.binding) {
        (void)arg;
        if (!names.count(name))
            throw SpecError("spec '" + spec.name + "': binding references unknown input '" +
                            name + "'");
    }
    for (const auto& in : spec.inputs)
        if (!spec.model.binding.count(in.name))
            throw SpecError("spec '" + spec.name + "': input '" + in.name +
                            "' is not bound to a model argument");
    for (const auto& out : spec.outputs)
        if (out != "plan" && out != "pce" && out != "stats" && out != "pdf" &&
            out != "comparison")
            throw SpecError("spec '" + spec.name + "': unknown output '" + out + "'");
    if (spec.has_mc && spec.mc.sample_count < 100)
        throw SpecError("spec '" + spec.name + "': mc.samples must be >= 100");
}

ProblemSpec parse_problem_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("problem spec: invalid JSON: ") + e.what());
    }
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
        throw SpecError("problem spec: missing or unsupported schema_version");
    ProblemSpec spec;
    spec.name = j.value("name", "unnamed");
    if (!j.contains("inputs") || !j["inputs"].is_array())
        throw SpecError("problem spec: missing array field 'inputs'");
    for (const auto& ji : j["inputs"]) spec.inputs.push_back(input_from_json(ji));
    if (!j.contains("model")) throw SpecError("problem spec: missing field 'model'");
    spec.model = model_from_json(j["model"]);
    spec.degree = j.value("degree", 2u);
    spec.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("mc")) {
        spec.has_mc = true;
        const auto& m = j["mc"];
        spec.mc.sample_count = m.value("samples", std::size_t{100000});
        spec.mc.seed = m.value("seed", std::uint64_t{2});
        if (m.contains("truncation")) {
            if (m["truncation"].is_null())
                spec.mc.truncation.reset();
            else
                spec.mc.truncation = m["truncation"].get<double>();
        }
    }
    if (j.contains("outputs"))
        for (const auto& o : j["outputs"]) spec.outputs.insert(o.get<std::string>());
    validate(spec);
    return spec;
}

ProblemSpec load_problem_spec(const std::string& path) {
    return parse_problem_spec(read_text_file(path));
}

std::string problem_spec_to_json(const ProblemSpec& spec) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = spec.name;
    j["inputs"] = json::array();
    for (const auto& in : spec.inputs) j["inputs"].push_back(input_to_json(in));
    j["model"] = model_to_json(spec.model);
    j["degree"] = spec.degree;
    j["seed"] = spec.seed;
    if (spec.has_mc) {
        j["mc"] = {{"samples", spec.mc.sample_count}, {"seed", spec.mc.seed}};
        if (spec.mc.truncation)
            j["mc"]["truncation"] = *spec.mc.truncation;
        else
            j["mc"]["truncation"] = nullptr;
    }
    j["outputs"] = spec.outputs;
    return j.dump(2) + "\n";
}

std::string pce_model_to_json(const PceModel& model) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["inputs"] = json::array();
    for (const auto& in : model.inputs) j["inputs"].push_back(input_to_json(in));
    j["degree"] = model.degree;
    j["terms"] = json::array();
    for (const auto& t : model.terms) j["terms"].push_back(t.exponents);
    j["coeffs"] = model.coeffs;
    j["fit_meta"] = {{"rcond", model.fit_meta.rcond},
                     {"solve_path", model.fit_meta.solve_path},
                     {"seed", model.fit_meta.seed}};
    return j.dump(2) + "\n";
}

PceModel pce_model_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("pce model: invalid JSON: ") + e.what());
    }
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
        throw SpecError("pce model: missing or unsupported schema_version");
    PceModel m;
    for (const auto& ji : j["inputs"]) m.inputs.push_back(input_from_json(ji));
    m.degree = j["degree"].get<unsigned>();
    for (const auto& jt : j["terms"])
        m.terms.push_back(MultiIndex{jt.get<std::vector<unsigned>>()});
    m.coeffs = j["coeffs"].get<std::vector<double>>();
    if (m.terms.size() != m.coeffs.size())
        throw SpecError("pce model: |terms| != |coeffs|");
    if (j.contains("fit_meta")) {
        m.fit_meta.rcond = j["fit_meta"].value("rcond", 0.0);
        m.fit_meta.solve_path = j["fit_meta"].value("solve_path", "");
        m.fit_meta.seed = j["fit_meta"].value("seed", std::uint64_t{0});
    }
    return m;
}

PceModel load_pce_model(const std::string& path) {
    return pce_model_from_json(read_text_file(path));
}

std::string plan_to_json(const CollocationPlan& plan, double rcond,
                         const std::string& solve_path) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = plan.n;
    j["d"] = plan.d;
    j["root_only_candidates"] = plan.root_only_candidates;
    j["augmented_candidates"] = plan.augmented_candidates;
    j["points"] = plan.points;
    j["provenance"] = json::array();
    for (const auto& p : plan.provenance)
        j["provenance"].push_back({{"term_index", p.term_index}, {"rule", p.rule}});
    j["rcond"] = rcond;
    j["solve_path"] = solve_path;
    return j.dump(2) + "\n";
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SpecError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string pdf_curve_to_csv(const std::vector<double>& grid,
                             const std::vector<double>& density) {
    std::string out = "x,density\r\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out += format_double(grid[i]) + "," + format_double(density[i]) + "\r\n";
    return out;
}

}  // namespace pcm
