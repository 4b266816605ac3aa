#include "cfs/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cfs {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
    const char* s = text.c_str();
    char* end = nullptr;
    out = std::strtod(s, &end);
    return end != s && *end == '\0' && std::isfinite(out);
}

bool parse_int(const std::string& text, int& out) {
    const char* s = text.c_str();
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0') return false;
    out = static_cast<int>(v);
    return static_cast<long>(out) == v;
}

bool parse_bool(const std::string& text, bool& out) {
    if (text == "true" || text == "1") {
        out = true;
        return true;
    }
    if (text == "false" || text == "0") {
        out = false;
        return true;
    }
    return false;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

struct KeyHandlerCtx {
    RunConfig& cfg;
    const std::string& path;
    int line;
    const std::string& section;
    const std::string& key;
    const std::string& value;

    [[noreturn]] void fail(const std::string& message) const {
        throw ConfigError(path, line, message);
    }
    double as_double() const {
        double v;
        if (!parse_double(value, v)) fail("expected a finite number for '" + key + "'");
        return v;
    }
    int as_int() const {
        int v;
        if (!parse_int(value, v)) fail("expected an integer for '" + key + "'");
        return v;
    }
    bool as_bool() const {
        bool v;
        if (!parse_bool(value, v)) fail("expected true/false for '" + key + "'");
        return v;
    }
};

void apply_material_key(KeyHandlerCtx& c, MaterialSpec& m) {
    if (c.key == "model") {
        if (c.value != "vacuum" && c.value != "plasma" && c.value != "drude" &&
            c.value != "mirror")
            c.fail("unknown material model '" + c.value + "' (vacuum|plasma|drude|mirror)");
        m.model = c.value;
    } else if (c.key == "omega_p") {
        m.omega_p = c.as_double();
    } else if (c.key == "omega_tau") {
        m.omega_tau = c.as_double();
    } else {
        c.fail("unknown key '" + c.key + "' in [" + c.section + "]");
    }
}

void apply_key(KeyHandlerCtx& c) {
    RunConfig& cfg = c.cfg;
    const std::string& sec = c.section;
    const std::string& key = c.key;

    if (sec.empty()) {
        if (key == "schema_version") {
            cfg.schema_version = c.as_int();
        } else if (key == "command") {
            const auto cmd = parse_command(c.value);
            if (!cmd) c.fail("unknown command '" + c.value + "'");
            cfg.command = *cmd;
        } else if (key == "method") {
            if (c.value == "retarded")
                cfg.method = Method::full_retarded;
            else if (c.value == "smalld")
                cfg.method = Method::small_d;
            else
                c.fail("method must be 'retarded' or 'smalld'");
        } else {
            c.fail("unknown top-level key '" + key + "'");
        }
    } else if (sec == "film") {
        apply_material_key(c, cfg.film);
    } else if (sec == "substrate") {
        apply_material_key(c, cfg.substrate);
    } else if (sec == "ambient") {
        apply_material_key(c, cfg.ambient);
    } else if (sec == "geometry") {
        if (key == "thickness")
            cfg.thickness = c.as_double();
        else if (key == "d_min")
            cfg.d_lo = c.as_double();
        else if (key == "d_max")
            cfg.d_hi = c.as_double();
        else if (key == "d_samples")
            cfg.d_samples = c.as_int();
        else
            c.fail("unknown key '" + key + "' in [geometry]");
    } else if (sec == "elastic") {
        if (key == "young")
            cfg.elastic.young = c.as_double();
        else if (key == "poisson")
            cfg.elastic.poisson = c.as_double();
        else if (key == "surface_energy")
            cfg.elastic.surface_energy = c.as_double();
        else if (key == "mismatch_stress")
            cfg.elastic.mismatch_stress = c.as_double();
        else if (key == "surface_stress")
            cfg.elastic.surface_stress = c.as_double();
        else if (key == "hamaker")
            cfg.elastic.hamaker = c.as_double();
        else
            c.fail("unknown key '" + key + "' in [elastic]");
    } else if (sec == "quad") {
        if (key == "rel_tol")
            cfg.quad.rel_tol = c.as_double();
        else if (key == "abs_tol")
            cfg.quad.abs_tol = c.as_double();
        else if (key == "max_subdivisions")
            cfg.quad.max_subdivisions = c.as_int();
        else if (key == "xi_scale")
            cfg.quad.xi_scale = c.as_double();
        else
            c.fail("unknown key '" + key + "' in [quad]");
    } else if (sec == "sweep") {
        if (key == "variable")
            cfg.sweep.variable = c.value;
        else if (key == "min")
            cfg.sweep.min = c.as_double();
        else if (key == "max")
            cfg.sweep.max = c.as_double();
        else if (key == "samples")
            cfg.sweep.samples = c.as_int();
        else if (key == "spacing")
            cfg.sweep.spacing = c.value;
        else
            c.fail("unknown key '" + key + "' in [sweep]");
    } else if (sec == "diagram") {
        if (key == "min")
            cfg.diagram.min = c.as_double();
        else if (key == "max")
            cfg.diagram.max = c.as_double();
        else if (key == "samples")
            cfg.diagram.samples = c.as_int();
        else
            c.fail("unknown key '" + key + "' in [diagram]");
    } else if (sec == "perturbation") {
        if (key == "q")
            cfg.pert_q = c.as_double();
        else if (key == "lambda")
            cfg.pert_lambda = c.as_double();
        else
            c.fail("unknown key '" + key + "' in [perturbation]");
    } else if (sec == "run") {
        if (key == "threads")
            cfg.threads = c.as_int();
        else if (key == "strict")
            cfg.strict = c.as_bool();
        else if (key == "three_d")
            cfg.three_d = c.as_bool();
        else
            c.fail("unknown key '" + key + "' in [run]");
    } else if (sec == "output") {
        if (key == "path")
            cfg.output_path = c.value;
        else
            c.fail("unknown key '" + key + "' in [output]");
    } else {
        c.fail("unknown section [" + sec + "]");
    }
}

}  // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::force_sweep: return "force-sweep";
        case Command::thickness_scan: return "thickness-scan";
        case Command::stability_check: return "stability-check";
        case Command::critical_thickness: return "critical-thickness";
        case Command::stability_diagram: return "stability-diagram";
        case Command::elastic_report: return "elastic-report";
    }
    return "?";
}

std::optional<Command> parse_command(const std::string& name) {
    for (Command c : {Command::force_sweep, Command::thickness_scan, Command::stability_check,
                      Command::critical_thickness, Command::stability_diagram,
                      Command::elastic_report})
        if (name == command_name(c)) return c;
    return std::nullopt;
}

DielectricModel MaterialSpec::build() const {
    if (model == "vacuum") return DielectricModel::vacuum();
    if (model == "plasma") return DielectricModel::plasma(omega_p);
    if (model == "drude") return DielectricModel::drude(omega_p, omega_tau);
    if (model == "mirror") return DielectricModel::perfect_reflector();
    throw std::invalid_argument("unknown material model '" + model + "'");
}

RunConfig parse_config_text(const std::string& text, const std::string& path) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(path, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) throw ConfigError(path, line, "empty section name");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path, line, "expected 'key = value' or '[section]'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(path, line, "empty key");
        if (value.empty()) throw ConfigError(path, line, "empty value for '" + key + "'");
        KeyHandlerCtx ctx{cfg, path, line, section, key, value};
        apply_key(ctx);
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::vector<Diagnostic> validate(const RunConfig& cfg) {
    std::vector<Diagnostic> out;
    auto error = [&out](const std::string& m) {
        out.push_back(Diagnostic{Diagnostic::Level::error, m});
    };
    auto warning = [&out](const std::string& m) {
        out.push_back(Diagnostic{Diagnostic::Level::warning, m});
    };

    if (cfg.schema_version != 1) error("unsupported schema_version (expected 1)");

    for (const auto& [name, mat] :
         {std::pair<const char*, const MaterialSpec*>{"film", &cfg.film},
          {"substrate", &cfg.substrate},
          {"ambient", &cfg.ambient}}) {
        if (mat->model != "vacuum" && mat->model != "plasma" && mat->model != "drude" &&
            mat->model != "mirror")
            error(std::string(name) + ": unknown material model '" + mat->model + "'");
        if (!(mat->omega_p >= 0.0)) error(std::string(name) + ": omega_p must be >= 0");
        if (!(mat->omega_tau >= 0.0)) error(std::string(name) + ": omega_tau must be >= 0");
    }
    if (cfg.film.model == "mirror") error("film must not be a perfect reflector");

    try {
        cfg.elastic.validate();
    } catch (const std::exception& e) {
        error(std::string("elastic: ") + e.what());
    }
    try {
        cfg.quad.validate();
    } catch (const std::exception& e) {
        error(std::string("quad: ") + e.what());
    }

    const bool needs_thickness = cfg.command == Command::force_sweep ||
                                 cfg.command == Command::stability_check ||
                                 cfg.command == Command::stability_diagram;
    if (needs_thickness && !(cfg.thickness > 0.0))
        error("geometry.thickness must be > 0 for this command");

    const bool needs_d_range =
        cfg.command == Command::thickness_scan || cfg.command == Command::critical_thickness;
    if (needs_d_range) {
        if (!(cfg.d_lo > 0.0) || !(cfg.d_hi > cfg.d_lo))
            error("geometry.d_min/d_max must satisfy 0 < d_min < d_max");
    }
    if (cfg.command == Command::thickness_scan &&
        (cfg.d_samples < 2 || cfg.d_samples > 100000))
        error("geometry.d_samples must lie in [2, 100000]");

    auto check_sweep = [&](const SweepSpec& s, const char* which, bool need_variable) {
        if (!(s.min > 0.0) || !(s.max > s.min))
            error(std::string(which) + ": range must satisfy 0 < min < max");
        if (s.samples < 2 || s.samples > 100000)
            error(std::string(which) + ": samples must lie in [2, 100000]");
        if (s.spacing != "log" && s.spacing != "linear")
            error(std::string(which) + ": spacing must be 'log' or 'linear'");
        if (need_variable) {
            static const char* allowed[] = {"film.omega_p", "film.omega_tau", "substrate.omega_p",
                                            "substrate.omega_tau"};
            if (std::find(std::begin(allowed), std::end(allowed), s.variable) ==
                std::end(allowed))
                error(std::string(which) +
                      ": variable must be one of film.omega_p, film.omega_tau, "
                      "substrate.omega_p, substrate.omega_tau");
        }
    };

    if (cfg.command == Command::force_sweep) check_sweep(cfg.sweep, "sweep", true);
    if (cfg.command == Command::critical_thickness || cfg.command == Command::stability_diagram) {
        check_sweep(cfg.sweep, "sweep", false);
        if (!cfg.sweep.variable.empty() && cfg.sweep.variable != "film.omega_p")
            error("sweep.variable must be film.omega_p for this command");
    }
    if (cfg.command == Command::stability_diagram) {
        check_sweep(cfg.diagram, "diagram", false);
        if (cfg.substrate.model == "mirror" || cfg.substrate.model == "vacuum")
            warning("stability-diagram: the omega1 axis defines a drude substrate; the "
                    "configured substrate model is ignored");
    }

    if (cfg.command == Command::elastic_report) {
        if (!(cfg.pert_q >= 0.0)) error("perturbation.q must be >= 0");
        if (!(cfg.pert_lambda > 0.0)) error("perturbation.lambda must be > 0");
    }

    if (cfg.method == Method::small_d) {
        if (cfg.ambient.model != "vacuum")
            error("small-d method requires a vacuum ambient");
        if (cfg.film.model == "drude" && cfg.film.omega_p > 0.0 &&
            cfg.film.omega_tau >= std::numbers::sqrt2 * cfg.film.omega_p)
            warning(
                "film omega_tau >= sqrt(2) omega_p: outside the closed-form small-d domain; "
                "integral forms will be used");
    }

    if (cfg.command != Command::stability_check && cfg.output_path.empty() &&
        cfg.command != Command::elastic_report)
        error("output.path is required");
    if (cfg.threads < 0 || cfg.threads > 1024) error("run.threads must lie in [0, 1024]");

    return out;
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("schema_version", std::to_string(c.schema_version));
    e.emplace_back("command", command_name(c.command));
    e.emplace_back("method", c.method == Method::full_retarded ? "retarded" : "smalld");
    for (const auto& [name, m] :
         {std::pair<const char*, const MaterialSpec*>{"film", &c.film},
          {"substrate", &c.substrate},
          {"ambient", &c.ambient}}) {
        e.emplace_back(std::string(name) + ".model", m->model);
        e.emplace_back(std::string(name) + ".omega_p", format_double(m->omega_p));
        e.emplace_back(std::string(name) + ".omega_tau", format_double(m->omega_tau));
    }
    e.emplace_back("geometry.thickness", format_double(c.thickness));
    e.emplace_back("geometry.d_min", format_double(c.d_lo));
    e.emplace_back("geometry.d_max", format_double(c.d_hi));
    e.emplace_back("geometry.d_samples", std::to_string(c.d_samples));
    e.emplace_back("elastic.young", format_double(c.elastic.young));
    e.emplace_back("elastic.poisson", format_double(c.elastic.poisson));
    e.emplace_back("elastic.surface_energy", format_double(c.elastic.surface_energy));
    e.emplace_back("elastic.mismatch_stress", format_double(c.elastic.mismatch_stress));
    e.emplace_back("elastic.surface_stress", format_double(c.elastic.surface_stress));
    e.emplace_back("elastic.hamaker", c.elastic.hamaker ? format_double(*c.elastic.hamaker) : "none");
    e.emplace_back("quad.rel_tol", format_double(c.quad.rel_tol));
    e.emplace_back("quad.abs_tol", format_double(c.quad.abs_tol));
    e.emplace_back("quad.max_subdivisions", std::to_string(c.quad.max_subdivisions));
    e.emplace_back("quad.xi_scale", format_double(c.quad.xi_scale));
    e.emplace_back("sweep.variable", c.sweep.variable.empty() ? "none" : c.sweep.variable);
    e.emplace_back("sweep.min", format_double(c.sweep.min));
    e.emplace_back("sweep.max", format_double(c.sweep.max));
    e.emplace_back("sweep.samples", std::to_string(c.sweep.samples));
    e.emplace_back("sweep.spacing", c.sweep.spacing);
    e.emplace_back("diagram.min", format_double(c.diagram.min));
    e.emplace_back("diagram.max", format_double(c.diagram.max));
    e.emplace_back("diagram.samples", std::to_string(c.diagram.samples));
    e.emplace_back("perturbation.q", format_double(c.pert_q));
    e.emplace_back("perturbation.lambda", format_double(c.pert_lambda));
    e.emplace_back("run.three_d", c.three_d ? "true" : "false");
    e.emplace_back("run.strict", c.strict ? "true" : "false");
    return e;
}

}  // namespace cfs
