#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfs/elastic.hpp"
#include "cfs/quadrature.hpp"
#include "cfs/stability.hpp"

namespace cfs {

enum class Command {
    force_sweep,
    thickness_scan,
    stability_check,
    critical_thickness,
    stability_diagram,
    elastic_report,
};

const char* command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

struct MaterialSpec {
    std::string model = "vacuum";  // vacuum | plasma | drude | mirror
    double omega_p = 0.0;          // rad/s
    double omega_tau = 0.0;        // rad/s

    DielectricModel build() const;  // throws std::invalid_argument on bad model names
};

struct SweepSpec {
    std::string variable;  // e.g. film.omega_p, substrate.omega_p, film.omega_tau
    double min = 0.0;
    double max = 0.0;
    int samples = 0;
    std::string spacing = "log";  // log | linear
};

struct RunConfig {
    int schema_version = 1;
    Command command = Command::stability_check;
    MaterialSpec film, substrate, ambient;
    double thickness = 0.0;  // m
    FilmElasticParams elastic;
    Method method = Method::full_retarded;
    QuadratureSpec quad;
    SweepSpec sweep;     // primary axis (force-sweep, critical-thickness, diagram omega3)
    SweepSpec diagram;   // omega1 axis of the stability diagram
    double d_lo = 0.0, d_hi = 0.0;  // thickness range (thickness-scan, critical-thickness)
    int d_samples = 0;
    double pert_q = 1e-9;        // m, elastic-report perturbation amplitude
    double pert_lambda = 1e-7;   // m, elastic-report perturbation wavelength
    bool three_d = false;
    bool strict = false;
    int threads = 0;  // 0 = CFS_THREADS env or 1
    std::string output_path;
};

// Error in the config file, tagged with its 1-based line number.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& path, int line, const std::string& message)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// Parses the key = value config format ([section] headers, '#' comments).
// Unknown keys are errors, malformed numbers are errors; semantic checks
// live in validate().
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& path_for_messages);

struct Diagnostic {
    enum class Level { error, warning };
    Level level;
    std::string message;
};

// Pure semantic validation; never computes anything.
std::vector<Diagnostic> validate(const RunConfig& config);

// Canonical key/value dump of the fully resolved config, in a fixed order,
// for the CSV header block.
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& config);

}  // namespace cfs
