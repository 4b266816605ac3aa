#include "cfs/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include "cfs/csv.hpp"
#include "cfs/errors.hpp"
#include "cfs/lifshitz.hpp"
#include "cfs/smalld.hpp"
#include "cfs/stability.hpp"
#include "cfs/version.hpp"

namespace cfs {

namespace {

struct SampleOutcome {
    std::string row;
    std::string warning;
    bool failed = false;
};

// Workers pull sample indices from a shared counter; every sample writes
// only its own slot, so the assembled output never depends on scheduling.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::vector<double> sample_grid(double lo, double hi, int n, const std::string& spacing) {
    if (spacing == "log") return log_grid(lo, hi, n);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
    out.back() = hi;
    return out;
}

LayerStack build_stack(const RunConfig& cfg, double thickness) {
    return LayerStack(cfg.substrate.build(), cfg.ambient.build(), cfg.film.build(), thickness);
}

RunConfig with_sweep_value(const RunConfig& base, const std::string& var, double v) {
    RunConfig c = base;
    if (var == "film.omega_p")
        c.film.omega_p = v;
    else if (var == "film.omega_tau")
        c.film.omega_tau = v;
    else if (var == "substrate.omega_p")
        c.substrate.omega_p = v;
    else if (var == "substrate.omega_tau")
        c.substrate.omega_tau = v;
    else
        throw std::invalid_argument("unknown sweep variable '" + var + "'");
    return c;
}

std::string column_name(const std::string& variable) {
    std::string s = variable;
    for (char& ch : s)
        if (ch == '.') ch = '_';
    return s + "_rad_s";
}

void write_header(std::ostream& os, const RunConfig& cfg, const std::string& columns) {
    os << "# cfs " << kVersion << "\n";
    for (const auto& [k, v] : resolved_entries(cfg)) os << "# " << k << " = " << v << "\n";
    os << columns << "\n";
}

struct PressureSample {
    double value = std::numeric_limits<double>::quiet_NaN();
    double abs_error = std::numeric_limits<double>::quiet_NaN();
    bool valid_small_d = false;
};

PressureSample pressure_sample(const RunConfig& cfg, const LayerStack& stack) {
    PressureSample out;
    out.valid_small_d = small_d_valid(stack.film(), stack.thickness());
    if (cfg.method == Method::full_retarded) {
        const Estimate est = pressure(stack, cfg.quad);
        out.value = est.value;
        out.abs_error = est.abs_error;
    } else {
        out.value = small_d_pressure(stack).pressure;
        out.abs_error = std::fabs(out.value) * 1e-10;  // integral form tolerance
    }
    return out;
}

std::string describe_error(const std::exception& e) {
    std::string s = e.what();
    for (char& ch : s)
        if (ch == ',' || ch == '\n') ch = ';';
    return s;
}

struct CommandOutput {
    std::string columns;
    std::vector<SampleOutcome> samples;
};

CommandOutput run_force_sweep(const RunConfig& cfg, int threads) {
    const std::vector<double> grid =
        sample_grid(cfg.sweep.min, cfg.sweep.max, cfg.sweep.samples, cfg.sweep.spacing);
    CommandOutput out;
    out.columns = column_name(cfg.sweep.variable) +
                  ",pressure_N_per_m2,pressure_abs_error_N_per_m2,small_d_valid";
    out.samples.resize(grid.size());
    parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
        SampleOutcome& s = out.samples[i];
        const std::string head = csv::field(grid[i]) + ",";
        try {
            const RunConfig local = with_sweep_value(cfg, cfg.sweep.variable, grid[i]);
            const PressureSample ps = pressure_sample(local, build_stack(local, local.thickness));
            s.row = head + csv::field(ps.value) + "," + csv::field(ps.abs_error) + "," +
                    csv::field(ps.valid_small_d);
        } catch (const std::exception& e) {
            s.row = head + std::string(csv::na()) + "," + csv::na() + ",0";
            s.warning = "sample " + std::to_string(i) + ": " + describe_error(e);
            s.failed = true;
        }
    });
    return out;
}

CommandOutput run_thickness_scan(const RunConfig& cfg, int threads) {
    const std::vector<double> grid = sample_grid(cfg.d_lo, cfg.d_hi, cfg.d_samples, "log");
    CommandOutput out;
    out.columns =
        "thickness_m,pressure_N_per_m2,pressure_abs_error_N_per_m2,loglog_slope,small_d_valid";
    out.samples.resize(grid.size());
    std::vector<PressureSample> ps(grid.size());
    parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
        SampleOutcome& s = out.samples[i];
        try {
            ps[i] = pressure_sample(cfg, build_stack(cfg, grid[i]));
        } catch (const std::exception& e) {
            s.warning = "sample " + std::to_string(i) + ": " + describe_error(e);
            s.failed = true;
        }
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double slope = std::numeric_limits<double>::quiet_NaN();
        if (i > 0 && i + 1 < grid.size()) {
            const double f0 = std::fabs(ps[i - 1].value);
            const double f1 = std::fabs(ps[i + 1].value);
            if (f0 > 0.0 && f1 > 0.0 && std::isfinite(f0) && std::isfinite(f1))
                slope = (std::log(f1) - std::log(f0)) /
                        (std::log(grid[i + 1]) - std::log(grid[i - 1]));
        }
        out.samples[i].row = csv::field(grid[i]) + "," + csv::field(ps[i].value) + "," +
                             csv::field(ps[i].abs_error) + "," + csv::field(slope) + "," +
                             csv::field(ps[i].valid_small_d);
    }
    return out;
}

CommandOutput run_stability_check(const RunConfig& cfg) {
    CommandOutput out;
    out.columns =
        "thickness_m,threshold_N_per_m3,second_derivative_N_per_m3,"
        "second_derivative_abs_error_N_per_m3,stable,reason";
    SampleOutcome s;
    const std::string head = csv::field(cfg.thickness) + ",";
    try {
        const LayerStack stack = build_stack(cfg, cfg.thickness);
        const double thr = stability_threshold(cfg.elastic, cfg.three_d);
        double d2, d2err;
        if (cfg.method == Method::full_retarded) {
            const Estimate est = energy_second_derivative(stack, cfg.quad);
            d2 = est.value;
            d2err = est.abs_error;
        } else {
            d2 = small_d_second_derivative(stack);
            d2err = std::fabs(d2) * 1e-10;
        }
        const bool stable = d2 > thr;
        const char* reason =
            stable ? "stable" : (d2 <= 0.0 ? "attractive_vacuum_force" : "below_threshold");
        s.row = head + csv::field(thr) + "," + csv::field(d2) + "," + csv::field(d2err) + "," +
                csv::field(stable) + "," + reason;
    } catch (const std::exception& e) {
        s.row = head + std::string(csv::na()) + "," + csv::na() + "," + csv::na() + ",NA,NA";
        s.warning = describe_error(e);
        s.failed = true;
    }
    out.samples.push_back(std::move(s));
    return out;
}

CommandOutput run_critical_thickness(const RunConfig& cfg, int threads) {
    const std::vector<double> grid =
        sample_grid(cfg.sweep.min, cfg.sweep.max, cfg.sweep.samples, cfg.sweep.spacing);
    CommandOutput out;
    out.columns = "film_omega_p_rad_s,critical_thickness_m,bracket_lo_m,bracket_hi_m";
    out.samples.resize(grid.size());
    parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
        SampleOutcome& s = out.samples[i];
        const std::string head = csv::field(grid[i]) + ",";
        try {
            const RunConfig local = with_sweep_value(cfg, "film.omega_p", grid[i]);
            const LayerStack proto = build_stack(local, local.d_lo);
            const auto dc = critical_thickness(proto, local.elastic, local.method, local.quad,
                                               local.d_lo, local.d_hi, local.three_d);
            if (dc)
                s.row = head + csv::field(dc->d_c) + "," + csv::field(dc->bracket_lo) + "," +
                        csv::field(dc->bracket_hi);
            else
                s.row = head + std::string(csv::na()) + "," + csv::na() + "," + csv::na();
        } catch (const std::exception& e) {
            s.row = head + std::string(csv::na()) + "," + csv::na() + "," + csv::na();
            s.warning = "sample " + std::to_string(i) + ": " + describe_error(e);
            s.failed = true;
        }
    });
    return out;
}

CommandOutput run_stability_diagram(const RunConfig& cfg, int threads) {
    const std::vector<double> grid =
        sample_grid(cfg.sweep.min, cfg.sweep.max, cfg.sweep.samples, cfg.sweep.spacing);
    CommandOutput out;
    out.columns = "film_omega_p_rad_s,omega1_lower_rad_s,omega1_upper_rad_s,n_roots";
    out.samples.resize(grid.size());
    parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
        SampleOutcome& s = out.samples[i];
        const std::string head = csv::field(grid[i]) + ",";
        try {
            const std::vector<double> roots = boundary_roots(
                grid[i], cfg.film.omega_tau, cfg.substrate.omega_tau, cfg.thickness,
                cfg.diagram.min, cfg.diagram.max, cfg.elastic, cfg.method, cfg.quad, cfg.three_d);
            if (roots.empty()) {
                s.row = head + std::string(csv::na()) + "," + csv::na() + ",0";
            } else {
                const std::string upper =
                    roots.size() > 1 ? csv::field(roots.back()) : std::string(csv::na());
                s.row = head + csv::field(roots.front()) + "," + upper + "," +
                        csv::field(static_cast<int>(roots.size()));
            }
        } catch (const std::exception& e) {
            s.row = head + std::string(csv::na()) + "," + csv::na() + ",NA";
            s.warning = "sample " + std::to_string(i) + ": " + describe_error(e);
            s.failed = true;
        }
    });
    return out;
}

CommandOutput run_elastic_report(const RunConfig& cfg) {
    CommandOutput out;
    out.columns =
        "threshold_2d_N_per_m3,threshold_3d_N_per_m3,critical_wavelength_m,"
        "biaxial_eps_parallel,biaxial_eps_perp,surface_stress_eps_parallel,"
        "surface_stress_eps_perp,delta_u_elastic_J_per_m,delta_u_surface_J_per_m,"
        "hamaker_critical_thickness_m";
    SampleOutcome s;
    try {
        const FilmElasticParams& p = cfg.elastic;
        const StrainState biax = biaxial_strains(p.mismatch_stress, p);
        std::string surf_par = csv::na(), surf_perp = csv::na();
        double max_strain = std::max(std::fabs(biax.eps_parallel), std::fabs(biax.eps_perp));
        if (cfg.thickness > 0.0) {
            const StrainState st = strains_from_surface_stress(p, cfg.thickness);
            surf_par = csv::field(st.eps_parallel);
            surf_perp = csv::field(st.eps_perp);
            max_strain = std::max({max_strain, std::fabs(st.eps_parallel),
                                   std::fabs(st.eps_perp)});
        }
        if (max_strain >= kStrainWarningThreshold)
            s.warning = "strain magnitude " + std::to_string(max_strain) +
                        " outside the linear-elastic regime";
        std::string dc = csv::na();
        if (p.hamaker && *p.hamaker < 0.0) dc = csv::field(hamaker_critical_thickness(p));
        s.row = csv::field(stability_threshold(p, false)) + "," +
                csv::field(stability_threshold(p, true)) + "," +
                csv::field(critical_wavelength(p)) + "," + csv::field(biax.eps_parallel) + "," +
                csv::field(biax.eps_perp) + "," + surf_par + "," + surf_perp + "," +
                csv::field(delta_u_elastic(p.mismatch_stress, cfg.pert_q, p.young)) + "," +
                csv::field(delta_u_surface(p.surface_energy, cfg.pert_q, cfg.pert_lambda)) + "," +
                dc;
    } catch (const std::exception& e) {
        s.row = "NA,NA,NA,NA,NA,NA,NA,NA,NA,NA";
        s.warning = describe_error(e);
        s.failed = true;
    }
    out.samples.push_back(std::move(s));
    return out;
}

}  // namespace

int resolve_threads(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("CFS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    bool invalid = false;
    for (const Diagnostic& d : validate(cfg)) {
        if (d.level == Diagnostic::Level::error) {
            err << "error: " << d.message << "\n";
            invalid = true;
        } else {
            err << "warning: " << d.message << "\n";
        }
    }
    if (invalid) return 2;

    const int threads = resolve_threads(cfg);
    CommandOutput result;
    switch (cfg.command) {
        case Command::force_sweep: result = run_force_sweep(cfg, threads); break;
        case Command::thickness_scan: result = run_thickness_scan(cfg, threads); break;
        case Command::stability_check: result = run_stability_check(cfg); break;
        case Command::critical_thickness: result = run_critical_thickness(cfg, threads); break;
        case Command::stability_diagram: result = run_stability_diagram(cfg, threads); break;
        case Command::elastic_report: result = run_elastic_report(cfg); break;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open output file '" << cfg.output_path << "'\n";
            return 1;
        }
        sink = &file;
    }
    write_header(*sink, cfg, result.columns);
    bool any_failed = false;
    for (const SampleOutcome& s : result.samples) {
        *sink << s.row << "\n";
        if (!s.warning.empty()) err << "warning: " << s.warning << "\n";
        any_failed = any_failed || s.failed;
    }
    sink->flush();
    if (file.is_open() && !file) {
        err << "error: failed writing '" << cfg.output_path << "'\n";
        return 1;
    }
    return (any_failed && cfg.strict) ? 1 : 0;
}

}  // namespace cfs
