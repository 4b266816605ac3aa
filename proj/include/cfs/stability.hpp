#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cfs/elastic.hpp"
#include "cfs/layer_stack.hpp"
#include "cfs/lifshitz.hpp"
#include "cfs/quadrature.hpp"

namespace cfs {

enum class Method { full_retarded, small_d };

// sigma^4 / (Y^2 gamma); with three_d, Y -> Y/(1 - nu^2).
double stability_threshold(const FilmElasticParams& params, bool three_d = false);

// E''(d) by the selected route: retarded mode sum or d^-3 small-d law.
double vacuum_second_derivative(const LayerStack& stack, Method method,
                                const QuadratureSpec& spec);

struct StabilityResult {
    double threshold;           // N/m^3
    double second_derivative;   // N/m^3
    bool stable;                // second_derivative > threshold, exactly
    std::optional<double> critical_thickness;
    std::pair<double, double> bracket{0.0, 0.0};
    Method method;
};

// Flat-surface verdict: stable iff E''(d) exceeds the elastic threshold.
// An attractive vacuum force (E'' <= 0) can never stabilize the film.
StabilityResult is_stable(const LayerStack& stack, const FilmElasticParams& params, Method method,
                          const QuadratureSpec& spec = {}, bool three_d = false);

struct CriticalThickness {
    double d_c;         // m
    double bracket_lo;  // grid bracket the root was refined from
    double bracket_hi;
};

// Largest root of E''(d) = threshold on [d_lo, d_hi]: sign brackets on a
// 64-point log grid, then bisection to relative 1e-6 in d and 1e-6 in the
// threshold mismatch. Films thinner than the returned d_c are flat-stable.
// Empty when no sign change exists in the range.
std::optional<CriticalThickness> critical_thickness(const LayerStack& materials,
                                                    const FilmElasticParams& params, Method method,
                                                    const QuadratureSpec& spec, double d_lo,
                                                    double d_hi, bool three_d = false);

// All omega_1 roots of E''(omega_1) = threshold at fixed film parameters,
// in increasing order (the retarded curve can cross the threshold twice).
std::vector<double> boundary_roots(double omega3, double film_omega_tau, double substrate_omega_tau,
                                   double d, double omega1_lo, double omega1_hi,
                                   const FilmElasticParams& params, Method method,
                                   const QuadratureSpec& spec, bool three_d = false);

struct DiagramPoint {
    double omega3;
    double omega1;
    int branch;  // 0 = lower boundary, 1 = upper boundary
};

struct DiagramCurve {
    std::vector<DiagramPoint> points;          // ordered by omega3 sample, branch
    std::vector<double> no_solution_omega3;    // samples with no boundary crossing
};

// Stability-diagram boundary in the (omega3, omega1) plane at fixed d.
DiagramCurve stability_boundary(std::span<const double> omega3_samples, double omega1_lo,
                                double omega1_hi, double d, double film_omega_tau,
                                double substrate_omega_tau, const FilmElasticParams& params,
                                Method method, const QuadratureSpec& spec, bool three_d = false);

// d_c(omega3) over a sample list for a fixed substrate model.
std::vector<std::optional<CriticalThickness>> critical_thickness_curve(
    std::span<const double> omega3_samples, const DielectricModel& substrate,
    double film_omega_tau, const FilmElasticParams& params, Method method,
    const QuadratureSpec& spec, double d_lo, double d_hi, bool three_d = false);

// Log-spaced sample helper shared by the sweep commands.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace cfs
