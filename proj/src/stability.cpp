#include "cfs/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "cfs/errors.hpp"
#include "cfs/smalld.hpp"

namespace cfs {

namespace {

constexpr int kGridPoints = 64;
constexpr double kRootRelTol = 1e-6;

// Bisection refined until both the interval and the residual are small.
// f must have opposite signs at lo and hi.
struct RootSolve {
    double root;
    double lo, hi;
};

RootSolve bisect(const std::function<double(double)>& f, double lo, double hi, double flo,
                 double f_tol) {
    const double blo = lo, bhi = hi;
    double mid = 0.5 * (lo + hi);
    double fmid = f(mid);
    for (int it = 0; it < 200; ++it) {
        if ((hi - lo) <= kRootRelTol * std::fabs(mid) && std::fabs(fmid) <= f_tol) break;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        const double next = 0.5 * (lo + hi);
        if (next == mid || !(next > lo) || !(next < hi)) break;
        mid = next;
        fmid = f(mid);
    }
    return RootSolve{mid, blo, bhi};
}

// All sign-change roots of f on a log grid over [lo, hi], ascending.
std::vector<RootSolve> roots_on_log_grid(const std::function<double(double)>& f, double lo,
                                         double hi, double f_tol) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("root search needs 0 < lo < hi");
    const double ratio = std::log(hi / lo);
    std::vector<double> xs(kGridPoints), fs(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        xs[i] = lo * std::exp(ratio * i / (kGridPoints - 1));
        fs[i] = f(xs[i]);
    }
    std::vector<RootSolve> out;
    for (int i = 0; i + 1 < kGridPoints; ++i) {
        if (std::isnan(fs[i]) || std::isnan(fs[i + 1])) continue;
        if (fs[i] == 0.0) {
            out.push_back(RootSolve{xs[i], xs[i], xs[i]});
        } else if ((fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
            out.push_back(bisect(f, xs[i], xs[i + 1], fs[i], f_tol));
        }
    }
    if (fs[kGridPoints - 1] == 0.0)
        out.push_back(RootSolve{xs[kGridPoints - 1], xs[kGridPoints - 1], xs[kGridPoints - 1]});
    return out;
}

// E'' enters only through comparison with the threshold, so quadrature
// noise far below it is irrelevant; the floor keeps nearly-degenerate
// film/substrate pairs (integrand = pure cancellation noise) from failing
// to converge on a value that is physically zero.
QuadratureSpec with_threshold_floor(const QuadratureSpec& spec, double threshold) {
    QuadratureSpec out = spec;
    out.abs_tol = std::max(out.abs_tol, 1e-9 * threshold);
    return out;
}

}  // namespace

double stability_threshold(const FilmElasticParams& params, bool three_d) {
    params.validate();
    const double y = three_d ? effective_young_3d(params.young, params.poisson) : params.young;
    const double s2 = params.mismatch_stress * params.mismatch_stress;
    return s2 * s2 / (y * y * params.surface_energy);
}

double vacuum_second_derivative(const LayerStack& stack, Method method,
                                const QuadratureSpec& spec) {
    if (method == Method::full_retarded) return energy_second_derivative(stack, spec).value;
    return small_d_second_derivative(stack);
}

StabilityResult is_stable(const LayerStack& stack, const FilmElasticParams& params, Method method,
                          const QuadratureSpec& spec, bool three_d) {
    StabilityResult out;
    out.threshold = stability_threshold(params, three_d);
    out.second_derivative =
        vacuum_second_derivative(stack, method, with_threshold_floor(spec, out.threshold));
    out.stable = out.second_derivative > out.threshold;
    out.method = method;
    return out;
}

std::optional<CriticalThickness> critical_thickness(const LayerStack& materials,
                                                    const FilmElasticParams& params, Method method,
                                                    const QuadratureSpec& spec, double d_lo,
                                                    double d_hi, bool three_d) {
    if (!(d_lo > 0.0) || !(d_hi > d_lo))
        throw std::invalid_argument("critical_thickness needs 0 < d_lo < d_hi");
    const double thr = stability_threshold(params, three_d);
    const QuadratureSpec local = with_threshold_floor(spec, thr);
    auto fn = [&](double d) {
        return vacuum_second_derivative(materials.with_thickness(d), method, local) - thr;
    };
    const auto roots = roots_on_log_grid(fn, d_lo, d_hi, 1e-6 * thr);
    if (roots.empty()) return std::nullopt;
    // Largest root: the maximum thickness of the flat-stable region.
    const RootSolve& top = roots.back();
    return CriticalThickness{top.root, top.lo, top.hi};
}

std::vector<double> boundary_roots(double omega3, double film_omega_tau, double substrate_omega_tau,
                                   double d, double omega1_lo, double omega1_hi,
                                   const FilmElasticParams& params, Method method,
                                   const QuadratureSpec& spec, bool three_d) {
    const double thr = stability_threshold(params, three_d);
    const QuadratureSpec local = with_threshold_floor(spec, thr);
    const DielectricModel film = DielectricModel::drude(omega3, film_omega_tau);
    auto fn = [&](double omega1) {
        const LayerStack stack(DielectricModel::drude(omega1, substrate_omega_tau),
                               DielectricModel::vacuum(), film, d);
        return vacuum_second_derivative(stack, method, local) - thr;
    };
    std::vector<double> out;
    for (const RootSolve& r : roots_on_log_grid(fn, omega1_lo, omega1_hi, 1e-4 * thr))
        out.push_back(r.root);
    return out;
}

DiagramCurve stability_boundary(std::span<const double> omega3_samples, double omega1_lo,
                                double omega1_hi, double d, double film_omega_tau,
                                double substrate_omega_tau, const FilmElasticParams& params,
                                Method method, const QuadratureSpec& spec, bool three_d) {
    DiagramCurve curve;
    for (double omega3 : omega3_samples) {
        std::vector<double> roots;
        try {
            roots = boundary_roots(omega3, film_omega_tau, substrate_omega_tau, d, omega1_lo,
                                   omega1_hi, params, method, spec, three_d);
        } catch (const ConvergenceError&) {
            curve.no_solution_omega3.push_back(omega3);
            continue;
        }
        if (roots.empty()) {
            curve.no_solution_omega3.push_back(omega3);
            continue;
        }
        curve.points.push_back(DiagramPoint{omega3, roots.front(), 0});
        if (roots.size() > 1) curve.points.push_back(DiagramPoint{omega3, roots.back(), 1});
    }
    return curve;
}

std::vector<std::optional<CriticalThickness>> critical_thickness_curve(
    std::span<const double> omega3_samples, const DielectricModel& substrate,
    double film_omega_tau, const FilmElasticParams& params, Method method,
    const QuadratureSpec& spec, double d_lo, double d_hi, bool three_d) {
    std::vector<std::optional<CriticalThickness>> out;
    out.reserve(omega3_samples.size());
    for (double omega3 : omega3_samples) {
        const LayerStack proto(substrate, DielectricModel::vacuum(),
                               DielectricModel::drude(omega3, film_omega_tau), d_lo);
        try {
            out.push_back(critical_thickness(proto, params, method, spec, d_lo, d_hi, three_d));
        } catch (const ConvergenceError&) {
            out.push_back(std::nullopt);
        }
    }
    return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("bad log grid");
    std::vector<double> out(n);
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < n; ++i) out[i] = lo * std::exp(ratio * i / (n - 1));
    out.back() = hi;
    return out;
}

}  // namespace cfs
