#include "cfs/lifshitz.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cfs/constants.hpp"
#include "cfs/errors.hpp"

namespace cfs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// hbar / (4 pi^2 c^2), the prefactor of the (p, xi) mode sum.
const double kPrefactor = hbar / (4.0 * kPi * kPi * c_light * c_light);

enum class KernelKind { energy, pressure, second_derivative };

struct StackEps {
    double e1 = 1.0, e2 = 1.0, e3 = 1.0;
    bool refl1 = false, refl2 = false;
};

inline StackEps eps_at(const LayerStack& s, double xi) {
    StackEps out;
    out.refl1 = s.substrate().is_reflector();
    out.refl2 = s.ambient().is_reflector();
    if (!out.refl1) out.e1 = s.substrate().eval_epsilon(xi);
    if (!out.refl2) out.e2 = s.ambient().eval_epsilon(xi);
    out.e3 = s.film().eval_epsilon(xi);
    return out;
}

struct ModeFactors {
    double r_tm;     // product of TM interface factors
    double r_te;     // product of TE interface factors
    double gamma3;   // 1/m
    double x;        // 2 gamma3 d, the decay exponent
};

// TM/TE interface factor of layer i against the film. The ideal-mirror
// limit eps_i -> infinity gives exactly +1 for TM and -1 for TE
// (K_i -> infinity in (K3 - K_i)/(K3 + K_i)).
inline void interface_factors(bool reflector, double eps_i, double eps3, double p2m1, double K3,
                              double& tm, double& te) {
    if (reflector) {
        tm = 1.0;
        te = -1.0;
        return;
    }
    const double Ki = std::sqrt(p2m1 + eps_i);
    tm = (eps_i * K3 - eps3 * Ki) / (eps_i * K3 + eps3 * Ki);
    te = (K3 - Ki) / (K3 + Ki);
}

inline ModeFactors mode_factors(const StackEps& e, double p, double xi, double d) {
    const double p2m1 = p * p - 1.0;
    const double K3 = std::sqrt(p2m1 + e.e3);
    double tm1, te1, tm2, te2;
    interface_factors(e.refl1, e.e1, e.e3, p2m1, K3, tm1, te1);
    interface_factors(e.refl2, e.e2, e.e3, p2m1, K3, tm2, te2);
    ModeFactors out;
    out.r_tm = tm1 * tm2;
    out.r_te = te1 * te2;
    out.gamma3 = xi * K3 / c_light;
    out.x = 2.0 * out.gamma3 * d;
    return out;
}

// Per-(p, xi) kernel summed over polarizations, without the xi^2 weight.
//   energy:            ln(1 - r e^-x)
//   pressure:          d/dd ln(1 - r e^-x)   =  2 g3 r e^-x / (1 - r e^-x)
//   second_derivative: d2/dd2 ln(1 - r e^-x) = -4 g3^2 r e^-x / (1 - r e^-x)^2
// log1p keeps the tail (r e^-x << 1) contributions alive where ln(1 - t)
// would round to zero.
inline double kernel_value(KernelKind kind, const ModeFactors& m) {
    const double ex = std::exp(-m.x);
    switch (kind) {
        case KernelKind::energy:
            return std::log1p(-m.r_tm * ex) + std::log1p(-m.r_te * ex);
        case KernelKind::pressure: {
            const double ttm = m.r_tm * ex;
            const double tte = m.r_te * ex;
            return 2.0 * m.gamma3 * (ttm / (1.0 - ttm) + tte / (1.0 - tte));
        }
        case KernelKind::second_derivative: {
            const double ttm = m.r_tm * ex;
            const double tte = m.r_te * ex;
            const double qtm = 1.0 - ttm;
            const double qte = 1.0 - tte;
            return -4.0 * m.gamma3 * m.gamma3 * (ttm / (qtm * qtm) + tte / (qte * qte));
        }
    }
    return 0.0;
}

struct RawIntegral {
    double value;
    double abs_error;
    bool converged;
};

// Raw mode sum  I = int_1^inf p dp int_0^inf xi^2 kernel dxi  with the
// transforms p = 1 + u/(1-u), xi = S t/(1-t). The inner xi integral gets
// seed breakpoints around the exponential cutoff xi* = c / (2 p d) so the
// first coarse rule cannot step over the integrand's support at large p.
RawIntegral integrate_kernel(const LayerStack& stack, const QuadratureSpec& spec,
                             KernelKind kind) {
    spec.validate();
    const double d = stack.thickness();
    const double S = spec.xi_scale > 0.0 ? spec.xi_scale : auto_xi_scale(stack);
    const double raw_abs_tol = spec.abs_tol / kPrefactor;

    bool inner_ok = true;

    auto outer = [&](double u) -> double {
        const double om = 1.0 - u;
        const double p = 1.0 + u / om;
        const double jac_p = 1.0 / (om * om);
        const double xi_star = c_light / (2.0 * p * d);

        // Panels out to ~120 decay lengths: past that the tail is below
        // double-precision underflow, and a node-free gap in between would
        // otherwise read as an exactly-zero panel.
        double bps[6];
        int nbp = 0;
        for (double mult : {0.01, 0.1, 1.0, 10.0, 40.0, 120.0}) {
            const double xi = mult * xi_star;
            const double t = xi / (S + xi);
            if (t > 1e-13 && t < 1.0 - 1e-13) bps[nbp++] = t;
        }

        auto inner = [&](double t) -> double {
            const double omt = 1.0 - t;
            const double xi = S * t / omt;
            if (!(xi > 0.0) || !std::isfinite(xi)) return 0.0;
            const double jac_xi = S / (omt * omt);
            const StackEps e = eps_at(stack, xi);
            const ModeFactors m = mode_factors(e, p, xi, d);
            return jac_xi * xi * xi * kernel_value(kind, m);
        };

        const IntegralResult res =
            integrate_adaptive(inner, 0.0, 1.0, 0.1 * spec.rel_tol, 0.1 * raw_abs_tol,
                               spec.max_subdivisions, std::span<const double>(bps, nbp), 1e-3);
        if (!res.converged) inner_ok = false;
        return jac_p * p * res.value;
    };

    const double outer_bps[4] = {0.25, 0.5, 0.75, 0.9375};
    const IntegralResult res = integrate_adaptive(outer, 0.0, 1.0, spec.rel_tol, raw_abs_tol,
                                                  spec.max_subdivisions, outer_bps, 1e-3);
    return RawIntegral{res.value, res.abs_error, res.converged && inner_ok};
}

Estimate finish(const RawIntegral& raw, double sign, const char* what) {
    const Estimate est{sign * kPrefactor * raw.value, kPrefactor * raw.abs_error};
    if (!raw.converged)
        throw ConvergenceError(std::string(what) + ": quadrature did not converge", est.value,
                               est.abs_error);
    return est;
}

}  // namespace

double auto_xi_scale(const LayerStack& stack) {
    double s = c_light / stack.thickness();
    for (const DielectricModel* m : {&stack.substrate(), &stack.ambient(), &stack.film()})
        if (!m->is_reflector()) s = std::max(s, m->omega_p());
    return s;
}

IntegrandPoint make_integrand_point(const LayerStack& stack, double p, double xi) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::domain_error("integrand point requires p >= 1");
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw std::domain_error("integrand point requires xi > 0");
    const double p2m1 = p * p - 1.0;
    IntegrandPoint pt;
    pt.p = p;
    pt.xi = xi;
    pt.k = xi / c_light * std::sqrt(p2m1);
    auto kernel = [&](const DielectricModel& m) {
        return m.is_reflector() ? kInf : std::sqrt(p2m1 + m.eval_epsilon(xi));
    };
    pt.K_substrate = kernel(stack.substrate());
    pt.K_ambient = kernel(stack.ambient());
    pt.K_film = kernel(stack.film());
    pt.gamma_substrate = xi * pt.K_substrate / c_light;
    pt.gamma_ambient = xi * pt.K_ambient / c_light;
    pt.gamma_film = xi * pt.K_film / c_light;
    return pt;
}

QFactors q_factors(const LayerStack& stack, const IntegrandPoint& point) {
    const StackEps e = eps_at(stack, point.xi);
    const ModeFactors m = mode_factors(e, point.p, point.xi, stack.thickness());
    const double ex = std::exp(-m.x);
    return QFactors{1.0 - m.r_tm * ex, 1.0 - m.r_te * ex};
}

Estimate energy_per_area(const LayerStack& stack, const QuadratureSpec& spec) {
    return finish(integrate_kernel(stack, spec, KernelKind::energy), 1.0, "energy_per_area");
}

Estimate pressure(const LayerStack& stack, const QuadratureSpec& spec) {
    // F = -d(E)/dd, so the differentiated kernel enters with a minus sign.
    return finish(integrate_kernel(stack, spec, KernelKind::pressure), -1.0, "pressure");
}

Estimate energy_second_derivative(const LayerStack& stack, const QuadratureSpec& spec) {
    return finish(integrate_kernel(stack, spec, KernelKind::second_derivative), 1.0,
                  "energy_second_derivative");
}

VacuumQuantities vacuum_quantities(const LayerStack& stack, const QuadratureSpec& spec) {
    VacuumQuantities out;
    out.energy_per_area = energy_per_area(stack, spec);
    out.pressure = pressure(stack, spec);
    out.energy_second_derivative = energy_second_derivative(stack, spec);
    return out;
}

}  // namespace cfs
