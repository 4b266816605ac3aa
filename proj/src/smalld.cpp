#include "cfs/smalld.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cfs/constants.hpp"
#include "cfs/errors.hpp"
#include "cfs/quadrature.hpp"

namespace cfs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_positive_thickness(double d) {
    if (!(d > 0.0) || !std::isfinite(d)) throw std::domain_error("thickness must be > 0");
}

// int_0^inf f(xi) dxi via xi = scale t/(1-t), rel_tol 1e-10. abs_floor
// absorbs the roundoff noise of nearly-cancelling integrands (film and
// substrate a few ulp apart), whose true value is physically negligible.
template <class F>
double semi_infinite_integral(F&& f, double scale, double abs_floor, const char* what) {
    auto mapped = [&](double t) {
        const double om = 1.0 - t;
        const double xi = scale * t / om;
        if (!(xi > 0.0) || !std::isfinite(xi)) return 0.0;
        return f(xi) * scale / (om * om);
    };
    const IntegralResult res = integrate_adaptive(mapped, 0.0, 1.0, 1e-10, abs_floor, 200);
    if (!res.converged)
        throw ConvergenceError(std::string(what) + ": quadrature did not converge", res.value,
                               res.abs_error);
    return res.value;
}

// Dimensionless free-standing kernel integral int_0^inf du/(1 + 2u(u+x))^2.
// Equals pi/(4 sqrt 2) at x = 0.
double reduced_film_integral(double x) {
    return semi_infinite_integral(
        [x](double u) {
            const double q = 1.0 + 2.0 * u * (u + x);
            return 1.0 / (q * q);
        },
        1.0, 1e-300, "g_factor");
}

// (pi/2 - atan(w/s))/s with s = sqrt(a), the basic xi integral of a
// 1/(xi^2 + w xi + Omega^2) kernel (a = 4 Omega^2 - w^2 > 0).
double h_of(double a, double w) {
    const double s = std::sqrt(a);
    return (kPi / 2.0 - std::atan(w / s)) / s;
}

// dH/ds for the degenerate omega_bar -> omega_s limit.
double h_prime(double s, double w) {
    if (w == 0.0) return -(kPi / 2.0) / (s * s);
    return (s * w / (w * w + s * s) - std::atan(s / w)) / (s * s);
}

}  // namespace

DerivedFrequencies derived_frequencies(double omega3, double omega1) {
    if (!(omega3 >= 0.0) || !(omega1 >= 0.0))
        throw std::domain_error("plasma frequencies must be >= 0");
    return DerivedFrequencies{omega3 / kSqrt2,
                              std::sqrt((omega1 * omega1 + omega3 * omega3) / 2.0)};
}

double fp1(double omega3, double d) {
    if (!(omega3 >= 0.0)) throw std::domain_error("omega3 must be >= 0");
    require_positive_thickness(d);
    return -hbar * omega3 / (kSqrt2 * 32.0 * kPi * d * d * d);
}

double fp2(double omega3, double d) { return -2.0 * fp1(omega3, d); }

double vdw_force_free_standing_integral(const DielectricModel& film, double d) {
    require_positive_thickness(d);
    if (film.kind() != DielectricModel::Kind::plasma &&
        film.kind() != DielectricModel::Kind::drude)
        throw std::invalid_argument("free-standing small-d integral needs a plasma or drude film");
    const double op = film.omega_p();
    if (op == 0.0) return 0.0;
    const double wt = film.omega_tau();
    const double scale = std::max(op, wt);
    const double integral = semi_infinite_integral(
        [&](double xi) {
            const double em1 = op * op / (xi * (xi + wt));  // eps - 1
            const double delta = em1 / (em1 + 2.0);
            return delta * delta;
        },
        scale, 1e-13 * scale, "vdw_force_free_standing_integral");
    return -hbar / (8.0 * kPi * kPi * d * d * d) * integral;
}

double vdw_force_three_layer_integral(const LayerStack& stack) {
    if (stack.ambient().kind() != DielectricModel::Kind::vacuum)
        throw std::invalid_argument("three-layer small-d integral requires a vacuum ambient");
    const DielectricModel& film = stack.film();
    const DielectricModel& sub = stack.substrate();
    if (film.kind() == DielectricModel::Kind::vacuum) return 0.0;
    const double d = stack.thickness();
    if (sub.kind() == DielectricModel::Kind::vacuum)
        return vdw_force_free_standing_integral(film, d);

    const bool mirror = sub.is_reflector();
    double scale = std::max(film.omega_p(), film.omega_tau());
    if (!mirror) scale = std::max({scale, sub.omega_p(), sub.omega_tau()});
    if (scale == 0.0) return 0.0;

    const double integral = semi_infinite_integral(
        [&](double xi) {
            const double e3 = film.eval_epsilon(xi);
            const double d32 = (e3 - 1.0) / (e3 + 1.0);
            double d31;
            if (mirror) {
                d31 = -1.0;
            } else {
                const double e1 = sub.eval_epsilon(xi);
                d31 = (e3 - e1) / (e3 + e1);
            }
            return d31 * d32;
        },
        scale, 1e-13 * scale, "vdw_force_three_layer_integral");
    return -hbar / (8.0 * kPi * kPi * d * d * d) * integral;
}

double g_factor_closed(double x) {
    if (!(x >= 0.0) || x >= 1.0)
        throw std::domain_error("printed g form is defined for 0 <= x < 1");
    const double e = 1.0 - x;
    if (e < 1e-3) {
        // Expansion in e = 1 - x: the two printed terms diverge individually
        // (-1/e and (2e)^{-3/2}); sum their series to fourth order.
        const double b0 = kPi / 4.0;
        const double c0 = b0;
        const double c1 = 0.75 * b0 + 1.0;
        const double c2 = (15.0 / 32.0) * b0 + 0.25;
        const double c3 = (35.0 / 128.0) * b0 + 73.0 / 96.0;
        const double c4 = (315.0 / 2048.0) * b0 - 59.0 / 128.0;
        const double poly = c0 + e * (c1 + e * (c2 + e * (c3 + e * c4)));
        const double term2 = poly / std::pow(2.0 * e, 1.5);
        const double term1 =
            -1.0 / e + 0.5 + e * (0.25 + e * (0.125 + e * 0.0625));
        return kSqrt2 / kPi * (term1 + term2);
    }
    const double one = (1.0 - x) * (1.0 + x);  // 1 - x^2 without cancellation
    const double term1 = -2.0 * x / one;       // = (2(1-x^2) - 2)/(x (1-x^2))
    const double term2 =
        (kPi / 2.0 - std::atan(x / std::sqrt(2.0 - x * x))) / (one * std::sqrt(one));
    return kSqrt2 / kPi * (term1 + term2);
}

double g_factor(double x) {
    if (!(x >= 0.0)) throw std::domain_error("g_factor requires x >= 0");
    static const double plasma_value = reduced_film_integral(0.0);
    if (x == 0.0) return 1.0;  // same integral over itself
    return reduced_film_integral(x) / plasma_value;
}

double f_factor(double x) {
    if (!(x >= 0.0) || !(x < kSqrt2))
        throw std::domain_error("f_factor is defined for 0 <= x < sqrt(2)");
    const double arctan = std::atan(x / std::sqrt(2.0 - x * x));
    return (1.0 - 2.0 / kPi * arctan) / std::sqrt(1.0 - 0.5 * x * x);
}

double vdw_force_perfect_reflector(double omega3, double omega_tau, double d) {
    require_positive_thickness(d);
    if (omega3 == 0.0) return 0.0;
    return fp2(omega3, d) * f_factor(omega_tau / omega3);
}

double vdw_second_derivative_perfect_reflector(double omega3, double omega_tau, double d) {
    require_positive_thickness(d);
    if (omega3 == 0.0) return 0.0;
    return 3.0 * kSqrt2 * hbar * omega3 / (32.0 * kPi * d * d * d * d) *
           f_factor(omega_tau / omega3);
}

double vdw_force_drude_substrate(double omega3, double omega1, double omega_tau, double d) {
    require_positive_thickness(d);
    if (!(omega3 >= 0.0) || !(omega1 >= 0.0) || !(omega_tau >= 0.0))
        throw std::domain_error("frequencies must be >= 0");
    if (omega3 == 0.0 || omega3 == omega1) return 0.0;

    const DerivedFrequencies f = derived_frequencies(omega3, omega1);
    const double os2 = f.omega_s * f.omega_s;
    const double ob2 = f.omega_bar * f.omega_bar;
    const double w2 = omega_tau * omega_tau;
    const double a_s = 4.0 * os2 - w2;
    const double a_b = 4.0 * ob2 - w2;
    if (!(a_s > 0.0))
        throw std::domain_error("radical 4 omega_s^2 - omega_tau^2 is not positive");
    if (!(a_b > 0.0))
        throw std::domain_error("radical 4 omega_bar^2 - omega_tau^2 is not positive");

    // psi = [H(omega_bar) - H(omega_s)] / (omega_s^2 - omega_bar^2); switch
    // to the derivative form when the two frequencies nearly coincide
    // (omega1 << omega3), where the direct difference cancels.
    double psi;
    if (ob2 - os2 < 1e-9 * ob2) {
        const double sm = 0.5 * (std::sqrt(a_s) + std::sqrt(a_b));
        psi = -2.0 * h_prime(sm, omega_tau) / sm;
    } else {
        psi = (h_of(a_b, omega_tau) - h_of(a_s, omega_tau)) / (os2 - ob2);
    }
    return hbar / (16.0 * kPi * kPi * d * d * d) * omega3 * omega3 *
           (omega1 * omega1 - omega3 * omega3) * psi;
}

bool small_d_valid(const DielectricModel& film, double d) {
    const double lim = std::min(film.plasma_wavelength(), film.relaxation_wavelength()) / 20.0;
    return d < lim;
}

SmallDResult small_d_pressure(const LayerStack& stack) {
    const DielectricModel& film = stack.film();
    SmallDResult out;
    out.x = film.omega_p() > 0.0 ? film.omega_tau() / film.omega_p() : 0.0;
    out.valid = small_d_valid(film, stack.thickness());
    const bool mirror =
        stack.substrate().is_reflector() && stack.ambient().kind() == DielectricModel::Kind::vacuum;
    if (mirror && out.x < kSqrt2)
        out.pressure = vdw_force_perfect_reflector(film.omega_p(), film.omega_tau(),
                                                   stack.thickness());
    else
        out.pressure = vdw_force_three_layer_integral(stack);
    return out;
}

double small_d_second_derivative(const LayerStack& stack) {
    return 3.0 * small_d_pressure(stack).pressure / stack.thickness();
}

}  // namespace cfs
