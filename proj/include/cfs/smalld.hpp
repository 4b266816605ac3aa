#pragma once

#include "cfs/layer_stack.hpp"

namespace cfs {

// Small-distance (van der Waals, d^-3) limits of the fluctuation force.
// Exact closed forms where available plus 1-D integral forms that double as
// independent oracles for the retarded engine.

struct SmallDResult {
    double pressure;  // N/m^2
    bool valid;       // d < min(lambda_p, lambda_tau) / 20
    double x;         // omega_tau / omega_p of the film
};

struct DerivedFrequencies {
    double omega_s;    // surface plasmon frequency, omega_3 / sqrt(2)
    double omega_bar;  // sqrt((omega_1^2 + omega_3^2) / 2)
};

DerivedFrequencies derived_frequencies(double omega3, double omega1);

// Plasma-model small-d force scale, -hbar omega_s / (32 pi d^3), and its
// perfect-reflector counterpart -2 F_P1.
double fp1(double omega3, double d);
double fp2(double omega3, double d);

// -(hbar / 8 pi^2 d^3) int_0^inf [(eps-1)/(eps+1)]^2 dxi for a free-standing
// film; film must be plasma or drude. Always <= 0.
double vdw_force_free_standing_integral(const DielectricModel& film, double d);

// Generalization to dissimilar boundaries with vacuum ambient:
// -(hbar / 8 pi^2 d^3) int Delta_31 Delta_32 dxi, Delta_3i = (e3-ei)/(e3+ei);
// a perfect-reflector substrate contributes Delta = -1 exactly.
double vdw_force_three_layer_integral(const LayerStack& stack);

// Drude correction factor of the free-standing force, printed closed form.
// Defined on [0, 1); diverges toward x = 1 and is kept only for comparison
// with the normative integral definition below (their x -> 0 limits differ:
// sqrt(2)/2 here, 1 for the integral).
double g_factor_closed(double x);

// Normative g: ratio of the free-standing small-d integral for a Drude film
// with omega_tau = x omega_p to the plasma value. Dimensionless and
// independent of d and omega_p; g(0) = 1 exactly, strictly decreasing.
double g_factor(double x);

// Correction factor of the perfect-reflector force, f(x) =
// [1 - (2/pi) atan(x / sqrt(2 - x^2))] / sqrt(1 - x^2/2) on [0, sqrt(2)).
double f_factor(double x);

// F_P2 f(omega_tau / omega_3): repulsive force on a film deposited on an
// ideal mirror, and the matching energy second derivative
// 3 sqrt(2) hbar omega_3 f / (32 pi d^4) = 3 F / d.
double vdw_force_perfect_reflector(double omega3, double omega_tau, double d);
double vdw_second_derivative_perfect_reflector(double omega3, double omega_tau, double d);

// Closed form for film and substrate sharing one relaxation frequency;
// positive (repulsive) exactly when omega3 < omega1. Requires
// omega_tau < 2 omega_s and omega_tau < 2 omega_bar (real radicals).
double vdw_force_drude_substrate(double omega3, double omega1, double omega_tau, double d);

bool small_d_valid(const DielectricModel& film, double d);

// Dispatching small-d pressure for a full stack (vacuum ambient): free
// standing, ideal mirror or metal substrate, whichever applies.
SmallDResult small_d_pressure(const LayerStack& stack);

// 3 F / d of the d^-3 force law: the small-d energy second derivative.
double small_d_second_derivative(const LayerStack& stack);

}  // namespace cfs
