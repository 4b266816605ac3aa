#pragma once

#include "cfs/layer_stack.hpp"
#include "cfs/quadrature.hpp"

namespace cfs {

// A single node of the mode-sum integrand. p is the dimensionless radial
// variable (p >= 1), k the parallel wave-vector, K_i = sqrt(p^2 - 1 + eps_i)
// the dimensionless kernel of layer i and gamma_i = (xi / c) K_i its decay
// constant. K and gamma are +infinity on a perfect-reflector layer.
struct IntegrandPoint {
    double p;
    double xi;  // rad/s
    double k;   // 1/m
    double K_substrate, K_ambient, K_film;
    double gamma_substrate, gamma_ambient, gamma_film;  // 1/m
};

IntegrandPoint make_integrand_point(const LayerStack& stack, double p, double xi);

struct QFactors {
    double q_tm;
    double q_te;
};

// Q_pol = 1 - r_pol exp(-2 xi K_film d / c) with r_pol the product of the
// two interface factors. Perfect-reflector interfaces use the exact limits
// +1 (TM) and -1 (TE) of those factors.
QFactors q_factors(const LayerStack& stack, const IntegrandPoint& point);

struct Estimate {
    double value = 0.0;
    double abs_error = 0.0;
};

struct VacuumQuantities {
    Estimate energy_per_area;             // J/m^2
    Estimate pressure;                    // N/m^2, positive = repulsive
    Estimate energy_second_derivative;    // N/m^3
};

// Zero-temperature fluctuation energy per unit area of the stack, from the
// retarded mode sum over (p, xi). Throws ConvergenceError when the adaptive
// quadrature cannot meet the requested tolerance.
Estimate energy_per_area(const LayerStack& stack, const QuadratureSpec& spec = {});

// Force per unit area between the film boundaries, -d(energy)/dd, computed
// by differentiating the integrand analytically. Positive = repulsive.
Estimate pressure(const LayerStack& stack, const QuadratureSpec& spec = {});

// Second thickness-derivative of the energy per unit area, also analytic
// under the integral sign.
Estimate energy_second_derivative(const LayerStack& stack, const QuadratureSpec& spec = {});

VacuumQuantities vacuum_quantities(const LayerStack& stack, const QuadratureSpec& spec = {});

// max(c/d, plasma frequencies of the finite layers); the characteristic
// frequency of the xi variable transform.
double auto_xi_scale(const LayerStack& stack);

}  // namespace cfs
