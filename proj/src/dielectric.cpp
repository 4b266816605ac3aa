#include "cfs/dielectric.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cfs/constants.hpp"

namespace cfs {

DielectricModel DielectricModel::plasma(double omega_p) {
    if (!(omega_p >= 0.0) || !std::isfinite(omega_p))
        throw std::invalid_argument("plasma model requires omega_p >= 0");
    return DielectricModel(Kind::plasma, omega_p, 0.0);
}

DielectricModel DielectricModel::drude(double omega_p, double omega_tau) {
    if (!(omega_p >= 0.0) || !std::isfinite(omega_p))
        throw std::invalid_argument("drude model requires omega_p >= 0");
    if (!(omega_tau >= 0.0) || !std::isfinite(omega_tau))
        throw std::invalid_argument("drude model requires omega_tau >= 0");
    return DielectricModel(Kind::drude, omega_p, omega_tau);
}

double DielectricModel::plasma_wavelength() const {
    if (omega_p_ <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::numbers::pi * c_light / omega_p_;
}

double DielectricModel::relaxation_wavelength() const {
    if (omega_tau_ <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::numbers::pi * c_light / omega_tau_;
}

double DielectricModel::eval_epsilon(double xi) const {
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw std::domain_error("eval_epsilon requires a finite xi > 0");
    switch (kind_) {
        case Kind::vacuum:
            return 1.0;
        case Kind::plasma:
        case Kind::drude:
            // omega_tau_ is zero for the plasma kind, so both kinds share
            // the same arithmetic and agree bit-exactly at omega_tau = 0.
            return 1.0 + omega_p_ * omega_p_ / (xi * (xi + omega_tau_));
        case Kind::perfect_reflector:
            throw std::logic_error(
                "perfect reflector has no numeric permittivity; use the reflection-limit path");
    }
    throw std::logic_error("unreachable");
}

std::string DielectricModel::describe() const {
    switch (kind_) {
        case Kind::vacuum: return "vacuum";
        case Kind::plasma: return "plasma(omega_p=" + std::to_string(omega_p_) + ")";
        case Kind::drude:
            return "drude(omega_p=" + std::to_string(omega_p_) +
                   ",omega_tau=" + std::to_string(omega_tau_) + ")";
        case Kind::perfect_reflector: return "perfect_reflector";
    }
    return "?";
}

}  // namespace cfs
