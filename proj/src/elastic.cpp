#include "cfs/elastic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfs {

namespace {
constexpr double kPi = std::numbers::pi;
}

void FilmElasticParams::validate() const {
    if (!(young > 0.0) || !std::isfinite(young))
        throw std::invalid_argument("Young modulus must be > 0");
    if (!(poisson > -1.0) || !(poisson < 0.5))
        throw std::invalid_argument("Poisson ratio must lie in (-1, 0.5)");
    if (!(surface_energy > 0.0) || !std::isfinite(surface_energy))
        throw std::invalid_argument("surface energy must be > 0");
    if (!std::isfinite(mismatch_stress))
        throw std::invalid_argument("mismatch stress must be finite");
    if (!std::isfinite(surface_stress))
        throw std::invalid_argument("surface stress must be finite");
    if (hamaker && !std::isfinite(*hamaker))
        throw std::invalid_argument("Hamaker constant must be finite");
}

void WavyPerturbation::validate() const {
    if (!(amplitude >= 0.0)) throw std::invalid_argument("perturbation amplitude must be >= 0");
    if (!(wavelength > 0.0)) throw std::invalid_argument("perturbation wavelength must be > 0");
    if (!(mean_thickness > 0.0)) throw std::invalid_argument("mean thickness must be > 0");
}

StrainState biaxial_strains(double stress, const FilmElasticParams& p) {
    p.validate();
    return StrainState{stress * (1.0 - p.poisson) / p.young,
                       -2.0 * stress * p.poisson / p.young};
}

StrainState strains_from_surface_stress(const FilmElasticParams& p, double d) {
    p.validate();
    if (!(d > 0.0)) throw std::domain_error("thickness must be > 0");
    const double s = p.surface_stress;
    return StrainState{-2.0 * s * (1.0 - p.poisson) / (p.young * d),
                       4.0 * s * p.poisson / (p.young * d)};
}

StrainState strains_with_vacuum(const FilmElasticParams& p, double d, double vacuum_pressure) {
    StrainState st = strains_from_surface_stress(p, d);
    st.eps_parallel += -p.poisson * vacuum_pressure / p.young;
    st.eps_perp += vacuum_pressure / p.young;
    return st;
}

WavyStress wavy_stress_field(double stress, const WavyPerturbation& pert, double x) {
    pert.validate();
    const double q = pert.amplitude;
    const double lam = pert.wavelength;
    const double d = pert.mean_thickness;
    const double phase = 2.0 * kPi * x / lam;
    const double att = std::exp(-2.0 * kPi * d / lam);
    WavyStress out;
    out.sxx = stress * (1.0 + 4.0 * kPi * q / lam * (1.0 - kPi * d / lam) * att * std::cos(phase));
    out.szz = stress * 4.0 * kPi * d * q / (lam * lam) * att * std::cos(phase);
    out.sxz = stress * 2.0 * kPi * q / lam * (1.0 - 2.0 * kPi * d / lam) * att * std::sin(phase);
    return out;
}

double tangential_surface_stress(double stress, const WavyPerturbation& pert, double x) {
    pert.validate();
    const double phase = 2.0 * kPi * x / pert.wavelength;
    return stress * (1.0 + 4.0 * kPi * pert.amplitude / pert.wavelength * std::cos(phase));
}

double delta_u_elastic(double stress, double q, double young) {
    if (!(young > 0.0)) throw std::domain_error("Young modulus must be > 0");
    return -stress * stress * q * q * kPi / young;
}

double delta_u_surface(double surface_energy, double q, double wavelength) {
    if (!(wavelength > 0.0)) throw std::domain_error("wavelength must be > 0");
    return surface_energy * q * q * kPi * kPi / wavelength;
}

double delta_u_vacuum(double second_derivative, double q, double wavelength) {
    if (!(wavelength > 0.0)) throw std::domain_error("wavelength must be > 0");
    return second_derivative * q * q * wavelength / 4.0;
}

double critical_wavelength(const FilmElasticParams& p) {
    p.validate();
    if (p.mismatch_stress == 0.0)
        throw std::domain_error("critical wavelength requires a nonzero mismatch stress");
    return kPi * p.young * p.surface_energy / (p.mismatch_stress * p.mismatch_stress);
}

double hamaker_critical_thickness(const FilmElasticParams& p) {
    p.validate();
    if (!p.hamaker) throw std::invalid_argument("no Hamaker constant provided");
    if (!(*p.hamaker < 0.0))
        throw std::domain_error("attractive vacuum term: no stable thickness");
    const double s2 = p.mismatch_stress * p.mismatch_stress;
    return std::pow(-*p.hamaker * p.young * p.young * p.surface_energy / (2.0 * kPi * s2 * s2),
                    0.25);
}

double effective_young_3d(double young, double poisson) {
    return young / (1.0 - poisson * poisson);
}

}  // namespace cfs
