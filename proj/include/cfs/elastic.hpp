#pragma once

#include <optional>

namespace cfs {

// Continuum elastic description of the film.
struct FilmElasticParams {
    double young = 76e9;           // Pa
    double poisson = 0.3;          // dimensionless, -1 < nu < 0.5
    double surface_energy = 1.0;   // J/m^2
    double mismatch_stress = 500e6;  // Pa, sign = tensile/compressive
    double surface_stress = 0.0;   // N/m
    std::optional<double> hamaker;  // J, signed; negative = repulsive

    void validate() const;
};

// Sinusoidal surface perturbation of the flat film, z = d - q cos(2 pi x / lambda).
struct WavyPerturbation {
    double amplitude;       // q, m
    double wavelength;      // lambda, m
    double mean_thickness;  // d, m

    void validate() const;
    bool small_amplitude() const { return amplitude <= wavelength / 10.0; }
    bool thin_film() const { return mean_thickness <= wavelength / 10.0; }
};

struct StrainState {
    double eps_parallel;
    double eps_perp;
};

// |eps| above this is outside the linear-elastic regime.
inline constexpr double kStrainWarningThreshold = 0.05;

// Equilibrium strains of a biaxially stressed film: eps_par = sigma(1-nu)/Y,
// eps_perp = -2 sigma nu / Y.
StrainState biaxial_strains(double stress, const FilmElasticParams& p);

// Strains expressed through the surface stress sigma_s = -(d/2) sigma.
StrainState strains_from_surface_stress(const FilmElasticParams& p, double d);

// Surface stress plus the fluctuation pressure F acting on the boundaries;
// the two contributions superpose linearly.
StrainState strains_with_vacuum(const FilmElasticParams& p, double d, double vacuum_pressure);

struct WavyStress {
    double sxx, szz, sxz;  // Pa
};

// Stress concentration of the wavy surface relative to the planar value,
// attenuated by exp(-2 pi d / lambda).
WavyStress wavy_stress_field(double stress, const WavyPerturbation& pert, double x);

// First-order tangential stress sigma [1 + (4 pi q / lambda) cos(2 pi x / lambda)],
// the only component entering the elastic energy for d << lambda.
double tangential_surface_stress(double stress, const WavyPerturbation& pert, double x);

// Energy changes per wavelength and unit transverse length (J/m) to second
// order in the perturbation amplitude q.
double delta_u_elastic(double stress, double q, double young);               // -sigma^2 q^2 pi / Y
double delta_u_surface(double surface_energy, double q, double wavelength);  // gamma q^2 pi^2 / lambda
double delta_u_vacuum(double second_derivative, double q, double wavelength);  // E'' q^2 lambda / 4

// Wavelength above which the flat surface is unstable without a vacuum
// term: pi Y gamma / sigma^2.
double critical_wavelength(const FilmElasticParams& p);

// d_c = (-H Y^2 gamma / (2 pi sigma^4))^(1/4); requires a negative Hamaker
// constant (repulsive boundary force).
double hamaker_critical_thickness(const FilmElasticParams& p);

// Plane-strain replacement Y -> Y / (1 - nu^2) for the 3-D stability
// condition.
double effective_young_3d(double young, double poisson);

}  // namespace cfs
