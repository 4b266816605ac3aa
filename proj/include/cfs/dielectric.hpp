#pragma once

#include <string>

namespace cfs {

// Dielectric response on the imaginary frequency axis.
//
// All models are real and >= 1 for xi > 0:
//   vacuum            eps(i xi) = 1
//   plasma            eps(i xi) = 1 + omega_p^2 / xi^2
//   drude             eps(i xi) = 1 + omega_p^2 / (xi (xi + omega_tau))
//   perfect_reflector symbolic ideal mirror; has no finite permittivity and
//                     must be handled through the reflectivity-one limit of
//                     the interface factors, never through a numeric eps.
class DielectricModel {
  public:
    enum class Kind { vacuum, plasma, drude, perfect_reflector };

    static DielectricModel vacuum() { return DielectricModel(Kind::vacuum, 0.0, 0.0); }
    static DielectricModel plasma(double omega_p);
    static DielectricModel drude(double omega_p, double omega_tau);
    static DielectricModel perfect_reflector() {
        return DielectricModel(Kind::perfect_reflector, 0.0, 0.0);
    }

    Kind kind() const { return kind_; }
    bool is_reflector() const { return kind_ == Kind::perfect_reflector; }

    double omega_p() const { return omega_p_; }    // rad/s
    double omega_tau() const { return omega_tau_; }  // rad/s

    // 2 pi c / omega; +infinity when the corresponding frequency is zero.
    double plasma_wavelength() const;
    double relaxation_wavelength() const;

    // eps(i xi). Throws std::domain_error for xi <= 0 or non-finite xi and
    // std::logic_error when queried on a perfect reflector.
    double eval_epsilon(double xi) const;

    std::string describe() const;

  private:
    DielectricModel(Kind kind, double omega_p, double omega_tau)
        : kind_(kind), omega_p_(omega_p), omega_tau_(omega_tau) {}

    Kind kind_;
    double omega_p_;
    double omega_tau_;
};

inline double eval_epsilon(const DielectricModel& model, double xi) {
    return model.eval_epsilon(xi);
}

}  // namespace cfs
