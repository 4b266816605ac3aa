#pragma once

#include "cfs/dielectric.hpp"

namespace cfs {

// Three-layer planar geometry: substrate (eps1) | film (eps3, thickness d) |
// ambient (eps2). Immutable value type; construction validates d > 0 and
// rejects a perfectly reflecting film (the exponential in the mode sum would
// diverge).
class LayerStack {
  public:
    LayerStack(DielectricModel substrate, DielectricModel ambient, DielectricModel film,
               double thickness);

    const DielectricModel& substrate() const { return substrate_; }
    const DielectricModel& ambient() const { return ambient_; }
    const DielectricModel& film() const { return film_; }
    double thickness() const { return thickness_; }  // m

    LayerStack with_thickness(double d) const {
        return LayerStack(substrate_, ambient_, film_, d);
    }

    static LayerStack free_standing(DielectricModel film, double thickness) {
        return LayerStack(DielectricModel::vacuum(), DielectricModel::vacuum(), film, thickness);
    }
    static LayerStack on_mirror(DielectricModel film, double thickness) {
        return LayerStack(DielectricModel::perfect_reflector(), DielectricModel::vacuum(), film,
                          thickness);
    }

  private:
    DielectricModel substrate_;
    DielectricModel ambient_;
    DielectricModel film_;
    double thickness_;
};

}  // namespace cfs
