#include "cfs/layer_stack.hpp"

#include <cmath>
#include <stdexcept>

namespace cfs {

LayerStack::LayerStack(DielectricModel substrate, DielectricModel ambient, DielectricModel film,
                       double thickness)
    : substrate_(substrate), ambient_(ambient), film_(film), thickness_(thickness) {
    if (!(thickness > 0.0) || !std::isfinite(thickness))
        throw std::invalid_argument("layer stack requires a finite film thickness > 0");
    if (film.is_reflector())
        throw std::invalid_argument("film must not be a perfect reflector");
}

}  // namespace cfs
