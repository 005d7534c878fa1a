#ifndef POLYFIB_PLANAR_CLASSES_HPP
#define POLYFIB_PLANAR_CLASSES_HPP

#include <vector>

#include "polyfib/cox.hpp"
#include "polyfib/polytope.hpp"

namespace polyfib {

/// One of the 16 classes of planar reflexive polytopes.
struct PlanarClass {
    int index;       // 1..16
    int dual_index;  // the involution d
    IntegralPolytope reference;
    /// variable_order[k] = canonical vertex index carrying the k-th homogeneous
    /// coordinate (x, y, z, w1, w2, w3)
    std::vector<int> variable_order;

    /// Reference vertices in variable order.
    std::vector<Vec> rays_in_variable_order() const;
    /// Generic anticanonical equation of the reference fan, named variables.
    HypersurfaceEquation reference_equation() const;
};

const std::vector<PlanarClass>& planar_classes();
const PlanarClass& planar_class(int index);
int involution_d(int index);

/// Conventional variable name for position k: x, y, z, w1, w2, w3.
std::string fiber_variable_name(size_t k);

struct PlanarClassification {
    int index;
    UnimodularMap to_reference;  // carries the input onto the reference vertices
};

/// Classifies a planar reflexive polytope into one of the 16 classes.
/// Errors if the polytope is not reflexive or matches no class.
PlanarClassification classify_planar(const IntegralPolytope& p);

}  // namespace polyfib

#endif
