#ifndef POLYFIB_FIBRATION_HPP
#define POLYFIB_FIBRATION_HPP

#include <array>
#include <optional>

#include "polyfib/planar_classes.hpp"
#include "polyfib/polytope.hpp"

namespace polyfib {

/// A fiber vertex lying in the interior of an edge of the parent polytope;
/// the combinatorial witness for a section at infinity.
struct SectionAtInfinity {
    Vec v_z;      // fiber vertex, 3d coordinates
    int edge_id;  // edge of the parent containing v_z in its interior
};

/// A planar reflexive fiber polytope inside a 3d reflexive polytope, with the
/// associated projection conditions.
struct FibrationData {
    IntegralPolytope parent;  // ∇, in N
    Vec m_phi;                // primitive normal of the fiber plane, in M

    std::vector<Vec> plane_basis;     // basis (u1, u2) of the span of the slice points
    IntegralPolytope fiber;           // the fiber polytope in (u1, u2) coordinates
    int fiber_class = 0;              // 1..16
    UnimodularMap fiber_to_reference{Mat::identity(2)};

    std::vector<Vec> fiber_points_3d;  // lattice points of the parent on the plane
    std::vector<Vec> top_points, bottom_points;

    bool c1 = false;
    std::optional<UnimodularMap> adapted_basis;  // maps the fiber plane onto {z3 = 0}
    bool c2 = false;
    std::optional<std::array<int64_t, 2>> shear;  // recorded feasible completion shear
    std::vector<SectionAtInfinity> sections;
    bool c3 = false;

    /// 2d fiber coordinates of a lattice point on the fiber plane.
    Vec to_fiber_coords(const Vec& p3d) const;
    /// 3d coordinates of a fiber-lattice point.
    Vec to_parent_coords(const Vec& p2d) const;
    /// Fiber polygon vertices in 3d coordinates, in fiber variable order.
    std::vector<Vec> fiber_vertices_3d_in_variable_order() const;
};

/// All planar reflexive fiber subpolytopes of a 3d reflexive polytope, one per
/// primitive fiber-plane normal up to sign, with all conditions evaluated.
/// Deterministic order.
std::vector<FibrationData> find_fibrations(const IntegralPolytope& nabla);

/// Torsion-freeness of N modulo the span of the fiber-plane generators, with a
/// basis adaptation mapping the span onto the first two coordinates on success.
std::pair<bool, std::optional<UnimodularMap>> condition1_from_generators(
    const std::vector<Vec>& generators);

/// Image condition: some basis completion projects every lattice point of the
/// parent into the fiber polytope.
bool condition2_image(const FibrationData& f);
/// The lexicographically least completion shear realizing the image condition.
std::optional<std::array<int64_t, 2>> condition2_feasible_shear(const FibrationData& f);
/// Facet half-space criterion for the same condition (independent route).
bool condition2_facets(const FibrationData& f);

/// Fiber vertices that are not vertices of the parent, each with the parent
/// edge containing it. Empty means condition 3 fails.
std::vector<SectionAtInfinity> condition3_witnesses(const IntegralPolytope& parent,
                                                    const FibrationData& f);

/// True iff v_z (a fiber vertex) lies in the interior of an edge of the parent.
bool has_section_at_infinity(const FibrationData& f, const Vec& v_z3d);

struct BaseCoordinates {
    std::vector<std::pair<Vec, int64_t>> z_top;     // ray -> exponent <v, m_phi>
    std::vector<std::pair<Vec, int64_t>> z_bottom;  // ray -> exponent -<v, m_phi>
};

/// Exponent vectors of the two base monomials over the given ray set.
BaseCoordinates base_coordinates(const FibrationData& f, const std::vector<Vec>& rays);

}  // namespace polyfib

#endif
