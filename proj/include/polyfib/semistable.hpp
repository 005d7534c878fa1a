#ifndef POLYFIB_SEMISTABLE_HPP
#define POLYFIB_SEMISTABLE_HPP

#include <map>

#include "polyfib/cox.hpp"
#include "polyfib/fibration.hpp"
#include "polyfib/intersection.hpp"

namespace polyfib {

/// Hull of an embedded planar reflexive fiber and a lattice-length-2 segment L
/// centered at a marked fiber vertex, required reflexive.
struct SemistablePolytope {
    int fiber_class = 0;
    Vec v_z, v_s, v_t;              // 3d; v_t = 2 v_z - v_s
    std::vector<Vec> fiber_vertices;  // 3d
    std::vector<Vec> plane_basis;     // basis of the fiber-plane span
    IntegralPolytope fiber;           // fiber polytope in plane coordinates
    IntegralPolytope hull;
    bool lattice_generating = false;  // fiber vertices and L generate the lattice
};

/// Hull of the fiber and the vertical segment through v_z; the fiber must be
/// embedded in {z3 = 0}. Errors when the lattice-generation precondition fails;
/// the result is then guaranteed reflexive and unique up to automorphism.
SemistablePolytope build_semistable(const std::vector<Vec>& fiber_vertices_z0, const Vec& v_z);

/// General construction from an arbitrary segment endpoint v_s; absent when the
/// raw requirements (length-2 L, affine span, reflexive hull) fail.
std::optional<SemistablePolytope> semistable_from_segment(const std::vector<Vec>& fiber_vertices,
                                                          const Vec& v_z, const Vec& v_s);

/// v_z equals the sum of its two lattice neighbors along the fiber edges.
bool check_sum_condition(const IntegralPolytope& fiber2d, const Vec& v_z2d);

/// All semistable polytopes over the given embedded fiber and marked vertex with
/// |v_s| coordinates within the bound, deduplicated up to automorphisms that
/// preserve the fiber plane and fix v_z.
std::vector<SemistablePolytope> enumerate_semistable(const std::vector<Vec>& fiber_vertices_z0,
                                                     const Vec& v_z, int64_t bound);

/// Singular-fiber multiset of the very general hypersurface: each fiber edge
/// that is also an edge of the hull contributes (dual edge length) fibers of
/// type I_(edge length); nodal fibers fill the Euler number up to 24.
/// Keyed by n, value = number of I_n fibers. Requires lattice generation.
std::map<int64_t, int64_t> semistable_fiber_count(const SemistablePolytope& s);

struct CandelasFontModel {
    SemistablePolytope model;
    HypersurfaceEquation equation;  // generic member over the semistable rays
    FiberedEquation fibered;
    std::vector<bool> survives;  // per monomial: source point lies in the dual of the parent
    bool inclusion_ok = false;
    std::optional<WeierstrassData> completion;   // of the generic model
    std::optional<WeierstrassData> constrained;  // of the surviving subfamily
    std::string completion_error;                // set when no standard form exists
};

/// Weierstrass-style model attached to a section at infinity: the semistable
/// polytope of the section's edge, the generic equation over its rays, and the
/// marking of which monomials survive in the original family.
CandelasFontModel candelas_font_model(const FibrationData& f, const SectionAtInfinity& section);

/// Projection onto the fiber together with a section at infinity whose
/// semistable polytope exists; equivalent to conditions 1-3 on scanned inputs.
bool candelas_characterization(const FibrationData& f);

}  // namespace polyfib

#endif
