#ifndef POLYFIB_INTERSECTION_HPP
#define POLYFIB_INTERSECTION_HPP

#include "polyfib/fibration.hpp"
#include "polyfib/polytope.hpp"

namespace polyfib {

struct Triangle {
    std::array<Vec, 3> v;  // sorted
    int facet_id;
};

/// Deterministic triangulation of every facet of a reflexive 3-polytope into
/// elementary triangles using all of its lattice points.
class MaxTriangulation {
  public:
    static MaxTriangulation build(const IntegralPolytope& nabla);

    const IntegralPolytope& parent() const { return parent_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    std::vector<int> star(const Vec& p) const;
    bool has_triangle(const Vec& a, const Vec& b, const Vec& c) const;
    /// Triangle ids containing both points (edge of the triangulation when 2).
    std::vector<int> triangles_with_segment(const Vec& a, const Vec& b) const;

  private:
    IntegralPolytope parent_;
    std::vector<Triangle> triangles_;
};

enum class RestrictionKind { Vanishes, Irreducible, Splits };

/// Restriction type of the toric divisor of a boundary lattice point to the
/// general anticanonical K3: facet interior -> vanishes, vertex -> irreducible,
/// edge interior -> splits into (dual edge interior count + 1) components.
struct DivisorRestriction {
    RestrictionKind kind;
    int64_t components;  // 0 / 1 / l'+1
};

DivisorRestriction divisor_restriction(const Vec& v, const IntegralPolytope& nabla);

/// Triple intersection D_1 . D_2 . V on the K3, from the triangulation.
int64_t intersection_number(const Vec& v1, const Vec& v2, const MaxTriangulation& t);

/// The fiber divisor as coefficients over the top lattice points.
std::vector<std::pair<Vec, int64_t>> fiber_class_divisor(const FibrationData& f);

/// Intersection of the fiber with the divisor of v_z, distributed by linearity.
int64_t fiber_intersection(const Vec& v_z, const FibrationData& f, const MaxTriangulation& t);

/// The combinatorial section criterion for the divisor of a fiber vertex.
struct SectionCriterion {
    bool applicable = false;
    std::vector<std::string> failed_hypotheses;
    bool is_section = false;  // v_z == v1 + v2; meaningful when applicable
    Vec v1, v2, v_s;
};

SectionCriterion is_toric_section(const Vec& v_z3d, const FibrationData& f,
                                  const MaxTriangulation& t);

}  // namespace polyfib

#endif
