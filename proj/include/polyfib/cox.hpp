#ifndef POLYFIB_COX_HPP
#define POLYFIB_COX_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyfib/polytope.hpp"

namespace polyfib {

struct CoxRay {
    Vec ray;           // lattice point of N on the boundary of the dual of Δ
    std::string name;  // homogeneous coordinate name (x, y, z, w1, s, t, r1, ...)
};

/// One monomial of the generic anticanonical hypersurface: exponent of ray v_i
/// is <m, v_i> + 1 for a source point m of Δ∩M.
struct CoxMonomial {
    Vec source_point;
    std::vector<int64_t> exponents;
    std::string coefficient_label;
};

struct HypersurfaceEquation {
    std::vector<CoxRay> rays;
    std::vector<CoxMonomial> monomials;  // sorted by source point
};

/// Generic anticanonical equation: one monomial per lattice point of Δ.
/// Errors if a ray lies outside the dual of Δ (negative exponent).
HypersurfaceEquation anticanonical_monomials(const std::vector<CoxRay>& rays,
                                             const IntegralPolytope& delta);

/// Canonical text form: one monomial per line, variables in ray order,
/// exponents explicit, coefficient labels keyed by the source point.
std::string serialize(const HypersurfaceEquation& eq);

/// Sub-equation of the monomials with exponent 0 at the named ray.
HypersurfaceEquation restrict_to_divisor(const HypersurfaceEquation& eq, const Vec& v_z);

/// True if the divisor of the fiber vertex v_z meets the generic fiber curve in
/// exactly one point: the edge of dual(fiber) supported by v_z has lattice length 1.
bool is_toric_flex(const IntegralPolytope& fiber, const Vec& v_z);

/// Lattice length of the edge of dual(fiber) supported by the fiber vertex v_z;
/// equals the intersection number of the vertex divisor with the fiber curve.
int64_t flex_intersection_count(const IntegralPolytope& fiber, const Vec& v_z);

struct FiberBucket {
    std::vector<int64_t> fiber_exponents;                   // over the fiber rays, in ray order
    std::vector<std::pair<int64_t, int64_t>> st_degrees;    // (s-deg, t-deg) per monomial
    std::optional<int64_t> base_degree;                     // set when s+t degree is constant
    std::vector<int> monomial_ids;
};

struct FiberedEquation {
    HypersurfaceEquation eq;
    std::vector<int> fiber_ray_ids;  // in fiber variable order (x, y, z, w1, ...)
    int s_ray = -1, t_ray = -1;      // distinguished base rays
    std::vector<FiberBucket> buckets;
};

/// Buckets the monomials by their fiber-variable part. fiber_ray_ids lists the
/// positions of the fiber rays inside eq.rays, in fiber variable order; s_ray
/// and t_ray name the two distinguished base rays.
FiberedEquation group_by_fiber(const HypersurfaceEquation& eq,
                               const std::vector<int>& fiber_ray_ids, int s_ray, int t_ray);

/// Support of one Weierstrass coefficient as s-exponents of a degree-`degree`
/// binary form (empty support = identically zero bucket).
struct FormSupport {
    int64_t degree = 0;
    std::vector<int64_t> s_exponents;
};

/// Result of completing a fiber-class-15 model to y^2 = x^3 + a(s,t) x z^4 + b(s,t) z^6.
struct WeierstrassData {
    int64_t deg_a = 0;
    int64_t deg_b = 0;
    // supports of the raw buckets, for constrained sampling; indexed 2,4,6,8,12
    std::map<int64_t, FormSupport> bucket_supports;
};

/// Degrees of a and b after the toric-automorphism completion. The fibered
/// equation must be over a class-15 fiber in reference variable order, with the
/// x^3 and y^2 buckets present at base degree 0.
/// Errors: missing x^3 or y^2 bucket; non-constant leading buckets.
WeierstrassData weierstrass_completion(const FiberedEquation& fe);

}  // namespace polyfib

#endif
