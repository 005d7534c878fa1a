#include "polyfib/cox.hpp"

#include <algorithm>
#include <sstream>

namespace polyfib {

HypersurfaceEquation anticanonical_monomials(const std::vector<CoxRay>& rays,
                                             const IntegralPolytope& delta) {
    if (!delta.is_reflexive()) throw DomainError("anticanonical_monomials: polytope not reflexive");
    HypersurfaceEquation eq;
    eq.rays = rays;
    for (const Vec& m : delta.lattice_points()) {
        CoxMonomial mono;
        mono.source_point = m;
        for (const CoxRay& r : rays) {
            int64_t e = checked_add(pairing(m, r.ray), 1);
            if (e < 0)
                throw DomainError("anticanonical_monomials: ray " + r.ray.str() +
                                  " lies outside the dual polytope");
            mono.exponents.push_back(e);
        }
        mono.coefficient_label = "a[" + m.str() + "]";
        eq.monomials.push_back(mono);
    }
    std::sort(eq.monomials.begin(), eq.monomials.end(),
              [](const CoxMonomial& a, const CoxMonomial& b) {
                  return a.source_point < b.source_point;
              });
    if (eq.monomials.size() != delta.lattice_points().size())
        throw InvariantError("monomial count != |Δ∩M|");
    return eq;
}

std::string serialize(const HypersurfaceEquation& eq) {
    std::ostringstream os;
    os << "rays:";
    for (const CoxRay& r : eq.rays) os << ' ' << r.name << '=' << r.ray.str();
    os << '\n';
    for (const CoxMonomial& m : eq.monomials) {
        os << m.coefficient_label;
        for (size_t i = 0; i < eq.rays.size(); ++i) {
            os << ' ' << eq.rays[i].name << '^' << m.exponents[i];
        }
        os << '\n';
    }
    return os.str();
}

HypersurfaceEquation restrict_to_divisor(const HypersurfaceEquation& eq, const Vec& v_z) {
    int ray_id = -1;
    for (size_t i = 0; i < eq.rays.size(); ++i)
        if (eq.rays[i].ray == v_z) ray_id = static_cast<int>(i);
    if (ray_id < 0) throw DomainError("restrict_to_divisor: not a ray of the equation");
    HypersurfaceEquation out;
    out.rays = eq.rays;
    for (const CoxMonomial& m : eq.monomials)
        if (m.exponents[static_cast<size_t>(ray_id)] == 0) out.monomials.push_back(m);
    return out;
}

int64_t flex_intersection_count(const IntegralPolytope& fiber, const Vec& v_z) {
    if (fiber.dim() != 2) throw DomainError("flex test needs a 2d fiber polytope");
    if (!fiber.is_vertex(v_z)) throw DomainError("flex test: v_z is not a fiber vertex");
    IntegralPolytope dual_poly = fiber.dual();
    // the edge of the dual supported by v_z: both endpoints pair to -1 with v_z
    for (const Edge& e : dual_poly.edges()) {
        const Vec& a = dual_poly.vertices()[static_cast<size_t>(e.a)];
        const Vec& b = dual_poly.vertices()[static_cast<size_t>(e.b)];
        if (pairing(a, v_z) == -1 && pairing(b, v_z) == -1) return e.length;
    }
    throw InvariantError("no dual edge supported by the vertex");
}

bool is_toric_flex(const IntegralPolytope& fiber, const Vec& v_z) {
    return flex_intersection_count(fiber, v_z) == 1;
}

FiberedEquation group_by_fiber(const HypersurfaceEquation& eq,
                               const std::vector<int>& fiber_ray_ids, int s_ray, int t_ray) {
    for (int id : fiber_ray_ids)
        if (id < 0 || id >= static_cast<int>(eq.rays.size()))
            throw DomainError("group_by_fiber: fiber ray index out of range");
    FiberedEquation fe;
    fe.eq = eq;
    fe.fiber_ray_ids = fiber_ray_ids;
    fe.s_ray = s_ray;
    fe.t_ray = t_ray;

    std::map<std::vector<int64_t>, size_t> index;
    for (size_t mi = 0; mi < eq.monomials.size(); ++mi) {
        const CoxMonomial& m = eq.monomials[mi];
        std::vector<int64_t> key;
        for (int id : fiber_ray_ids) key.push_back(m.exponents[static_cast<size_t>(id)]);
        auto it = index.find(key);
        if (it == index.end()) {
            FiberBucket b;
            b.fiber_exponents = key;
            index.emplace(key, fe.buckets.size());
            fe.buckets.push_back(b);
            it = index.find(key);
        }
        FiberBucket& b = fe.buckets[it->second];
        int64_t sd = s_ray >= 0 ? m.exponents[static_cast<size_t>(s_ray)] : 0;
        int64_t td = t_ray >= 0 ? m.exponents[static_cast<size_t>(t_ray)] : 0;
        b.st_degrees.emplace_back(sd, td);
        b.monomial_ids.push_back(static_cast<int>(mi));
    }
    size_t total = 0;
    for (FiberBucket& b : fe.buckets) {
        total += b.monomial_ids.size();
        bool homog = true;
        int64_t d0 = b.st_degrees[0].first + b.st_degrees[0].second;
        for (auto& [s, t] : b.st_degrees)
            if (s + t != d0) homog = false;
        if (homog) b.base_degree = d0;
    }
    if (total != eq.monomials.size()) throw InvariantError("group_by_fiber lost monomials");
    std::sort(fe.buckets.begin(), fe.buckets.end(), [](const FiberBucket& a, const FiberBucket& b) {
        return a.fiber_exponents < b.fiber_exponents;
    });
    return fe;
}

namespace {

const FiberBucket* find_bucket(const FiberedEquation& fe, std::vector<int64_t> key) {
    for (const FiberBucket& b : fe.buckets)
        if (b.fiber_exponents == key) return &b;
    return nullptr;
}

FormSupport support_of(const FiberBucket* b, int64_t degree) {
    FormSupport s;
    s.degree = degree;
    if (!b) return s;
    for (auto& [sd, td] : b->st_degrees) {
        if (sd + td != degree) throw DomainError("weierstrass_completion: bucket not homogeneous");
        s.s_exponents.push_back(sd);
    }
    std::sort(s.s_exponents.begin(), s.s_exponents.end());
    return s;
}

}  // namespace

WeierstrassData weierstrass_completion(const FiberedEquation& fe) {
    if (fe.fiber_ray_ids.size() != 3)
        throw DomainError("weierstrass_completion: fiber is not the weighted (2,3,1) plane");
    const FiberBucket* bx3 = find_bucket(fe, {3, 0, 0});
    const FiberBucket* by2 = find_bucket(fe, {0, 2, 0});
    if (!bx3 || !by2)
        throw DomainError("weierstrass_completion: missing x^3 or y^2 bucket");
    if (bx3->base_degree != 0 || by2->base_degree != 0)
        throw DomainError("weierstrass_completion: non-constant leading buckets");

    const FiberBucket* b2 = find_bucket(fe, {1, 1, 1});    // xyz
    const FiberBucket* b4 = find_bucket(fe, {2, 0, 2});    // x^2 z^2
    const FiberBucket* b6 = find_bucket(fe, {0, 1, 3});    // y z^3
    const FiberBucket* b8 = find_bucket(fe, {1, 0, 4});    // x z^4
    const FiberBucket* b12 = find_bucket(fe, {0, 0, 6});   // z^6
    for (const FiberBucket& b : fe.buckets) {
        if (&b == bx3 || &b == by2) continue;
        if (b.fiber_exponents != std::vector<int64_t>{1, 1, 1} &&
            b.fiber_exponents != std::vector<int64_t>{2, 0, 2} &&
            b.fiber_exponents != std::vector<int64_t>{0, 1, 3} &&
            b.fiber_exponents != std::vector<int64_t>{1, 0, 4} &&
            b.fiber_exponents != std::vector<int64_t>{0, 0, 6})
            throw DomainError("weierstrass_completion: unexpected fiber monomial for class 15");
    }

    // degree bookkeeping with generic (non-cancelling) coefficients:
    //   c2 = a4 + a2^2/4, c4 = a8 + a2 a6 / 2, c6 = a12 + a6^2/4,
    //   a  = c4 - c2^2/3, b = c6 - c2 c4/3 + 2 c2^3/27
    constexpr int64_t none = -1;
    auto deg_of = [&](const FiberBucket* b) {
        return b && b->base_degree ? *b->base_degree : none;
    };
    int64_t d2 = deg_of(b2), d4 = deg_of(b4), d6 = deg_of(b6), d8 = deg_of(b8),
            d12 = deg_of(b12);
    auto dmax = [&](std::initializer_list<int64_t> xs) {
        int64_t m = none;
        for (int64_t x : xs) m = std::max(m, x);
        return m;
    };
    auto dsum = [&](int64_t a, int64_t b) { return (a == none || b == none) ? none : a + b; };
    int64_t dc2 = dmax({d4, dsum(d2, d2)});
    int64_t dc4 = dmax({d8, dsum(d2, d6)});
    int64_t dc6 = dmax({d12, dsum(d6, d6)});
    int64_t da = dmax({dc4, dsum(dc2, dc2)});
    int64_t db = dmax({dc6, dsum(dc2, dc4), dsum(dc2, dsum(dc2, dc2))});

    WeierstrassData w;
    w.deg_a = da;  // -1 when the coefficient vanishes identically
    w.deg_b = db;
    w.bucket_supports[2] = support_of(b2, d2 == none ? 0 : d2);
    w.bucket_supports[4] = support_of(b4, d4 == none ? 0 : d4);
    w.bucket_supports[6] = support_of(b6, d6 == none ? 0 : d6);
    w.bucket_supports[8] = support_of(b8, d8 == none ? 0 : d8);
    w.bucket_supports[12] = support_of(b12, d12 == none ? 0 : d12);
    return w;
}

}  // namespace polyfib
