#include "polyfib/semistable.hpp"

#include <algorithm>

namespace polyfib {

namespace {

std::vector<Vec> with_segment(const std::vector<Vec>& fiber_vertices, const Vec& v_s,
                              const Vec& v_t) {
    std::vector<Vec> pts = fiber_vertices;
    pts.push_back(v_s);
    pts.push_back(v_t);
    return pts;
}

}  // namespace

bool check_sum_condition(const IntegralPolytope& fiber2d, const Vec& v_z2d) {
    if (!fiber2d.is_vertex(v_z2d)) throw DomainError("check_sum_condition: not a fiber vertex");
    int vid = fiber2d.classify(v_z2d).face_id;
    std::vector<Vec> nbrs;
    for (const Edge& e : fiber2d.edges()) {
        if (e.a != vid && e.b != vid) continue;
        const Vec& other = fiber2d.vertices()[static_cast<size_t>(e.a == vid ? e.b : e.a)];
        nbrs.push_back(v_z2d + primitive_part(other - v_z2d));
    }
    if (nbrs.size() != 2) throw InvariantError("fiber vertex without two edges");
    return nbrs[0] + nbrs[1] == v_z2d;
}

namespace {

struct FiberEmbedding {
    std::vector<Vec> vertices;
    std::vector<Vec> basis;
    Vec normal;
    IntegralPolytope fiber;
    int fiber_class = 0;
};

std::optional<FiberEmbedding> embed_fiber(const std::vector<Vec>& fiber_vertices) {
    FiberEmbedding e;
    e.vertices = fiber_vertices;
    e.basis = span_basis(fiber_vertices);
    if (e.basis.size() != 2) return std::nullopt;
    const Vec& u1 = e.basis[0];
    const Vec& u2 = e.basis[1];
    e.normal = Vec(checked_sub(checked_mul(u1[1], u2[2]), checked_mul(u1[2], u2[1])),
                   checked_sub(checked_mul(u1[2], u2[0]), checked_mul(u1[0], u2[2])),
                   checked_sub(checked_mul(u1[0], u2[1]), checked_mul(u1[1], u2[0])),
                   dual_lattice(fiber_vertices[0].role()));
    std::vector<Vec> fib2;
    for (const Vec& v : fiber_vertices) fib2.push_back(plane_coordinates(u1, u2, v));
    e.fiber = IntegralPolytope::hull(fib2);
    for (const Facet& fc : e.fiber.facets())
        if (fc.offset != 1) return std::nullopt;
    e.fiber_class = classify_planar(e.fiber).index;
    return e;
}

std::optional<SemistablePolytope> from_segment_embedded(const FiberEmbedding& e, const Vec& v_z,
                                                        const Vec& v_s) {
    if (v_s == v_z) return std::nullopt;
    Vec step = v_s - v_z;
    if (content(step) != 1) return std::nullopt;  // L must have lattice length 2
    if (pairing(e.normal, v_s) == pairing(e.normal, v_z)) return std::nullopt;

    SemistablePolytope s;
    s.v_z = v_z;
    s.v_s = v_s;
    s.v_t = v_z - step;
    s.fiber_vertices = e.vertices;
    s.plane_basis = e.basis;
    s.fiber = e.fiber;
    s.fiber_class = e.fiber_class;

    s.hull = IntegralPolytope::hull(with_segment(e.vertices, v_s, s.v_t));
    for (const Facet& f : s.hull.facets())
        if (f.offset != 1) return std::nullopt;  // hull not reflexive
    if (!s.hull.is_reflexive()) return std::nullopt;
    if (s.hull.classify(v_z).pos == IntegralPolytope::Position::Outside)
        throw InvariantError("marked vertex escaped its own hull");

    s.lattice_generating = spans_lattice(with_segment(e.vertices, v_s, s.v_t));
    return s;
}

}  // namespace

std::optional<SemistablePolytope> semistable_from_segment(const std::vector<Vec>& fiber_vertices,
                                                          const Vec& v_z, const Vec& v_s) {
    if (std::find(fiber_vertices.begin(), fiber_vertices.end(), v_z) == fiber_vertices.end())
        throw DomainError("semistable: v_z is not a fiber vertex");
    auto e = embed_fiber(fiber_vertices);
    if (!e.has_value()) return std::nullopt;
    return from_segment_embedded(*e, v_z, v_s);
}

SemistablePolytope build_semistable(const std::vector<Vec>& fiber_vertices_z0, const Vec& v_z) {
    for (const Vec& v : fiber_vertices_z0)
        if (v.dim() != 3 || v[2] != 0)
            throw DomainError("build_semistable: fiber must be embedded in {z3 = 0}");
    Vec e3(0, 0, 1, v_z.role());
    Vec v_s = v_z + e3;
    if (!spans_lattice(with_segment(fiber_vertices_z0, v_s, v_z - e3)))
        throw DomainError("build_semistable: fiber and segment do not generate the lattice");
    auto s = semistable_from_segment(fiber_vertices_z0, v_z, v_s);
    if (!s.has_value())
        throw InvariantError("lattice-generating vertical segment produced no semistable polytope");
    return *s;
}

std::vector<SemistablePolytope> enumerate_semistable(const std::vector<Vec>& fiber_vertices_z0,
                                                     const Vec& v_z, int64_t bound) {
    if (bound < 1) throw DomainError("enumerate_semistable: bound must be >= 1");
    if (fiber_vertices_z0.size() < 3) return {};
    if (span_basis(fiber_vertices_z0).size() != 2) return {};
    for (const Vec& v : fiber_vertices_z0)
        if (v.dim() != 3 || v[2] != 0)
            throw DomainError("enumerate_semistable: fiber must be embedded in {z3 = 0}");

    // the shears (x, y, z) -> (x + az, y + bz, z) fix the fiber plane pointwise
    // and act freely on candidate endpoints at height z, so it suffices to
    // enumerate one endpoint per shear orbit: x, y in [0, |z|)
    std::vector<Vec> candidates;
    for (int64_t z = -bound; z <= bound; ++z) {
        if (z == 0) continue;
        int64_t h = std::abs(z);
        for (int64_t x = 0; x < h; ++x)
            for (int64_t y = 0; y < h; ++y) candidates.emplace_back(x, y, z, v_z.role());
    }
    auto embedding = embed_fiber(fiber_vertices_z0);
    if (!embedding.has_value()) return {};
    std::vector<SemistablePolytope> found;
    std::vector<Vec> fib_sorted = fiber_vertices_z0;
    std::sort(fib_sorted.begin(), fib_sorted.end());
    for (const Vec& v_s : candidates) {
        auto s = from_segment_embedded(*embedding, v_z, v_s);
        if (!s.has_value()) continue;
        // dedupe up to automorphisms preserving the fiber plane and v_z
        bool dup = false;
        for (const SemistablePolytope& prev : found) {
            auto accept = [&](const UnimodularMap& u) {
                if (u.apply(v_z) != v_z) return false;
                std::vector<Vec> img;
                for (const Vec& fv : prev.fiber_vertices) img.push_back(u.apply(fv));
                std::sort(img.begin(), img.end());
                return img == fib_sorted;
            };
            if (find_unimodular_equivalence_if(prev.hull, s->hull, accept).has_value()) {
                dup = true;
                break;
            }
        }
        if (!dup) found.push_back(std::move(*s));
    }
    return found;
}

std::map<int64_t, int64_t> semistable_fiber_count(const SemistablePolytope& s) {
    if (!s.lattice_generating)
        throw DomainError(
            "semistable_fiber_count: fiber and segment do not generate the lattice, the "
            "semistable fiber theorem does not apply");
    std::map<int64_t, int64_t> counts;
    int64_t euler = 0;
    IntegralPolytope delta = s.hull.dual();
    for (const Edge& e : s.fiber.edges()) {
        Vec a3 = s.plane_basis[0].scaled(s.fiber.vertices()[static_cast<size_t>(e.a)][0]) +
                 s.plane_basis[1].scaled(s.fiber.vertices()[static_cast<size_t>(e.a)][1]);
        Vec b3 = s.plane_basis[0].scaled(s.fiber.vertices()[static_cast<size_t>(e.b)][0]) +
                 s.plane_basis[1].scaled(s.fiber.vertices()[static_cast<size_t>(e.b)][1]);
        int eid = s.hull.find_edge(a3, b3);
        if (eid < 0) continue;  // fiber edge interior to a facet contributes nothing
        int64_t q = s.hull.edges()[static_cast<size_t>(eid)].length;
        // dual edge of the hull edge
        int64_t r = -1;
        for (const Edge& de : delta.edges()) {
            const Vec& m1 = delta.vertices()[static_cast<size_t>(de.a)];
            const Vec& m2 = delta.vertices()[static_cast<size_t>(de.b)];
            if (pairing(m1, a3) == -1 && pairing(m1, b3) == -1 && pairing(m2, a3) == -1 &&
                pairing(m2, b3) == -1)
                r = de.length;
        }
        if (r < 0) throw InvariantError("hull edge with no dual edge");
        counts[q] += r;
        euler += q * r;
    }
    if (euler > 24) throw InvariantError("semistable fiber Euler numbers exceed 24");
    if (euler < 24) counts[1] += 24 - euler;
    return counts;
}

CandelasFontModel candelas_font_model(const FibrationData& f, const SectionAtInfinity& section) {
    const IntegralPolytope& nabla = f.parent;
    const Edge& edge = nabla.edges()[static_cast<size_t>(section.edge_id)];
    auto it = std::find(edge.points.begin(), edge.points.end(), section.v_z);
    if (it == edge.points.end() || it == edge.points.begin() || it + 1 == edge.points.end())
        throw DomainError("candelas_font_model: v_z is not interior to the section edge");
    size_t idx = static_cast<size_t>(it - edge.points.begin());
    Vec v_s = edge.points[idx + 1];
    if (pairing(f.m_phi, v_s) < 0) v_s = edge.points[idx - 1];  // point L toward the top

    std::vector<Vec> fiber3d = f.fiber_vertices_3d_in_variable_order();
    auto model = semistable_from_segment(fiber3d, section.v_z, v_s);
    if (!model.has_value())
        throw DomainError("candelas_font_model: the section edge spans no semistable polytope");

    CandelasFontModel out;
    out.model = *model;

    for (const Vec& v : out.model.hull.vertices())
        if (!nabla.contains(v)) throw InvariantError("semistable polytope escapes the parent");
    IntegralPolytope delta_parent = nabla.dual();
    IntegralPolytope delta_model = out.model.hull.dual();
    out.inclusion_ok = true;
    for (const Vec& m : delta_parent.lattice_points())
        if (!delta_model.contains(m)) out.inclusion_ok = false;
    if (!out.inclusion_ok)
        throw DomainError("candelas_font_model: dual inclusion fails");

    std::vector<CoxRay> rays;
    for (size_t k = 0; k < fiber3d.size(); ++k)
        rays.push_back({fiber3d[k], fiber_variable_name(k)});
    rays.push_back({out.model.v_s, "s"});
    rays.push_back({out.model.v_t, "t"});
    out.equation = anticanonical_monomials(rays, delta_model);

    std::vector<int> fiber_ids;
    for (size_t k = 0; k < fiber3d.size(); ++k) fiber_ids.push_back(static_cast<int>(k));
    int s_ray = static_cast<int>(fiber3d.size());
    out.fibered = group_by_fiber(out.equation, fiber_ids, s_ray, s_ray + 1);

    for (const CoxMonomial& m : out.equation.monomials)
        out.survives.push_back(delta_parent.contains(m.source_point));

    try {
        out.completion = weierstrass_completion(out.fibered);
        HypersurfaceEquation surv;
        surv.rays = out.equation.rays;
        for (size_t i = 0; i < out.equation.monomials.size(); ++i)
            if (out.survives[i]) surv.monomials.push_back(out.equation.monomials[i]);
        out.constrained = weierstrass_completion(group_by_fiber(surv, fiber_ids, s_ray, s_ray + 1));
    } catch (const DomainError& e) {
        out.completion_error = e.what();
    }
    return out;
}

bool candelas_characterization(const FibrationData& f) {
    if (!f.c1 || !f.c2) return false;
    for (const SectionAtInfinity& sec : f.sections) {
        try {
            const Edge& edge = f.parent.edges()[static_cast<size_t>(sec.edge_id)];
            auto it = std::find(edge.points.begin(), edge.points.end(), sec.v_z);
            size_t idx = static_cast<size_t>(it - edge.points.begin());
            Vec v_s = edge.points[idx + 1];
            std::vector<Vec> fiber3d = f.fiber_vertices_3d_in_variable_order();
            if (semistable_from_segment(fiber3d, sec.v_z, v_s).has_value()) return true;
        } catch (const DomainError&) {
        }
    }
    return false;
}

}  // namespace polyfib
