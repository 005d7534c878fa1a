#include "polyfib/fibration.hpp"

#include <algorithm>
#include <set>

namespace polyfib {

namespace {

Vec cross(const Vec& a, const Vec& b) {
    return Vec(checked_sub(checked_mul(a[1], b[2]), checked_mul(a[2], b[1])),
               checked_sub(checked_mul(a[2], b[0]), checked_mul(a[0], b[2])),
               checked_sub(checked_mul(a[0], b[1]), checked_mul(a[1], b[0])), a.role());
}

Vec canonical_sign(const Vec& v) {
    for (int i = 0; i < v.dim(); ++i) {
        if (v[i] > 0) return v;
        if (v[i] < 0) return -v;
    }
    return v;
}

}  // namespace

Vec FibrationData::to_fiber_coords(const Vec& p3d) const {
    return plane_coordinates(plane_basis[0], plane_basis[1], p3d);
}

Vec FibrationData::to_parent_coords(const Vec& p2d) const {
    return plane_basis[0].scaled(p2d[0]) + plane_basis[1].scaled(p2d[1]);
}

std::vector<Vec> FibrationData::fiber_vertices_3d_in_variable_order() const {
    const PlanarClass& cls = planar_class(fiber_class);
    UnimodularMap from_ref = fiber_to_reference.inverse();
    std::vector<Vec> out;
    for (const Vec& rv : cls.rays_in_variable_order())
        out.push_back(to_parent_coords(from_ref.apply(rv)));
    return out;
}

std::pair<bool, std::optional<UnimodularMap>> condition1_from_generators(
    const std::vector<Vec>& generators) {
    if (generators.empty()) throw DomainError("condition1: no generators");
    Mat a = Mat::from_columns(generators);  // 3 x k
    SmithForm s = smith_normal_form(a);
    int rank = 0;
    for (int i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (s.d(i, i) != 0) ++rank;
    if (rank != 2) return {false, std::nullopt};
    for (int i = 0; i < rank; ++i)
        if (s.d(i, i) != 1) return {false, std::nullopt};
    // U maps the span onto the span of e1, e2
    return {true, UnimodularMap(s.u)};
}

namespace {

// 2d point-in-polytope over the adapted fiber polygon
bool polygon_contains(const IntegralPolytope& poly2d, int64_t x, int64_t y) {
    for (const Facet& f : poly2d.facets()) {
        int64_t val = checked_add(checked_mul(f.normal[0], x), checked_mul(f.normal[1], y));
        if (val < -f.offset) return false;
    }
    return true;
}

struct AdaptedData {
    UnimodularMap u;               // before shear
    IntegralPolytope fiber_adapted;  // fiber polygon in the first two adapted coords
    std::vector<std::array<int64_t, 3>> points;  // parent lattice points, adapted coords
    int64_t shear_bound;
};

AdaptedData adapt(const FibrationData& f) {
    if (!f.c1 || !f.adapted_basis.has_value())
        throw DomainError("condition 2 requires condition 1");
    AdaptedData d{*f.adapted_basis, f.fiber, {}, 0};
    std::vector<Vec> fib2;
    for (const Vec& p : f.fiber_points_3d) {
        Vec q = d.u.apply(p);
        if (q[2] != 0) throw InvariantError("adapted basis does not flatten the fiber");
        fib2.emplace_back(q[0], q[1], p.role());
    }
    d.fiber_adapted = IntegralPolytope::hull(fib2);
    int64_t ext = 0;
    for (const Vec& p : f.parent.lattice_points()) {
        Vec q = d.u.apply(p);
        d.points.push_back({q[0], q[1], q[2]});
        ext = std::max({ext, std::abs(q[0]), std::abs(q[1])});
    }
    for (const Vec& v : d.fiber_adapted.vertices()) ext = std::max({ext, std::abs(v[0]), std::abs(v[1])});
    d.shear_bound = 2 * ext + 2;
    return d;
}

}  // namespace

std::optional<std::array<int64_t, 2>> condition2_feasible_shear(const FibrationData& f) {
    AdaptedData d = adapt(f);
    const int64_t B = d.shear_bound;
    for (int64_t g1 = -B; g1 <= B; ++g1)
        for (int64_t g2 = -B; g2 <= B; ++g2) {
            bool ok = true;
            for (const auto& q : d.points) {
                int64_t x = q[0] - g1 * q[2];
                int64_t y = q[1] - g2 * q[2];
                if (!polygon_contains(d.fiber_adapted, x, y)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return std::array<int64_t, 2>{g1, g2};
        }
    return std::nullopt;
}

bool condition2_image(const FibrationData& f) {
    return condition2_feasible_shear(f).has_value();
}

bool condition2_facets(const FibrationData& f) {
    if (!f.c1 || !f.adapted_basis.has_value())
        throw DomainError("condition 2 requires condition 1");
    const UnimodularMap& u = *f.adapted_basis;
    UnimodularMap dual_u = u.dual_map();

    // constraint per facet from its position relative to the fiber plane: a
    // facet with positive (negative) third normal component must lie in the
    // lower (upper) half space, so straddling facets force a vanishing third
    // component and one-sided facets forbid the opposite sign
    struct FacetReq {
        int64_t n1, n2, n3;  // normal in the adapted dual basis
        bool below, above;   // containment of the facet in the closed half spaces
    };
    std::vector<FacetReq> reqs;
    int64_t ext = adapt(f).shear_bound;
    for (const Facet& fac : f.parent.facets()) {
        Vec n_ad = dual_u.apply(fac.normal);
        int64_t mn = 0, mx = 0;
        bool first = true;
        for (int vid : fac.vertex_ids) {
            int64_t h = pairing(f.m_phi, f.parent.vertices()[static_cast<size_t>(vid)]);
            if (first) {
                mn = mx = h;
                first = false;
            } else {
                mn = std::min(mn, h);
                mx = std::max(mx, h);
            }
        }
        reqs.push_back({n_ad[0], n_ad[1], n_ad[2], mx <= 0, mn >= 0});
        ext = std::max({ext, std::abs(n_ad[0]) + std::abs(n_ad[1]), std::abs(n_ad[2])});
    }
    const int64_t B = 2 * ext + 2;
    for (int64_t g1 = -B; g1 <= B; ++g1)
        for (int64_t g2 = -B; g2 <= B; ++g2) {
            bool ok = true;
            for (const FacetReq& r : reqs) {
                int64_t w3 = r.n3 + g1 * r.n1 + g2 * r.n2;
                if ((w3 > 0 && !r.below) || (w3 < 0 && !r.above)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
    return false;
}

std::vector<SectionAtInfinity> condition3_witnesses(const IntegralPolytope& parent,
                                                    const FibrationData& f) {
    std::vector<SectionAtInfinity> out;
    for (const Vec& v2d : f.fiber.vertices()) {
        Vec v3 = f.to_parent_coords(v2d);
        if (parent.is_vertex(v3)) continue;
        auto info = parent.classify(v3);
        if (info.pos == IntegralPolytope::Position::EdgeInterior)
            out.push_back({v3, info.face_id});
    }
    std::sort(out.begin(), out.end(),
              [](const SectionAtInfinity& a, const SectionAtInfinity& b) { return a.v_z < b.v_z; });
    return out;
}

bool has_section_at_infinity(const FibrationData& f, const Vec& v_z3d) {
    bool is_fiber_vertex = false;
    for (const Vec& v2d : f.fiber.vertices())
        if (f.to_parent_coords(v2d) == v_z3d) is_fiber_vertex = true;
    if (!is_fiber_vertex) throw DomainError("has_section_at_infinity: not a fiber vertex");
    auto info = f.parent.classify(v_z3d);
    return info.pos == IntegralPolytope::Position::EdgeInterior;
}

BaseCoordinates base_coordinates(const FibrationData& f, const std::vector<Vec>& rays) {
    BaseCoordinates bc;
    for (const Vec& r : rays) {
        int64_t h = pairing(f.m_phi, r);
        if (h > 0) bc.z_top.emplace_back(r, h);
        if (h < 0) bc.z_bottom.emplace_back(r, -h);
    }
    return bc;
}

std::vector<FibrationData> find_fibrations(const IntegralPolytope& nabla) {
    if (nabla.dim() != 3) throw DomainError("find_fibrations: need a 3d polytope");
    if (!nabla.is_reflexive()) throw DomainError("find_fibrations: polytope not reflexive");

    // candidate plane normals from pairs of lattice points
    std::set<Vec> normals;
    const auto& pts = nabla.lattice_points();
    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].is_zero()) continue;
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[j].is_zero()) continue;
            Vec n = cross(pts[i], pts[j]);
            if (n.is_zero()) continue;
            normals.insert(canonical_sign(primitive_part(n)).with_role(Lattice::M));
        }
    }

    std::vector<FibrationData> out;
    for (const Vec& m : normals) {
        // slice lattice points
        std::vector<Vec> slice;
        for (const Vec& p : pts)
            if (pairing(m, p) == 0) slice.push_back(p);
        if (slice.size() < 4) continue;  // need at least the origin and a 2d polygon

        // the section polygon must have integral vertices: vertices on the plane
        // plus integral edge crossings
        bool integral = true;
        for (const Edge& e : nabla.edges()) {
            const Vec& a = nabla.vertices()[static_cast<size_t>(e.a)];
            const Vec& b = nabla.vertices()[static_cast<size_t>(e.b)];
            int64_t ha = pairing(m, a), hb = pairing(m, b);
            if (ha == 0 || hb == 0 || (ha > 0) == (hb > 0)) continue;
            // crossing point ((ha)b - (hb)a) / (ha - hb)
            int64_t den = checked_sub(ha, hb);
            for (int t = 0; t < 3 && integral; ++t) {
                int64_t num = checked_sub(checked_mul(ha, b[t]), checked_mul(hb, a[t]));
                if (num % den != 0) integral = false;
            }
            if (!integral) break;
        }
        if (!integral) continue;

        std::vector<Vec> basis = span_basis(slice);
        if (basis.size() != 2) continue;

        FibrationData f;
        f.parent = nabla;
        f.m_phi = m;
        f.plane_basis = basis;
        f.fiber_points_3d = slice;

        // fiber polygon in span coordinates
        std::vector<Vec> fib2;
        try {
            for (const Vec& p : slice) fib2.push_back(f.to_fiber_coords(p));
        } catch (const DomainError&) {
            throw InvariantError("slice point outside its own span");
        }
        IntegralPolytope polygon = IntegralPolytope::hull(fib2);
        // every slice point must be in the polygon's lattice-point set and the
        // polygon must be reflexive in the span lattice
        bool refl = true;
        for (const Facet& fc : polygon.facets())
            if (fc.offset != 1) refl = false;
        if (!refl) continue;
        f.fiber = polygon;

        PlanarClassification cls = classify_planar(polygon);
        f.fiber_class = cls.index;
        f.fiber_to_reference = cls.to_reference;

        // top/bottom with the sign convention: the lexicographically larger half is top
        auto half = [&](int sgn) {
            std::vector<Vec> v;
            for (const Vec& p : pts) {
                int64_t h = pairing(m, p);
                if ((sgn > 0 && h > 0) || (sgn < 0 && h < 0)) v.push_back(p);
            }
            std::sort(v.begin(), v.end(), [](const Vec& a, const Vec& b) { return b < a; });
            return v;
        };
        std::vector<Vec> above = half(+1), below = half(-1);
        if (std::lexicographical_compare(above.begin(), above.end(), below.begin(), below.end())) {
            f.m_phi = -f.m_phi;
            std::swap(above, below);
        }
        f.top_points = above;
        f.bottom_points = below;
        std::sort(f.top_points.begin(), f.top_points.end());
        std::sort(f.bottom_points.begin(), f.bottom_points.end());

        auto [c1, adapted] = condition1_from_generators(slice);
        f.c1 = c1;
        f.adapted_basis = adapted;
        if (f.c1) {
            // orient the adapted third axis with the fiber normal
            for (const Vec& w : pts) {
                int64_t h = pairing(f.m_phi, w);
                if (h == 0) continue;
                if ((f.adapted_basis->apply(w)[2] > 0) != (h > 0)) {
                    Mat flip = Mat::identity(3);
                    flip(2, 2) = -1;
                    f.adapted_basis = UnimodularMap(flip).compose(*f.adapted_basis);
                }
                break;
            }
        }
        if (f.c1) {
            bool img = condition2_image(f);
            bool fac = condition2_facets(f);
            if (img != fac)
                throw InvariantError("condition-2 routes disagree on " + m.str());
            f.c2 = img;
            if (f.c2) {
                f.shear = condition2_feasible_shear(f);
                // fold the shear into the adapted basis
                Mat sh = Mat::identity(3);
                sh(0, 2) = -(*f.shear)[0];
                sh(1, 2) = -(*f.shear)[1];
                f.adapted_basis = UnimodularMap(sh).compose(*f.adapted_basis);
            }
        }
        f.sections = condition3_witnesses(nabla, f);
        f.c3 = !f.sections.empty();
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const FibrationData& a, const FibrationData& b) {
        return canonical_sign(a.m_phi) < canonical_sign(b.m_phi);
    });
    return out;
}

}  // namespace polyfib
