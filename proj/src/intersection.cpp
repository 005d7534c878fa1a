#include "polyfib/intersection.hpp"

#include <algorithm>
#include <map>

namespace polyfib {

namespace {

struct Tri2 {
    // triangle in projected facet coordinates, with the original 3d points
    std::array<Vec, 3> p3;
    std::array<std::array<int64_t, 2>, 3> p2;
};

int64_t orient(const std::array<int64_t, 2>& a, const std::array<int64_t, 2>& b,
               const std::array<int64_t, 2>& c) {
    return checked_sub(checked_mul(checked_sub(b[0], a[0]), checked_sub(c[1], a[1])),
                       checked_mul(checked_sub(b[1], a[1]), checked_sub(c[0], a[0])));
}

// position of q relative to the triangle: 0 outside, 1 inside, 2 on edge e01,
// 3 on edge e12, 4 on edge e20 (strictly within the edge)
int locate(const Tri2& t, const std::array<int64_t, 2>& q) {
    int64_t d0 = orient(t.p2[0], t.p2[1], q);
    int64_t d1 = orient(t.p2[1], t.p2[2], q);
    int64_t d2 = orient(t.p2[2], t.p2[0], q);
    int64_t s = orient(t.p2[0], t.p2[1], t.p2[2]);
    if (s < 0) {
        d0 = -d0;
        d1 = -d1;
        d2 = -d2;
    }
    if (d0 < 0 || d1 < 0 || d2 < 0) return 0;
    if (d0 > 0 && d1 > 0 && d2 > 0) return 1;
    if (d0 == 0 && d1 > 0 && d2 > 0) return 2;
    if (d1 == 0 && d0 > 0 && d2 > 0) return 3;
    if (d2 == 0 && d0 > 0 && d1 > 0) return 4;
    return 0;  // a vertex or outside along an edge line
}

int64_t det3(const Vec& a, const Vec& b, const Vec& c) {
    return det(Mat::from_rows({a, b, c}));
}

}  // namespace

MaxTriangulation MaxTriangulation::build(const IntegralPolytope& nabla) {
    if (nabla.dim() != 3) throw DomainError("triangulation: need a 3d polytope");
    if (!nabla.is_reflexive()) throw DomainError("triangulation: polytope not reflexive");
    MaxTriangulation t;
    t.parent_ = nabla;

    for (size_t fi = 0; fi < nabla.facets().size(); ++fi) {
        const Facet& f = nabla.facets()[fi];
        // all lattice points on the facet
        std::vector<Vec> fpts;
        for (const Vec& p : nabla.lattice_points())
            if (pairing(f.normal, p) == -f.offset) fpts.push_back(p);

        // projection dropping the axis with the largest normal component
        int drop = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(f.normal[i]) > std::abs(f.normal[drop])) drop = i;
        auto proj = [&](const Vec& p) {
            std::array<int64_t, 2> q{};
            int k = 0;
            for (int i = 0; i < 3; ++i)
                if (i != drop) q[static_cast<size_t>(k++)] = p[i];
            return q;
        };

        // polygon vertices in cyclic order via a 2d hull of the projected vertices
        std::vector<Vec> fverts;
        for (int vid : f.vertex_ids) fverts.push_back(nabla.vertices()[static_cast<size_t>(vid)]);
        std::sort(fverts.begin(), fverts.end(), [&](const Vec& a, const Vec& b) {
            return proj(a) < proj(b);
        });
        std::vector<Vec> cyc;
        auto build_half = [&](auto begin, auto end) {
            size_t start = cyc.size();
            for (auto it = begin; it != end; ++it) {
                while (cyc.size() >= start + 2 &&
                       orient(proj(cyc[cyc.size() - 2]), proj(cyc[cyc.size() - 1]), proj(*it)) <= 0)
                    cyc.pop_back();
                cyc.push_back(*it);
            }
        };
        build_half(fverts.begin(), fverts.end());
        cyc.pop_back();
        build_half(fverts.rbegin(), fverts.rend());
        cyc.pop_back();
        if (cyc.size() != fverts.size())
            throw InvariantError("facet polygon ordering lost vertices");

        // initial fan from the lexicographically least vertex over non-incident edges
        Vec apex = *std::min_element(cyc.begin(), cyc.end());
        size_t apex_pos = 0;
        for (size_t i = 0; i < cyc.size(); ++i)
            if (cyc[i] == apex) apex_pos = i;
        std::vector<Tri2> tris;
        for (size_t i = 0; i < cyc.size(); ++i) {
            size_t j = (i + 1) % cyc.size();
            if (i == apex_pos || j == apex_pos) continue;
            Tri2 tr;
            tr.p3 = {apex, cyc[i], cyc[j]};
            tr.p2 = {proj(apex), proj(cyc[i]), proj(cyc[j])};
            tris.push_back(tr);
        }

        // insert the remaining lattice points in lexicographic order
        std::vector<Vec> rest;
        for (const Vec& p : fpts)
            if (std::find(cyc.begin(), cyc.end(), p) == cyc.end()) rest.push_back(p);
        std::sort(rest.begin(), rest.end());
        for (const Vec& p : rest) {
            std::array<int64_t, 2> q = proj(p);
            std::vector<Tri2> next;
            bool placed = false;
            for (const Tri2& tr : tris) {
                int pos = locate(tr, q);
                if (pos == 0) {
                    next.push_back(tr);
                    continue;
                }
                placed = true;
                auto make = [&](const Vec& a, const Vec& b, const Vec& c) {
                    Tri2 nt;
                    nt.p3 = {a, b, c};
                    nt.p2 = {proj(a), proj(b), proj(c)};
                    if (orient(nt.p2[0], nt.p2[1], nt.p2[2]) != 0) next.push_back(nt);
                };
                if (pos == 1) {
                    make(tr.p3[0], tr.p3[1], p);
                    make(tr.p3[1], tr.p3[2], p);
                    make(tr.p3[2], tr.p3[0], p);
                } else if (pos == 2) {
                    make(tr.p3[0], p, tr.p3[2]);
                    make(p, tr.p3[1], tr.p3[2]);
                } else if (pos == 3) {
                    make(tr.p3[1], p, tr.p3[0]);
                    make(p, tr.p3[2], tr.p3[0]);
                } else {
                    make(tr.p3[2], p, tr.p3[1]);
                    make(p, tr.p3[0], tr.p3[1]);
                }
            }
            if (!placed) throw InvariantError("facet point not inside any triangle");
            tris = next;
        }

        for (const Tri2& tr : tris) {
            Triangle out;
            out.v = tr.p3;
            std::sort(out.v.begin(), out.v.end());
            out.facet_id = static_cast<int>(fi);
            if (std::abs(det3(out.v[0], out.v[1], out.v[2])) != 1)
                throw InvariantError("non-elementary triangle in the maximal subdivision");
            t.triangles_.push_back(out);
        }
    }
    std::sort(t.triangles_.begin(), t.triangles_.end(), [](const Triangle& a, const Triangle& b) {
        return std::tie(a.facet_id, a.v) < std::tie(b.facet_id, b.v);
    });
    return t;
}

std::vector<int> MaxTriangulation::star(const Vec& p) const {
    std::vector<int> out;
    for (size_t i = 0; i < triangles_.size(); ++i) {
        const auto& v = triangles_[i].v;
        if (v[0] == p || v[1] == p || v[2] == p) out.push_back(static_cast<int>(i));
    }
    return out;
}

bool MaxTriangulation::has_triangle(const Vec& a, const Vec& b, const Vec& c) const {
    std::array<Vec, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    for (const Triangle& t : triangles_)
        if (t.v == key) return true;
    return false;
}

std::vector<int> MaxTriangulation::triangles_with_segment(const Vec& a, const Vec& b) const {
    std::vector<int> out;
    for (size_t i = 0; i < triangles_.size(); ++i) {
        const auto& v = triangles_[i].v;
        bool ha = v[0] == a || v[1] == a || v[2] == a;
        bool hb = v[0] == b || v[1] == b || v[2] == b;
        if (ha && hb) out.push_back(static_cast<int>(i));
    }
    return out;
}

DivisorRestriction divisor_restriction(const Vec& v, const IntegralPolytope& nabla) {
    auto info = nabla.classify(v);
    using P = IntegralPolytope::Position;
    switch (info.pos) {
        case P::Vertex:
            return {RestrictionKind::Irreducible, 1};
        case P::FacetInterior:
            return {RestrictionKind::Vanishes, 0};
        case P::EdgeInterior: {
            // l'(dual edge) + 1 components
            const Edge& e = nabla.edges()[static_cast<size_t>(info.face_id)];
            const Vec& a = nabla.vertices()[static_cast<size_t>(e.a)];
            const Vec& b = nabla.vertices()[static_cast<size_t>(e.b)];
            IntegralPolytope delta = nabla.dual();
            for (const Edge& de : delta.edges()) {
                const Vec& m1 = delta.vertices()[static_cast<size_t>(de.a)];
                const Vec& m2 = delta.vertices()[static_cast<size_t>(de.b)];
                if (pairing(m1, a) == -1 && pairing(m1, b) == -1 && pairing(m2, a) == -1 &&
                    pairing(m2, b) == -1) {
                    int64_t interior = de.length - 1;
                    return {interior == 0 ? RestrictionKind::Irreducible : RestrictionKind::Splits,
                            interior + 1};
                }
            }
            throw InvariantError("edge with no dual edge");
        }
        default:
            throw DomainError("divisor_restriction: interior or outside point");
    }
}

int64_t intersection_number(const Vec& v1, const Vec& v2, const MaxTriangulation& t) {
    if (v1 == v2) throw DomainError("intersection_number: points must differ");
    std::vector<int> tris = t.triangles_with_segment(v1, v2);
    if (tris.empty()) return 0;
    if (tris.size() != 2) throw InvariantError("triangulation edge not on two triangles");
    auto value = [&](int own, int other) {
        const Triangle& t1 = t.triangles()[static_cast<size_t>(own)];
        const Triangle& t2 = t.triangles()[static_cast<size_t>(other)];
        const Facet& f = t.parent().facets()[static_cast<size_t>(t1.facet_id)];
        Vec v4 = t2.v[0];
        for (const Vec& w : t2.v)
            if (w != v1 && w != v2) v4 = w;
        return checked_add(pairing(f.normal, v4), 1);
    };
    int64_t r1 = value(tris[0], tris[1]);
    int64_t r2 = value(tris[1], tris[0]);
    if (r1 != r2) throw InvariantError("inconsistent triangulation adjacency");

    // when v1, v2 are consecutive on an edge of the parent, the dual edge length
    // must reproduce the same number
    const IntegralPolytope& nabla = t.parent();
    for (const Edge& e : nabla.edges()) {
        auto it1 = std::find(e.points.begin(), e.points.end(), v1);
        auto it2 = std::find(e.points.begin(), e.points.end(), v2);
        if (it1 == e.points.end() || it2 == e.points.end()) continue;
        IntegralPolytope delta = nabla.dual();
        const Vec& a = nabla.vertices()[static_cast<size_t>(e.a)];
        const Vec& b = nabla.vertices()[static_cast<size_t>(e.b)];
        for (const Edge& de : delta.edges()) {
            const Vec& m1 = delta.vertices()[static_cast<size_t>(de.a)];
            const Vec& m2 = delta.vertices()[static_cast<size_t>(de.b)];
            if (pairing(m1, a) == -1 && pairing(m1, b) == -1 && pairing(m2, a) == -1 &&
                pairing(m2, b) == -1) {
                if (de.length != r1)
                    throw InvariantError("edge formula and triangle formula disagree");
            }
        }
        break;
    }
    return r1;
}

std::vector<std::pair<Vec, int64_t>> fiber_class_divisor(const FibrationData& f) {
    std::vector<std::pair<Vec, int64_t>> out;
    for (const Vec& v : f.top_points) out.emplace_back(v, pairing(f.m_phi, v));
    return out;
}

int64_t fiber_intersection(const Vec& v_z, const FibrationData& f, const MaxTriangulation& t) {
    int64_t total = 0;
    for (const auto& [v, coef] : fiber_class_divisor(f))
        total = checked_add(total, checked_mul(coef, intersection_number(v_z, v, t)));
    return total;
}

SectionCriterion is_toric_section(const Vec& v_z3d, const FibrationData& f,
                                  const MaxTriangulation& t) {
    SectionCriterion r;
    const IntegralPolytope& nabla = f.parent;

    // fiber neighbors of v_z along the two fiber-polytope edges through it
    Vec vz2 = f.to_fiber_coords(v_z3d);
    if (!f.fiber.is_vertex(vz2)) throw DomainError("is_toric_section: not a fiber vertex");
    std::vector<Vec> nbrs2;
    int vid = f.fiber.classify(vz2).face_id;
    for (const Edge& e : f.fiber.edges()) {
        if (e.a != vid && e.b != vid) continue;
        const Vec& other = f.fiber.vertices()[static_cast<size_t>(e.a == vid ? e.b : e.a)];
        nbrs2.push_back(vz2 + primitive_part(other - vz2));
    }
    if (nbrs2.size() != 2) throw InvariantError("fiber vertex without two fiber edges");
    r.v1 = f.to_parent_coords(nbrs2[0]);
    r.v2 = f.to_parent_coords(nbrs2[1]);

    // v_s: unique lattice point at distance one from v_z along an edge of the
    // parent leaving the fiber plane toward the top
    auto info = nabla.classify(v_z3d);
    std::vector<Vec> candidates;
    if (info.pos == IntegralPolytope::Position::Vertex) {
        if (!nabla.is_simple_at(v_z3d)) r.failed_hypotheses.push_back("parent not simple at v_z");
        std::vector<Vec> above, below;
        for (const Edge& e : nabla.edges()) {
            if (e.a != info.face_id && e.b != info.face_id) continue;
            // consecutive lattice point along the edge, seen from v_z
            const Vec& next =
                e.points.front() == v_z3d ? e.points[1] : e.points[e.points.size() - 2];
            int64_t h = pairing(f.m_phi, next);
            if (h > 0) above.push_back(next);
            if (h < 0) below.push_back(next);
        }
        // either end of the base works: the fiber is equivalent to both sums
        candidates = above.empty() ? below : above;
    } else if (info.pos == IntegralPolytope::Position::EdgeInterior) {
        const Edge& e = nabla.edges()[static_cast<size_t>(info.face_id)];
        auto it = std::find(e.points.begin(), e.points.end(), v_z3d);
        size_t idx = static_cast<size_t>(it - e.points.begin());
        for (size_t j : {idx - 1, idx + 1}) {
            if (j >= e.points.size()) continue;
            if (pairing(f.m_phi, e.points[j]) > 0) candidates.push_back(e.points[j]);
        }
    } else {
        r.failed_hypotheses.push_back("v_z not on the boundary of the parent");
    }
    if (candidates.size() != 1) {
        r.failed_hypotheses.push_back("no unique top neighbor v_s along a parent edge");
    } else {
        r.v_s = candidates[0];
        if (!t.has_triangle(v_z3d, r.v1, r.v_s))
            r.failed_hypotheses.push_back("triangle v_z v_1 v_s not in the triangulation");
        if (!t.has_triangle(v_z3d, r.v2, r.v_s))
            r.failed_hypotheses.push_back("triangle v_z v_2 v_s not in the triangulation");
        if (divisor_restriction(v_z3d, nabla).components != 1)
            r.failed_hypotheses.push_back("restriction of the v_z divisor is not irreducible");
        if (divisor_restriction(r.v_s, nabla).components != 1)
            r.failed_hypotheses.push_back("restriction of the v_s divisor is not irreducible");
    }
    r.applicable = r.failed_hypotheses.empty();
    r.is_section = (r.v1 + r.v2) == v_z3d;
    return r;
}

}  // namespace polyfib
