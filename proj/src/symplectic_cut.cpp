#include "polyfib/symplectic_cut.hpp"

#include <algorithm>
#include <set>

namespace polyfib {

namespace {

Vec lift(const Vec& p2, Lattice role) { return Vec(p2[0], p2[1], 0, role); }

std::vector<Vec> section_vertices(const IntegralPolytope& poly) {
    // vertices of poly ∩ {x3 = 0}: on-plane vertices plus integral edge crossings
    std::vector<Vec> out;
    for (const Vec& v : poly.vertices())
        if (v[2] == 0) out.push_back(v);
    for (const Edge& e : poly.edges()) {
        const Vec& a = poly.vertices()[static_cast<size_t>(e.a)];
        const Vec& b = poly.vertices()[static_cast<size_t>(e.b)];
        if (a[2] == 0 || b[2] == 0 || (a[2] > 0) == (b[2] > 0)) continue;
        int64_t den = checked_sub(a[2], b[2]);
        Vec x = a;
        bool integral = true;
        for (int t = 0; t < 3; ++t) {
            int64_t num = checked_sub(checked_mul(a[2], b[t]), checked_mul(b[2], a[t]));
            if (num % den != 0) integral = false;
            x[t] = num / den;
        }
        if (!integral) throw InvariantError("non-integral slice vertex");
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

namespace {

CutPartition cut_with_basis(const FibrationData& f, const UnimodularMap& adapted) {
    CutPartition p;
    p.adapted = adapted;

    IntegralPolytope delta = f.parent.dual();
    p.delta = delta.transform(p.adapted.dual_map());
    p.delta_simple = p.delta.is_simple();

    // the slice must equal the dual of the fiber polytope in the adapted frame
    std::vector<Vec> fiber_ad;
    for (const Vec& q : f.fiber_points_3d) {
        Vec w = p.adapted.apply(q);
        fiber_ad.push_back(Vec(w[0], w[1], w.role()));
    }
    IntegralPolytope fiber2 = IntegralPolytope::hull(fiber_ad);
    p.slice2d = fiber2.dual();

    p.slice_vertices = section_vertices(p.delta);
    std::vector<Vec> expected;
    for (const Vec& m : p.slice2d.vertices()) expected.push_back(lift(m, m.role()));
    std::sort(expected.begin(), expected.end());
    if (p.slice_vertices != expected)
        throw InvariantError("slice differs from the dual of the fiber polytope");

    std::vector<Vec> up = p.slice_vertices, down = p.slice_vertices;
    for (const Vec& v : p.delta.vertices()) {
        if (v[2] >= 0) up.push_back(v);
        if (v[2] <= 0) down.push_back(v);
    }
    p.piece1 = IntegralPolytope::hull(up);
    p.piece2 = IntegralPolytope::hull(down);

    for (const Vec& v : p.slice_vertices)
        if (!p.delta.is_vertex(v)) p.new_vertices.push_back(v);

    p.balanced = check_balanced(p);
    p.mildly_singular = check_mildly_singular(p);
    p.simple_partition = check_simple_partition(p);
    return p;
}

}  // namespace

CutPartition cut(const FibrationData& f) {
    if (!f.c1) throw DomainError("cut: condition 1 not established");
    if (!f.c2) throw DomainError("cut: condition 2 not established");

    // the basis completion (a shear) is only determined up to SL(3,Z); the cut
    // plane in the dual space depends on it, so search the feasible completions
    // for one producing a fully valid partition
    const UnimodularMap& base = *f.adapted_basis;
    std::vector<Vec> fiber_ad;
    for (const Vec& q : f.fiber_points_3d) {
        Vec w = base.apply(q);
        fiber_ad.push_back(Vec(w[0], w[1], w.role()));
    }
    IntegralPolytope fiber2 = IntegralPolytope::hull(fiber_ad);
    std::vector<std::array<int64_t, 3>> pts;
    int64_t ext = 0;
    for (const Vec& v : f.parent.lattice_points()) {
        Vec w = base.apply(v);
        pts.push_back({w[0], w[1], w[2]});
        ext = std::max({ext, std::abs(w[0]), std::abs(w[1])});
    }
    for (const Vec& v : fiber2.vertices()) ext = std::max({ext, std::abs(v[0]), std::abs(v[1])});
    const int64_t B = 2 * ext + 2;

    auto feasible = [&](int64_t g1, int64_t g2) {
        for (const auto& q : pts) {
            Vec img(q[0] - g1 * q[2], q[1] - g2 * q[2], Lattice::N);
            if (!fiber2.contains(img)) return false;
        }
        return true;
    };
    std::vector<std::array<int64_t, 2>> shears;
    for (int64_t g1 = -B; g1 <= B; ++g1)
        for (int64_t g2 = -B; g2 <= B; ++g2)
            if (feasible(g1, g2)) shears.push_back({g1, g2});
    std::sort(shears.begin(), shears.end(),
              [](const std::array<int64_t, 2>& a, const std::array<int64_t, 2>& b) {
                  int64_t na = std::max(std::abs(a[0]), std::abs(a[1]));
                  int64_t nb = std::max(std::abs(b[0]), std::abs(b[1]));
                  return std::tie(na, a[0], a[1]) < std::tie(nb, b[0], b[1]);
              });
    if (shears.empty()) throw InvariantError("condition 2 holds but no feasible completion");

    std::optional<CutPartition> first;
    for (const auto& [g1, g2] : shears) {
        Mat sh = Mat::identity(3);
        sh(0, 2) = -g1;
        sh(1, 2) = -g2;
        CutPartition p = cut_with_basis(f, UnimodularMap(sh).compose(base));
        if (p.simple_partition && p.balanced && p.mildly_singular) return p;
        if (!first.has_value()) first = std::move(p);
    }
    return *first;
}

bool check_balanced(const CutPartition& p) {
    for (const Vec& v : p.new_vertices)
        if (p.delta.classify(v).pos != IntegralPolytope::Position::EdgeInterior) return false;
    return true;
}

namespace {

// index of the sublattice spanned by the primitive edge directions at a vertex;
// 0 when the directions do not span a finite-index sublattice
int64_t corner_index(const IntegralPolytope& poly, const Vec& v) {
    int vid = poly.classify(v).face_id;
    std::vector<Vec> dirs;
    for (const Edge& e : poly.edges()) {
        if (e.a != vid && e.b != vid) continue;
        const Vec& other = poly.vertices()[static_cast<size_t>(e.a == vid ? e.b : e.a)];
        dirs.push_back(primitive_part(other - v));
    }
    std::vector<int64_t> divs = elementary_divisors(Mat::from_rows(dirs));
    if (static_cast<int>(divs.size()) != poly.dim()) return 0;
    int64_t idx = 1;
    for (int64_t d : divs) idx = checked_mul(idx, d);
    return idx;
}

}  // namespace

bool check_mildly_singular(const CutPartition& p) {
    // a new vertex sits on the double locus; the cut is acceptable when the
    // piece's corner is exactly as singular as the slice polytope's own corner
    // there, so the degeneration adds no singularities of its own
    for (const IntegralPolytope* piece : {&p.piece1, &p.piece2}) {
        for (const Vec& v : p.new_vertices) {
            if (!piece->is_vertex(v)) throw InvariantError("new vertex missing from a piece");
            Vec v2(v[0], v[1], v.role());
            if (!p.slice2d.is_vertex(v2))
                throw InvariantError("new vertex is not a slice vertex");
            int64_t d3 = corner_index(*piece, v);
            int64_t d2 = corner_index(p.slice2d, v2);
            if (d3 == 0 || d2 == 0 || d3 != d2) return false;
        }
    }
    return true;
}

bool check_simple_partition(const CutPartition& p) {
    for (const IntegralPolytope* piece : {&p.piece1, &p.piece2})
        if (!piece->is_simple()) return false;

    // face-incidence rule: an l-face of a piece inside a k-face of Δ lies in
    // exactly k - l + 1 pieces
    auto face_dim_in_delta = [&](const std::vector<Vec>& face_pts) {
        std::vector<Vec> tight;
        for (const Facet& fc : p.delta.facets()) {
            bool all = true;
            for (const Vec& q : face_pts)
                if (pairing(fc.normal, q) != -fc.offset) all = false;
            if (all) tight.push_back(fc.normal);
        }
        // rank of the tight normals
        int rank = 0;
        if (!tight.empty()) {
            rank = 1;
            for (size_t i = 0; i < tight.size() && rank < 3; ++i)
                for (size_t j = i + 1; j < tight.size() && rank < 3; ++j) {
                    Vec c(checked_sub(checked_mul(tight[i][1], tight[j][2]),
                                      checked_mul(tight[i][2], tight[j][1])),
                          checked_sub(checked_mul(tight[i][2], tight[j][0]),
                                      checked_mul(tight[i][0], tight[j][2])),
                          checked_sub(checked_mul(tight[i][0], tight[j][1]),
                                      checked_mul(tight[i][1], tight[j][0])),
                          tight[i].role());
                    if (!c.is_zero()) rank = 2;
                }
            if (rank == 2)
                for (size_t i = 0; i < tight.size() && rank < 3; ++i)
                    for (size_t j = i + 1; j < tight.size() && rank < 3; ++j)
                        for (size_t k = j + 1; k < tight.size() && rank < 3; ++k)
                            if (det(Mat::from_rows({tight[i], tight[j], tight[k]})) != 0) rank = 3;
        }
        return 3 - rank;
    };
    auto contained_in = [&](const std::vector<Vec>& face_pts, const IntegralPolytope& piece) {
        for (const Vec& q : face_pts)
            if (!piece.contains(q)) return false;
        return true;
    };

    for (const IntegralPolytope* piece : {&p.piece1, &p.piece2}) {
        std::vector<std::pair<std::vector<Vec>, int>> faces;  // (vertex list, l)
        for (const Vec& v : piece->vertices()) faces.push_back({{v}, 0});
        for (const Edge& e : piece->edges())
            faces.push_back({{piece->vertices()[static_cast<size_t>(e.a)],
                              piece->vertices()[static_cast<size_t>(e.b)]},
                             1});
        for (const Facet& fc : piece->facets()) {
            std::vector<Vec> pts;
            for (int vid : fc.vertex_ids) pts.push_back(piece->vertices()[static_cast<size_t>(vid)]);
            faces.push_back({pts, 2});
        }
        for (const auto& [pts, l] : faces) {
            int k = face_dim_in_delta(pts);
            int count = 0;
            if (contained_in(pts, p.piece1)) ++count;
            if (contained_in(pts, p.piece2)) ++count;
            if (count == k - l + 1) continue;
            // tangency: a face of Δ itself lying inside the cut plane belongs to
            // both pieces; the slice passes through it rather than across it
            bool on_slice = true;
            for (const Vec& q : pts)
                if (q[2] != 0) on_slice = false;
            if (on_slice && k == l && count == 2) continue;
            return false;
        }
    }
    return true;
}

RationalElliptic rational_elliptic_check(const IntegralPolytope& piece) {
    RationalElliptic r;
    int slice_facets = 0;
    for (const Facet& f : piece.facets()) {
        bool axis = (f.normal[0] == 0 && f.normal[1] == 0 &&
                     (f.normal[2] == 1 || f.normal[2] == -1));
        if (axis && f.offset == 0) {
            ++slice_facets;
            continue;
        }
        if (f.offset != 1) {
            r.detail = "facet with normal " + f.normal.str() + " has lattice distance " +
                       std::to_string(f.offset) + ", expected 1";
            return r;
        }
    }
    if (slice_facets != 1) {
        r.detail = "expected exactly one slice facet through the origin, found " +
                   std::to_string(slice_facets);
        return r;
    }
    r.ok = true;
    return r;
}

HypersurfaceDegeneration hypersurface_degeneration(const FibrationData& f, const CutPartition& p) {
    if (!(p.simple_partition && p.balanced && p.mildly_singular))
        throw DomainError("hypersurface_degeneration: partition is not valid");
    HypersurfaceDegeneration h;

    auto rays_for = [&](int sign) {
        std::vector<Vec> rays;
        for (const Vec& v : f.parent.vertices()) {
            Vec w = p.adapted.apply(v);
            if (sign > 0 ? w[2] >= 0 : w[2] <= 0) rays.push_back(w);
        }
        rays.push_back(Vec(0, 0, sign, Lattice::N));
        std::sort(rays.begin(), rays.end());
        rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
        return rays;
    };
    std::vector<Vec> rays1 = rays_for(+1), rays2 = rays_for(-1);

    auto monomials_for = [&](const IntegralPolytope& piece, const std::vector<Vec>& rays,
                             int sign) {
        std::vector<PieceMonomial> out;
        for (const Vec& m : piece.lattice_points()) {
            PieceMonomial pm;
            pm.source_point = m;
            for (const Vec& ray : rays) {
                bool added_axis = ray[0] == 0 && ray[1] == 0 && ray[2] == sign;
                int64_t e = checked_add(pairing(m, ray), added_axis ? 0 : 1);
                if (e < 0) throw InvariantError("negative exponent in a degeneration piece");
                pm.exponents.push_back(e);
            }
            out.push_back(pm);
        }
        return out;
    };
    h.piece1 = monomials_for(p.piece1, rays1, +1);
    h.piece2 = monomials_for(p.piece2, rays2, -1);
    for (const Vec& m : p.delta.lattice_points())
        if (m[2] == 0) h.shared.push_back(m);
    return h;
}

DegenerationPieces degeneration_pieces(const FibrationData& f, const CutPartition& p) {
    if (!(p.simple_partition && p.balanced && p.mildly_singular))
        throw DomainError("degeneration_pieces: partition is not valid");
    DegenerationPieces d;
    for (const Vec& v : f.parent.vertices()) {
        Vec w = p.adapted.apply(v);
        if (w[2] >= 0) d.rays1.push_back(w);
        if (w[2] <= 0) d.rays2.push_back(w);
    }
    d.rays1.push_back(Vec(0, 0, 1, Lattice::N));
    d.rays2.push_back(Vec(0, 0, -1, Lattice::N));
    for (auto* rays : {&d.rays1, &d.rays2}) {
        std::sort(rays->begin(), rays->end());
        rays->erase(std::unique(rays->begin(), rays->end()), rays->end());
    }
    d.double_locus = p.slice2d;
    HypersurfaceDegeneration h = hypersurface_degeneration(f, p);
    d.piece1_monomials = h.piece1;
    d.piece2_monomials = h.piece2;
    d.shared_monomials = h.shared;
    return d;
}

}  // namespace polyfib
