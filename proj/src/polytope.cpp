#include "polyfib/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polyfib {

namespace {

Vec cross(const Vec& a, const Vec& b) {
    if (a.dim() != 3 || b.dim() != 3) throw DomainError("cross: need 3d vectors");
    Vec r(checked_sub(checked_mul(a[1], b[2]), checked_mul(a[2], b[1])),
          checked_sub(checked_mul(a[2], b[0]), checked_mul(a[0], b[2])),
          checked_sub(checked_mul(a[0], b[1]), checked_mul(a[1], b[0])), a.role());
    return r;
}

int64_t cross2(const Vec& a, const Vec& b) {
    return checked_sub(checked_mul(a[0], b[1]), checked_mul(a[1], b[0]));
}

std::vector<Vec> dedupe_sorted(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

int64_t segment_lattice_length(const Vec& a, const Vec& b) {
    if (a == b) throw DomainError("degenerate segment");
    return content(b - a);
}

std::vector<Vec> segment_lattice_points(const Vec& a, const Vec& b) {
    int64_t g = segment_lattice_length(a, b);
    Vec step = primitive_part(b - a);
    std::vector<Vec> pts;
    Vec p = a;
    pts.push_back(p);
    for (int64_t k = 0; k < g; ++k) {
        p = p + step;
        pts.push_back(p);
    }
    return pts;
}

IntegralPolytope IntegralPolytope::hull(const std::vector<Vec>& points) {
    if (points.empty()) throw DomainError("hull: no points");
    int n = points[0].dim();
    Lattice role = points[0].role();
    for (const Vec& p : points) {
        if (p.dim() != n) throw DomainError("hull: mixed dimensions");
        if (p.role() != role) throw DomainError("hull: mixed lattice roles");
    }
    std::vector<Vec> pts = dedupe_sorted(points);

    IntegralPolytope poly;
    poly.dim_ = n;
    poly.role_ = role;
    if (n == 2)
        poly.build_2d(pts);
    else if (n == 3)
        poly.build_3d(pts);
    else
        throw DomainError("hull: only dimensions 2 and 3 supported");
    poly.enumerate_lattice_points();
    poly.classify_points();
    return poly;
}

void IntegralPolytope::build_2d(const std::vector<Vec>& pts) {
    // full-dimensional check
    bool full = false;
    for (size_t i = 1; i < pts.size() && !full; ++i)
        for (size_t j = i + 1; j < pts.size() && !full; ++j)
            if (cross2(pts[i] - pts[0], pts[j] - pts[0]) != 0) full = true;
    if (!full) throw DomainError("hull: input not full-dimensional");

    // monotone chain (input already lex-sorted)
    std::vector<Vec> h;
    auto build_half = [&](auto begin, auto end) {
        size_t start = h.size();
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= start + 2 &&
                   cross2(h[h.size() - 1] - h[h.size() - 2], *it - h[h.size() - 2]) <= 0)
                h.pop_back();
            h.push_back(*it);
        }
    };
    build_half(pts.begin(), pts.end());
    h.pop_back();
    build_half(pts.rbegin(), pts.rend());
    h.pop_back();
    // h is the hull cycle, counter-clockwise
    std::vector<Vec> cyc = h;

    vertices_ = dedupe_sorted(cyc);
    auto vid = [&](const Vec& v) {
        return static_cast<int>(std::lower_bound(vertices_.begin(), vertices_.end(), v) -
                                vertices_.begin());
    };
    Lattice dual_role = dual_lattice(role_);
    for (size_t i = 0; i < cyc.size(); ++i) {
        const Vec& a = cyc[i];
        const Vec& b = cyc[(i + 1) % cyc.size()];
        Vec d = b - a;
        // inner normal for a CCW cycle
        Vec nrm = primitive_part(Vec(-d[1], d[0], role_)).with_role(dual_role);
        int64_t offset = checked_sub(0, checked_add(checked_mul(nrm[0], a[0]), checked_mul(nrm[1], a[1])));
        Facet f;
        f.normal = nrm;
        f.offset = offset;
        f.vertex_ids = {vid(a), vid(b)};
        std::sort(f.vertex_ids.begin(), f.vertex_ids.end());
        facets_.push_back(f);

        Edge e;
        e.a = std::min(vid(a), vid(b));
        e.b = std::max(vid(a), vid(b));
        e.points = segment_lattice_points(vertices_[static_cast<size_t>(e.a)],
                                          vertices_[static_cast<size_t>(e.b)]);
        e.length = static_cast<int64_t>(e.points.size()) - 1;
        edges_.push_back(e);
    }
    // canonical facet/edge order
    std::vector<size_t> idx(facets_.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
        return facets_[i].normal < facets_[j].normal;
    });
    std::vector<Facet> fs;
    std::vector<Edge> es;
    for (size_t i : idx) {
        facets_[i].vertex_ids.shrink_to_fit();
        fs.push_back(facets_[i]);
        es.push_back(edges_[i]);
    }
    facets_ = fs;
    edges_ = es;
    for (size_t i = 0; i < edges_.size(); ++i) edges_[i].facet_ids = {static_cast<int>(i)};
}

void IntegralPolytope::build_3d(const std::vector<Vec>& pts) {
    // full-dimensional check
    bool full = false;
    for (size_t i = 1; i < pts.size() && !full; ++i)
        for (size_t j = i + 1; j < pts.size() && !full; ++j)
            for (size_t k = j + 1; k < pts.size() && !full; ++k) {
                Mat m = Mat::from_rows({pts[i] - pts[0], pts[j] - pts[0], pts[k] - pts[0]});
                if (det(m) != 0) full = true;
            }
    if (!full) throw DomainError("hull: input not full-dimensional");

    struct PlaneKey {
        int64_t n0, n1, n2, d;
        bool operator<(const PlaneKey& o) const {
            return std::tie(n0, n1, n2, d) < std::tie(o.n0, o.n1, o.n2, o.d);
        }
    };
    std::set<PlaneKey> seen;
    Lattice dual_role = dual_lattice(role_);

    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            for (size_t k = j + 1; k < pts.size(); ++k) {
                Vec nv = cross(pts[j] - pts[i], pts[k] - pts[i]);
                if (nv.is_zero()) continue;
                nv = primitive_part(nv);
                int64_t d = 0;
                for (int t = 0; t < 3; ++t) d = checked_add(d, checked_mul(nv[t], pts[i][t]));
                bool all_ge = true, all_le = true;
                for (const Vec& p : pts) {
                    int64_t val = 0;
                    for (int t = 0; t < 3; ++t) val = checked_add(val, checked_mul(nv[t], p[t]));
                    if (val < d) all_ge = false;
                    if (val > d) all_le = false;
                }
                if (!all_ge && !all_le) continue;
                if (!all_ge) {
                    nv = -nv;
                    d = -d;
                }
                PlaneKey key{nv[0], nv[1], nv[2], d};
                if (seen.count(key)) continue;
                seen.insert(key);
                Facet f;
                f.normal = nv.with_role(dual_role);
                f.offset = -d;
                facets_.push_back(f);
            }

    // vertices: points whose tight facet normals span the space
    std::vector<Vec> verts;
    for (const Vec& p : pts) {
        std::vector<Vec> tight;
        for (const Facet& f : facets_) {
            int64_t val = 0;
            for (int t = 0; t < 3; ++t) val = checked_add(val, checked_mul(f.normal[t], p[t]));
            if (val == -f.offset) tight.push_back(f.normal);
        }
        bool rank3 = false;
        for (size_t a = 0; a < tight.size() && !rank3; ++a)
            for (size_t b = a + 1; b < tight.size() && !rank3; ++b)
                for (size_t c = b + 1; c < tight.size() && !rank3; ++c)
                    if (det(Mat::from_rows({tight[a], tight[b], tight[c]})) != 0) rank3 = true;
        if (rank3) verts.push_back(p);
    }
    vertices_ = dedupe_sorted(verts);

    std::sort(facets_.begin(), facets_.end(),
              [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
    for (Facet& f : facets_) {
        for (size_t v = 0; v < vertices_.size(); ++v) {
            int64_t val = 0;
            for (int t = 0; t < 3; ++t)
                val = checked_add(val, checked_mul(f.normal[t], vertices_[v][t]));
            if (val == -f.offset) f.vertex_ids.push_back(static_cast<int>(v));
        }
        if (f.vertex_ids.size() < 3) throw InvariantError("facet with fewer than 3 vertices");
    }

    // edges: vertex pairs lying on two or more facets
    std::map<std::pair<int, int>, std::vector<int>> pair_facets;
    for (size_t fi = 0; fi < facets_.size(); ++fi) {
        const auto& ids = facets_[fi].vertex_ids;
        for (size_t a = 0; a < ids.size(); ++a)
            for (size_t b = a + 1; b < ids.size(); ++b)
                pair_facets[{ids[a], ids[b]}].push_back(static_cast<int>(fi));
    }
    for (const auto& [pr, fl] : pair_facets) {
        if (fl.size() < 2) continue;
        Edge e;
        e.a = pr.first;
        e.b = pr.second;
        e.points = segment_lattice_points(vertices_[static_cast<size_t>(e.a)],
                                          vertices_[static_cast<size_t>(e.b)]);
        e.length = static_cast<int64_t>(e.points.size()) - 1;
        e.facet_ids = fl;
        edges_.push_back(e);
    }
}

void IntegralPolytope::enumerate_lattice_points() {
    std::array<int64_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (const Vec& v : vertices_)
        for (int i = 0; i < dim_; ++i) {
            lo[static_cast<size_t>(i)] = std::min(lo[static_cast<size_t>(i)], v[i]);
            hi[static_cast<size_t>(i)] = std::max(hi[static_cast<size_t>(i)], v[i]);
        }
    auto consider = [&](const Vec& p) {
        if (contains(p)) {
            lattice_points_.push_back(p);
            if (contains_strictly(p)) interior_points_.push_back(p);
        }
    };
    if (dim_ == 2) {
        for (int64_t x = lo[0]; x <= hi[0]; ++x)
            for (int64_t y = lo[1]; y <= hi[1]; ++y) consider(Vec(x, y, role_));
    } else {
        for (int64_t x = lo[0]; x <= hi[0]; ++x)
            for (int64_t y = lo[1]; y <= hi[1]; ++y)
                for (int64_t z = lo[2]; z <= hi[2]; ++z) consider(Vec(x, y, z, role_));
    }
}

void IntegralPolytope::classify_points() {
    // nothing cached beyond what classify() computes on demand
}

std::vector<Vec> IntegralPolytope::boundary_points() const {
    std::vector<Vec> out;
    for (const Vec& p : lattice_points_)
        if (!contains_strictly(p)) out.push_back(p);
    return out;
}

bool IntegralPolytope::contains(const Vec& p) const {
    if (p.dim() != dim_) throw DomainError("contains: dimension mismatch");
    for (const Facet& f : facets_) {
        int64_t val = 0;
        for (int t = 0; t < dim_; ++t) val = checked_add(val, checked_mul(f.normal[t], p[t]));
        if (val < -f.offset) return false;
    }
    return true;
}

bool IntegralPolytope::contains_strictly(const Vec& p) const {
    if (p.dim() != dim_) throw DomainError("contains: dimension mismatch");
    for (const Facet& f : facets_) {
        int64_t val = 0;
        for (int t = 0; t < dim_; ++t) val = checked_add(val, checked_mul(f.normal[t], p[t]));
        if (val <= -f.offset) return false;
    }
    return true;
}

bool IntegralPolytope::is_vertex(const Vec& p) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), p);
}

IntegralPolytope::PointInfo IntegralPolytope::classify(const Vec& p) const {
    if (!contains(p)) return {Position::Outside, -1};
    if (is_vertex(p)) {
        int id = static_cast<int>(std::lower_bound(vertices_.begin(), vertices_.end(), p) -
                                  vertices_.begin());
        return {Position::Vertex, id};
    }
    if (contains_strictly(p)) return {Position::Interior, -1};
    // boundary, not a vertex: on an edge or in a facet interior
    for (size_t ei = 0; ei < edges_.size(); ++ei) {
        const Edge& e = edges_[ei];
        if (std::find(e.points.begin(), e.points.end(), p) != e.points.end())
            return {Position::EdgeInterior, static_cast<int>(ei)};
    }
    for (size_t fi = 0; fi < facets_.size(); ++fi) {
        const Facet& f = facets_[fi];
        int64_t val = 0;
        for (int t = 0; t < dim_; ++t) val = checked_add(val, checked_mul(f.normal[t], p[t]));
        if (val == -f.offset) return {Position::FacetInterior, static_cast<int>(fi)};
    }
    throw InvariantError("boundary point on no face");
}

bool IntegralPolytope::is_reflexive() const {
    for (const Facet& f : facets_)
        if (f.offset != 1) return false;
    // verified claim: the origin is the unique interior lattice point
    Vec origin = dim_ == 2 ? Vec(0, 0, role_) : Vec(0, 0, 0, role_);
    if (interior_points_.size() != 1 || interior_points_[0] != origin)
        throw InvariantError("reflexive polytope without unique interior origin");
    return true;
}

IntegralPolytope IntegralPolytope::dual() const {
    if (!is_reflexive()) throw DomainError("dual: polytope is not reflexive");
    std::vector<Vec> verts;
    for (const Facet& f : facets_) verts.push_back(f.normal);
    return hull(verts);
}

IntegralPolytope IntegralPolytope::transform(const UnimodularMap& u) const {
    std::vector<Vec> verts;
    for (const Vec& v : vertices_) verts.push_back(u.apply(v));
    return hull(verts);
}

IntegralPolytope IntegralPolytope::with_role(Lattice r) const {
    if (r == role_) return *this;
    std::vector<Vec> verts;
    for (const Vec& v : vertices_) verts.push_back(v.with_role(r));
    return hull(verts);
}

bool IntegralPolytope::is_simple() const {
    for (const Vec& v : vertices_)
        if (!is_simple_at(v)) return false;
    return true;
}

bool IntegralPolytope::is_simple_at(const Vec& vertex) const {
    if (!is_vertex(vertex)) throw DomainError("is_simple_at: not a vertex");
    int id = classify(vertex).face_id;
    int count = 0;
    for (const Edge& e : edges_)
        if (e.a == id || e.b == id) ++count;
    return count == dim_;
}

int IntegralPolytope::find_edge(const Vec& a, const Vec& b) const {
    if (!is_vertex(a) || !is_vertex(b)) return -1;
    int ia = classify(a).face_id, ib = classify(b).face_id;
    if (ia > ib) std::swap(ia, ib);
    for (size_t ei = 0; ei < edges_.size(); ++ei)
        if (edges_[ei].a == ia && edges_[ei].b == ib) return static_cast<int>(ei);
    return -1;
}

int64_t IntegralPolytope::normalized_facet_area(int facet_id) const {
    if (dim_ != 3) throw DomainError("normalized_facet_area: 3d only");
    const Facet& f = facets_[static_cast<size_t>(facet_id)];
    int64_t on_facet = 0, on_boundary = 0;
    for (const Vec& p : lattice_points_) {
        int64_t val = 0;
        for (int t = 0; t < 3; ++t) val = checked_add(val, checked_mul(f.normal[t], p[t]));
        if (val != -f.offset) continue;
        ++on_facet;
        // boundary of the facet = on some edge of the polytope belonging to it
        for (int ei : edge_ids_of_facet(*this, facet_id)) {
            const Edge& e = edges_[static_cast<size_t>(ei)];
            if (std::find(e.points.begin(), e.points.end(), p) != e.points.end()) {
                ++on_boundary;
                break;
            }
        }
    }
    int64_t interior = on_facet - on_boundary;
    return 2 * interior + on_boundary - 2;  // Pick
}

std::vector<int> edge_ids_of_facet(const IntegralPolytope& p, int facet_id) {
    std::vector<int> out;
    for (size_t ei = 0; ei < p.edges().size(); ++ei) {
        const Edge& e = p.edges()[ei];
        if (std::find(e.facet_ids.begin(), e.facet_ids.end(), facet_id) != e.facet_ids.end())
            out.push_back(static_cast<int>(ei));
    }
    return out;
}

std::optional<UnimodularMap> find_unimodular_equivalence(const IntegralPolytope& p,
                                                         const IntegralPolytope& q,
                                                         int64_t coordinate_bound) {
    return find_unimodular_equivalence_if(p, q, [](const UnimodularMap&) { return true; },
                                          coordinate_bound);
}

std::optional<UnimodularMap> find_unimodular_equivalence_if(
    const IntegralPolytope& p, const IntegralPolytope& q,
    const std::function<bool(const UnimodularMap&)>& accept, int64_t coordinate_bound) {
    if (p.dim() != q.dim()) return std::nullopt;
    for (const IntegralPolytope* poly : {&p, &q})
        for (const Vec& v : poly->vertices())
            for (int i = 0; i < poly->dim(); ++i)
                if (v[i] > coordinate_bound || v[i] < -coordinate_bound)
                    throw DomainError("find_unimodular_equivalence: coordinate bound exceeded");
    // cheap invariants first
    if (p.vertices().size() != q.vertices().size()) return std::nullopt;
    if (p.lattice_points().size() != q.lattice_points().size()) return std::nullopt;
    if (p.facets().size() != q.facets().size()) return std::nullopt;

    int n = p.dim();
    // pick n linearly independent vertices of p
    const auto& pv = p.vertices();
    std::vector<int> base;
    auto independent = [&](const std::vector<int>& ids) {
        std::vector<Vec> rows;
        for (int i : ids) rows.push_back(pv[static_cast<size_t>(i)]);
        return det(Mat::from_rows(rows)) != 0;
    };
    if (n == 2) {
        for (size_t i = 0; i < pv.size() && base.empty(); ++i)
            for (size_t j = i + 1; j < pv.size() && base.empty(); ++j)
                if (independent({static_cast<int>(i), static_cast<int>(j)}))
                    base = {static_cast<int>(i), static_cast<int>(j)};
    } else {
        for (size_t i = 0; i < pv.size() && base.empty(); ++i)
            for (size_t j = i + 1; j < pv.size() && base.empty(); ++j)
                for (size_t k = j + 1; k < pv.size() && base.empty(); ++k)
                    if (independent({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)}))
                        base = {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)};
    }
    if (base.empty()) throw InvariantError("polytope vertices do not span");

    std::vector<Vec> bcols;
    for (int i : base) bcols.push_back(pv[static_cast<size_t>(i)]);
    Mat bmat = Mat::from_columns(bcols);
    int64_t bdet = det(bmat);
    // adjugate of bmat
    Mat adj(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat minor(n - 1, n - 1);
            int rr = 0;
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                int cc = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = bmat(r, c);
                }
                ++rr;
            }
            int64_t cof = det(minor);
            if ((i + j) % 2) cof = -cof;
            adj(j, i) = cof;
        }

    const auto& qv = q.vertices();
    int m = static_cast<int>(qv.size());
    std::vector<int> pick(static_cast<size_t>(n), 0);
    std::vector<Vec> sorted_q = qv;  // already canonical (sorted)

    // enumerate candidate images in lexicographic order over index tuples
    std::vector<int> tuple(static_cast<size_t>(n), 0);
    while (true) {
        bool distinct = true;
        for (int i = 0; i < n && distinct; ++i)
            for (int j = i + 1; j < n && distinct; ++j)
                if (tuple[static_cast<size_t>(i)] == tuple[static_cast<size_t>(j)]) distinct = false;
        if (distinct) {
            std::vector<Vec> wcols;
            for (int i : tuple) wcols.push_back(qv[static_cast<size_t>(i)]);
            Mat wmat = Mat::from_columns(wcols);
            Mat num = wmat * adj;  // candidate * bdet
            bool integral = true;
            for (int i = 0; i < n && integral; ++i)
                for (int j = 0; j < n && integral; ++j)
                    if (num(i, j) % bdet != 0) integral = false;
            if (integral) {
                Mat cand(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) cand(i, j) = num(i, j) / bdet;
                int64_t cd = det(cand);
                if (cd == 1 || cd == -1) {
                    UnimodularMap u{cand};
                    std::vector<Vec> image;
                    for (const Vec& v : pv) image.push_back(u.apply(v));
                    std::sort(image.begin(), image.end());
                    if (image == sorted_q && accept(u)) return u;
                }
            }
        }
        // next tuple
        int pos = n - 1;
        while (pos >= 0 && tuple[static_cast<size_t>(pos)] == m - 1) {
            tuple[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++tuple[static_cast<size_t>(pos)];
    }
    return std::nullopt;
}

namespace {

std::vector<int64_t> canonical_key(const IntegralPolytope& p) {
    std::vector<int64_t> key;
    for (const Vec& v : p.vertices())
        for (int i = 0; i < p.dim(); ++i) key.push_back(v[i]);
    return key;
}

}  // namespace

std::vector<IntegralPolytope> enumerate_planar_reflexive(int64_t bound) {
    if (bound < 1) throw DomainError("enumerate_planar_reflexive: bound must be >= 1");

    // candidate vertices: primitive points in the box (every boundary lattice
    // point of a reflexive polytope is primitive)
    std::vector<Vec> cand;
    for (int64_t x = -bound; x <= bound; ++x)
        for (int64_t y = -bound; y <= bound; ++y) {
            if (x == 0 && y == 0) continue;
            Vec v(x, y, Lattice::N);
            if (is_primitive(v)) cand.push_back(v);
        }
    std::sort(cand.begin(), cand.end());

    // grow hulls by adding candidate vertices in lexicographic order; every
    // subpolytope of a reflexive polytope has at most one interior lattice point
    auto admissible = [&](const IntegralPolytope& p) { return p.interior_points().size() <= 1; };

    std::set<std::vector<int64_t>> visited;
    std::vector<IntegralPolytope> queue;
    std::vector<IntegralPolytope> reflexive_found;

    auto push_state = [&](const IntegralPolytope& p) {
        auto key = canonical_key(p);
        if (visited.count(key)) return;
        visited.insert(key);
        queue.push_back(p);
    };

    for (size_t i = 0; i < cand.size(); ++i)
        for (size_t j = i + 1; j < cand.size(); ++j)
            for (size_t k = j + 1; k < cand.size(); ++k) {
                if (cross2(cand[j] - cand[i], cand[k] - cand[i]) == 0) continue;
                IntegralPolytope t = IntegralPolytope::hull({cand[i], cand[j], cand[k]});
                if (admissible(t)) push_state(t);
            }

    for (size_t head = 0; head < queue.size(); ++head) {
        IntegralPolytope p = queue[head];
        if (p.facets().size() > 0) {
            bool refl = true;
            for (const Facet& f : p.facets())
                if (f.offset != 1) {
                    refl = false;
                    break;
                }
            if (refl) reflexive_found.push_back(p);
        }
        const Vec lexmax = p.vertices().back();
        for (const Vec& w : cand) {
            if (!(lexmax < w)) continue;
            if (p.contains(w)) continue;
            std::vector<Vec> pts = p.vertices();
            pts.push_back(w);
            IntegralPolytope grown = IntegralPolytope::hull(pts);
            if (admissible(grown)) push_state(grown);
        }
    }

    // dedupe the reflexive ones up to unimodular equivalence, keeping the
    // lexicographically least representative of each class
    struct ClassRep {
        IntegralPolytope rep;
        std::vector<int64_t> key;
    };
    std::vector<ClassRep> classes;
    for (const IntegralPolytope& p : reflexive_found) {
        bool matched = false;
        for (ClassRep& c : classes) {
            if (find_unimodular_equivalence(p, c.rep).has_value()) {
                auto key = canonical_key(p);
                if (key < c.key) {
                    c.rep = p;
                    c.key = key;
                }
                matched = true;
                break;
            }
        }
        if (!matched) classes.push_back({p, canonical_key(p)});
    }
    std::sort(classes.begin(), classes.end(), [](const ClassRep& a, const ClassRep& b) {
        if (a.rep.lattice_points().size() != b.rep.lattice_points().size())
            return a.rep.lattice_points().size() < b.rep.lattice_points().size();
        if (a.rep.vertices().size() != b.rep.vertices().size())
            return a.rep.vertices().size() < b.rep.vertices().size();
        return a.key < b.key;
    });
    std::vector<IntegralPolytope> out;
    for (ClassRep& c : classes) out.push_back(c.rep);
    return out;
}

}  // namespace polyfib
