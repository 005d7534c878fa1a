#include <doctest.h>

#include "polyfib/symplectic_cut.hpp"
#include "reference_data.hpp"

using namespace polyfib;
using namespace testdata;

namespace {

const FibrationData* fibration_of_class(const std::vector<FibrationData>& fs, int cls) {
    for (const FibrationData& f : fs)
        if (f.fiber_class == cls) return &f;
    return nullptr;
}

}  // namespace

TEST_CASE("valid cuts on the four reference families") {
    struct Row {
        std::vector<Vec> vertices;
        int cls;
    };
    for (const Row& row : {Row{prism_3737(), 15}, Row{diamond_113(), 15}, Row{diamond_4(), 1},
                           Row{semistable_88(), 15}}) {
        IntegralPolytope p = hull(row.vertices);
        auto fs = find_fibrations(p);
        const FibrationData* f = fibration_of_class(fs, row.cls);
        REQUIRE(f != nullptr);
        REQUIRE(f->c1);
        REQUIRE(f->c2);
        CutPartition cp = cut(*f);
        CHECK(cp.simple_partition);
        CHECK(cp.balanced);
        CHECK(cp.mildly_singular);

        // lattice point partition identity
        size_t slice = 0;
        for (const Vec& m : cp.delta.lattice_points())
            if (m[2] == 0) ++slice;
        CHECK(cp.delta.lattice_points().size() + slice ==
              cp.piece1.lattice_points().size() + cp.piece2.lattice_points().size());

        // rational elliptic signature on both pieces
        CHECK(rational_elliptic_check(cp.piece1).ok);
        CHECK(rational_elliptic_check(cp.piece2).ok);

        // new vertices of the pieces are slice vertices that are not delta vertices
        for (const Vec& v : cp.new_vertices) {
            CHECK(cp.piece1.is_vertex(v));
            CHECK(cp.piece2.is_vertex(v));
            CHECK_FALSE(cp.delta.is_vertex(v));
        }
    }
}

TEST_CASE("the cut is rejected when the projection condition fails") {
    IntegralPolytope p = hull(tall_4318());
    auto fs = find_fibrations(p);
    const FibrationData* f9 = fibration_of_class(fs, 9);
    REQUIRE(f9 != nullptr);
    CHECK_FALSE(f9->c2);
    CHECK_THROWS_AS(cut(*f9), DomainError);
}

TEST_CASE("piece ray sets follow the half-space rule") {
    IntegralPolytope p = hull(diamond_4());
    auto fs = find_fibrations(p);
    const FibrationData* f = fibration_of_class(fs, 1);
    REQUIRE(f != nullptr);
    CutPartition cp = cut(*f);
    DegenerationPieces d = degeneration_pieces(*f, cp);

    auto adapted_expected = [&](int sign) {
        std::set<Vec> rays;
        for (const Vec& v : f->parent.vertices()) {
            Vec w = cp.adapted.apply(v);
            if (sign > 0 ? w[2] >= 0 : w[2] <= 0) rays.insert(w);
        }
        rays.insert(n3(0, 0, sign));
        return rays;
    };
    CHECK(std::set<Vec>(d.rays1.begin(), d.rays1.end()) == adapted_expected(+1));
    CHECK(std::set<Vec>(d.rays2.begin(), d.rays2.end()) == adapted_expected(-1));
    CHECK(d.rays1.size() == 4);  // the added ray coincides with an existing one
    CHECK(d.rays2.size() == 4);

    SUBCASE("the double locus is the fiber dual and monomials are conserved") {
        CHECK(d.double_locus.lattice_points().size() == d.shared_monomials.size());
        CHECK(d.piece1_monomials.size() + d.piece2_monomials.size() - d.shared_monomials.size() ==
              cp.delta.lattice_points().size());
        // the shared set is the plane-cubic monomial list: ten points
        CHECK(d.shared_monomials.size() == 10);
    }
}

TEST_CASE("hypersurface degeneration splits the monomials") {
    IntegralPolytope p = hull(prism_3737());
    auto fs = find_fibrations(p);
    const FibrationData* f = fibration_of_class(fs, 15);
    REQUIRE(f != nullptr);
    CutPartition cp = cut(*f);
    HypersurfaceDegeneration h = hypersurface_degeneration(*f, cp);
    std::set<Vec> p1, p2, sh(h.shared.begin(), h.shared.end());
    for (const PieceMonomial& m : h.piece1) p1.insert(m.source_point);
    for (const PieceMonomial& m : h.piece2) p2.insert(m.source_point);
    // pieces intersect exactly in the shared set
    std::set<Vec> inter;
    for (const Vec& v : p1)
        if (p2.count(v)) inter.insert(v);
    CHECK(inter == sh);
    // union covers the whole dual
    CHECK(p1.size() + p2.size() - sh.size() == cp.delta.lattice_points().size());
    // the shared set is the weighted-triangle curve: seven monomials
    CHECK(sh.size() == 7);
}

TEST_CASE("a section edge always crosses into both halves") {
    // the marked vertex sits on the fiber plane and its edge leaves it on both
    // sides, so the degeneration cuts the section into one piece per component
    for (const auto& in : {prism_3737(), semistable_88(), tall_4318(), simplex_1()}) {
        IntegralPolytope p = hull(in);
        for (const FibrationData& f : find_fibrations(p)) {
            for (const SectionAtInfinity& sec : f.sections) {
                CHECK(pairing(f.m_phi, sec.v_z) == 0);
                const Edge& e = p.edges()[static_cast<size_t>(sec.edge_id)];
                int64_t ha = pairing(f.m_phi, p.vertices()[static_cast<size_t>(e.a)]);
                int64_t hb = pairing(f.m_phi, p.vertices()[static_cast<size_t>(e.b)]);
                CHECK(((ha > 0 && hb < 0) || (ha < 0 && hb > 0)));
            }
        }
    }
}

TEST_CASE("balanced and mildly-singular checkers reject fabricated data") {
    IntegralPolytope p = hull(diamond_4());
    auto fs = find_fibrations(p);
    const FibrationData* f = fibration_of_class(fs, 1);
    REQUIRE(f != nullptr);
    CutPartition cp = cut(*f);

    SUBCASE("a facet-interior new vertex is unbalanced") {
        CutPartition bad = cp;
        // (1,-1,1) lies in the interior of a facet of the prism dual
        Vec facet_pt = m3(0, 0, 1);
        REQUIRE(bad.delta.classify(facet_pt).pos == IntegralPolytope::Position::FacetInterior);
        bad.new_vertices.push_back(facet_pt);
        CHECK_FALSE(check_balanced(bad));
    }
    SUBCASE("a sublattice edge star is not mildly singular") {
        CutPartition bad = cp;
        // the slice corner at the origin is smooth, but the piece's edge
        // directions there span an index-two sublattice
        bad.slice2d = IntegralPolytope::hull(
            {Vec(0, 0, Lattice::M), Vec(1, 0, Lattice::M), Vec(0, 1, Lattice::M)});
        std::vector<Vec> verts = {m3(0, 0, 0), m3(1, 0, 0), m3(0, 1, 0), m3(1, 1, 2)};
        bad.piece1 = IntegralPolytope::hull(verts);
        bad.piece2 = bad.piece1;
        bad.new_vertices = {m3(0, 0, 0)};
        CHECK_FALSE(check_mildly_singular(bad));
    }
}
