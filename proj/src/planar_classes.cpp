#include "polyfib/planar_classes.hpp"

#include <mutex>

namespace polyfib {

namespace {

struct RawClass {
    int index;
    int dual_index;
    std::vector<std::pair<int64_t, int64_t>> vertices;  // canonical order
    std::vector<int> variable_order;
};

// Pinned by one run of enumerate_planar_reflexive(3): lexicographically least
// representative per class; variable order fixed by matching the reference
// monomial lists of the 16 toric Del Pezzo elliptic-curve equations.
const std::vector<RawClass>& raw_table() {
    static const std::vector<RawClass> t = {
        {1, 6, {{-3, -2}, {1, 1}, {2, 1}}, {0, 1, 2}},
        {2, 7, {{-3, -2}, {-2, -1}, {2, 1}, {3, 2}}, {0, 1, 3, 2}},
        {3, 8, {{-3, -2}, {-2, -1}, {-1, -1}, {3, 2}}, {1, 0, 2, 3}},
        {4, 9, {{-3, -2}, {-1, 0}, {2, 1}}, {0, 1, 2}},
        {5, 10, {{-3, -2}, {-2, -1}, {-1, -1}, {1, 1}, {2, 1}}, {3, 1, 0, 2, 4}},
        {6, 1, {{-3, -2}, {0, 1}, {3, 1}}, {0, 1, 2}},
        {7, 2, {{-3, -2}, {-1, 0}, {1, 0}, {3, 2}}, {0, 1, 3, 2}},
        {8, 3, {{-3, -2}, {-1, 0}, {1, 1}, {3, 1}}, {0, 3, 2, 1}},
        {9, 4, {{-3, -2}, {1, 0}, {1, 2}}, {0, 2, 1}},
        {10, 5, {{-3, -2}, {-2, -1}, {1, 0}, {1, 1}, {3, 2}}, {1, 0, 2, 4, 3}},
        {11, 16, {{-3, -2}, {-2, -1}, {1, 0}, {1, 1}}, {2, 0, 1, 3}},
        {12, 12, {{-3, -2}, {-2, -1}, {1, 0}, {3, 2}}, {3, 2, 0, 1}},
        {13, 13, {{-3, -2}, {-2, -1}, {1, 0}, {1, 1}, {2, 1}}, {1, 0, 2, 4, 3}},
        {14, 14, {{-3, -2}, {-2, -1}, {-1, -1}, {1, 1}, {2, 1}, {3, 2}}, {0, 1, 3, 5, 4, 2}},
        {15, 15, {{-3, -2}, {-1, 0}, {3, 1}}, {2, 1, 0}},
        {16, 11, {{-3, -2}, {-2, -1}, {1, 1}, {3, 1}}, {1, 0, 3, 2}},
    };
    return t;
}

}  // namespace

std::string fiber_variable_name(size_t k) {
    static const char* base[] = {"x", "y", "z"};
    if (k < 3) return base[k];
    return "w" + std::to_string(k - 2);
}

std::vector<Vec> PlanarClass::rays_in_variable_order() const {
    std::vector<Vec> out;
    for (int id : variable_order) out.push_back(reference.vertices()[static_cast<size_t>(id)]);
    return out;
}

HypersurfaceEquation PlanarClass::reference_equation() const {
    std::vector<CoxRay> rays;
    std::vector<Vec> ordered = rays_in_variable_order();
    for (size_t k = 0; k < ordered.size(); ++k) rays.push_back({ordered[k], fiber_variable_name(k)});
    return anticanonical_monomials(rays, reference.dual());
}

const std::vector<PlanarClass>& planar_classes() {
    static std::vector<PlanarClass> table;
    static std::once_flag once;
    std::call_once(once, [] {
        for (const RawClass& r : raw_table()) {
            std::vector<Vec> verts;
            for (auto [x, y] : r.vertices) verts.emplace_back(x, y, Lattice::N);
            PlanarClass c{r.index, r.dual_index, IntegralPolytope::hull(verts), r.variable_order};
            if (c.reference.vertices() != verts)
                throw InvariantError("planar class table row is not canonical");
            table.push_back(std::move(c));
        }
    });
    return table;
}

const PlanarClass& planar_class(int index) {
    for (const PlanarClass& c : planar_classes())
        if (c.index == index) return c;
    throw DomainError("planar class index out of range");
}

int involution_d(int index) { return planar_class(index).dual_index; }

PlanarClassification classify_planar(const IntegralPolytope& p) {
    if (p.dim() != 2) throw DomainError("classify_planar: input must be planar");
    if (!p.is_reflexive()) throw DomainError("classify_planar: input not reflexive");
    IntegralPolytope probe = p.role() == Lattice::N ? p : p.with_role(Lattice::N);
    for (const PlanarClass& c : planar_classes()) {
        auto u = find_unimodular_equivalence(probe, c.reference);
        if (u.has_value()) return {c.index, *u};
    }
    throw InvariantError("planar reflexive polytope matching no class");
}

}  // namespace polyfib
