#ifndef POLYFIB_POLYTOPE_HPP
#define POLYFIB_POLYTOPE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "polyfib/lattice.hpp"

namespace polyfib {

/// Facet inequality <normal, x> >= -offset; normal is primitive and lives in the
/// dual lattice. vertex_ids index the polytope's canonical vertex list.
struct Facet {
    Vec normal;
    int64_t offset;
    std::vector<int> vertex_ids;
};

/// Closed 1-face between vertices a and b (canonical vertex indices, a < b).
/// points holds every lattice point on the segment in order from a to b.
struct Edge {
    int a, b;
    std::vector<Vec> points;
    int64_t length;  // |points| - 1
    std::vector<int> facet_ids;
};

/// Full-dimensional lattice polytope (dim 2 or 3) with eagerly computed facets,
/// lattice points and face data. Immutable after construction.
class IntegralPolytope {
  public:
    /// Convex hull with canonicalization: extreme points only, sorted lex.
    /// Errors (DomainError) if the points do not affinely span the ambient space.
    static IntegralPolytope hull(const std::vector<Vec>& points);

    int dim() const { return dim_; }
    Lattice role() const { return role_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vec>& lattice_points() const { return lattice_points_; }
    const std::vector<Vec>& interior_points() const { return interior_points_; }
    std::vector<Vec> boundary_points() const;

    bool contains(const Vec& p) const;
    bool contains_strictly(const Vec& p) const;
    bool is_vertex(const Vec& p) const;

    enum class Position { Interior, Vertex, EdgeInterior, FacetInterior, Outside };
    struct PointInfo {
        Position pos;
        int face_id;  // vertex index / edge index / facet index, -1 otherwise
    };
    PointInfo classify(const Vec& p) const;

    /// All facet offsets equal 1. On success the origin is additionally verified
    /// to be the unique interior lattice point (InvariantError otherwise).
    bool is_reflexive() const;

    /// Polar dual of a reflexive polytope (vertices = facet normals).
    IntegralPolytope dual() const;

    /// Image under a lattice automorphism (role preserved).
    IntegralPolytope transform(const UnimodularMap& u) const;

    /// Same polytope with vertices re-tagged to the given lattice role.
    IntegralPolytope with_role(Lattice r) const;

    bool is_simple() const;
    bool is_simple_at(const Vec& vertex) const;

    /// Lattice length of the edge with the given index.
    int64_t edge_length(int edge_id) const { return edges_[static_cast<size_t>(edge_id)].length; }
    /// Edge index for a vertex pair, or -1.
    int find_edge(const Vec& a, const Vec& b) const;

    /// Normalized area of a facet computed from lattice point counts
    /// (2*interior + boundary - 2), independent of any triangulation.
    int64_t normalized_facet_area(int facet_id) const;

    bool operator==(const IntegralPolytope& o) const {
        return dim_ == o.dim_ && role_ == o.role_ && vertices_ == o.vertices_;
    }

    /// Empty value for deferred initialization; most members are meaningless
    /// until assigned from hull().
    IntegralPolytope() = default;

  private:
    void build_2d(const std::vector<Vec>& pts);
    void build_3d(const std::vector<Vec>& pts);
    void enumerate_lattice_points();
    void classify_points();

    int dim_ = 0;
    Lattice role_ = Lattice::N;
    std::vector<Vec> vertices_;
    std::vector<Facet> facets_;
    std::vector<Edge> edges_;
    std::vector<Vec> lattice_points_;
    std::vector<Vec> interior_points_;
};

/// Indices of the edges bounding a facet.
std::vector<int> edge_ids_of_facet(const IntegralPolytope& p, int facet_id);

/// Lattice length of the segment [a, b] (number of lattice points minus one).
int64_t segment_lattice_length(const Vec& a, const Vec& b);

/// All lattice points on the closed segment [a, b], endpoints included.
std::vector<Vec> segment_lattice_points(const Vec& a, const Vec& b);

/// Searches for a lattice automorphism carrying the vertex set of p onto the
/// vertex set of q. Deterministic: first match in a fixed enumeration order.
/// Errors if any vertex coordinate exceeds coordinate_bound.
std::optional<UnimodularMap> find_unimodular_equivalence(const IntegralPolytope& p,
                                                         const IntegralPolytope& q,
                                                         int64_t coordinate_bound = 64);

/// Same search restricted to maps satisfying an extra predicate.
std::optional<UnimodularMap> find_unimodular_equivalence_if(
    const IntegralPolytope& p, const IntegralPolytope& q,
    const std::function<bool(const UnimodularMap&)>& accept, int64_t coordinate_bound = 64);

/// Brute-force enumeration of all planar reflexive polytopes with vertex
/// coordinates in [-bound, bound], up to unimodular equivalence. Each class is
/// represented by its lexicographically least member. Deterministic order.
std::vector<IntegralPolytope> enumerate_planar_reflexive(int64_t bound);

}  // namespace polyfib

#endif
