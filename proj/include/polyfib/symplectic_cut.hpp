#ifndef POLYFIB_SYMPLECTIC_CUT_HPP
#define POLYFIB_SYMPLECTIC_CUT_HPP

#include "polyfib/fibration.hpp"

namespace polyfib {

/// The two sub-polytopes produced by slicing the moment polytope along the
/// fiber-dual plane, in the adapted dual coordinates.
struct CutPartition {
    UnimodularMap adapted{Mat::identity(3)};  // N-side basis (fiber plane -> {z3 = 0})
    IntegralPolytope delta;                   // Δ in the adapted dual coordinates
    IntegralPolytope slice2d;                 // Δ^φ, dual of the fiber polytope
    std::vector<Vec> slice_vertices;          // 3d, on {z3* = 0}
    IntegralPolytope piece1, piece2;          // Δ ∩ {z3* >= 0}, Δ ∩ {z3* <= 0}
    std::vector<Vec> new_vertices;            // slice vertices that are not Δ vertices
    bool delta_simple = false;
    bool simple_partition = false;
    bool balanced = false;
    bool mildly_singular = false;
};

/// Symplectic cut along the fiber-dual plane. Errors when conditions 1/2 are
/// not established; Δ-simplicity is evaluated and reported, and the semistable
/// partition requirements are checked on the partition itself.
CutPartition cut(const FibrationData& f);

/// Each piece is a simple polytope and every l-face of a piece inside a k-face
/// of Δ lies in exactly k - l + 1 pieces.
bool check_simple_partition(const CutPartition& p);

/// Every new vertex lies in the relative interior of an edge of Δ.
bool check_balanced(const CutPartition& p);

/// At each new vertex of each piece the primitive edge directions span the lattice.
bool check_mildly_singular(const CutPartition& p);

struct PieceMonomial {
    Vec source_point;                 // lattice point of the piece
    std::vector<int64_t> exponents;   // against the piece's rays
};

struct DegenerationPieces {
    std::vector<Vec> rays1, rays2;    // adapted N coordinates
    IntegralPolytope double_locus;    // the fiber-dual polytope
    std::vector<PieceMonomial> piece1_monomials, piece2_monomials;
    std::vector<Vec> shared_monomials;  // lattice points of the slice, 3d
};

/// Ray sets of the two degeneration pieces (rays of the parent on one side of
/// the fiber plane plus the added axis ray) and the induced hypersurface parts.
/// Errors when the partition is not valid.
DegenerationPieces degeneration_pieces(const FibrationData& f, const CutPartition& p);

struct RationalElliptic {
    bool ok = false;
    std::string detail;
};

/// Verifies that the piece is the polytope of (sum of all ray divisors) minus
/// the added-ray divisor on its fan: every facet at lattice distance 1 except
/// the slice facet, which passes through the origin.
RationalElliptic rational_elliptic_check(const IntegralPolytope& piece);

struct HypersurfaceDegeneration {
    std::vector<PieceMonomial> piece1, piece2;
    std::vector<Vec> shared;  // lattice points of the slice
};

HypersurfaceDegeneration hypersurface_degeneration(const FibrationData& f, const CutPartition& p);

}  // namespace polyfib

#endif
