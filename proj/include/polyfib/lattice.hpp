#ifndef POLYFIB_LATTICE_HPP
#define POLYFIB_LATTICE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyfib {

// Thrown when 64-bit integer arithmetic would wrap.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on violated preconditions (dimension mismatch, zero vector, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal consistency check fails; maps to exit code 2 in the CLI.
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

int64_t gcd64(int64_t a, int64_t b);

// Which of the two dual lattices a vector lives in.
enum class Lattice : uint8_t { N, M };

inline Lattice dual_lattice(Lattice l) { return l == Lattice::N ? Lattice::M : Lattice::N; }

/// Lattice point of N or M, dimension 2 or 3, with checked arithmetic.
class Vec {
  public:
    Vec() : dim_(0), role_(Lattice::N), c_{0, 0, 0} {}
    Vec(int64_t x, int64_t y, Lattice role) : dim_(2), role_(role), c_{x, y, 0} {}
    Vec(int64_t x, int64_t y, int64_t z, Lattice role) : dim_(3), role_(role), c_{x, y, z} {}

    int dim() const { return dim_; }
    Lattice role() const { return role_; }
    int64_t operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    int64_t& operator[](int i) { return c_[static_cast<size_t>(i)]; }

    bool is_zero() const;
    Vec operator+(const Vec& o) const;
    Vec operator-(const Vec& o) const;
    Vec operator-() const;
    Vec scaled(int64_t k) const;
    Vec with_role(Lattice role) const;

    bool operator==(const Vec& o) const { return dim_ == o.dim_ && role_ == o.role_ && c_ == o.c_; }
    bool operator!=(const Vec& o) const { return !(*this == o); }
    // Lexicographic on coordinates; role and dim first so mixed containers sort sanely.
    bool operator<(const Vec& o) const;

    std::string str() const;

  private:
    int dim_;
    Lattice role_;
    std::array<int64_t, 3> c_;
};

/// <m, v> with m in M and v in N (either order accepted, roles must be dual).
int64_t pairing(const Vec& m, const Vec& v);

/// gcd of coordinates is 1. Errors on the zero vector.
bool is_primitive(const Vec& v);

/// Content (gcd of coordinates) of a nonzero vector.
int64_t content(const Vec& v);

/// v divided by its content.
Vec primitive_part(const Vec& v);

/// Dense row-major integer matrix, sized for the small systems this library needs.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols), 0) {}
    static Mat identity(int n);
    static Mat from_columns(const std::vector<Vec>& cols);
    static Mat from_rows(const std::vector<Vec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int64_t operator()(int i, int j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }
    int64_t& operator()(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }

    Mat operator*(const Mat& o) const;
    Mat transposed() const;
    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    /// Applies the matrix to a vector (dim must equal cols). Keeps the vector's role.
    Vec apply(const Vec& v) const;

    std::string str() const;

  private:
    int rows_, cols_;
    std::vector<int64_t> a_;
};

/// Determinant by exact cofactor expansion; supports n <= 4.
int64_t det(const Mat& a);

struct SmithForm {
    Mat d;  // diagonal, d_1 | d_2 | ..., all >= 0
    Mat u;  // |det| = 1
    Mat v;  // |det| = 1, u * a * v == d
};

/// Smith normal form with unimodular transforms, verified exactly.
SmithForm smith_normal_form(const Mat& a);

/// Elementary divisors (the nonzero diagonal of the Smith form).
std::vector<int64_t> elementary_divisors(const Mat& a);

/// True iff the integer span of the vectors is the full ambient lattice Z^n.
bool spans_lattice(const std::vector<Vec>& vectors);

/// Basis of the Z-span of the given vectors (row HNF, nonzero rows), as vectors
/// with the same role. Deterministic.
std::vector<Vec> span_basis(const std::vector<Vec>& vectors);

/// Coordinates of a 3d point in the rank-2 basis (u1, u2).
/// Errors when the point lies outside the integer span.
Vec plane_coordinates(const Vec& u1, const Vec& u2, const Vec& p);

/// Lattice automorphism of Z^n, det = ±1. Acts on column vectors.
class UnimodularMap {
  public:
    explicit UnimodularMap(const Mat& m);
    static UnimodularMap identity(int n);

    const Mat& matrix() const { return m_; }
    int64_t determinant() const { return det_; }
    int dim() const { return m_.rows(); }

    Vec apply(const Vec& v) const { return m_.apply(v); }
    UnimodularMap compose(const UnimodularMap& inner) const;  // this ∘ inner
    UnimodularMap inverse() const;
    /// Transform for the dual lattice: pairing(dual_map(m), apply(v)) == pairing(m, v).
    UnimodularMap dual_map() const;

    bool operator==(const UnimodularMap& o) const { return m_ == o.m_; }

  private:
    Mat m_;
    int64_t det_;
};

}  // namespace polyfib

#endif
