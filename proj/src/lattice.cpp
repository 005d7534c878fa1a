#include "polyfib/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace polyfib {

int64_t gcd64(int64_t a, int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool Vec::is_zero() const {
    for (int i = 0; i < dim_; ++i)
        if (c_[static_cast<size_t>(i)] != 0) return false;
    return true;
}

static void require_same_shape(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
    if (a.role() != b.role()) throw DomainError("lattice role mismatch");
}

Vec Vec::operator+(const Vec& o) const {
    require_same_shape(*this, o);
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r[i] = checked_add(r[i], o[i]);
    return r;
}

Vec Vec::operator-(const Vec& o) const {
    require_same_shape(*this, o);
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r[i] = checked_sub(r[i], o[i]);
    return r;
}

Vec Vec::operator-() const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r[i] = checked_sub(0, r[i]);
    return r;
}

Vec Vec::scaled(int64_t k) const {
    Vec r = *this;
    for (int i = 0; i < dim_; ++i) r[i] = checked_mul(r[i], k);
    return r;
}

Vec Vec::with_role(Lattice role) const {
    Vec r = *this;
    r.role_ = role;
    return r;
}

bool Vec::operator<(const Vec& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    if (role_ != o.role_) return role_ < o.role_;
    for (int i = 0; i < dim_; ++i)
        if (c_[static_cast<size_t>(i)] != o.c_[static_cast<size_t>(i)])
            return c_[static_cast<size_t>(i)] < o.c_[static_cast<size_t>(i)];
    return false;
}

std::string Vec::str() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < dim_; ++i) {
        if (i) os << ',';
        os << (*this)[i];
    }
    os << ')';
    return os.str();
}

int64_t pairing(const Vec& m, const Vec& v) {
    if (m.dim() != v.dim()) throw DomainError("pairing: dimension mismatch");
    if (m.role() == v.role()) throw DomainError("pairing: both vectors in the same lattice");
    int64_t s = 0;
    for (int i = 0; i < m.dim(); ++i) s = checked_add(s, checked_mul(m[i], v[i]));
    return s;
}

int64_t content(const Vec& v) {
    if (v.is_zero()) throw DomainError("content of zero vector");
    int64_t g = 0;
    for (int i = 0; i < v.dim(); ++i) g = gcd64(g, v[i]);
    return g;
}

bool is_primitive(const Vec& v) { return content(v) == 1; }

Vec primitive_part(const Vec& v) {
    int64_t g = content(v);
    Vec r = v;
    for (int i = 0; i < v.dim(); ++i) r[i] = v[i] / g;
    return r;
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols) {
    if (cols.empty()) throw DomainError("from_columns: empty input");
    int n = cols[0].dim();
    Mat m(n, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].dim() != n) throw DomainError("from_columns: mixed dimensions");
        for (int i = 0; i < n; ++i) m(i, static_cast<int>(j)) = cols[j][i];
    }
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) throw DomainError("from_rows: empty input");
    int n = rows[0].dim();
    Mat m(static_cast<int>(rows.size()), n);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].dim() != n) throw DomainError("from_rows: mixed dimensions");
        for (int j = 0; j < n; ++j) m(static_cast<int>(i), j) = rows[i][j];
    }
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix product shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            int64_t s = 0;
            for (int k = 0; k < cols_; ++k) s = checked_add(s, checked_mul((*this)(i, k), o(k, j)));
            r(i, j) = s;
        }
    return r;
}

Mat Mat::transposed() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Vec Mat::apply(const Vec& v) const {
    if (v.dim() != cols_ || rows_ != cols_) throw DomainError("apply: shape mismatch");
    Vec r = v;
    for (int i = 0; i < rows_; ++i) {
        int64_t s = 0;
        for (int j = 0; j < cols_; ++j) s = checked_add(s, checked_mul((*this)(i, j), v[j]));
        r[i] = s;
    }
    return r;
}

std::string Mat::str() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << (*this)(i, j);
        }
    }
    os << ']';
    return os.str();
}

int64_t det(const Mat& a) {
    if (a.rows() != a.cols()) throw DomainError("det: not square");
    int n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a(0, 0);
    if (n == 2)
        return checked_sub(checked_mul(a(0, 0), a(1, 1)), checked_mul(a(0, 1), a(1, 0)));
    if (n > 4) throw DomainError("det: supported up to 4x4");
    int64_t s = 0;
    int sign = 1;
    for (int j = 0; j < n; ++j) {
        Mat minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                minor(i - 1, cc++) = a(i, k);
            }
        }
        int64_t term = checked_mul(a(0, j), det(minor));
        s = sign > 0 ? checked_add(s, term) : checked_sub(s, term);
        sign = -sign;
    }
    return s;
}

namespace {

void swap_rows(Mat& m, int i, int j) {
    for (int k = 0; k < m.cols(); ++k) std::swap(m(i, k), m(j, k));
}
void swap_cols(Mat& m, int i, int j) {
    for (int k = 0; k < m.rows(); ++k) std::swap(m(k, i), m(k, j));
}
void negate_row(Mat& m, int i) {
    for (int k = 0; k < m.cols(); ++k) m(i, k) = checked_sub(0, m(i, k));
}
// row i -= q * row j
void row_axpy(Mat& m, int i, int j, int64_t q) {
    for (int k = 0; k < m.cols(); ++k) m(i, k) = checked_sub(m(i, k), checked_mul(q, m(j, k)));
}
void col_axpy(Mat& m, int i, int j, int64_t q) {
    for (int k = 0; k < m.rows(); ++k) m(k, i) = checked_sub(m(k, i), checked_mul(q, m(k, j)));
}

}  // namespace

SmithForm smith_normal_form(const Mat& a) {
    int rows = a.rows(), cols = a.cols();
    Mat d = a;
    Mat u = Mat::identity(rows);
    Mat v = Mat::identity(cols);

    int t = 0;
    int limit = std::min(rows, cols);
    while (t < limit) {
        // find a pivot: nonzero entry of least absolute value in the trailing block
        int pi = -1, pj = -1;
        int64_t best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                int64_t x = d(i, j) < 0 ? -d(i, j) : d(i, j);
                if (x != 0 && (pi < 0 || x < best)) {
                    best = x;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // trailing block is zero
        if (pi != t) { swap_rows(d, pi, t); swap_rows(u, pi, t); }
        if (pj != t) { swap_cols(d, pj, t); swap_cols(v, pj, t); }
        if (d(t, t) < 0) { negate_row(d, t); negate_row(u, t); }

        bool clean = true;
        for (int i = t + 1; i < rows; ++i) {
            if (d(i, t) == 0) continue;
            int64_t q = d(i, t) / d(t, t);
            row_axpy(d, i, t, q);
            row_axpy(u, i, t, q);
            if (d(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < cols; ++j) {
            if (d(t, j) == 0) continue;
            int64_t q = d(t, j) / d(t, t);
            col_axpy(d, j, t, q);
            col_axpy(v, j, t, q);
            if (d(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // remainder left behind, pick a new pivot

        // enforce divisibility d(t,t) | everything below-right
        bool divides_all = true;
        for (int i = t + 1; i < rows && divides_all; ++i)
            for (int j = t + 1; j < cols && divides_all; ++j)
                if (d(i, j) % d(t, t) != 0) {
                    // fold row i into row t and retry
                    row_axpy(d, t, i, -1);
                    row_axpy(u, t, i, -1);
                    divides_all = false;
                }
        if (divides_all) ++t;
    }

    SmithForm out{d, u, v};
    // exact verification: u*a*v == d, |det u| = |det v| = 1, diagonal chain
    if (rows <= 4 && std::abs(det(u)) != 1) throw InvariantError("smith: U not unimodular");
    if (cols <= 4 && std::abs(det(v)) != 1) throw InvariantError("smith: V not unimodular");
    Mat check = (u * a) * v;
    if (!(check == d)) throw InvariantError("smith: UAV != D");
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (i != j && d(i, j) != 0) throw InvariantError("smith: D not diagonal");
    for (int i = 0; i + 1 < limit; ++i)
        if (d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0)
            throw InvariantError("smith: divisibility chain broken");
    return out;
}

std::vector<int64_t> elementary_divisors(const Mat& a) {
    SmithForm s = smith_normal_form(a);
    std::vector<int64_t> out;
    for (int i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (s.d(i, i) != 0) out.push_back(s.d(i, i));
    return out;
}

bool spans_lattice(const std::vector<Vec>& vectors) {
    if (vectors.empty()) throw DomainError("spans_lattice: empty input");
    int n = vectors[0].dim();
    for (const Vec& v : vectors)
        if (v.dim() != n) throw DomainError("spans_lattice: mixed dimensions");
    std::vector<int64_t> divs = elementary_divisors(Mat::from_rows(vectors));
    if (static_cast<int>(divs.size()) != n) return false;
    for (int64_t d : divs)
        if (d != 1) return false;
    return true;
}

std::vector<Vec> span_basis(const std::vector<Vec>& vectors) {
    if (vectors.empty()) return {};
    int n = vectors[0].dim();
    Lattice role = vectors[0].role();
    Mat h = Mat::from_rows(vectors);
    // row-style Hermite reduction
    int r = 0;
    for (int c = 0; c < n && r < h.rows(); ++c) {
        // gcd out column c below row r
        while (true) {
            int pivot = -1;
            int64_t best = 0;
            for (int i = r; i < h.rows(); ++i) {
                int64_t x = h(i, c) < 0 ? -h(i, c) : h(i, c);
                if (x != 0 && (pivot < 0 || x < best)) { best = x; pivot = i; }
            }
            if (pivot < 0) break;
            if (pivot != r) swap_rows(h, pivot, r);
            if (h(r, c) < 0) negate_row(h, r);
            bool done = true;
            for (int i = r + 1; i < h.rows(); ++i) {
                if (h(i, c) == 0) continue;
                row_axpy(h, i, r, h(i, c) / h(r, c));
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (h(r, c) != 0) {
            // reduce entries above the pivot for a canonical form
            for (int i = 0; i < r; ++i) {
                int64_t q = h(i, c) >= 0 ? h(i, c) / h(r, c) : -((-h(i, c) + h(r, c) - 1) / h(r, c));
                row_axpy(h, i, r, q);
            }
            ++r;
        }
    }
    std::vector<Vec> out;
    for (int i = 0; i < r; ++i) {
        Vec v = vectors[0];
        for (int j = 0; j < n; ++j) v[j] = h(i, j);
        out.push_back(v.with_role(role));
    }
    return out;
}

Vec plane_coordinates(const Vec& u1, const Vec& u2, const Vec& p) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            int64_t d = checked_sub(checked_mul(u1[i], u2[j]), checked_mul(u1[j], u2[i]));
            if (d == 0) continue;
            int64_t na = checked_sub(checked_mul(p[i], u2[j]), checked_mul(p[j], u2[i]));
            int64_t nb = checked_sub(checked_mul(u1[i], p[j]), checked_mul(u1[j], p[i]));
            if (na % d != 0 || nb % d != 0)
                throw DomainError("point is not in the plane span");
            Vec out(na / d, nb / d, p.role());
            if (u1.scaled(out[0]) + u2.scaled(out[1]) != p)
                throw DomainError("point is not in the plane span");
            return out;
        }
    throw InvariantError("degenerate plane basis");
}

UnimodularMap::UnimodularMap(const Mat& m) : m_(m), det_(det(m)) {
    if (det_ != 1 && det_ != -1) throw DomainError("unimodular map must have determinant ±1");
}

UnimodularMap UnimodularMap::identity(int n) { return UnimodularMap(Mat::identity(n)); }

UnimodularMap UnimodularMap::compose(const UnimodularMap& inner) const {
    return UnimodularMap(m_ * inner.m_);
}

UnimodularMap UnimodularMap::inverse() const {
    int n = m_.rows();
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
                    minor(rr, cc++) = m_(r, c);
                }
                ++rr;
            }
            int64_t cof = det(minor);
            if ((i + j) % 2) cof = -cof;
            adj(j, i) = cof;  // adjugate is the transposed cofactor matrix
        }
    if (det_ == -1)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) adj(i, j) = -adj(i, j);
    return UnimodularMap(adj);
}

UnimodularMap UnimodularMap::dual_map() const {
    return UnimodularMap(inverse().matrix().transposed());
}

}  // namespace polyfib
