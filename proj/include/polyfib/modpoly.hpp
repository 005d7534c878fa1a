#ifndef POLYFIB_MODPOLY_HPP
#define POLYFIB_MODPOLY_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "polyfib/lattice.hpp"

namespace polyfib {

/// Dense univariate polynomial over F_p, p an odd prime below 2^31 so that
/// products fit in int64 without intermediate overflow.
class ModPoly {
  public:
    ModPoly() : p_(0) {}
    ModPoly(int64_t p, std::vector<int64_t> coeffs);
    static ModPoly zero(int64_t p) { return ModPoly(p, {}); }
    static ModPoly constant(int64_t p, int64_t c) { return ModPoly(p, {c}); }

    int64_t prime() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int64_t degree() const { return static_cast<int64_t>(c_.size()) - 1; }  // -1 for zero
    int64_t coeff(int64_t i) const;
    const std::vector<int64_t>& coeffs() const { return c_; }

    ModPoly operator+(const ModPoly& o) const;
    ModPoly operator-(const ModPoly& o) const;
    ModPoly operator*(const ModPoly& o) const;
    ModPoly scaled(int64_t k) const;
    ModPoly derivative() const;
    ModPoly monic() const;

    /// Quotient and remainder.
    std::pair<ModPoly, ModPoly> divmod(const ModPoly& divisor) const;
    ModPoly operator/(const ModPoly& d) const { return divmod(d).first; }
    ModPoly operator%(const ModPoly& d) const { return divmod(d).second; }

    int64_t eval(int64_t x) const;

  private:
    void trim();
    int64_t p_;
    std::vector<int64_t> c_;  // c_[i] is the coefficient of u^i
};

ModPoly gcd(ModPoly a, ModPoly b);  // monic

/// Squarefree decomposition f = prod g_k^k (Yun); returns (g_k, k) with g_k
/// monic squarefree and nonconstant, multiplicities ascending.
std::vector<std::pair<ModPoly, int64_t>> squarefree_decomposition(const ModPoly& f);

/// Homogeneous binary form of fixed degree; coefficient i belongs to s^i t^(deg-i).
struct BinaryForm {
    int64_t p = 0;
    int64_t deg = 0;
    std::vector<int64_t> c;  // size deg+1; may be all zero

    static BinaryForm zero(int64_t p, int64_t deg);
    bool is_zero() const;
    BinaryForm operator+(const BinaryForm& o) const;  // same degree required
    BinaryForm operator*(const BinaryForm& o) const;
    BinaryForm scaled(int64_t k) const;

    int64_t order_at_s0() const;    // min i with c[i] != 0 (deg+1 when zero)
    int64_t order_at_t0() const;    // deg - max i with c[i] != 0
    ModPoly dehomogenized() const;  // f(u, 1)
};

/// Uniform sampler over F_p with explicit seeding.
class ModSampler {
  public:
    ModSampler(int64_t p, uint64_t seed) : p_(p), rng_(seed) {}
    int64_t nonzero();
    int64_t any();
    /// Form of the given degree supported on the listed s-exponents,
    /// with nonzero coefficients there.
    BinaryForm form(int64_t degree, const std::vector<int64_t>& s_exponents);

  private:
    int64_t p_;
    std::mt19937_64 rng_;
};

}  // namespace polyfib

#endif
