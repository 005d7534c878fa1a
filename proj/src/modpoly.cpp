#include "polyfib/modpoly.hpp"

#include <algorithm>

namespace polyfib {

namespace {

int64_t mod_norm(int64_t x, int64_t p) {
    x %= p;
    if (x < 0) x += p;
    return x;
}

int64_t mod_mul(int64_t a, int64_t b, int64_t p) {
    // a, b in [0, p) with p < 2^31, so the product fits in int64
    return (a * b) % p;
}

int64_t mod_pow(int64_t a, int64_t e, int64_t p) {
    int64_t r = 1;
    a = mod_norm(a, p);
    while (e > 0) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

int64_t mod_inv(int64_t a, int64_t p) {
    a = mod_norm(a, p);
    if (a == 0) throw DomainError("division by zero in F_p");
    return mod_pow(a, p - 2, p);
}

}  // namespace

ModPoly::ModPoly(int64_t p, std::vector<int64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    if (p_ < 3) throw DomainError("ModPoly: prime must be at least 3");
    for (int64_t& x : c_) x = mod_norm(x, p_);
    trim();
}

void ModPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int64_t ModPoly::coeff(int64_t i) const {
    if (i < 0 || i >= static_cast<int64_t>(c_.size())) return 0;
    return c_[static_cast<size_t>(i)];
}

ModPoly ModPoly::operator+(const ModPoly& o) const {
    std::vector<int64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = mod_norm(coeff(static_cast<int64_t>(i)) + o.coeff(static_cast<int64_t>(i)), p_);
    return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator-(const ModPoly& o) const {
    std::vector<int64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = mod_norm(coeff(static_cast<int64_t>(i)) - o.coeff(static_cast<int64_t>(i)), p_);
    return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator*(const ModPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(p_);
    std::vector<int64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = mod_norm(r[i + j] + mod_mul(c_[i], o.c_[j], p_), p_);
    return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::scaled(int64_t k) const {
    std::vector<int64_t> r = c_;
    k = mod_norm(k, p_);
    for (int64_t& x : r) x = mod_mul(x, k, p_);
    return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::derivative() const {
    if (c_.size() <= 1) return zero(p_);
    std::vector<int64_t> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = mod_mul(c_[i], static_cast<int64_t>(i) % p_, p_);
    return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(mod_inv(c_.back(), p_));
}

std::pair<ModPoly, ModPoly> ModPoly::divmod(const ModPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    ModPoly rem = *this;
    std::vector<int64_t> q;
    int64_t dd = divisor.degree();
    int64_t lead_inv = mod_inv(divisor.c_.back(), p_);
    if (rem.degree() >= dd) q.assign(static_cast<size_t>(rem.degree() - dd + 1), 0);
    while (rem.degree() >= dd) {
        int64_t shift = rem.degree() - dd;
        int64_t f = mod_mul(rem.c_.back(), lead_inv, p_);
        q[static_cast<size_t>(shift)] = f;
        for (int64_t i = 0; i <= dd; ++i) {
            size_t k = static_cast<size_t>(i + shift);
            rem.c_[k] = mod_norm(rem.c_[k] - mod_mul(f, divisor.c_[static_cast<size_t>(i)], p_), p_);
        }
        rem.trim();
    }
    return {ModPoly(p_, std::move(q)), rem};
}

int64_t ModPoly::eval(int64_t x) const {
    x = mod_norm(x, p_);
    int64_t r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = mod_norm(mod_mul(r, x, p_) + c_[i], p_);
    return r;
}

ModPoly gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

std::vector<std::pair<ModPoly, int64_t>> squarefree_decomposition(const ModPoly& f) {
    std::vector<std::pair<ModPoly, int64_t>> out;
    if (f.is_zero() || f.degree() == 0) return out;
    if (f.degree() >= f.prime()) throw DomainError("squarefree: degree too large for the prime");
    ModPoly a = f.monic();
    ModPoly g = gcd(a, a.derivative());
    ModPoly w = a / g;
    int64_t k = 1;
    while (w.degree() > 0) {
        ModPoly y = gcd(w, g);
        ModPoly factor = w / y;
        if (factor.degree() > 0) out.emplace_back(factor.monic(), k);
        w = y;
        g = g / y;
        ++k;
    }
    return out;
}

BinaryForm BinaryForm::zero(int64_t p, int64_t deg) {
    BinaryForm f;
    f.p = p;
    f.deg = deg;
    f.c.assign(static_cast<size_t>(deg + 1), 0);
    return f;
}

bool BinaryForm::is_zero() const {
    for (int64_t x : c)
        if (x != 0) return false;
    return true;
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
    if (deg != o.deg || p != o.p) throw DomainError("binary form degree mismatch");
    BinaryForm r = zero(p, deg);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = mod_norm(c[i] + o.c[i], p);
    return r;
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
    if (p != o.p) throw DomainError("binary form prime mismatch");
    BinaryForm r = zero(p, deg + o.deg);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j)
            r.c[i + j] = mod_norm(r.c[i + j] + mod_mul(c[i], o.c[j], p), p);
    }
    return r;
}

BinaryForm BinaryForm::scaled(int64_t k) const {
    BinaryForm r = *this;
    k = mod_norm(k, p);
    for (int64_t& x : r.c) x = mod_mul(x, k, p);
    return r;
}

int64_t BinaryForm::order_at_s0() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) return static_cast<int64_t>(i);
    return deg + 1;
}

int64_t BinaryForm::order_at_t0() const {
    for (size_t i = c.size(); i-- > 0;)
        if (c[i] != 0) return deg - static_cast<int64_t>(i);
    return deg + 1;
}

ModPoly BinaryForm::dehomogenized() const { return ModPoly(p, c); }

int64_t ModSampler::any() {
    // explicit reduction keeps the stream identical across standard libraries;
    // the modulo bias is ~2^-33 for a 31-bit prime
    return static_cast<int64_t>(rng_() % static_cast<uint64_t>(p_));
}

int64_t ModSampler::nonzero() {
    return 1 + static_cast<int64_t>(rng_() % static_cast<uint64_t>(p_ - 1));
}

BinaryForm ModSampler::form(int64_t degree, const std::vector<int64_t>& s_exponents) {
    BinaryForm f = BinaryForm::zero(p_, degree);
    for (int64_t e : s_exponents) {
        if (e < 0 || e > degree) throw DomainError("form support exponent out of range");
        f.c[static_cast<size_t>(e)] = nonzero();
    }
    return f;
}

}  // namespace polyfib
