#include "polyfib/kodaira.hpp"

#include <algorithm>
#include <functional>

namespace polyfib {

int64_t KodairaProfile::count_of(const std::string& type) const {
    int64_t n = 0;
    for (const KodairaEntry& e : entries)
        if (e.type == type) n += e.count;
    return n;
}

std::string kodaira_type(int64_t a, int64_t b, int64_t d) {
    if (d == 0) return "I0";
    if (a == 0 && b == 0) return "I" + std::to_string(d);
    if (a >= 4 && b >= 6 && d >= 12) return "nonminimal";
    if (d == 2 && a >= 1 && b == 1) return "II";
    if (d == 3 && a == 1 && b >= 2) return "III";
    if (d == 4 && a >= 2 && b == 2) return "IV";
    if (d == 6 && a >= 2 && b >= 3) return "I0*";
    if (d >= 7 && a == 2 && b == 3) return "I" + std::to_string(d - 6) + "*";
    if (d == 8 && a >= 3 && b == 4) return "IV*";
    if (d == 9 && a == 3 && b >= 5) return "III*";
    if (d == 10 && a >= 4 && b == 5) return "II*";
    return "unclassified(" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(d) + ")";
}

namespace {

void validate_prime(int64_t p) {
    if (p < 3 || p > 2147483647)
        throw DomainError("sampling prime must lie in [3, 2^31 - 1]");
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw DomainError("sampling modulus " + std::to_string(p) + " is not prime");
}

struct MultiplicityPart {
    ModPoly factor;  // squarefree; its roots share the multiplicity
    int64_t mult;
};

// splits the squarefree cluster h by the multiplicity filtration of parts;
// returns (sub-cluster, multiplicity) pieces covering h, multiplicity 0 for the rest
std::vector<std::pair<ModPoly, int64_t>> split_by(const ModPoly& h,
                                                  const std::vector<MultiplicityPart>& parts,
                                                  bool everything_infinite) {
    std::vector<std::pair<ModPoly, int64_t>> out;
    if (everything_infinite) {
        out.emplace_back(h, kInfiniteOrder);
        return out;
    }
    ModPoly rest = h;
    for (const MultiplicityPart& p : parts) {
        ModPoly g = gcd(rest, p.factor);
        if (g.degree() > 0) {
            out.emplace_back(g, p.mult);
            rest = rest / g;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest, 0);
    return out;
}

KodairaProfile profile_of(const BinaryForm& a, const BinaryForm& b) {
    if (a.p != b.p) throw DomainError("prime mismatch");
    const int64_t p = a.p;
    BinaryForm a3 = a * a * a;
    BinaryForm b2 = b * b;
    BinaryForm delta = a3.scaled(4) + b2.scaled(27);
    if (delta.is_zero()) throw DomainError("identically vanishing discriminant");

    KodairaProfile prof;
    prof.total_delta_degree = delta.deg;

    auto order_or_inf = [](const BinaryForm& f, bool at_s0) {
        if (f.is_zero()) return kInfiniteOrder;
        return at_s0 ? f.order_at_s0() : f.order_at_t0();
    };

    int64_t checked_total = 0;
    // the two torus-fixed base points
    for (bool at_s0 : {true, false}) {
        int64_t d = order_or_inf(delta, at_s0);
        if (d == 0) continue;
        int64_t oa = order_or_inf(a, at_s0);
        int64_t ob = order_or_inf(b, at_s0);
        KodairaEntry e{at_s0 ? "s=0" : "t=0", oa, ob, d, kodaira_type(oa, ob, d), 1};
        prof.entries.push_back(e);
        checked_total += d;
    }

    // interior roots: strip the powers of u and u -> 1/u contributions
    ModPoly f = delta.dehomogenized();
    int64_t ord0 = delta.order_at_s0();
    std::vector<int64_t> shifted(f.coeffs().begin() + static_cast<long>(ord0), f.coeffs().end());
    ModPoly g(p, shifted);

    // multiplicity filtrations of a and b over the interior
    auto filtration = [&](const BinaryForm& form) {
        std::vector<MultiplicityPart> parts;
        if (form.is_zero()) return parts;
        ModPoly fp = form.dehomogenized();
        for (auto& [factor, mult] : squarefree_decomposition(fp)) {
            // drop the root u = 0; fixed points are handled separately
            ModPoly fac = factor;
            if (fac.coeff(0) == 0) {
                std::vector<int64_t> c(fac.coeffs().begin() + 1, fac.coeffs().end());
                fac = ModPoly(p, c);
            }
            if (fac.degree() > 0) parts.push_back({fac.monic(), mult});
        }
        return parts;
    };
    std::vector<MultiplicityPart> a_parts = filtration(a);
    std::vector<MultiplicityPart> b_parts = filtration(b);

    for (auto& [h, k] : squarefree_decomposition(g)) {
        ModPoly hh = h;
        if (hh.coeff(0) == 0) {
            std::vector<int64_t> c(hh.coeffs().begin() + 1, hh.coeffs().end());
            hh = ModPoly(p, c);
        }
        if (hh.degree() <= 0) continue;
        for (auto& [ha, oa] : split_by(hh, a_parts, a.is_zero())) {
            for (auto& [hb, ob] : split_by(ha, b_parts, b.is_zero())) {
                KodairaEntry e{"generic", oa, ob, k, kodaira_type(oa, ob, k), hb.degree()};
                prof.entries.push_back(e);
                checked_total += k * hb.degree();
            }
        }
    }

    if (checked_total != prof.total_delta_degree)
        throw InvariantError("kodaira: vanishing orders do not sum to deg delta");
    std::sort(prof.entries.begin(), prof.entries.end());
    return prof;
}

BinaryForm sample_support(ModSampler& s, const FormSupport& sup) {
    return s.form(sup.degree, sup.s_exponents);
}

KodairaProfile agreeing_profile(const std::function<KodairaProfile(uint64_t)>& run,
                                uint64_t seed) {
    KodairaProfile p1 = run(seed);
    KodairaProfile p2 = run(seed * 6364136223846793005ULL + 1442695040888963407ULL);
    if (p1 == p2) return p1;
    KodairaProfile p3 = run(seed ^ 0x9e3779b97f4a7c15ULL);
    if (p3 == p1) return p1;
    if (p3 == p2) return p2;
    throw DomainError("unstable genericity: samples disagree twice; raise the prime or sample count");
}

}  // namespace

KodairaProfile kodaira_profile(const FormSupport& a_support, const FormSupport& b_support,
                               const SamplerConfig& cfg) {
    validate_prime(cfg.prime);
    if (a_support.degree != 8 && !a_support.s_exponents.empty())
        throw DomainError("a must be a degree-8 form for a K3 over P1");
    if (b_support.degree != 12 && !b_support.s_exponents.empty())
        throw DomainError("b must be a degree-12 form for a K3 over P1");
    auto run = [&](uint64_t seed) {
        ModSampler s(cfg.prime, seed);
        BinaryForm a = s.form(8, a_support.s_exponents);
        BinaryForm b = s.form(12, b_support.s_exponents);
        return profile_of(a, b);
    };
    return agreeing_profile(run, cfg.seed);
}

KodairaProfile kodaira_profile(int64_t deg_a, int64_t deg_b, const SamplerConfig& cfg) {
    FormSupport a, b;
    a.degree = 8;
    b.degree = 12;
    if (deg_a == 8)
        for (int64_t i = 0; i <= 8; ++i) a.s_exponents.push_back(i);
    else if (deg_a != -1)
        throw DomainError("kodaira_profile: pass explicit supports for constrained a");
    if (deg_b == 12)
        for (int64_t i = 0; i <= 12; ++i) b.s_exponents.push_back(i);
    else if (deg_b != -1)
        throw DomainError("kodaira_profile: pass explicit supports for constrained b");
    return kodaira_profile(a, b, cfg);
}

KodairaProfile kodaira_profile_from_buckets(const std::map<int64_t, FormSupport>& buckets,
                                            const SamplerConfig& cfg) {
    auto get = [&](int64_t key, int64_t degree) {
        auto it = buckets.find(key);
        FormSupport s;
        s.degree = degree;
        if (it != buckets.end()) {
            s = it->second;
            if (!s.s_exponents.empty() && s.degree != degree)
                throw DomainError("bucket support has the wrong degree");
            s.degree = degree;
        }
        return s;
    };
    validate_prime(cfg.prime);
    FormSupport s2 = get(2, 2), s4 = get(4, 4), s6 = get(6, 6), s8 = get(8, 8),
                s12 = get(12, 12);
    const int64_t p = cfg.prime;
    auto inv = [&](int64_t x) {
        // p is prime and x small
        int64_t r = 1, base = x % p, e = p - 2;
        while (e) {
            if (e & 1) r = (r * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        return r;
    };
    auto run = [&](uint64_t seed) {
        ModSampler smp(p, seed);
        BinaryForm a2 = sample_support(smp, s2);
        BinaryForm a4 = sample_support(smp, s4);
        BinaryForm a6 = sample_support(smp, s6);
        BinaryForm a8 = sample_support(smp, s8);
        BinaryForm a12 = sample_support(smp, s12);
        BinaryForm c2 = a4 + (a2 * a2).scaled(inv(4));
        BinaryForm c4 = a8 + (a2 * a6).scaled(inv(2));
        BinaryForm c6 = a12 + (a6 * a6).scaled(inv(4));
        BinaryForm a = c4 + (c2 * c2).scaled(p - inv(3));
        BinaryForm b = c6 + (c2 * c4).scaled(p - inv(3)) +
                       (c2 * c2 * c2).scaled((2 * inv(27)) % p);
        return profile_of(a, b);
    };
    return agreeing_profile(run, cfg.seed);
}

}  // namespace polyfib
