#ifndef POLYFIB_KODAIRA_HPP
#define POLYFIB_KODAIRA_HPP

#include <map>
#include <string>

#include "polyfib/cox.hpp"
#include "polyfib/modpoly.hpp"

namespace polyfib {

/// Sentinel order for an identically vanishing coefficient.
constexpr int64_t kInfiniteOrder = 1 << 20;

struct KodairaEntry {
    std::string point;  // "s=0", "t=0" or "generic"
    int64_t ord_a, ord_b, ord_delta;
    std::string type;
    int64_t count;  // number of base points sharing this data

    bool operator==(const KodairaEntry& o) const {
        return point == o.point && ord_a == o.ord_a && ord_b == o.ord_b &&
               ord_delta == o.ord_delta && type == o.type && count == o.count;
    }
    bool operator<(const KodairaEntry& o) const {
        return std::tie(ord_delta, ord_a, ord_b, point, type, count) <
               std::tie(o.ord_delta, o.ord_a, o.ord_b, o.point, o.type, o.count);
    }
};

struct KodairaProfile {
    std::vector<KodairaEntry> entries;  // sorted
    int64_t total_delta_degree = 0;

    int64_t count_of(const std::string& type) const;
    bool operator==(const KodairaProfile& o) const {
        return entries == o.entries && total_delta_degree == o.total_delta_degree;
    }
};

struct SamplerConfig {
    int64_t prime = 2147483647;  // 2^31 - 1
    uint64_t seed = 1;
};

/// Fiber type from the vanishing orders of (a, b, delta) in y^2 = x^3 + a x z^4 + b z^6.
std::string kodaira_type(int64_t ord_a, int64_t ord_b, int64_t ord_delta);

/// Vanishing-order profile of delta = 4a^3 + 27b^2 for a, b sampled on the given
/// supports (a of form degree 8, b of degree 12 for a K3 over P^1). The profile
/// is recomputed with an independent seed and returned only when two samples
/// agree; otherwise a third sample arbitrates, and persistent disagreement is an
/// error ("unstable genericity").
KodairaProfile kodaira_profile(const FormSupport& a_support, const FormSupport& b_support,
                               const SamplerConfig& cfg);

/// Convenience for fully generic coefficients: deg_a must be 8 or -1 (a == 0),
/// deg_b must be 12 or -1. Constrained models pass explicit supports instead.
KodairaProfile kodaira_profile(int64_t deg_a, int64_t deg_b, const SamplerConfig& cfg);

/// Samples the five raw Weierstrass buckets (degrees 2, 4, 6, 8, 12) on their
/// supports, performs the completion numerically and profiles the result.
KodairaProfile kodaira_profile_from_buckets(const std::map<int64_t, FormSupport>& buckets,
                                            const SamplerConfig& cfg);

}  // namespace polyfib

#endif
