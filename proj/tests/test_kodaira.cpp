#include <doctest.h>

#include "polyfib/kodaira.hpp"

using namespace polyfib;

TEST_CASE("order-triple table") {
    CHECK(kodaira_type(0, 0, 1) == "I1");
    CHECK(kodaira_type(0, 0, 7) == "I7");
    CHECK(kodaira_type(1, 1, 2) == "II");
    CHECK(kodaira_type(kInfiniteOrder, 1, 2) == "II");
    CHECK(kodaira_type(1, 2, 3) == "III");
    CHECK(kodaira_type(2, 2, 4) == "IV");
    CHECK(kodaira_type(2, 3, 6) == "I0*");
    CHECK(kodaira_type(2, 3, 18) == "I12*");
    CHECK(kodaira_type(3, 4, 8) == "IV*");
    CHECK(kodaira_type(3, 5, 9) == "III*");
    CHECK(kodaira_type(4, 5, 10) == "II*");
    CHECK(kodaira_type(4, 6, 12) == "nonminimal");
}

TEST_CASE("generic degrees (8, 12) give twenty-four nodal fibers") {
    SamplerConfig cfg;
    cfg.seed = 11;
    KodairaProfile p = kodaira_profile(8, 12, cfg);
    CHECK(p.total_delta_degree == 24);
    CHECK(p.count_of("I1") == 24);
    int64_t euler = 0;
    for (const KodairaEntry& e : p.entries) euler += e.ord_delta * e.count;
    CHECK(euler == 24);
}

TEST_CASE("a == 0 with a squarefree b gives twelve cusps") {
    SamplerConfig cfg;
    cfg.seed = 5;
    KodairaProfile p = kodaira_profile(-1, 12, cfg);
    CHECK(p.total_delta_degree == 24);
    CHECK(p.count_of("II") == 12);
    for (const KodairaEntry& e : p.entries)
        if (e.type == "II") {
            CHECK(e.ord_a >= kInfiniteOrder);
            CHECK(e.ord_b == 1);
            CHECK(e.ord_delta == 2);
        }
}

TEST_CASE("different seeds agree on generic profiles") {
    SamplerConfig c1, c2;
    c1.seed = 101;
    c2.seed = 202;
    CHECK(kodaira_profile(8, 12, c1) == kodaira_profile(8, 12, c2));
}

TEST_CASE("constrained supports force high-order fibers at the fixed points") {
    // a supported on s^4 t^4, b on s^5..s^7: orders (4, 5, 10) at both ends
    FormSupport a, b;
    a.degree = 8;
    a.s_exponents = {4};
    b.degree = 12;
    b.s_exponents = {5, 6, 7};
    SamplerConfig cfg;
    cfg.seed = 3;
    KodairaProfile p = kodaira_profile(a, b, cfg);
    CHECK(p.count_of("II*") == 2);
    CHECK(p.count_of("I1") == 4);
    int64_t euler = 0;
    for (const KodairaEntry& e : p.entries) euler += e.ord_delta * e.count;
    CHECK(euler == 24);
}

TEST_CASE("bucket sampling matches direct sampling for full supports") {
    std::map<int64_t, FormSupport> buckets;
    for (int64_t d : {2, 4, 6, 8, 12}) {
        FormSupport s;
        s.degree = d;
        for (int64_t i = 0; i <= d; ++i) s.s_exponents.push_back(i);
        buckets[d] = s;
    }
    SamplerConfig cfg;
    cfg.seed = 77;
    KodairaProfile p = kodaira_profile_from_buckets(buckets, cfg);
    CHECK(p.count_of("I1") == 24);
}
