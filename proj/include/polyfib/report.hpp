#ifndef POLYFIB_REPORT_HPP
#define POLYFIB_REPORT_HPP

#include <map>
#include <optional>

#include "polyfib/kodaira.hpp"
#include "polyfib/parse.hpp"
#include "polyfib/semistable.hpp"
#include "polyfib/symplectic_cut.hpp"

namespace polyfib {

struct Config {
    int64_t bound = 6;           // semistable enumeration bound
    int64_t prime = 2147483647;  // sampling field
    uint64_t seed = 1;
    int fiber_class = 0;  // restrict the fibration search; 0 = all
    int jobs = 1;
    bool json = false;
};

struct BucketReport {
    std::vector<int64_t> fiber_exponents;
    std::optional<int64_t> base_degree;
    int surviving = 0;
    int total = 0;
};

struct SectionReport {
    Vec v_z;
    std::vector<Vec> edge_endpoints;
    bool toric_flex = false;
    int64_t flex_count = 0;
    bool criterion_applicable = false;
    std::vector<std::string> criterion_failed;
    bool criterion_sum = false;
    int64_t fiber_intersection_number = 0;
    bool model_exists = false;
    std::string model_note;
    bool model_lattice_generating = false;
    std::vector<Vec> model_hull_vertices;
    std::vector<BucketReport> buckets;
    std::optional<std::pair<int64_t, int64_t>> weierstrass_degrees;
    std::string completion_error;
    std::optional<KodairaProfile> profile;  // of the surviving subfamily
    std::string profile_note;
    std::map<int64_t, int64_t> semistable_fibers;  // I_n counts when the model applies
    std::string semistable_note;
};

struct FibrationReport {
    Vec m_phi;
    int fiber_class = 0;
    std::vector<Vec> fiber_vertices_3d;
    bool c1 = false, c2 = false, c3 = false;
    bool characterization = false;
    std::vector<SectionReport> sections;

    bool cut_applicable = false;
    std::string cut_note;
    bool cut_valid = false;
    bool delta_simple = false, simple_partition = false, balanced = false,
         mildly_singular = false;
    std::vector<Vec> piece1_rays, piece2_rays;
    size_t delta_points = 0, piece1_points = 0, piece2_points = 0, slice_points = 0;
    bool rational_elliptic_1 = false, rational_elliptic_2 = false;
};

struct AnalysisReport {
    std::string label;
    std::vector<Vec> input_vertices;
    std::string error;  // set when the record fails before analysis
    bool invariant_violation = false;
    bool reflexive = false;
    std::vector<Vec> vertices;       // canonical
    std::vector<Vec> dual_vertices;  // canonical, when reflexive
    std::vector<FibrationReport> fibrations;
};

struct ScanSummary {
    size_t records = 0;
    size_t reflexive = 0;
    size_t failed = 0;
    std::map<std::string, int> condition_patterns;  // per fibration, e.g. "TFT"
    std::map<int, int> fiber_class_counts;
    int fibrations = 0;
    int valid_cuts = 0;
    int sections_at_infinity = 0;
};

AnalysisReport analyze(const PolytopeRecord& record, const Config& cfg);
std::pair<std::vector<AnalysisReport>, ScanSummary> scan(const std::vector<PolytopeRecord>& records,
                                                         const Config& cfg);
ScanSummary fold_summary(const std::vector<AnalysisReport>& reports);

std::string report_to_json(const AnalysisReport& r);
std::string report_to_text(const AnalysisReport& r);
std::string summary_to_json(const ScanSummary& s);
std::string summary_to_text(const ScanSummary& s);

/// Stable string hash for per-record seeds (FNV-1a).
uint64_t stable_hash(const std::string& s);

}  // namespace polyfib

#endif
