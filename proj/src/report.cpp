#include "polyfib/report.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace polyfib {

using ordered_json = nlohmann::ordered_json;

uint64_t stable_hash(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

ordered_json vec_json(const Vec& v) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    return a;
}

ordered_json vecs_json(const std::vector<Vec>& vs) {
    ordered_json a = ordered_json::array();
    for (const Vec& v : vs) a.push_back(vec_json(v));
    return a;
}

SectionReport analyze_section(const FibrationData& f, const SectionAtInfinity& sec,
                              const MaxTriangulation* tri, const Config& cfg,
                              uint64_t record_seed) {
    SectionReport sr;
    sr.v_z = sec.v_z;
    const Edge& e = f.parent.edges()[static_cast<size_t>(sec.edge_id)];
    sr.edge_endpoints = {f.parent.vertices()[static_cast<size_t>(e.a)],
                         f.parent.vertices()[static_cast<size_t>(e.b)]};

    Vec vz2 = f.to_fiber_coords(sec.v_z);
    sr.flex_count = flex_intersection_count(f.fiber, vz2);
    sr.toric_flex = sr.flex_count == 1;

    if (tri) {
        SectionCriterion crit = is_toric_section(sec.v_z, f, *tri);
        sr.criterion_applicable = crit.applicable;
        sr.criterion_failed = crit.failed_hypotheses;
        sr.criterion_sum = crit.is_section;
        sr.fiber_intersection_number = fiber_intersection(sec.v_z, f, *tri);
    }

    try {
        CandelasFontModel model = candelas_font_model(f, sec);
        sr.model_exists = true;
        sr.model_lattice_generating = model.model.lattice_generating;
        sr.model_hull_vertices = model.model.hull.vertices();
        for (const FiberBucket& b : model.fibered.buckets) {
            BucketReport br;
            br.fiber_exponents = b.fiber_exponents;
            br.base_degree = b.base_degree;
            br.total = static_cast<int>(b.monomial_ids.size());
            for (int mid : b.monomial_ids)
                if (model.survives[static_cast<size_t>(mid)]) ++br.surviving;
            sr.buckets.push_back(br);
        }
        if (model.completion.has_value())
            sr.weierstrass_degrees = {model.completion->deg_a, model.completion->deg_b};
        sr.completion_error = model.completion_error;
        if (model.constrained.has_value()) {
            try {
                SamplerConfig sc{cfg.prime, record_seed};
                sr.profile = kodaira_profile_from_buckets(model.constrained->bucket_supports, sc);
            } catch (const DomainError& err) {
                sr.profile_note = err.what();
            }
        } else if (sr.completion_error.empty()) {
            sr.profile_note = "no completion data";
        } else {
            sr.profile_note = "no standard form: " + sr.completion_error;
        }
        try {
            sr.semistable_fibers = semistable_fiber_count(model.model);
        } catch (const DomainError& err) {
            sr.semistable_note = err.what();
        }
    } catch (const DomainError& err) {
        sr.model_exists = false;
        sr.model_note = err.what();
    }
    return sr;
}

FibrationReport analyze_fibration(const FibrationData& f, const MaxTriangulation* tri,
                                  const Config& cfg, uint64_t record_seed) {
    FibrationReport fr;
    fr.m_phi = f.m_phi;
    fr.fiber_class = f.fiber_class;
    for (const Vec& v2 : f.fiber.vertices()) fr.fiber_vertices_3d.push_back(f.to_parent_coords(v2));
    fr.c1 = f.c1;
    fr.c2 = f.c2;
    fr.c3 = f.c3;
    fr.characterization = candelas_characterization(f);

    for (const SectionAtInfinity& sec : f.sections)
        fr.sections.push_back(analyze_section(f, sec, tri, cfg, record_seed));

    if (f.c1 && f.c2) {
        fr.cut_applicable = true;
        CutPartition p = cut(f);
        fr.delta_simple = p.delta_simple;
        fr.simple_partition = p.simple_partition;
        fr.balanced = p.balanced;
        fr.mildly_singular = p.mildly_singular;
        fr.cut_valid = p.simple_partition && p.balanced && p.mildly_singular;
        fr.delta_points = p.delta.lattice_points().size();
        fr.piece1_points = p.piece1.lattice_points().size();
        fr.piece2_points = p.piece2.lattice_points().size();
        size_t slice = 0;
        for (const Vec& m : p.delta.lattice_points())
            if (m[2] == 0) ++slice;
        fr.slice_points = slice;
        if (fr.cut_valid) {
            DegenerationPieces d = degeneration_pieces(f, p);
            fr.piece1_rays = d.rays1;
            fr.piece2_rays = d.rays2;
            fr.rational_elliptic_1 = rational_elliptic_check(p.piece1).ok;
            fr.rational_elliptic_2 = rational_elliptic_check(p.piece2).ok;
        }
    } else {
        fr.cut_applicable = false;
        fr.cut_note = std::string("not applicable: condition ") + (f.c1 ? "2" : "1") + " fails";
    }
    return fr;
}

}  // namespace

AnalysisReport analyze(const PolytopeRecord& record, const Config& cfg) {
    AnalysisReport r;
    r.label = record.label;
    r.input_vertices = record.vertices;
    uint64_t record_seed = cfg.seed * 1000003ULL + stable_hash(record.label);
    try {
        IntegralPolytope poly = IntegralPolytope::hull(record.vertices);
        r.vertices = poly.vertices();
        bool refl = true;
        for (const Facet& f : poly.facets())
            if (f.offset != 1) refl = false;
        r.reflexive = refl;
        if (!refl) return r;
        r.dual_vertices = poly.dual().vertices();
        if (poly.dim() != 3) return r;  // planar records stop at duality

        MaxTriangulation tri = MaxTriangulation::build(poly);
        for (const FibrationData& f : find_fibrations(poly)) {
            if (cfg.fiber_class != 0 && f.fiber_class != cfg.fiber_class) continue;
            r.fibrations.push_back(analyze_fibration(f, &tri, cfg, record_seed));
        }
    } catch (const InvariantError& e) {
        r.error = e.what();
        r.invariant_violation = true;
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

std::pair<std::vector<AnalysisReport>, ScanSummary> scan(const std::vector<PolytopeRecord>& records,
                                                         const Config& cfg) {
    std::vector<AnalysisReport> reports(records.size());
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < records.size(); ++i) reports[i] = analyze(records[i], cfg);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= records.size()) return;
                reports[i] = analyze(records[i], cfg);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return {reports, fold_summary(reports)};
}

ScanSummary fold_summary(const std::vector<AnalysisReport>& reports) {
    ScanSummary s;
    s.records = reports.size();
    for (const AnalysisReport& r : reports) {
        if (!r.error.empty()) {
            ++s.failed;
            continue;
        }
        if (r.reflexive) ++s.reflexive;
        for (const FibrationReport& f : r.fibrations) {
            ++s.fibrations;
            std::string pat;
            pat += f.c1 ? 'T' : 'F';
            pat += f.c2 ? 'T' : 'F';
            pat += f.c3 ? 'T' : 'F';
            ++s.condition_patterns[pat];
            ++s.fiber_class_counts[f.fiber_class];
            if (f.cut_applicable && f.cut_valid) ++s.valid_cuts;
            s.sections_at_infinity += static_cast<int>(f.sections.size());
        }
    }
    return s;
}

namespace {

ordered_json section_json(const SectionReport& s) {
    ordered_json j;
    j["v_z"] = vec_json(s.v_z);
    j["edge"] = vecs_json(s.edge_endpoints);
    j["toric_flex"] = s.toric_flex;
    j["flex_count"] = s.flex_count;
    j["section_criterion"] = {{"applicable", s.criterion_applicable},
                              {"failed_hypotheses", s.criterion_failed},
                              {"sum_condition", s.criterion_sum},
                              {"fiber_intersection", s.fiber_intersection_number}};
    if (s.model_exists) {
        ordered_json buckets = ordered_json::array();
        for (const BucketReport& b : s.buckets) {
            ordered_json bj;
            bj["fiber_exponents"] = b.fiber_exponents;
            if (b.base_degree.has_value())
                bj["base_degree"] = *b.base_degree;
            else
                bj["base_degree"] = nullptr;
            bj["surviving"] = b.surviving;
            bj["monomials"] = b.total;
            buckets.push_back(bj);
        }
        j["model"] = {{"hull_vertices", vecs_json(s.model_hull_vertices)},
                      {"lattice_generating", s.model_lattice_generating},
                      {"buckets", buckets}};
        if (s.weierstrass_degrees.has_value())
            j["model"]["weierstrass_degrees"] = {s.weierstrass_degrees->first,
                                                 s.weierstrass_degrees->second};
        else
            j["model"]["no_standard_form"] = s.completion_error;
        if (s.profile.has_value()) {
            ordered_json pj = ordered_json::array();
            for (const KodairaEntry& e : s.profile->entries)
                pj.push_back({{"point", e.point},
                              {"ord_a", e.ord_a >= kInfiniteOrder ? -1 : e.ord_a},
                              {"ord_b", e.ord_b >= kInfiniteOrder ? -1 : e.ord_b},
                              {"ord_delta", e.ord_delta},
                              {"type", e.type},
                              {"count", e.count}});
            j["model"]["kodaira"] = pj;
            j["model"]["delta_degree"] = s.profile->total_delta_degree;
        } else if (!s.profile_note.empty()) {
            j["model"]["kodaira_note"] = s.profile_note;
        }
        if (!s.semistable_fibers.empty()) {
            ordered_json fj;
            for (auto& [n, k] : s.semistable_fibers) fj["I" + std::to_string(n)] = k;
            j["model"]["semistable_fibers"] = fj;
        } else if (!s.semistable_note.empty()) {
            j["model"]["semistable_note"] = s.semistable_note;
        }
    } else {
        j["model"] = {{"exists", false}, {"note", s.model_note}};
    }
    return j;
}

ordered_json fibration_json(const FibrationReport& f) {
    ordered_json j;
    j["m_phi"] = vec_json(f.m_phi);
    j["fiber_class"] = f.fiber_class;
    j["fiber_vertices"] = vecs_json(f.fiber_vertices_3d);
    j["conditions"] = {{"1", f.c1}, {"2", f.c2}, {"3", f.c3}};
    j["characterization"] = f.characterization;
    ordered_json sj = ordered_json::array();
    for (const SectionReport& s : f.sections) sj.push_back(section_json(s));
    j["sections_at_infinity"] = sj;
    if (f.cut_applicable) {
        j["cut"] = {{"delta_simple", f.delta_simple},
                    {"simple_partition", f.simple_partition},
                    {"balanced", f.balanced},
                    {"mildly_singular", f.mildly_singular},
                    {"valid", f.cut_valid},
                    {"lattice_points",
                     {{"delta", f.delta_points},
                      {"piece1", f.piece1_points},
                      {"piece2", f.piece2_points},
                      {"slice", f.slice_points}}}};
        if (f.cut_valid) {
            j["cut"]["piece1_rays"] = vecs_json(f.piece1_rays);
            j["cut"]["piece2_rays"] = vecs_json(f.piece2_rays);
            j["cut"]["rational_elliptic"] = {f.rational_elliptic_1, f.rational_elliptic_2};
        }
    } else {
        j["cut"] = f.cut_note;
    }
    return j;
}

}  // namespace

std::string report_to_json(const AnalysisReport& r) {
    ordered_json j;
    j["schema"] = "polyfib-report-1";
    j["label"] = r.label;
    j["input_vertices"] = vecs_json(r.input_vertices);
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j.dump(2);
    }
    j["vertices"] = vecs_json(r.vertices);
    j["reflexive"] = r.reflexive;
    if (r.reflexive) j["dual_vertices"] = vecs_json(r.dual_vertices);
    ordered_json fj = ordered_json::array();
    for (const FibrationReport& f : r.fibrations) fj.push_back(fibration_json(f));
    j["fibrations"] = fj;
    return j.dump(2);
}

namespace {

std::string flag(bool b) { return b ? "T" : "F"; }

}  // namespace

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "record" << (r.label.empty() ? "" : " " + r.label) << "\n";
    if (!r.error.empty()) {
        os << "  error: " << r.error << "\n";
        return os.str();
    }
    os << "  vertices:";
    for (const Vec& v : r.vertices) os << ' ' << v.str();
    os << "\n  reflexive: " << flag(r.reflexive) << "\n";
    if (!r.reflexive) return os.str();
    os << "  dual vertices:";
    for (const Vec& v : r.dual_vertices) os << ' ' << v.str();
    os << "\n";
    for (const FibrationReport& f : r.fibrations) {
        os << "  fibration m_phi=" << f.m_phi.str() << " fiber class " << f.fiber_class << "\n";
        os << "    conditions 1)" << flag(f.c1) << " 2)" << flag(f.c2) << " 3)" << flag(f.c3)
           << "  characterization " << flag(f.characterization) << "\n";
        for (const SectionReport& s : f.sections) {
            os << "    section at infinity v_z=" << s.v_z.str() << " on edge "
               << s.edge_endpoints[0].str() << "-" << s.edge_endpoints[1].str() << "\n";
            os << "      toric flex: " << flag(s.toric_flex) << " (meets the fiber in "
               << s.flex_count << ")\n";
            os << "      fiber.D'_z = " << s.fiber_intersection_number << ", criterion ";
            if (s.criterion_applicable)
                os << (s.criterion_sum ? "section" : "not a section") << "\n";
            else {
                os << "inapplicable:";
                for (const std::string& h : s.criterion_failed) os << " [" << h << "]";
                os << "\n";
            }
            if (s.model_exists) {
                os << "      model buckets:";
                for (const BucketReport& b : s.buckets) {
                    os << " (";
                    for (size_t i = 0; i < b.fiber_exponents.size(); ++i) {
                        if (i) os << ',';
                        os << b.fiber_exponents[i];
                    }
                    os << ")->";
                    if (b.base_degree.has_value())
                        os << *b.base_degree;
                    else
                        os << "mixed";
                    os << "[" << b.surviving << "/" << b.total << "]";
                }
                os << "\n";
                if (s.weierstrass_degrees.has_value())
                    os << "      weierstrass degrees (deg a, deg b) = ("
                       << s.weierstrass_degrees->first << ", " << s.weierstrass_degrees->second
                       << ")\n";
                else
                    os << "      no standard form: " << s.completion_error << "\n";
                if (s.profile.has_value()) {
                    os << "      kodaira:";
                    for (const KodairaEntry& e : s.profile->entries)
                        os << ' ' << e.count << "x" << e.type << "@" << e.point;
                    os << " (deg delta " << s.profile->total_delta_degree << ")\n";
                } else if (!s.profile_note.empty()) {
                    os << "      kodaira: " << s.profile_note << "\n";
                }
                if (!s.semistable_fibers.empty()) {
                    os << "      semistable fibers:";
                    for (auto& [n, k] : s.semistable_fibers) os << ' ' << k << "xI" << n;
                    os << "\n";
                } else if (!s.semistable_note.empty()) {
                    os << "      semistable fibers: " << s.semistable_note << "\n";
                }
            } else {
                os << "      model: not applicable: " << s.model_note << "\n";
            }
        }
        if (f.cut_applicable) {
            os << "    cut: simple partition " << flag(f.simple_partition) << ", balanced "
               << flag(f.balanced) << ", mildly singular " << flag(f.mildly_singular)
               << " (delta simple " << flag(f.delta_simple) << ")\n";
            os << "      lattice points: |delta|=" << f.delta_points << " |piece1|="
               << f.piece1_points << " |piece2|=" << f.piece2_points << " |slice|="
               << f.slice_points << "\n";
            if (f.cut_valid) {
                os << "      piece1 rays:";
                for (const Vec& v : f.piece1_rays) os << ' ' << v.str();
                os << "\n      piece2 rays:";
                for (const Vec& v : f.piece2_rays) os << ' ' << v.str();
                os << "\n      rational elliptic pieces: " << flag(f.rational_elliptic_1) << " "
                   << flag(f.rational_elliptic_2) << "\n";
            }
        } else {
            os << "    cut: " << f.cut_note << "\n";
        }
    }
    return os.str();
}

std::string summary_to_json(const ScanSummary& s) {
    ordered_json j;
    j["schema"] = "polyfib-summary-1";
    j["records"] = s.records;
    j["reflexive"] = s.reflexive;
    j["failed"] = s.failed;
    j["fibrations"] = s.fibrations;
    j["condition_patterns"] = s.condition_patterns;
    ordered_json fc;
    for (auto& [k, v] : s.fiber_class_counts) fc[std::to_string(k)] = v;
    j["fiber_class_counts"] = fc;
    j["valid_cuts"] = s.valid_cuts;
    j["sections_at_infinity"] = s.sections_at_infinity;
    return j.dump(2);
}

std::string summary_to_text(const ScanSummary& s) {
    std::ostringstream os;
    os << "records: " << s.records << " (reflexive " << s.reflexive << ", failed " << s.failed
       << ")\n";
    os << "fibrations: " << s.fibrations << ", sections at infinity: " << s.sections_at_infinity
       << ", valid cuts: " << s.valid_cuts << "\n";
    os << "condition patterns:";
    for (auto& [k, v] : s.condition_patterns) os << ' ' << k << "=" << v;
    os << "\nfiber classes:";
    for (auto& [k, v] : s.fiber_class_counts) os << ' ' << k << ":" << v;
    os << "\n";
    return os.str();
}

}  // namespace polyfib
