#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "polyfib/planar_classes.hpp"
#include "polyfib/report.hpp"
#include "polyfib/semistable.hpp"

using namespace polyfib;

namespace {

std::vector<PolytopeRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return parse_vertex_list(in);
}

void add_common(CLI::App* cmd, Config& cfg, std::string& file) {
    cmd->add_option("file", file, "vertex-list input file")->required();
    cmd->add_option("--bound", cfg.bound, "semistable enumeration bound");
    cmd->add_option("--prime", cfg.prime, "sampling field prime");
    cmd->add_option("--seed", cfg.seed, "sampling seed");
    cmd->add_option("--fiber-class", cfg.fiber_class, "restrict the fibration search to a class");
    cmd->add_flag("--json", cfg.json, "emit JSON");
    cmd->add_option("--jobs", cfg.jobs, "worker count for scan");
}

int run_analyze(const std::string& file, const Config& cfg, bool cut_only) {
    int rc = 0;
    for (const PolytopeRecord& rec : load_records(file)) {
        AnalysisReport r = analyze(rec, cfg);
        if (r.invariant_violation) rc = 2;
        if (cfg.json) {
            std::cout << report_to_json(r) << "\n";
            continue;
        }
        if (!cut_only) {
            std::cout << report_to_text(r);
            continue;
        }
        std::cout << "record" << (r.label.empty() ? "" : " " + r.label) << "\n";
        if (!r.error.empty()) {
            std::cout << "  error: " << r.error << "\n";
            continue;
        }
        if (!r.reflexive) {
            std::cout << "  not reflexive\n";
            continue;
        }
        for (const FibrationReport& f : r.fibrations) {
            std::cout << "  fibration m_phi=" << f.m_phi.str() << " class " << f.fiber_class
                      << ": ";
            if (!f.cut_applicable)
                std::cout << f.cut_note << "\n";
            else
                std::cout << "cut valid=" << (f.cut_valid ? "T" : "F") << " (simple "
                          << (f.simple_partition ? "T" : "F") << ", balanced "
                          << (f.balanced ? "T" : "F") << ", mildly singular "
                          << (f.mildly_singular ? "T" : "F") << ")\n";
        }
    }
    return rc;
}

int run_weierstrass(const std::string& file, const Config& cfg) {
    int rc = 0;
    for (const PolytopeRecord& rec : load_records(file)) {
        std::cout << "record" << (rec.label.empty() ? "" : " " + rec.label) << "\n";
        IntegralPolytope poly;
        try {
            poly = IntegralPolytope::hull(rec.vertices);
        } catch (const DomainError& e) {
            std::cout << "  error: " << e.what() << "\n";
            continue;
        }
        bool refl = true;
        for (const Facet& f : poly.facets())
            if (f.offset != 1) refl = false;
        if (!refl || poly.dim() != 3) {
            std::cout << "  not a reflexive 3-polytope\n";
            continue;
        }
        for (const FibrationData& f : find_fibrations(poly)) {
            if (cfg.fiber_class != 0 && f.fiber_class != cfg.fiber_class) continue;
            for (const SectionAtInfinity& sec : f.sections) {
                std::cout << "  fibration class " << f.fiber_class << " v_z=" << sec.v_z.str()
                          << ": ";
                try {
                    CandelasFontModel m = candelas_font_model(f, sec);
                    if (m.completion.has_value())
                        std::cout << "weierstrass degrees (" << m.completion->deg_a << ", "
                                  << m.completion->deg_b << ")";
                    else
                        std::cout << "no standard form: " << m.completion_error;
                    // segment classes over this marked vertex, in adapted coordinates
                    if (f.adapted_basis.has_value()) {
                        std::vector<Vec> fib3;
                        for (const Vec& v2 : f.fiber.vertices())
                            fib3.push_back(f.adapted_basis->apply(f.to_parent_coords(v2)));
                        Vec vz_ad = f.adapted_basis->apply(sec.v_z);
                        auto classes = enumerate_semistable(fib3, vz_ad, cfg.bound);
                        int generating = 0;
                        for (const SemistablePolytope& sp : classes)
                            if (sp.lattice_generating) ++generating;
                        std::cout << "; segment classes within bound " << cfg.bound << ": "
                                  << classes.size() << " (" << generating << " generating)";
                    }
                    std::cout << "\n";
                } catch (const DomainError& e) {
                    std::cout << "no model: " << e.what() << "\n";
                } catch (const InvariantError& e) {
                    std::cout << "invariant violation: " << e.what() << "\n";
                    rc = 2;
                }
            }
        }
    }
    return rc;
}

int run_scan(const std::string& file, const Config& cfg) {
    auto records = load_records(file);
    auto [reports, summary] = scan(records, cfg);
    int rc = 0;
    for (const AnalysisReport& r : reports)
        if (r.invariant_violation) rc = 2;
    if (cfg.json) {
        for (const AnalysisReport& r : reports) std::cout << report_to_json(r) << "\n";
        std::cout << summary_to_json(summary) << "\n";
    } else {
        for (const AnalysisReport& r : reports) std::cout << report_to_text(r);
        std::cout << summary_to_text(summary);
    }
    return rc;
}

int run_planar_classes(bool json) {
    if (json) {
        std::cout << "[\n";
        bool first = true;
        for (const PlanarClass& c : planar_classes()) {
            if (!first) std::cout << ",\n";
            first = false;
            std::cout << "  {\"index\": " << c.index << ", \"dual_index\": " << c.dual_index
                      << ", \"vertices\": [";
            auto rays = c.rays_in_variable_order();
            for (size_t i = 0; i < rays.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << "[" << rays[i][0] << ", " << rays[i][1] << "]";
            }
            std::cout << "], \"monomials\": \"";
            HypersurfaceEquation eq = c.reference_equation();
            bool f2 = true;
            for (const CoxMonomial& m : eq.monomials) {
                if (!f2) std::cout << " + ";
                f2 = false;
                for (size_t i = 0; i < eq.rays.size(); ++i)
                    for (int64_t k = 0; k < m.exponents[i]; ++k) std::cout << eq.rays[i].name;
            }
            std::cout << "\"}";
        }
        std::cout << "\n]\n";
        return 0;
    }
    for (const PlanarClass& c : planar_classes()) {
        std::cout << "class " << c.index << " (dual " << c.dual_index << "), rays";
        auto rays = c.rays_in_variable_order();
        for (size_t i = 0; i < rays.size(); ++i)
            std::cout << ' ' << fiber_variable_name(i) << "=" << rays[i].str();
        std::cout << "\n  monomials:";
        HypersurfaceEquation eq = c.reference_equation();
        for (const CoxMonomial& m : eq.monomials) {
            std::cout << ' ';
            bool any = false;
            for (size_t i = 0; i < eq.rays.size(); ++i) {
                if (m.exponents[i] == 0) continue;
                any = true;
                std::cout << eq.rays[i].name;
                if (m.exponents[i] > 1) std::cout << '^' << m.exponents[i];
            }
            if (!any) std::cout << '1';
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for elliptic fibrations of toric K3 polytopes"};
    app.require_subcommand(1);

    Config cfg;
    std::string file;
    bool json_classes = false;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "full report per record");
    add_common(analyze_cmd, cfg, file);
    CLI::App* scan_cmd = app.add_subcommand("scan", "batch analysis with a summary");
    add_common(scan_cmd, cfg, file);
    CLI::App* cut_cmd = app.add_subcommand("cut", "symplectic-cut verdicts per fibration");
    add_common(cut_cmd, cfg, file);
    CLI::App* w_cmd = app.add_subcommand("weierstrass", "model degrees per section at infinity");
    add_common(w_cmd, cfg, file);
    CLI::App* pc_cmd = app.add_subcommand("planar-classes",
                                          "the 16 planar reflexive classes and their curves");
    pc_cmd->add_flag("--json", json_classes, "emit JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze_cmd)) return run_analyze(file, cfg, false);
        if (app.got_subcommand(scan_cmd)) return run_scan(file, cfg);
        if (app.got_subcommand(cut_cmd)) return run_analyze(file, cfg, true);
        if (app.got_subcommand(w_cmd)) return run_weierstrass(file, cfg);
        if (app.got_subcommand(pc_cmd)) return run_planar_classes(json_classes);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const InvariantError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
