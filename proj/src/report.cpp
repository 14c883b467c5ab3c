#include "conf4/report.hpp"

#include <cmath>
#include <sstream>

#include "conf4/format.hpp"

namespace conf4 {

namespace {
const char* scheme_name(DerivScheme s) {
    return s == DerivScheme::Spectral ? "spectral" : "fd4";
}

// JSON has no literal for infinities; monitors that never fired emit null.
std::string json_number(double x) { return std::isfinite(x) ? format17(x) : "null"; }
}  // namespace

std::string trace_to_csv(const std::vector<TraceEntry>& trace) {
    std::ostringstream os;
    os << "t,u_min,u_max,grad_max,residual_sup,cone_margin,newton_iters\n";
    for (const auto& e : trace) {
        os << format17(e.t) << ',' << format17(e.u_min) << ',' << format17(e.u_max) << ','
           << format17(e.grad_max) << ',' << format17(e.residual_sup) << ','
           << format17(e.cone_margin) << ',' << e.newton_iters << '\n';
    }
    return os.str();
}

std::string solve_report_to_json(const S1xS3& bg, const SolveConfig& cfg, const PathResult& result,
                                 const std::optional<RicciVerdict>& verdict) {
    std::ostringstream os;
    os << "{\n"
       << "  \"command\": \"solve\",\n"
       << "  \"background\": {\"kind\": \"s1xs3\", \"circumference\": "
       << format17(bg.circumference) << ", \"sphere_radius\": " << format17(bg.sphere_radius)
       << "},\n"
       << "  \"config\": {\"delta\": " << format17(cfg.delta)
       << ", \"t_target\": " << format17(cfg.t_target) << ", \"grid_n\": " << cfg.grid_n
       << ", \"t_step_init\": " << format17(cfg.t_step_init)
       << ", \"t_step_min\": " << format17(cfg.t_step_min)
       << ", \"newton_tol\": " << format17(cfg.newton_tol)
       << ", \"newton_max_iter\": " << cfg.newton_max_iter
       << ", \"cone_margin_min\": " << format17(cfg.cone_margin_min) << ", \"scheme\": \""
       << scheme_name(cfg.scheme) << "\", \"monitor_yamabe\": " << format17(cfg.monitor_yamabe)
       << "},\n"
       << "  \"status\": \""
       << (result.status == PathStatus::Converged ? "converged" : "path_failure") << "\",\n"
       << "  \"message\": " << json_escape(result.message) << ",\n";

    const auto& d = result.final_state.diagnostics;
    os << "  \"final\": {\"t\": " << format17(result.final_state.t)
       << ", \"u_min\": " << format17(d.u_min) << ", \"u_max\": " << format17(d.u_max)
       << ", \"grad_max\": " << format17(d.grad_max)
       << ", \"harnack_gap\": " << format17(d.harnack_gap)
       << ", \"residual_sup\": " << format17(d.residual_sup)
       << ", \"cone_margin\": " << format17(result.final_state.cone_margin) << "},\n";

    const auto& m = result.monitors;
    os << "  \"monitors\": {\"upper_bound_slack\": " << json_number(m.upper_bound_slack)
       << ", \"harnack_slack\": " << json_number(m.harnack_slack)
       << ", \"lower_bound_deficit\": " << json_number(m.lower_bound_deficit)
       << ", \"upper_ok\": " << (m.upper_ok ? "true" : "false")
       << ", \"harnack_ok\": " << (m.harnack_ok ? "true" : "false") << "},\n";

    if (verdict) {
        os << "  \"ricci_verdict\": {\"lower_ok\": " << (verdict->lower_ok ? "true" : "false")
           << ", \"upper_ok\": " << (verdict->upper_ok ? "true" : "false")
           << ", \"lower_margin\": " << format17(verdict->lower_margin)
           << ", \"upper_margin\": " << format17(verdict->upper_margin)
           << ", \"newton_min_eig\": " << format17(verdict->newton_min_eig)
           << ", \"pinch_min_eig\": " << format17(verdict->pinch_min_eig) << "},\n";
    } else {
        os << "  \"ricci_verdict\": null,\n";
    }
    os << "  \"steps\": " << result.trace.size() << "\n}\n";
    return os.str();
}

std::string invariants_to_csv(const std::vector<TopologyRecord>& records) {
    std::ostringstream os;
    os << "name,chi,weyl_l2,f2,q_total,yamabe,paneitz_hypothesis,cgb_residual,status\n";
    for (const auto& r : records) {
        os << r.name << ',' << r.chi << ',' << format17(r.weyl_l2) << ','
           << format17(2.0 * r.q_total) << ',' << format17(r.q_total) << ','
           << format17(r.yamabe) << ',';
        if (r.yamabe > 0.0) {
            os << (check_assumption_paneitz(r) ? "true" : "false") << ','
               << format17(cgb_residual(r)) << ",ok\n";
        } else {
            os << "n/a," << format17(cgb_residual(r)) << ",hypothesis fails: R < 0\n";
        }
    }
    return os.str();
}

std::string spectrum_to_csv(const std::vector<SpectrumPoint>& points) {
    std::ostringstream os;
    os << "lambda,mu,paneitz_eigenvalue\n";
    for (const auto& p : points)
        os << format17(p.lambda) << ',' << format17(p.mu) << ',' << format17(p.value) << '\n';
    return os.str();
}

SpectrumSummary summarize_spectrum(const std::vector<SpectrumPoint>& points,
                                   const std::optional<ProductSpectrumInput>& product) {
    SpectrumSummary s;
    s.min_eigenvalue = points.empty() ? 0.0 : points.front().value;
    for (const auto& p : points)
        if (p.value < 0.0) ++s.count_negative;
    if (product) {
        const double b1 = product->b1();
        const double b2 = product->b2();
        if (b1 == b2 && b1 < 0.0) {
            s.continuum_vertex_sum = -0.5 * b1;
            s.continuum_vertex_value = -0.25 * b1 * b1;
        }
    }
    return s;
}

std::string spectrum_report_to_json(const SpectrumSummary& s) {
    std::ostringstream os;
    os << "{\n  \"command\": \"spectrum\",\n  \"count_negative\": " << s.count_negative
       << ",\n  \"min_eigenvalue\": " << format17(s.min_eigenvalue);
    if (s.continuum_vertex_sum) {
        os << ",\n  \"continuum_vertex_sum\": " << format17(*s.continuum_vertex_sum)
           << ",\n  \"continuum_vertex_value\": " << format17(*s.continuum_vertex_value);
    }
    os << "\n}\n";
    return os.str();
}

std::string certificate_to_json(const PositivityCertificate& cert) {
    std::ostringstream os;
    os << "{\n  \"positive_semidefinite\": " << (cert.positive_semidefinite ? "true" : "false")
       << ",\n  \"kernel_is_constants\": " << (cert.kernel_is_constants ? "true" : "false")
       << ",\n  \"witness\": ";
    if (cert.witness) {
        os << "{\"lambda\": " << format17(cert.witness->lambda)
           << ", \"mu\": " << format17(cert.witness->mu)
           << ", \"form_value\": " << format17(cert.witness->form_value) << "}";
    } else {
        os << "null";
    }
    os << ",\n  \"note\": " << json_escape(cert.note) << "\n}\n";
    return os.str();
}

std::string surgery_table_to_csv() {
    std::ostringstream os;
    os << "family,base,k,l,chi,margin,admissible\n";
    auto row = [&os](const std::string& family, const std::string& base_name, int k, int l) {
        const SurgeryVerdict v = surgery_check(builtin_record(base_name), k, l);
        const double margin = (k > 0) ? v.margin_k : v.margin_l;
        os << family << ',' << base_name << ',' << k << ',' << l << ',' << v.chi_result << ','
           << format17(margin) << ',' << (v.admissible ? "true" : "false") << '\n';
    };
    for (int k = 1; k <= 8; ++k) row("S2xS2#k(S1xS3)", "S2xS2", k, 0);
    for (int k = 1; k <= 8; ++k) row("CP2#k(S1xS3)", "CP2", k, 0);
    for (int l = 1; l <= 10; ++l) row("CP2#l(RP4)", "CP2", 0, l);

    constexpr double kPi = 3.14159265358979323846264338327950288;
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; l <= 10; ++l) {
            if (k == 0 && l == 0) continue;
            const double lambda = 8.0 * kPi * kPi * (-2.0 * k - l + 2.0) + 64.0 * kPi * kPi;
            os << "k(S1xS3)#l(RP4),lcf," << k << ',' << l << ',' << (2 - 2 * k - l) << ','
               << format17(lambda) << ',' << (lcf_sum_check(k, l) ? "true" : "false") << '\n';
        }

    for (int l = 3; l <= 8; ++l) {
        const std::string name = "CP2_" + std::to_string(l) + "CP2bar";
        const TopologyRecord& base = builtin_record(name);
        const SurgeryVerdict v = surgery_check(base, 1, 0);
        os << "CP2#lCP2bar#(S1xS3)," << name << ",1,0," << v.chi_result << ','
           << format17(v.margin_k) << ',' << (v.admissible ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string manifest_to_json(const RunManifest& m) {
    std::ostringstream os;
    os << "{\n  \"command\": " << json_escape(m.command)
       << ",\n  \"config_path\": " << json_escape(m.config_path)
       << ",\n  \"output_dir\": " << json_escape(m.output_dir) << ",\n  \"seed\": " << m.seed
       << ",\n  \"emitted_files\": [";
    for (size_t i = 0; i < m.emitted_files.size(); ++i)
        os << json_escape(m.emitted_files[i]) << (i + 1 < m.emitted_files.size() ? ", " : "");
    os << "]\n}\n";
    return os.str();
}

}  // namespace conf4
