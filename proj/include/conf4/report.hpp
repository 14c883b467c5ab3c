#ifndef CONF4_REPORT_HPP
#define CONF4_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "conf4/ledger.hpp"
#include "conf4/paneitz.hpp"
#include "conf4/selftest.hpp"
#include "conf4/solver.hpp"

namespace conf4 {

// Machine-readable emission. Every float goes through format17, so a rerun
// with the same configuration produces byte-identical text.

/// Columns: t,u_min,u_max,grad_max,residual_sup,cone_margin,newton_iters.
std::string trace_to_csv(const std::vector<TraceEntry>& trace);

std::string solve_report_to_json(const S1xS3& bg, const SolveConfig& cfg, const PathResult& result,
                                 const std::optional<RicciVerdict>& verdict);

/// Columns: name,chi,weyl_l2,f2,q_total,yamabe,paneitz_hypothesis,cgb_residual,status.
std::string invariants_to_csv(const std::vector<TopologyRecord>& records);

/// Columns: lambda,mu,paneitz_eigenvalue (ascending by eigenvalue).
std::string spectrum_to_csv(const std::vector<SpectrumPoint>& points);

struct SpectrumSummary {
    int count_negative = 0;
    double min_eigenvalue = 0.0;
    // Vertex of the (lambda+mu) parabola when b1 == b2 < 0: the continuum
    // minimum, attainable only if the factor spectra reach the vertex sum.
    std::optional<double> continuum_vertex_sum;
    std::optional<double> continuum_vertex_value;
};

SpectrumSummary summarize_spectrum(const std::vector<SpectrumPoint>& points,
                                   const std::optional<ProductSpectrumInput>& product);

std::string spectrum_report_to_json(const SpectrumSummary& summary);

std::string certificate_to_json(const PositivityCertificate& cert);

/// Columns: family,base,k,l,chi,margin,admissible.
std::string surgery_table_to_csv();

struct RunManifest {
    std::string command;
    std::string config_path;
    std::string output_dir;
    uint64_t seed = 0;
    std::vector<std::string> emitted_files;
};

std::string manifest_to_json(const RunManifest& m);

}  // namespace conf4

#endif
