#ifndef CONF4_LEDGER_HPP
#define CONF4_LEDGER_HPP

#include <string>
#include <utility>
#include <vector>

#include "conf4/geometry.hpp"

namespace conf4 {

// Conformal-invariant bookkeeping: the (chi, int |W|^2, Yamabe, int Q)
// quadruple per manifold, the hypothesis checks, and the connected-sum
// arithmetic. Yamabe values are supplied constants, never computed.

struct TopologyRecord {
    std::string name;
    int chi = 0;
    double weyl_l2 = 0.0;
    double yamabe = 0.0;
    double q_total = 0.0;
    std::string provenance;
};

/// |8 pi^2 chi - (weyl_l2 + 2 q_total)| / max(8 pi^2, |8 pi^2 chi|).
double cgb_residual(const TopologyRecord& rec);

/// Same residual from frame-level curvature, F_2 in place of 2 q_total.
double cgb_residual(const CurvaturePackage& pkg);

/// Built-in records: S4, S1xS3, S2xS2, CP2, RP4, the del Pezzo surfaces
/// CP2 # l CP2-bar for l = 3..8, and a hyperbolic SigmaxSigma gate case.
const std::vector<TopologyRecord>& builtin_records();

/// Record lookup by name; throws config_error when absent.
const TopologyRecord& builtin_record(const std::string& name);

struct F2Invariant {
    double ric_scalar_form;  // int(-1/2 |Ric|^2 + 1/6 R^2) dvol
    double sigma2_form;      // 4 int sigma_2(A^1) dvol
    double value() const { return ric_scalar_form; }
};

/// Both closed-form routes to F_2; they agree to 1e-10 relative.
F2Invariant f2_invariant(const CurvaturePackage& pkg);

/// lambda_{t0} = 2 q_total + (1/6)(1 - t0)(2 - t0) yamabe^2 and its sign.
/// Requires t0 <= 1 and yamabe > 0.
std::pair<double, bool> check_assumption_main(const TopologyRecord& rec, double t0);

/// q_total + (1/6) yamabe^2 > 0; cross-checked against the t0 = 0 main
/// normalization (the verdicts always agree). Requires yamabe > 0.
bool check_assumption_paneitz(const TopologyRecord& rec);

/// int R^2 dvol >= y^2 for a constant-positive-scalar package.
bool yamabe_lower_diagnostic(const CurvaturePackage& pkg, double y_supplied);

struct SurgeryVerdict {
    bool admissible;
    int chi_result;     // chi - 2k - l
    double margin_k;    // (Y^2 - 48 k pi^2)/3, meaningful when k > 0
    double margin_l;    // (Y^2 - 192 pi^2)/3, meaningful when l > 0
    std::string detail;
};

/// Connected sums with k copies of S^1 x S^3 (needs Y > 4 sqrt(3k) pi and
/// k < 8) and l copies of RP^4 (needs Y > 8 sqrt(3) pi and l < 9). Strict
/// inequalities; boundary cases are rejected with a "boundary" detail.
/// Requires base.q_total >= 0 and nonnegative counts.
SurgeryVerdict surgery_check(const TopologyRecord& base, int k_s1s3, int l_rp4);

/// k(S^1 x S^3) # l(RP^4) built from locally conformally flat pieces:
/// 8 pi^2 (2 - 2k - l) + (1/3)(8 sqrt(3) pi)^2 > 0, i.e. 2k + l < 10.
bool lcf_sum_check(int k, int l);

/// Both records satisfy Y > 4 sqrt(3) pi (and q_total >= 0), so their
/// connected sum admits a metric satisfying the Paneitz hypothesis.
bool pair_sum_check(const TopologyRecord& a, const TopologyRecord& b);

/// JSON (de)serialization of record lists.
std::string records_to_json(const std::vector<TopologyRecord>& recs);
std::vector<TopologyRecord> records_from_json(const std::string& json_text);

}  // namespace conf4

#endif
