#include "conf4/ledger.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "conf4/errors.hpp"
#include "conf4/format.hpp"

namespace conf4 {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const double kPi2 = kPi * kPi;

std::vector<TopologyRecord> make_builtins() {
    std::vector<TopologyRecord> recs;
    recs.push_back({"S4", 2, 0.0, 8.0 * std::sqrt(6.0) * kPi, 8.0 * kPi2,
                    "round metric; Y attained (sigma(S^4) = 8 sqrt(6) pi)"});
    recs.push_back({"S1xS3", 0, 0.0, 8.0 * std::sqrt(6.0) * kPi, 0.0,
                    "product metric; Y is the user-supplied sigma-invariant bound "
                    "approached by long-cylinder metrics, not a computed value"});
    recs.push_back({"S2xS2", 4, 64.0 * kPi2 / 3.0, 16.0 * kPi, 16.0 * kPi2 / 3.0,
                    "unit product metric; Einstein, Y attained"});
    recs.push_back({"CP2", 3, 12.0 * kPi2, 12.0 * std::sqrt(2.0) * kPi, 6.0 * kPi2,
                    "Fubini-Study; Y = 12 sqrt(2) pi; weyl_l2 derived from the "
                    "Chern-Gauss-Bonnet identity given chi and the Einstein int Q"});
    recs.push_back({"RP4", 1, 0.0, 8.0 * std::sqrt(3.0) * kPi, 4.0 * kPi2,
                    "round quotient; Y = 8 sqrt(3) pi"});
    for (int l = 3; l <= 8; ++l) {
        const double q = 2.0 * kPi2 * (9.0 - l) / 3.0;  // Einstein: R^2 Vol / 48
        const double chi = 3.0 + l;
        const double w = 8.0 * kPi2 * chi - 2.0 * q;
        recs.push_back({"CP2_" + std::to_string(l) + "CP2bar", 3 + l, w,
                        4.0 * kPi * std::sqrt(2.0 * (9.0 - l)), q,
                        "Kaehler-Einstein del Pezzo; Y = 4 pi sqrt(2(9-l)); weyl_l2 "
                        "identity-derived"});
    }
    recs.push_back({"SigmaxSigma_hyperbolic", 4, 64.0 * kPi2 / 3.0, -16.0 * kPi, 16.0 * kPi2 / 3.0,
                    "genus-2 x genus-2 product, curvature -1; negative scalar curvature "
                    "gate case; Y field is the normalized total scalar curvature"});
    return recs;
}

}  // namespace

double cgb_residual(const TopologyRecord& rec) {
    const double lhs = 8.0 * kPi2 * rec.chi;
    const double rhs = rec.weyl_l2 + 2.0 * rec.q_total;
    return std::abs(lhs - rhs) / std::max(8.0 * kPi2, std::abs(lhs));
}

double cgb_residual(const CurvaturePackage& pkg) {
    const double lhs = 8.0 * kPi2 * pkg.euler;
    const double rhs = pkg.weyl_l2 + f2_invariant(pkg).value();
    return std::abs(lhs - rhs) / std::max(8.0 * kPi2, std::abs(lhs));
}

const std::vector<TopologyRecord>& builtin_records() {
    static const std::vector<TopologyRecord> recs = make_builtins();
    return recs;
}

const TopologyRecord& builtin_record(const std::string& name) {
    for (const auto& r : builtin_records())
        if (r.name == name) return r;
    throw config_error("no built-in record named '" + name + "'");
}

F2Invariant f2_invariant(const CurvaturePackage& pkg) {
    const double ric2 = pkg.ric.trace_sq();
    F2Invariant f2;
    f2.ric_scalar_form = (-0.5 * ric2 + pkg.scalar * pkg.scalar / 6.0) * pkg.volume;
    f2.sigma2_form = 4.0 * sigma2(pkg.schouten1) * pkg.volume;
    const double scale = std::max({std::abs(f2.ric_scalar_form), std::abs(f2.sigma2_form), 1.0});
    if (std::abs(f2.ric_scalar_form - f2.sigma2_form) > 1e-10 * scale)
        throw error("f2_invariant: the two closed-form routes disagree");
    return f2;
}

std::pair<double, bool> check_assumption_main(const TopologyRecord& rec, double t0) {
    if (t0 > 1.0) throw config_error("check_assumption_main: t0 must be <= 1");
    if (!(rec.yamabe > 0.0))
        throw config_error("check_assumption_main: requires positive scalar curvature (Y > 0)");
    const double lambda_t =
        2.0 * rec.q_total + (1.0 / 6.0) * (1.0 - t0) * (2.0 - t0) * rec.yamabe * rec.yamabe;
    return {lambda_t, lambda_t > 0.0};
}

bool check_assumption_paneitz(const TopologyRecord& rec) {
    if (!(rec.yamabe > 0.0))
        throw config_error("check_assumption_paneitz: requires positive scalar curvature (Y > 0)");
    const bool holds = rec.q_total + rec.yamabe * rec.yamabe / 6.0 > 0.0;
    const bool main_holds = check_assumption_main(rec, 0.0).second;
    if (holds != main_holds)
        throw error("check_assumption_paneitz: normalizations disagree (impossible)");
    return holds;
}

bool yamabe_lower_diagnostic(const CurvaturePackage& pkg, double y_supplied) {
    if (!(pkg.scalar > 0.0))
        throw config_error("yamabe_lower_diagnostic: needs constant positive scalar curvature");
    const double int_r2 = pkg.scalar * pkg.scalar * pkg.volume;
    const double y2 = y_supplied * y_supplied;
    // Non-strict bound; the round sphere attains equality, so allow a hair
    // of rounding slack.
    return int_r2 >= y2 - 1e-9 * std::max(1.0, y2);
}

SurgeryVerdict surgery_check(const TopologyRecord& base, int k_s1s3, int l_rp4) {
    if (k_s1s3 < 0 || l_rp4 < 0) throw config_error("surgery_check: counts must be nonnegative");
    if (!(base.q_total >= 0.0))
        throw config_error("surgery_check: requires base with q_total >= 0");

    const double y2 = base.yamabe * base.yamabe;
    SurgeryVerdict v;
    v.chi_result = base.chi - 2 * k_s1s3 - l_rp4;
    v.margin_k = (y2 - 48.0 * k_s1s3 * kPi2) / 3.0;
    v.margin_l = (y2 - 192.0 * kPi2) / 3.0;
    v.admissible = true;

    // Strict thresholds: a margin within rounding of zero is a boundary
    // case and is rejected, so exact-threshold inputs are deterministic.
    const double boundary = 1e-12 * std::max(y2, 1.0) / 3.0;

    std::ostringstream detail;
    detail << base.name << " # " << k_s1s3 << "(S1xS3) # " << l_rp4
           << "(RP4): chi = " << v.chi_result;
    if (k_s1s3 > 0) {
        const bool count_ok = k_s1s3 < 8;
        const bool y_ok = base.yamabe > 0.0 && v.margin_k > boundary;
        detail << "; k-rule: theorem bound k < 8 "
               << (count_ok ? "ok" : "violated") << ", Y-threshold 4 sqrt(3k) pi "
               << (y_ok ? "cleared" : (std::abs(v.margin_k) <= boundary ? "boundary" : "missed"))
               << " (margin " << format17(v.margin_k) << ")";
        if (!count_ok || !y_ok) v.admissible = false;
    }
    if (l_rp4 > 0) {
        const bool count_ok = l_rp4 < 9;
        const bool y_ok = base.yamabe > 0.0 && v.margin_l > boundary;
        detail << "; l-rule: theorem bound l < 9 "
               << (count_ok ? "ok" : "violated") << ", Y-threshold 8 sqrt(3) pi "
               << (y_ok ? "cleared" : (std::abs(v.margin_l) <= boundary ? "boundary" : "missed"))
               << " (margin " << format17(v.margin_l) << ")";
        if (!count_ok || !y_ok) v.admissible = false;
    }
    if (k_s1s3 == 0 && l_rp4 == 0) detail << "; no surgery requested";
    v.detail = detail.str();
    return v;
}

bool lcf_sum_check(int k, int l) {
    if (k < 0 || l < 0) throw config_error("lcf_sum_check: counts must be nonnegative");
    if (k == 0 && l == 0) throw config_error("lcf_sum_check: at least one summand required");
    const double y = 8.0 * std::sqrt(3.0) * kPi;
    return 8.0 * kPi2 * (-2.0 * k - l + 2.0) + y * y / 3.0 > 0.0;
}

bool pair_sum_check(const TopologyRecord& a, const TopologyRecord& b) {
    if (!(a.q_total >= 0.0 && b.q_total >= 0.0))
        throw config_error("pair_sum_check: both records need q_total >= 0");
    const double threshold = 4.0 * std::sqrt(3.0) * kPi;
    return a.yamabe > threshold && b.yamabe > threshold;
}

std::string records_to_json(const std::vector<TopologyRecord>& recs) {
    std::ostringstream os;
    os << "{\n  \"records\": [\n";
    for (size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        os << "    {\"name\": " << json_escape(r.name) << ", \"chi\": " << r.chi
           << ", \"weyl_l2\": " << format17(r.weyl_l2) << ", \"yamabe\": " << format17(r.yamabe)
           << ", \"q_total\": " << format17(r.q_total)
           << ", \"provenance\": " << json_escape(r.provenance) << "}";
        os << (i + 1 < recs.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

std::vector<TopologyRecord> records_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("records_from_json: ") + e.what());
    }
    if (!j.contains("records") || !j["records"].is_array())
        throw config_error("records_from_json: missing 'records' array");
    std::vector<TopologyRecord> out;
    try {
        for (const auto& item : j["records"]) {
            TopologyRecord r;
            r.name = item.at("name").get<std::string>();
            r.chi = item.at("chi").get<int>();
            r.weyl_l2 = item.at("weyl_l2").get<double>();
            r.yamabe = item.at("yamabe").get<double>();
            r.q_total = item.at("q_total").get<double>();
            if (item.contains("provenance")) r.provenance = item["provenance"].get<std::string>();
            if (r.weyl_l2 < 0.0)
                throw config_error("records_from_json: weyl_l2 must be nonnegative");
            out.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("records_from_json: ") + e.what());
    }
    return out;
}

}  // namespace conf4
