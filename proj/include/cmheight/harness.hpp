#pragma once

#include "cmheight/bounds.hpp"

#include <iosfwd>

#include "json.hpp"

namespace cmh {

enum class ExtensionPolicy { Rational, QuadraticClosure, Cyclotomic };
std::string to_string(ExtensionPolicy p);
ExtensionPolicy parse_extension_policy(const std::string& s);

struct ExperimentConfig {
    /// "a1;a2;a3;a4;a6" over ℚ, or "j=<rational>" for the fixed CM model.
    std::vector<std::string> curves;
    long num_bound = 20;  // |a| ≤ num_bound
    long den_bound = 4;   // 1 ≤ b ≤ den_bound
    ExtensionPolicy extension = ExtensionPolicy::QuadraticClosure;
    /// ℚ(ζ_n) for the cyclotomic policy.
    int cyclotomic_n = 0;
    double tolerance = 1e-10;
    unsigned workers = 1;
    std::string csv_path;
    std::string json_path;

    /// Throws std::invalid_argument.
    void validate() const;
    /// Keys mirror the fields; "curves" may also be "cm" (all 13 CM
    /// j-invariants) and "curves_file" names a file with one curve per line.
    /// Relative paths are resolved against base_dir.
    static ExperimentConfig from_json(const nlohmann::json& j, const std::string& base_dir = "");
    static ExperimentConfig from_file(const std::string& path);
};

/// All 13 CM curves as "j=..." entries, ordered as cm_table().
std::vector<std::string> cm_curve_list();
CurvePtr resolve_curve(const std::string& spec);

/// Points with x = a/b in the box, in lexicographic (a, b) order, one per
/// reduced x. y is taken from the positive square root of the discriminant of
/// the y-quadratic; a non-square gives a point over ℚ(√core).
std::vector<CurvePoint> sample_points(const CurvePtr& E, const ExperimentConfig& cfg);

struct SweepRow {
    std::string curve;
    std::string j;
    std::string field;
    std::string x;
    std::string hhat_mid;
    std::string hhat_rad;
    std::string main_bound;
    std::string verdict;  // a Verdict, or "error"
    std::string error;
    nlohmann::json certificate;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::size_t inconsistent = 0;
    std::size_t errors = 0;
    int exit_code() const { return inconsistent == 0 && errors == 0 ? 0 : 1; }
};

SweepResult run_sweep(const ExperimentConfig& cfg);
void write_csv(const SweepResult& r, std::ostream& os);
nlohmann::json certificates_json(const SweepResult& r);

/// Subcommands height, bound, certify, torsion, galois, chain and sweep.
/// Exit codes: 0 success, 1 malformed input, failed computation or a sweep
/// with inconsistent verdicts or errors, 2 unknown subcommand.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmh
