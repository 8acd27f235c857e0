#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coindex/residues.hpp"

namespace coindex {

/// Declarative input of the verifier: a family, the theorems to check and the
/// evaluation options. Parsed from JSON with unknown keys rejected.
struct VerificationConfig {
    enum class FamilyType { builtin_blowup, chart_pair, singular_chart_pair };
    FamilyType type = FamilyType::builtin_blowup;
    int n = 2;
    std::vector<PolyN> F, G;  // downstairs maps (builtin) or chart maps f, g

    // singular_chart_pair extras
    std::optional<PolyN> y;
    struct Branch {
        std::vector<GaussRat> u1, u2;  // jet coefficients in the branch parameter
        std::string variant = "cs4";   // cs4 | cs5 | cs6
    };
    std::vector<Branch> branches;

    std::vector<std::string> theorems;  // subset of {"cs","bb","ls"}
    std::string variant = "auto";       // foliation variant
    std::vector<PhiSpec> phi_bb, phi_ls;
    int order = 0;  // truncation order; 0 = automatic (max(2 nu + 4, 8))
    std::string mode = "exact";
    std::vector<std::vector<GaussRat>> candidates;  // homogeneous points, n >= 3
    std::map<std::string, std::string> targets;     // optional target overrides, "p/q"

    static VerificationConfig from_json_text(const std::string& text);
    static VerificationConfig from_file(const std::string& path);
};

struct PointRecord {
    std::string id;
    int chart = 0;
    bool algebraic = false;
    std::vector<std::string> coords;  // exact coordinates, "p/q" strings
    std::string min_poly;             // algebraic points
    int root_index = 0;
    double approx_re = 0, approx_im = 0;
    int multiplicity = 1;
};

struct ResidueRow {
    std::string point_id;
    std::optional<GaussRat> value;  // per-point exact value when representable
    GaussRat contribution;          // exact contribution to the sum (block counted once)
    int block_size = 1;
    bool block_lead = true;  // false for non-lead members of a shared algebraic block
    std::string note;
    std::optional<double> numeric_re, numeric_im, numeric_err;  // float-mode oracle
    std::optional<int> stable_at;  // transformation-law stabilization degree
};

struct TheoremResult {
    std::string key;     // "cs", "bb[e1^2]", "ls[e1]", "multiplicity", "cs_singular[cs4]"
    std::string theorem; // "th1" | "th2" | "th3" | "audit"
    std::vector<ResidueRow> rows;
    GaussRat sum;
    std::optional<GaussRat> target;
    std::string verdict;  // "PASS" | "FAIL" | "REPORT-ONLY" | "INAPPLICABLE"
    std::string detail;
};

struct CalibrationRecord {
    int bb_sign = -1;
    int ls_sign = +1;
    std::string cs_note, bb_note, ls_note;
    bool consistent = true;
};

struct VerificationReport {
    std::string family;
    std::string mode = "exact";
    int order = 8;
    int nu = 0;
    bool nu_certain = true;
    bool tangential = false;
    bool dfg_trivial = false;
    std::string variant;
    std::map<std::string, std::string> atlas_results;
    std::vector<PointRecord> points;
    std::vector<TheoremResult> theorems;
    CalibrationRecord calibration;
    std::vector<std::string> notes;
    double elapsed_ms = 0;

    bool all_pass() const;
    int exit_code() const;  // 0 verified, 1 mismatch
    std::string to_json(bool with_timing = false) const;
    std::string to_text() const;
};

/// One-time sign calibration on the built-in blow-up suite. Throws when no
/// single sign reproduces the characteristic targets.
CalibrationRecord calibrate_signs(int order = 10);

VerificationReport run_verification(const VerificationConfig& cfg);

/// Built-in example configurations (JSON text), keyed by name; used by the CLI
/// (`coindex examples`), the acceptance suite and the Python smoke tests.
std::map<std::string, std::string> builtin_configs();

/// Report-side series serialization: a list of (exponent vector, exact
/// numerator/denominator integer strings). Round-trips exactly.
std::string series_to_json_text(const MultiSeries<GaussRat>& s);
MultiSeries<GaussRat> series_from_json_text(const std::string& text, int nvars);

}  // namespace coindex
