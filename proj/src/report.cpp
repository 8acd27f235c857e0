#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "coindex/verify.hpp"

namespace coindex {

using nlohmann::json;

namespace {

json row_to_json(const ResidueRow& r) {
    json out;
    out["point"] = r.point_id;
    if (r.value) out["value"] = to_string(*r.value);
    out["contribution"] = to_string(r.contribution);
    if (r.block_size > 1) {
        out["block_size"] = r.block_size;
        out["block_lead"] = r.block_lead;
    }
    if (!r.note.empty()) out["note"] = r.note;
    if (r.numeric_re) {
        out["numeric"] = {{"re", *r.numeric_re},
                          {"im", *r.numeric_im},
                          {"error_bound", *r.numeric_err}};
        out["method"] = "exact+numeric";
    } else {
        out["method"] = "exact";
    }
    if (r.stable_at) out["transformation_law_stable_at"] = *r.stable_at;
    return out;
}

}  // namespace

std::string VerificationReport::to_json(bool with_timing) const {
    json out;
    out["tool"] = "coindex";
    out["family"] = family;
    out["mode"] = mode;
    out["order"] = order;
    json pairj;
    pairj["nu"] = nu;
    pairj["nu_certain"] = nu_certain;
    pairj["tangential"] = tangential;
    pairj["dfg_trivial"] = dfg_trivial;
    pairj["variant"] = variant;
    out["pair"] = pairj;
    out["atlas"] = atlas_results;
    json pts = json::array();
    for (const auto& p : points) {
        json pj;
        pj["id"] = p.id;
        pj["chart"] = p.chart;
        pj["kind"] = p.algebraic ? "algebraic" : "exact";
        if (p.algebraic) {
            pj["min_poly"] = p.min_poly;
            pj["root_index"] = p.root_index;
        } else {
            pj["coords"] = p.coords;
        }
        pj["approx"] = {p.approx_re, p.approx_im};
        pj["multiplicity"] = p.multiplicity;
        pts.push_back(pj);
    }
    out["singular_points"] = pts;
    json ths;
    for (const auto& t : theorems) {
        json tj;
        tj["theorem"] = t.theorem;
        json rows = json::array();
        for (const auto& r : t.rows) rows.push_back(row_to_json(r));
        tj["residues"] = rows;
        tj["sum"] = to_string(t.sum);
        if (t.target) tj["target"] = to_string(*t.target);
        tj["verdict"] = t.verdict;
        if (!t.detail.empty()) tj["detail"] = t.detail;
        ths[t.key] = tj;
    }
    out["theorems"] = ths;
    json cal;
    cal["cs"] = calibration.cs_note;
    cal["bb"] = {{"sign", calibration.bb_sign}, {"note", calibration.bb_note}};
    cal["ls"] = {{"sign", calibration.ls_sign}, {"note", calibration.ls_note}};
    cal["consistent"] = calibration.consistent;
    out["calibration"] = cal;
    if (!notes.empty()) out["notes"] = notes;
    out["verdict"] = all_pass() ? "PASS" : "FAIL";
    if (with_timing) out["timing_ms"] = elapsed_ms;
    return out.dump(2);
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "coindex verification report\n";
    os << "  family:  " << family << "\n";
    os << "  mode:    " << mode << "   truncation order: " << order << "\n";
    os << "  pair:    nu = " << nu << (nu_certain ? "" : " (truncation-limited)")
       << ", tangential = " << (tangential ? "yes" : "no")
       << ", d_fg trivial = " << (dfg_trivial ? "yes" : "no");
    if (!variant.empty()) os << ", variant = " << variant;
    os << "\n";
    if (!atlas_results.empty()) {
        os << "  atlas:   ";
        bool first = true;
        for (const auto& [k, v] : atlas_results) {
            if (!first) os << ", ";
            os << k << "=" << v;
            first = false;
        }
        os << "\n";
    }
    if (!points.empty()) {
        os << "  singular points (" << points.size() << "):\n";
        for (const auto& p : points) {
            os << "    " << p.id << "  chart " << p.chart << "  mult " << p.multiplicity;
            os << "  ~(" << std::setprecision(6) << p.approx_re << ", " << p.approx_im << ")";
            os << "\n";
        }
    }
    for (const auto& t : theorems) {
        os << "  [" << t.key << "] (" << t.theorem << ")\n";
        for (const auto& r : t.rows) {
            os << "    " << r.point_id << ": ";
            if (r.value)
                os << to_string(*r.value);
            else
                os << "(block sum " << to_string(r.contribution) << ")";
            if (r.numeric_re)
                os << "   numeric " << std::setprecision(12) << *r.numeric_re
                   << (r.numeric_im && *r.numeric_im >= 0 ? "+" : "") << *r.numeric_im
                   << "i (err<=" << std::setprecision(2) << *r.numeric_err << ")";
            if (r.stable_at) os << "   stable at D=" << *r.stable_at;
            if (!r.note.empty()) os << "   [" << r.note << "]";
            os << "\n";
        }
        os << "    sum = " << to_string(t.sum);
        if (t.target) os << "   target = " << to_string(*t.target);
        os << "   " << t.verdict;
        if (!t.detail.empty()) os << "  (" << t.detail << ")";
        os << "\n";
    }
    os << "  calibration: cs: " << calibration.cs_note << "\n";
    os << "               bb: sign " << (calibration.bb_sign > 0 ? "+1" : "-1") << ", "
       << calibration.bb_note << "\n";
    os << "               ls: sign " << (calibration.ls_sign > 0 ? "+1" : "-1") << ", "
       << calibration.ls_note << "\n";
    for (const auto& n : notes) os << "  note: " << n << "\n";
    os << "  overall: " << (all_pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace coindex
