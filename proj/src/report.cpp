// Report serialization.  JSON uses ordered keys and CSV uses
// shortest-round-trip number formatting, so identical runs produce
// byte-identical files — the determinism tests diff them directly.

#include "coniccut/report.hpp"

#include <json.hpp>

#include <charconv>
#include <sstream>
#include <system_error>

namespace coniccut {

namespace {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "0";
    return std::string(buf, ptr);
}

json sparse_entries(const Vector& v) {
    json arr = json::array();
    for (int j = 0; j < v.size(); ++j) {
        if (v(j) != 0.0) arr.push_back(json::array({j, v(j)}));
    }
    return arr;
}

json round_json(const RoundStats& r) {
    json doc;
    doc["round"] = r.round;
    doc["kstar"] = r.kstar;
    doc["landp"] = r.landp;
    doc["refine_cuts"] = r.refine_cuts;
    doc["strengthened"] = r.strengthened;
    doc["density_pct"] = r.density_pct;
    doc["z_bound"] = r.z_bound;
    if (r.gap_pct) {
        doc["gap_pct"] = *r.gap_pct;
    } else {
        doc["gap_pct"] = nullptr;
    }
    doc["eta"] = r.eta;
    doc["refine_capped"] = r.refine_capped;
    doc["seconds"] = r.seconds;
    return doc;
}

json cut_record_json(const CutRecord& c) {
    json doc;
    doc["round"] = c.round;
    doc["origin"] = c.origin;
    doc["kind"] = cut_class_name(c.kind);
    doc["coordinate"] = c.coordinate;
    doc["strengthened"] = c.strengthened;
    doc["alpha"] = sparse_entries(c.alpha);
    doc["beta"] = c.beta;
    return doc;
}

}  // namespace

std::string report_json(const Report& report) {
    json doc;
    doc["instance"] = report.instance;
    doc["normalization"] = report.normalization;
    doc["relaxation"] = report.relaxation;
    doc["status"] = report.status;
    doc["z_cp"] = report.z_cp;
    doc["z_star"] = report.z_star;
    if (report.z_micp) {
        doc["z_micp"] = *report.z_micp;
    } else {
        doc["z_micp"] = nullptr;
    }
    if (report.gap_pct) {
        doc["gap_pct"] = *report.gap_pct;
    } else {
        doc["gap_pct"] = nullptr;
    }
    doc["obj_sign"] = report.obj_sign;
    doc["obj_offset"] = report.obj_offset;
    doc["total_kstar"] = report.total_kstar;
    doc["total_landp"] = report.total_landp;
    doc["total_strengthened"] = report.total_strengthened;
    doc["seconds"] = report.seconds;
    doc["message"] = report.message;
    json rounds = json::array();
    for (const RoundStats& r : report.rounds) rounds.push_back(round_json(r));
    doc["rounds"] = rounds;
    json cuts = json::array();
    for (const CutRecord& c : report.cuts) cuts.push_back(cut_record_json(c));
    doc["cuts"] = cuts;
    return doc.dump(2);
}

std::string report_csv(const Report& report) {
    std::ostringstream out;
    out << "round,kstar,landp,density_pct,gap_pct,seconds\n";
    for (const RoundStats& r : report.rounds) {
        out << r.round << ',' << r.kstar << ',' << r.landp << ','
            << format_number(r.density_pct) << ',';
        if (r.gap_pct) out << format_number(*r.gap_pct);
        out << ',' << format_number(r.seconds) << '\n';
    }
    return out.str();
}

}  // namespace coniccut
