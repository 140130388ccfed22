#include "k3g2/report.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "k3g2/rational.hpp"

namespace k3g2 {

namespace {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q) { return to_string(q); }

Json ratvec_json(const RatVec& v) {
    Json out = Json::array();
    for (const Rational& q : v) out.push_back(rational_json(q));
    return out;
}

Json keep_json(const KeepSet& k) {
    if (!k) return nullptr;
    Json out = Json::array();
    for (int i : *k) out.push_back(i);
    return out;
}

std::string keep_text(const KeepSet& k) {
    if (!k) return "untouched";
    if (k->empty()) return "{} (fully smoothed)";
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int i : *k) {
        if (!first) os << ",";
        os << i;
        first = false;
    }
    os << "}";
    return os.str();
}

Json checks_json(const std::vector<CheckResult>& checks) {
    Json out = Json::object();
    for (const CheckResult& c : checks) {
        if (c.passed)
            out[c.name] = true;
        else
            out[c.name] = Json{{"passed", false}, {"witness", c.witness}};
    }
    return out;
}

Json intmat_json(const IntMatrix& m) {
    if (m.rows == 0) return nullptr;
    Json out = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(static_cast<long>(m.at(i, j).get_si()));
        out.push_back(row);
    }
    return out;
}

Json signs_json(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    return Json::array({Json::array({a[0], a[1], a[2]}), Json::array({b[0], b[1], b[2]})});
}

Json conventions_json() {
    return Json{
        {"basis",
         "hyperbolic blocks use the standard isotropic pair; definite blocks use the Bourbaki "
         "numbering of their simple roots"},
        {"volume_normalization",
         "the three self-dual two-forms of the four-dimensional factor wedge pairwise to twice "
         "the coordinate volume form, and all metric statements are normalized against the "
         "coordinate volume"},
        {"scaling",
         "equal period norms are tracked through squared scale factors; only the rational rays "
         "enter derived quantities, so no irrational rescaling is introduced"},
        {"cohomology_action",
         "degree-two and degree-three counts use the action that fixes the definite blocks, with "
         "the classes collapsed at the singular points removed by the rank subtraction; the "
         "signs on perturbed definite blocks are reported under isometries"}};
}

Json report_json_object(const OrbifoldReport& rep) {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = rep.spec.kind;
    j["keep1"] = keep_json(rep.spec.keep1);
    j["keep2"] = keep_json(rep.spec.keep2);
    j["crosscheck"] = rep.spec.crosscheck;

    j["periods"] = Json{{"x1", ratvec_json(rep.periods.x1.coords)},
                        {"x2", ratvec_json(rep.periods.x2.coords)},
                        {"x3", ratvec_json(rep.periods.x3.coords)},
                        {"scale_sq2", rational_json(rep.periods.scale_sq2)},
                        {"scale_sq3", rational_json(rep.periods.scale_sq3)},
                        {"common_norm", rational_json(rep.periods.common_norm)}};

    Json sing = Json::array();
    for (size_t i = 0; i < rep.singularities.system.components.size(); ++i) {
        const DynkinComponent& c = rep.singularities.system.components[i];
        sing.push_back(Json{{"block", rep.singularities.component_blocks[i]},
                            {"label", c.label},
                            {"rank", c.node_count}});
    }
    j["singularities"] = sing;
    j["singular_points"] = rep.singularities.point_count;

    j["gauge_group"] = Json{{"factors", rep.singularities.gauge.factors},
                            {"total_rank", rep.singularities.gauge.total_rank},
                            {"abelian_rank", rep.singularities.gauge.abelian_rank},
                            {"display", rep.singularities.gauge.str()}};

    j["betti"] = Json{{"b2", rep.betti.b2},
                      {"b3", rep.betti.b3},
                      {"b1N", rep.betti.b1n},
                      {"h2_invariant_dimension", rep.betti.h2_invariant},
                      {"h2_first_generator_invariant_dimension", rep.betti.h2_first_generator_invariant}};

    Json mono = Json::array();
    for (const ComponentMonodromy& m : rep.monodromy) {
        Json entry{{"component", m.label},
                   {"block", m.block},
                   {"trivial", m.trivial},
                   {"generator_automorphisms", m.generator_automorphisms}};
        entry["folded_label"] = m.folded_label.empty() ? Json(nullptr) : Json(m.folded_label);
        entry["fiber_comparison"] = m.fiber_comparison.empty() ? Json(nullptr) : Json(m.fiber_comparison);
        mono.push_back(entry);
    }
    j["monodromy"] = mono;

    j["isometries"] =
        Json{{"h_signs", signs_json(rep.isometries.h_signs1, rep.isometries.h_signs2)},
             {"definite_block_signs",
              Json::array({Json::array({rep.isometries.def_signs1[0], rep.isometries.def_signs1[1]}),
                           Json::array({rep.isometries.def_signs2[0], rep.isometries.def_signs2[1]})})}};

    j["checks"] = checks_json(rep.checks);
    j["conventions"] = conventions_json();
    j["valid"] = rep.valid;
    return j;
}

Json flat_json_object(const FlatModelReport& rep) {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = rep.kind;
    j["n"] = rep.n;
    j["fiber"] = Json{{"order", rep.fiber_order},
                      {"unfolded_label",
                       rep.unfolded_label.empty() ? Json(nullptr) : Json(rep.unfolded_label)}};
    j["torus"] = Json{{"order", rep.torus_order},
                      {"abelian", rep.torus_abelian},
                      {"element_orders", rep.torus_element_orders}};
    j["free_action"] = rep.free_action;
    j["monodromy"] = Json{{"exponent", rep.exponent},
                          {"automorphism", rep.automorphism},
                          {"folded_label",
                           rep.folded_label.empty() ? Json(nullptr) : Json(rep.folded_label)}};
    j["alignment"] = intmat_json(rep.alignment);
    j["note"] = rep.note.empty() ? Json(nullptr) : Json(rep.note);
    j["checks"] = checks_json(rep.checks);
    j["valid"] = rep.valid;
    return j;
}

int failed_count(const std::vector<CheckResult>& checks) {
    int n = 0;
    for (const CheckResult& c : checks)
        if (!c.passed) ++n;
    return n;
}

}  // namespace

std::string report_to_json(const OrbifoldReport& rep) { return report_json_object(rep).dump(2); }

std::string report_to_text(const OrbifoldReport& rep) {
    std::ostringstream os;
    os << "kind " << rep.spec.kind << ", keep1 " << keep_text(rep.spec.keep1) << ", keep2 "
       << keep_text(rep.spec.keep2) << "\n";
    os << "periods: common norm " << to_string(rep.periods.common_norm) << ", scale squares "
       << to_string(rep.periods.scale_sq2) << ", " << to_string(rep.periods.scale_sq3) << "\n";
    os << "singular points: " << rep.singularities.point_count << "\n";
    if (rep.singularities.system.components.empty()) {
        os << "singularities: none\n";
    } else {
        os << "singularities:";
        for (size_t i = 0; i < rep.singularities.system.components.size(); ++i)
            os << " " << rep.singularities.system.components[i].label << "["
               << rep.singularities.component_blocks[i] << "]";
        os << "\n";
    }
    os << "gauge group: " << rep.singularities.gauge.str() << "\n";
    os << "betti: b2 = " << rep.betti.b2 << ", b3 = " << rep.betti.b3
       << ", b1N = " << rep.betti.b1n << "\n";
    for (const ComponentMonodromy& m : rep.monodromy) {
        os << "monodromy " << m.label << "[" << m.block << "]: "
           << (m.trivial ? "trivial" : "nontrivial");
        if (!m.folded_label.empty()) os << " -> " << m.folded_label;
        if (!m.fiber_comparison.empty()) os << " (fiber route: " << m.fiber_comparison << ")";
        os << "\n";
    }
    os << "checks: " << rep.checks.size() - static_cast<size_t>(failed_count(rep.checks))
       << " passed, " << failed_count(rep.checks) << " failed\n";
    for (const CheckResult& c : rep.checks)
        if (!c.passed) os << "  failed " << c.name << ": " << c.witness << "\n";
    os << "valid: " << (rep.valid ? "yes" : "no") << "\n";
    return os.str();
}

std::string flat_report_to_json(const FlatModelReport& rep) { return flat_json_object(rep).dump(2); }

std::string flat_report_to_text(const FlatModelReport& rep) {
    std::ostringstream os;
    os << "kind " << rep.kind << ", fiber order " << rep.n << "\n";
    os << "fiber group: order " << rep.fiber_order;
    if (!rep.unfolded_label.empty()) os << " (" << rep.unfolded_label << ")";
    os << "\n";
    os << "base group: order " << rep.torus_order << ", "
       << (rep.torus_abelian ? "abelian" : "nonabelian") << ", free action: "
       << (rep.free_action ? "yes" : "no") << "\n";
    os << "monodromy: exponent " << rep.exponent << ", " << rep.automorphism;
    if (!rep.folded_label.empty()) os << " -> " << rep.folded_label;
    os << "\n";
    if (!rep.note.empty()) os << "note: " << rep.note << "\n";
    os << "checks: " << rep.checks.size() - static_cast<size_t>(failed_count(rep.checks))
       << " passed, " << failed_count(rep.checks) << " failed\n";
    for (const CheckResult& c : rep.checks)
        if (!c.passed) os << "  failed " << c.name << ": " << c.witness << "\n";
    os << "valid: " << (rep.valid ? "yes" : "no") << "\n";
    return os.str();
}

std::string catalog_to_json(const CatalogResult& cat) {
    Json j;
    j["schema_version"] = 1;
    if (!cat.entries.empty()) j["kind"] = cat.entries.front().spec.kind;
    Json entries = Json::array();
    for (const CatalogEntry& e : cat.entries) {
        entries.push_back(Json{{"name", e.name}, {"report", report_json_object(e.report)}});
    }
    j["entries"] = entries;
    j["realized_labels"] = cat.realized_labels;
    j["has_empty_entry"] = cat.has_empty_entry;
    j["labels_complete"] = cat.labels_complete;
    j["all_valid"] = cat.all_valid;
    return j.dump(2);
}

std::string catalog_to_text(const CatalogResult& cat) {
    std::ostringstream os;
    for (const CatalogEntry& e : cat.entries) {
        os << e.name << ": ";
        if (e.report.singularities.system.components.empty())
            os << "no singular points";
        else {
            for (size_t i = 0; i < e.report.singularities.system.components.size(); ++i) {
                if (i) os << " + ";
                os << e.report.singularities.system.components[i].label;
            }
        }
        os << "; gauge " << e.report.singularities.gauge.str() << "; b2 = " << e.report.betti.b2
           << ", b3 = " << e.report.betti.b3 << "; "
           << (e.report.valid ? "valid" : "INVALID") << "\n";
    }
    os << "realized labels:";
    for (const std::string& s : cat.realized_labels) os << " " << s;
    os << "\n";
    os << "empty configuration present: " << (cat.has_empty_entry ? "yes" : "no") << "\n";
    os << "labels complete: " << (cat.labels_complete ? "yes" : "no") << "\n";
    os << "all entries valid: " << (cat.all_valid ? "yes" : "no") << "\n";
    return os.str();
}

OrbifoldSpec parse_spec_json(const std::string& text) {
    Json j = Json::parse(text);
    if (!j.is_object()) throw std::runtime_error("configuration must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_number_integer())
        throw std::runtime_error("configuration requires an integer \"kind\"");
    OrbifoldSpec spec;
    spec.kind = j["kind"].get<int>();
    auto parse_keep = [&j](const std::string& key) -> KeepSet {
        if (!j.contains(key) || j[key].is_null()) return std::nullopt;
        if (!j[key].is_array())
            throw std::runtime_error("\"" + key + "\" must be null or an array of node indices");
        std::set<int> s;
        for (const auto& v : j[key]) {
            if (!v.is_number_integer())
                throw std::runtime_error("\"" + key + "\" entries must be integers");
            s.insert(v.get<int>());
        }
        return s;
    };
    spec.keep1 = parse_keep("keep1");
    spec.keep2 = parse_keep("keep2");
    spec.crosscheck = true;
    if (j.contains("options") && j["options"].is_object()) {
        const auto& opts = j["options"];
        if (opts.contains("crosscheck")) {
            if (!opts["crosscheck"].is_boolean())
                throw std::runtime_error("options.crosscheck must be a boolean");
            spec.crosscheck = opts["crosscheck"].get<bool>();
        }
    }
    return spec;
}

}  // namespace k3g2
