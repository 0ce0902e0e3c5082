#pragma once

// JSON serialization for the CLI and for round-tripping elements.

#include <string>

#include <json.hpp>

#include "core.hpp"
#include "element.hpp"
#include "identities.hpp"
#include "jfunctions.hpp"
#include "reflection.hpp"

namespace descff {

using Json = nlohmann::ordered_json;

inline Json to_json(Cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Cplx cplx_from_json(const Json& j) {
    return Cplx(j.at("re").get<double>(), j.at("im").get<double>());
}

inline Json to_json(const RhoLaurent& r) {
    Json degs = Json::object();
    for (auto& [d, c] : r.coeffs()) degs[std::to_string(d)] = to_json(c);
    return Json{{"rho_degrees", degs}};
}

inline Json to_json(const Element& e) {
    Json terms = Json::array();
    for (auto& [key, coeff] : e.terms()) {
        Json t;
        t["chiral"] = key.first.parts();
        t["antichiral"] = key.second.parts();
        if (e.mode() == CoeffMode::Numeric)
            t["coeff"] = to_json(coeff.coeff(0));
        else
            t["coeff"] = to_json(coeff);
        terms.push_back(t);
    }
    return terms;
}

inline Element element_from_json(const Json& j) {
    Element e;
    for (const auto& t : j) {
        Partition ch(t.at("chiral").get<std::vector<int>>());
        Partition ach(t.at("antichiral").get<std::vector<int>>());
        const Json& c = t.at("coeff");
        if (c.contains("rho_degrees")) {
            RhoLaurent r;
            for (auto& [deg, val] : c.at("rho_degrees").items())
                r.add(std::stoi(deg), cplx_from_json(val));
            e += Element::monomial(ch, ach, r);
        } else {
            e += Element::monomial(ch, ach, cplx_from_json(c));
        }
    }
    return e;
}

inline Json to_json(const JResult& r, Cplx a, const ModelParams& params,
                    const std::string& element_text) {
    Json j;
    j["N"] = r.N;
    if (r.symbolic)
        j["rho_poly"] = to_json(r.rho_poly);
    else
        j["value"] = to_json(r.value);
    j["element"] = element_text;
    j["a"] = to_json(a);
    j["p"] = to_json(params.p);
    j["level"] = r.level;
    j["antilevel"] = r.antilevel;
    j["err_estimate"] = r.err_estimate;
    return j;
}

inline Json to_json(const IdentityReport& r) {
    Json j;
    j["identity"] = r.name;
    if (!r.note.empty()) j["note"] = r.note;
    j["p"] = to_json(r.p);
    j["a"] = to_json(r.a);
    j["N"] = r.N;
    j["lhs"] = to_json(r.lhs);
    j["rhs"] = to_json(r.rhs);
    j["deviation"] = r.deviation;
    j["pass"] = r.pass;
    return j;
}

inline Json to_json(const ReflectionSolution& s) {
    Json j;
    j["level"] = s.level;
    Json basis = Json::array();
    for (const auto& b : s.basis) basis.push_back(b.parts());
    j["basis"] = basis;
    Json m = Json::array();
    for (size_t i = 0; i < s.basis.size(); ++i) {
        Json row = Json::array();
        for (size_t k = 0; k < s.basis.size(); ++k) row.push_back(to_json(s.matrix(i, k)));
        m.push_back(row);
    }
    j["matrix"] = m;
    j["residual"] = s.residual;
    j["condition"] = s.condition;
    j["samples"] = s.samples;
    j["sampled_n"] = s.sampled_n;
    return j;
}

}  // namespace descff
