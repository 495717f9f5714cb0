#pragma once

// JSON report serialization (classification and residual reports).

#include <json.hpp>

#include "affsol/classify.hpp"
#include "affsol/verify.hpp"

namespace affsol {

inline nlohmann::json to_json(const ClassificationReport& rep) {
    nlohmann::json j;
    j["case"] = case_tag_name(rep.soliton_case.tag);
    if (rep.soliton_case.a) j["parameter_a"] = *rep.soliton_case.a;
    j["Q"] = {rep.map.linear.a11, rep.map.linear.a12, rep.map.linear.a21,
              rep.map.linear.a22};
    j["H"] = {rep.map.shift.x, rep.map.shift.y};
    j["canonical_B"] = {rep.canonical.B.a11, rep.canonical.B.a12, rep.canonical.B.a21,
                        rep.canonical.B.a22};
    j["canonical_C"] = {rep.canonical.C.x, rep.canonical.C.y};
    j["residual_norm"] = rep.residual_norm;
    j["boundary_flags"] = rep.boundary_flags;
    return j;
}

inline nlohmann::json to_json(const ResidualReport& rep) {
    nlohmann::json j;
    j["sup_norm"] = rep.sup_norm;
    j["n_samples"] = rep.n_samples;
    j["n_excluded"] = rep.n_excluded;
    j["argmax_u"] = rep.argmax_u;
    if (rep.argmax_t) j["argmax_t"] = *rep.argmax_t;
    return j;
}

}  // namespace affsol
