// JSON serialization of certificates, bound reports and solution tables; the
// schemas are documented in docs/formats.md.
#pragma once

#include <json.hpp>

#include <fstream>

#include "ppgaps/logbounds.hpp"
#include "ppgaps/search.hpp"
#include "ppgaps/sieves.hpp"

namespace ppg {

inline std::string real_str(const Real& x, int digits = 20) {
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, x.raw());
    return buf;
}

inline nlohmann::json to_json(const ResidueSet& r) {
    nlohmann::json j;
    j["modulus"] = r.modulus.get_str();
    auto& arr = j["residues"] = nlohmann::json::array();
    for (const auto& x : r.residues) arr.push_back(x.get_str());
    return j;
}

inline nlohmann::json to_json(const SieveCertificate& c) {
    nlohmann::json j;
    j["sieve"] = c.kind;
    j["q"] = c.q;
    if (c.delta >= 0) j["delta"] = c.delta;
    if (c.kappa >= 0) j["kappa"] = c.kappa;
    if (c.v >= 0) j["v"] = c.v;
    if (c.eta != 0) j["eta"] = c.eta;
    if (!c.curve.empty()) j["curve"] = c.curve;
    j["n"] = c.n;
    j["primes"] = c.primes;
    j["residues"] = to_json(c.surviving)["residues"];
    j["modulus"] = c.surviving.modulus.get_str();
    j["seed"] = c.seed;
    j["duration_ms"] = c.duration_ms;
    j["threads"] = c.threads;
    j["exhausted"] = c.exhausted;
    j["symplectic"] = c.symplectic;
    j["empty"] = c.empty();
    return j;
}

inline nlohmann::json to_json(const MignotteReport& r) {
    nlohmann::json j;
    j["q"] = r.q;
    j["rho"] = r.row.rho;
    j["L"] = r.row.L;
    j["m"] = r.row.m;
    j["chi"] = r.row.chi;
    j["target"] = r.row.target;
    j["prev_bound"] = r.prev_bound;
    j["K1"] = real_str(r.K1);
    j["K2"] = real_str(r.K2y);
    j["S1"] = r.S1;
    j["S2"] = r.S2;
    j["S3"] = r.S3;
    j["c1"] = real_str(r.c1);
    j["c2"] = real_str(r.c2);
    j["c3"] = real_str(r.c3);
    j["g_sup"] = real_str(r.g_sup);
    j["b_sup"] = real_str(r.b_sup);
    j["log_y_min"] = real_str(r.u_min);
    j["bound_at_target"] = real_str(r.bound_at_target);
    j["derived_min_3sf"] = real_str(r.derived_min3sf);
    j["conditions"] = {{"i", r.cond_i},   {"ii", r.cond_ii},       {"iii", r.cond_iii},
                       {"iv", r.cond_iv}, {"v", r.cond_v},         {"needed", r.needed_ok},
                       {"K_gt_1e6", r.big_K}, {"C1C2_excluded", r.c1c2_excluded},
                       {"C3_excluded", r.c3_excluded}, {"j0_excluded", r.j0_excluded}};
    j["lambda_window_caller_obligation_w2"] = r.lambda_window_caller_obligation;
    j["verified"] = r.verified;
    return j;
}

inline nlohmann::json to_json(const ExponentBoundResult& r) {
    nlohmann::json j;
    j["q"] = r.q;
    j["matveev_first_stage"] = real_str(r.first_stage);
    j["matveev_first_stage_printed"] = real_str(r.first_stage_group);
    j["U_q"] = real_str(r.U_q);
    j["all_rows_verified"] = r.all_rows_verified;
    j["final_row_is_minimal"] = r.final_row_is_minimal;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& rep : r.rows) rows.push_back(to_json(rep));
    return j;
}

inline nlohmann::json to_json(const Solution& s) {
    return nlohmann::json{{"q", s.q},           {"delta", s.delta}, {"alpha", s.alpha},
                          {"x", s.x.get_str()}, {"y", s.y.get_str()}, {"n", s.n}};
}

inline nlohmann::json to_json(const std::vector<Solution>& v) {
    auto arr = nlohmann::json::array();
    for (const auto& s : v) arr.push_back(to_json(s));
    return arr;
}

inline std::string solutions_csv(const std::vector<Solution>& v) {
    std::string out = "q,delta,alpha,x,y,n\n";
    for (const auto& s : v) {
        out += std::to_string(s.q) + "," + std::to_string(s.delta) + "," + std::to_string(s.alpha) + "," +
               s.x.get_str() + "," + s.y.get_str() + "," + std::to_string(s.n) + "\n";
    }
    return out;
}

inline nlohmann::json to_json(const ThueMahlerInstance& t) {
    nlohmann::json j;
    j["degree"] = t.degree;
    auto& arr = j["coefficients"] = nlohmann::json::array();
    for (const auto& c : t.coeffs) arr.push_back(c.get_str());
    j["rhs"] = t.rhs_pattern;
    j["note"] = t.note;
    return j;
}

inline void write_output(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

}  // namespace ppg
