// Versioned store of the fixed mathematical data: curve models, class-field
// constants, the admissible (q,delta,kappa) triples and which quadruples have
// modular targets.  Loaded once from a JSON file checked into the repo;
// read-only afterwards.
#pragma once

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "ppgaps/quadfield.hpp"
#include "ppgaps/tate.hpp"

namespace ppg {

struct CurveRecord {
    std::string label;
    WeierstrassModel model;
    BigInt conductor;
    std::string provenance;
};

struct ClassDataRecord {
    int q = 0;
    int h = 0;
    long alpha_u = 0, alpha_v = 0;  // alpha_q = (u + v sqrt(-q))/2
    int eps2 = 0;
    long cos_num = 0, cos_den = 0;  // |log(eps2 beta_q)| = arccos(cos_num/cos_den)
    double kappa_q = 0;

    QuadInt alpha() const {
        return QuadInt::from_halves(QuadOrder::make(BigInt(-q)), BigInt(alpha_u), BigInt(alpha_v));
    }
    Real theta() const { return racos(Real(cos_num) / Real(cos_den)); }
};

struct MersenneFermatRecord {
    int q = 0, m = 0, eta = 0;
    std::string curve;
};

enum class FamilyStatus { targets, eliminated, not_covered };

struct FamilyTargets {
    FamilyStatus status = FamilyStatus::not_covered;
    std::vector<const CurveRecord*> curves;
};

struct not_found_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Registry {
  public:
    static std::string default_path() {
        if (const char* env = std::getenv("PPGAPS_DATA")) return env;
        return std::string(PPGAPS_DATA_DIR) + "/curves.json";
    }

    static Registry load(const std::string& path = default_path()) {
        std::ifstream in(path);
        if (!in) throw not_found_error("registry: cannot open data file " + path);
        nlohmann::json j;
        in >> j;
        Registry r;
        for (const auto& c : j.at("curves")) {
            CurveRecord rec;
            rec.label = c.at("label").get<std::string>();
            auto a = c.at("a");
            rec.model = WeierstrassModel{BigInt((long)a[0]), BigInt((long)a[1]), BigInt((long)a[2]),
                                         BigInt((long)a[3]), BigInt((long)a[4]), rec.label};
            rec.conductor = BigInt((long)c.at("conductor").get<long>());
            rec.provenance = c.at("provenance").get<std::string>();
            r.curves_.push_back(std::move(rec));
        }
        for (const auto& t : j.at("admissible_triples"))
            r.triples_.push_back({(int)t[0], (int)t[1], (int)t[2]});
        for (const auto& f : j.at("families")) {
            FamilyKey k{f.at("q").get<int>(), f.at("delta").get<int>(), f.at("kappa").get<int>(),
                        f.at("v").get<int>()};
            std::vector<std::string> labels;
            for (const auto& l : f.at("curves")) labels.push_back(l.get<std::string>());
            r.families_[k] = labels;
        }
        for (const auto& m : j.at("mersenne_fermat"))
            r.mf_.push_back({m.at("q").get<int>(), m.at("m").get<int>(), m.at("eta").get<int>(),
                             m.at("curve").get<std::string>()});
        for (const auto& c : j.at("class_data")) {
            ClassDataRecord d;
            d.q = c.at("q").get<int>();
            d.h = c.at("h").get<int>();
            d.alpha_u = c.at("alpha_u").get<long>();
            d.alpha_v = c.at("alpha_v").get<long>();
            d.eps2 = c.at("eps2").get<int>();
            d.cos_num = c.at("cos_num").get<long>();
            d.cos_den = c.at("cos_den").get<long>();
            d.kappa_q = c.at("kappa_q").get<double>();
            r.class_data_.push_back(d);
        }
        return r;
    }

    const CurveRecord& lookup_curve(const std::string& label) const {
        for (const auto& c : curves_)
            if (c.label == label) return c;
        throw not_found_error("registry: unknown curve label " + label);
    }

    bool triple_admissible(int q, int delta, int kappa) const {
        for (auto& t : triples_)
            if (t.q == q && t.delta == delta && t.kappa == kappa) return true;
        return false;
    }

    FamilyTargets family_targets(int q, int delta, int kappa, int v) const {
        FamilyTargets out;
        if (!triple_admissible(q, delta, kappa)) {
            out.status = FamilyStatus::not_covered;
            return out;
        }
        auto it = families_.find(FamilyKey{q, delta, kappa, v});
        if (it == families_.end()) {
            out.status = FamilyStatus::eliminated;  // admissible but no Table row survives
            return out;
        }
        out.status = FamilyStatus::targets;
        for (const auto& l : it->second) out.curves.push_back(&lookup_curve(l));
        return out;
    }

    const ClassDataRecord& class_data(int q) const {
        for (const auto& d : class_data_)
            if (d.q == q) return d;
        throw not_found_error("registry: no class data for q=" + std::to_string(q));
    }

    const MersenneFermatRecord* mersenne_fermat(int q) const {
        for (const auto& m : mf_)
            if (m.q == q) return &m;
        return nullptr;
    }

    const std::vector<CurveRecord>& curves() const { return curves_; }

    // Re-derive every stored invariant; throws on mismatch.
    void validate() const {
        for (const auto& c : curves_) {
            if (c.model.disc() == 0) throw domain_error("registry: singular model " + c.label);
            if (conductor(c.model) != c.conductor)
                throw domain_error("registry: conductor mismatch for " + c.label);
            if (c.provenance == "paper-table") {
                // semistable: multiplicative reduction at 2 and at the odd part
                for (const BigInt& p : factor_distinct(c.conductor)) {
                    LocalData d = local_data(c.model, to_u64(p));
                    if (d.f != 1) throw domain_error("registry: " + c.label + " not semistable");
                }
            }
        }
        for (const auto& d : class_data_) {
            QuadInt a = d.alpha();
            if (a.norm() != big_pow(BigInt(2), d.h))
                throw domain_error("registry: Norm(alpha_q) != 2^h for q=" + std::to_string(d.q));
            if (class_number_imaginary(d.q) != d.h)
                throw domain_error("registry: class number mismatch for q=" + std::to_string(d.q));
            // Re(eps2 beta_q) = eps2 (u^2 - q)/2^{h+2} must equal cos_num/cos_den
            BigInt lhs = BigInt(d.eps2) * (BigInt(d.alpha_u) * d.alpha_u - d.q) * d.cos_den;
            BigInt rhs = BigInt(d.cos_num) * big_pow(BigInt(2), d.h + 2);
            if (lhs != rhs) throw domain_error("registry: arccos constant mismatch q=" + std::to_string(d.q));
        }
        for (const auto& m : mf_) {
            // E_q: Y^2 = X(X+1)(X - eta 2^m) with q = 2^m + eta
            if (BigInt(m.q) != big_pow(BigInt(2), m.m) + m.eta)
                throw domain_error("registry: mersenne-fermat exponent mismatch");
            lookup_curve(m.curve);
        }
    }

  private:
    struct FamilyKey {
        int q, delta, kappa, v;
        bool operator<(const FamilyKey& o) const {
            return std::tie(q, delta, kappa, v) < std::tie(o.q, o.delta, o.kappa, o.v);
        }
    };
    struct Triple {
        int q, delta, kappa;
    };

    std::vector<CurveRecord> curves_;
    std::vector<Triple> triples_;
    std::map<FamilyKey, std::vector<std::string>> families_;
    std::vector<MersenneFermatRecord> mf_;
    std::vector<ClassDataRecord> class_data_;
};

}  // namespace ppg
