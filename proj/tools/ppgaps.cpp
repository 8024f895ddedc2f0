// Command-line front end: sieve runs and certificate replay, exponent-bound
// reports, the solution-table search oracle, and Thue-Mahler emission.
//
// Exit codes: 0 = everything certified / matched, 2 = survivors remain (not an
// error), 1 = operational failure.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "ppgaps/golden.hpp"
#include "ppgaps/io.hpp"
#include "ppgaps/logbounds.hpp"
#include "ppgaps/search.hpp"
#include "ppgaps/sieves.hpp"

using namespace ppg;

namespace {

std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 n = lo; n <= hi; ++n)
        if (is_prime_u64(n)) out.push_back(n);
    return out;
}

std::vector<u64> parse_list(const std::string& s) {
    std::vector<u64> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(strtoull(s.substr(pos, next - pos).c_str(), nullptr, 10));
        pos = next + 1;
    }
    return out;
}

int run_sieve(const std::string& kind, int q, int delta, int kappa, int v, u64 nmin, u64 nmax, u64 m_class,
              const std::string& replay, SieveOptions opts, u64 prime_cap, const std::string& out,
              const Registry& reg) {
    nlohmann::json certs = nlohmann::json::array();
    int exit_code = 0;
    auto note_cert = [&](const SieveCertificate& c) {
        certs.push_back(to_json(c));
        std::printf("%-10s q=%-4d n=%-9llu primes=%-3zu %-9s %.1f ms\n", c.kind.c_str(), c.q,
                    (unsigned long long)c.n, c.primes.size(), c.empty() ? "empty" : "SURVIVORS",
                    c.duration_ms);
        if (!c.empty()) exit_code = 2;
    };

    if (kind == "elementary") {
        auto pairs = q > 0 ? std::vector<std::pair<u64, u64>>{{(u64)q, nmin}}
                           : admissible_pairs_elementary(3, nmax ? nmax : 999);
        std::printf("elementary sieve: %zu admissible pairs\n", pairs.size());
        size_t empties = 0;
        for (auto& [qq, nn] : pairs) {
            auto primes = odd_primes_up_to(prime_cap, nn, qq);
            auto r = elementary_sieve(qq, nn, primes, opts);
            SieveCertificate c;
            c.kind = "elementary";
            c.q = (int)qq;
            c.n = nn;
            c.primes = primes;
            c.surviving = r;
            c.seed = opts.seed;
            note_cert(c);
            if (r.empty()) ++empties;
        }
        std::printf("empty: %zu / %zu\n", empties, pairs.size());
        write_output(out, certs);
        return exit_code;
    }
    if (kind == "gauss") {
        auto pairs = q > 0 ? std::vector<std::pair<u64, u64>>{{(u64)q, nmin}}
                           : admissible_pairs_gauss(3, nmax ? nmax : 999);
        std::printf("gauss sieve: %zu pairs, %zu triples\n", pairs.size(), 2 * pairs.size());
        size_t empties = 0, total = 0;
        for (auto& [qq, nn] : pairs) {
            for (int eta : {1, -1}) {
                ++total;
                auto primes = odd_primes_up_to(prime_cap ? prime_cap : 149, nn, qq);
                SieveCertificate c;
                c.kind = "gauss";
                c.q = (int)qq;
                c.n = nn;
                c.eta = eta;
                c.primes = primes;
                c.seed = opts.seed;
                try {
                    c.surviving = gauss_sieve(qq, nn, eta, primes, opts);
                } catch (const resource_error& e) {
                    c.exhausted = true;
                    c.surviving.modulus = e.partial_modulus;
                    c.surviving.residues = {BigInt(-1)};  // marker: not certified
                }
                note_cert(c);
                if (c.empty()) ++empties;
            }
        }
        std::printf("empty: %zu / %zu\n", empties, total);
        write_output(out, certs);
        return exit_code;
    }
    if (kind == "fm") {
        const auto* mf = reg.mersenne_fermat(q);
        if (!mf) {
            std::fprintf(stderr, "fm sieve: q=%d is not a Fermat/Mersenne prime in the registry\n", q);
            return 1;
        }
        const auto& E = reg.lookup_curve(mf->curve).model;
        for (u64 n : primes_in(nmin, nmax ? nmax : nmin)) {
            auto cert = fm_certify((u64)q, n, E, mf->m, opts);
            cert.curve = mf->curve;
            note_cert(cert);
        }
        write_output(out, certs);
        return exit_code;
    }
    if (kind == "crude" || (kind == "final" && q == 73)) {
        int dd = delta, kk = kappa, vv = v;
        if (kind == "final") {
            dd = 1;
            kk = 5;
            vv = 1;  // the large-exponent q = 73 run of the remark
        }
        auto targets = reg.family_targets(q, dd, kk, vv);
        if (targets.status == FamilyStatus::not_covered) {
            std::fprintf(stderr,
                         "family (q=%d, delta=%d, kappa=%d, v=%d) is not covered by the registry "
                         "(no Table row and not an admissible triple)\n",
                         q, dd, kk, vv);
            return 1;
        }
        if (targets.status == FamilyStatus::eliminated) {
            std::printf("family (q=%d, delta=%d, kappa=%d, v=%d): eliminated without sieving "
                        "(no modular target survives)\n",
                        q, dd, kk, vv);
            return 0;
        }
        for (u64 n : primes_in(nmin, nmax ? nmax : nmin)) {
            for (const auto* rec : targets.curves) {
                ProblemFamily fam{q, dd, kk, vv, n};
                SieveCertificate cert;
                if (!replay.empty()) {
                    cert = crude_replay(fam, rec->model, rec->label, parse_list(replay), opts);
                } else {
                    cert = crude_certify(fam, rec->model, rec->label, opts);
                }
                note_cert(cert);
            }
        }
        write_output(out, certs);
        return exit_code;
    }
    if (kind == "refined") {
        auto targets = reg.family_targets(q, delta, kappa, v);
        if (targets.status != FamilyStatus::targets) {
            std::fprintf(stderr, "refined sieve needs a family with registry targets\n");
            return 1;
        }
        long field_d = delta == 0 ? -q : q;
        QuadOrder O = QuadOrder::make(BigInt(field_d));
        auto S = gamma_set(O, kappa, delta, nmin);
        std::printf("gamma set size %zu for (q=%d, kappa=%d, delta=%d, n=%llu)\n", S.size(), q, kappa,
                    delta, (unsigned long long)nmin);
        for (const auto* rec : targets.curves) {
            ProblemFamily fam{q, delta, kappa, v, nmin};
            auto cert = refined_certify(fam, m_class, S, rec->model, rec->label, opts);
            note_cert(cert);
            for (const auto& idx : cert.surviving.residues) {
                const auto& g = S[(size_t)to_u64(idx)];
                auto [u, w] = g.num.halves();
                std::printf("  surviving gamma: (%s + %s sqrt(d))/2 / 2^%u\n", u.get_str().c_str(),
                            w.get_str().c_str(), g.den2);
            }
        }
        write_output(out, certs);
        return exit_code;
    }
    if (kind == "final") {
        const auto& cd = reg.class_data(q);
        auto targets = reg.family_targets(q, 0, 1, 0);
        if (targets.status != FamilyStatus::targets) {
            std::fprintf(stderr, "final sieve: no Table qF curve for q=%d\n", q);
            return 1;
        }
        for (u64 n : primes_in(nmin, nmax ? nmax : nmin)) {
            for (const auto* rec : targets.curves) {
                auto cert = final_certify((u64)q, n, rec->model, cd, rec->label, opts);
                note_cert(cert);
            }
        }
        write_output(out, certs);
        return exit_code;
    }
    std::fprintf(stderr, "unknown sieve kind '%s'\n", kind.c_str());
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational toolkit for prime-power gaps x^2 + (-1)^delta q^alpha = y^n"};
    app.require_subcommand(1);
    std::string data_path = Registry::default_path();
    app.add_option("--data", data_path, "registry data file (overrides PPGAPS_DATA)");

    // --- sieve ---
    auto* sv = app.add_subcommand("sieve", "run or replay an elimination sieve");
    std::string kind, replay, out, fmt = "text";
    int q = 0, delta = 0, kappa = 1, v = 0;
    u64 nmin = 0, nmax = 0, m_class = 0, tmax = 0, budget = 64, prime_cap = 0, seed = 0x5eed;
    unsigned threads = default_threads();
    bool no_symplectic = false, no_fast = false;
    sv->add_option("--kind", kind, "elementary|gauss|fm|crude|refined|final")->required();
    sv->add_option("--q", q);
    sv->add_option("--delta", delta);
    sv->add_option("--kappa", kappa);
    sv->add_option("--v", v);
    sv->add_option("--n,--nmin", nmin);
    sv->add_option("--nmax", nmax);
    sv->add_option("--m", m_class, "residue class of k mod 2n (refined sieve)");
    sv->add_option("--tmax", tmax);
    sv->add_option("--prime-budget", budget);
    sv->add_option("--prime-cap", prime_cap, "largest auxiliary prime (elementary/gauss)");
    sv->add_option("--qmax", nmax, "sweep bound for elementary/gauss (alias of --nmax)");
    sv->add_option("--seed", seed);
    sv->add_option("--threads", threads);
    sv->add_flag("--no-symplectic", no_symplectic, "use the Z' variant (forced at n = q)");
    sv->add_flag("--no-fast-filter", no_fast, "disable the random-point shortcut");
    sv->add_option("--replay", replay, "comma-separated witness primes to verify");
    sv->add_option("--out", out, "write certificates as JSON");

    // --- bound ---
    auto* bd = app.add_subcommand("bound", "exponent-bound pipeline (U_q)");
    int bq = 0;
    bool ball = false;
    std::string bout;
    bd->add_option("--q", bq);
    bd->add_flag("--all", ball);
    bd->add_option("--out", bout);

    // --- search ---
    auto* se = app.add_subcommand("search", "brute-force oracle and parametric families");
    u64 sqmin = 3, sqmax = 0, sxmax = 1000000, snmax = 20, sbound = 1000;
    int sdelta = -1;
    std::string sgolden, sparam, sout, sfmt = "json";
    bool spell = false;
    se->add_option("--qmin", sqmin);
    se->add_option("--qmax", sqmax);
    se->add_option("--q", sqmax, "single q (sets qmin = qmax)");
    se->add_option("--delta", sdelta, "0, 1, or omit for both");
    se->add_option("--xmax", sxmax);
    se->add_option("--nmax", snmax);
    se->add_option("--golden", sgolden, "golden table to diff against");
    se->add_option("--golden-n", snmax, "exponent of the golden table (3 or 4)");
    se->add_flag("--pell", spell, "list primes with q^2 = 2y^2 - 1");
    se->add_option("--parametric", sparam, "n3|n4 parametric prime lists");
    se->add_option("--bound", sbound, "bound for --pell/--parametric");
    se->add_option("--out", sout);
    se->add_option("--format", sfmt, "json|csv");

    // --- emit ---
    auto* em = app.add_subcommand("emit", "emit Thue-Mahler instances");
    std::string ctx;
    int eq = 0;
    u64 en = 0;
    long er = 0;
    std::string eout;
    em->add_option("--context", ctx, "split|descent10|quintic|gamma")->required();
    em->add_option("--q", eq)->required();
    em->add_option("--n", en);
    em->add_option("--r", er);
    em->add_option("--out", eout);

    // --- data ---
    auto* dv = app.add_subcommand("data", "registry inspection");
    bool validate = false;
    dv->add_flag("--validate", validate);

    CLI11_PARSE(app, argc, argv);

    try {
        Registry reg = Registry::load(data_path);

        if (sv->parsed()) {
            SieveOptions opts;
            if (tmax) opts.t_max = tmax;
            if (kind == "refined" && !tmax) opts.t_max = 800;
            if (kind == "crude" && !tmax) opts.t_max = 200;
            if (kind == "final" && !tmax) opts.t_max = 2000;
            if (kind == "fm" && !tmax) opts.t_max = 400;
            opts.prime_budget = budget;
            opts.seed = seed;
            opts.symplectic = !no_symplectic;
            opts.fast_filter = !no_fast;
            opts.threads = threads;
            u64 cap = prime_cap ? prime_cap : (kind == "gauss" ? 149 : 101);
            return run_sieve(kind, q, delta, kappa, v, nmin, nmax, m_class, replay, opts, cap, out, reg);
        }
        if (bd->parsed()) {
            std::vector<int> qs = ball ? std::vector<int>{7, 23, 31, 47, 71, 79} : std::vector<int>{bq};
            nlohmann::json all = nlohmann::json::array();
            bool ok = true;
            for (int qq : qs) {
                if (qq == 0 || (!ball && mignotte_schedule_exists(qq) == false)) {
                    std::fprintf(stderr, "bound: q=%d is not in the final-descent list {7,23,31,47,71,79}\n",
                                 qq);
                    return 1;
                }
                auto res = exponent_bound(reg, qq);
                ok = ok && res.all_rows_verified && res.final_row_is_minimal;
                std::printf("q=%-3d first-stage %.6g (printed %.3g)  U_q = %.3g  rows:\n", qq,
                            res.first_stage.to_double(), res.first_stage_group.to_double(),
                            res.U_q.to_double());
                for (const auto& r : res.rows) {
                    std::printf("  rho=%.1f L=%-3d m=%-2d  bound %.3g  (f = %.4g, derived %.3g, %s)\n",
                                r.row.rho, r.row.L, r.row.m, r.row.target, r.bound_at_target.to_double(),
                                r.derived_min3sf.to_double(), r.verified ? "verified" : "NOT VERIFIED");
                }
                all.push_back(to_json(res));
            }
            write_output(bout, all);
            return ok ? 0 : 2;
        }
        if (se->parsed()) {
            if (spell) {
                auto p = primes_pell_2y2_minus_1(sbound);
                for (u64 x : p) std::printf("%llu\n", (unsigned long long)x);
                return 0;
            }
            if (!sparam.empty()) {
                if (sparam == "n3") {
                    std::printf("q = 3a^2 - 1: ");
                    for (u64 x : primes_3a2_minus_1(sbound)) std::printf("%llu ", (unsigned long long)x);
                    std::printf("\nq^2 = 3a^2 + 1: ");
                    for (u64 x : primes_pell_3a2_plus_1(sbound)) std::printf("%llu ", (unsigned long long)x);
                    std::printf("\n");
                } else {
                    std::printf("q = (g^2m + g^-2m)/2: ");
                    for (u64 x : primes_n4_even_family(sbound)) std::printf("%llu ", (unsigned long long)x);
                    std::printf("\nq^2 = 2y^2 - 1: ");
                    for (u64 x : primes_pell_2y2_minus_1(sbound)) std::printf("%llu ", (unsigned long long)x);
                    std::printf("\n");
                }
                return 0;
            }
            if (sqmax == 0) sqmax = sqmin;
            std::vector<Solution> all;
            for (u64 qq = sqmin; qq <= sqmax; ++qq) {
                if (!is_prime_u64(qq)) continue;
                for (int dd : {0, 1}) {
                    if (sdelta >= 0 && dd != sdelta) continue;
                    auto s = brute_force_solutions(qq, dd, sxmax, snmax);
                    all.insert(all.end(), s.begin(), s.end());
                }
            }
            std::printf("%zu solutions in region (x <= %llu, n <= %llu)\n", all.size(),
                        (unsigned long long)sxmax, (unsigned long long)snmax);
            if (!sgolden.empty()) {
                u64 gn = snmax;  // --golden-n
                GoldenTable t = load_golden(sgolden, gn);
                auto d = diff_golden(t, all, sqmin, sqmax, sxmax);
                std::printf("golden: %zu covered rows, %zu missing, %zu extras, %zu flagged\n", d.covered,
                            d.missing.size(), d.extras.size(), d.flagged.size());
                if (!sout.empty()) write_output(sout, to_json(all));
                return d.clean() ? 0 : 2;
            }
            if (!sout.empty()) {
                if (sfmt == "csv") {
                    std::ofstream o(sout);
                    o << solutions_csv(all);
                } else {
                    write_output(sout, to_json(all));
                }
            }
            return 0;
        }
        if (em->parsed()) {
            ThueMahlerInstance t;
            if (ctx == "split") {
                t = emit_split_nnn((u64)eq, en);
            } else if (ctx == "descent10") {
                t = emit_descent_class_group((u64)eq, en, (u64)er);
            } else if (ctx == "quintic") {
                t = emit_quintic((u64)eq, er);
            } else if (ctx == "gamma") {
                // emit for every gamma in the family's descent set
                QuadOrder O = QuadOrder::make(BigInt(-eq));
                auto S = gamma_set(O, 1, 0, en);
                auto arr = nlohmann::json::array();
                for (const auto& g : S) arr.push_back(to_json(emit_gamma_power(g, (u64)eq, en)));
                std::printf("%s\n", arr.dump(2).c_str());
                write_output(eout, arr);
                return 0;
            } else {
                std::fprintf(stderr, "unknown context '%s'\n", ctx.c_str());
                return 1;
            }
            auto j = to_json(t);
            std::printf("%s\n", j.dump(2).c_str());
            write_output(eout, j);
            return 0;
        }
        if (dv->parsed()) {
            if (validate) {
                reg.validate();
                std::printf("registry data: all invariants verified (%zu curves)\n", reg.curves().size());
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
