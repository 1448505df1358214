#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "powersum/gaussian_thue.hpp"
#include "powersum/kraus_sieve.hpp"
#include "powersum/laurent_bounds.hpp"
#include "powersum/prover.hpp"

using namespace powersum;
using nlohmann::json;

namespace {

std::string default_data_dir() {
    const char* env = std::getenv("POWERSUM_DATA");
    return env ? env : "data";
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << "\n";
}

int cmd_decompose(unsigned k, bool nontrivial, const std::string& json_path) {
    auto pairs = pair_list(k);
    json j;
    j["k"] = k;
    j["P"] = prime_set_P(k);
    j["pairs"] = json::array();
    std::cout << "k = " << k << "\n";
    std::cout << "P(k) = {";
    bool first = true;
    for (u64 p : prime_set_P(k)) {
        std::cout << (first ? "" : ", ") << p;
        first = false;
    }
    std::cout << "}\n";
    for (const auto& p : pairs) {
        if (nontrivial && p.d1 * p.d2 == 1) continue;
        std::cout << "(" << p.d1 << ", " << p.d2 << ")\n";
        j["pairs"].push_back({{"d1", p.d1}, {"d2", p.d2}});
    }
    if (!json_path.empty()) write_json(json_path, j);
    return 0;
}

int cmd_bounds(unsigned k, bool all_pairs, const std::string& json_path) {
    auto b = table_bound_n(k);
    if (!b) {
        std::cout << "k = " << k << ": not applicable (no pair with d1 d2 > 1)\n";
        return 0;
    }
    std::cout << "k = " << k << "\n"
              << "  worst pair (d1, d2) = (" << b->d1 << ", " << b->d2 << ")\n"
              << "  A  = " << b->A.get_str() << "\n"
              << "  c1 = " << b->c1.get_str() << "\n"
              << "  X0 = " << b->X0.get_str() << "\n"
              << "  n1 = " << b->n1 << "\n"
              << "  n2 = " << b->n2.get_str() << " (max over pairs)\n"
              << "  n3 = " << b->n3 << "\n"
              << "  n4 = " << b->n4 << "\n"
              << "  m = " << b->m << ", C2 = " << b->C2.get_str() << "\n"
              << "  n_ineq = " << b->n_ineq.get_str() << "\n"
              << "  n0 = " << b->n0.get_str() << "\n";
    if (all_pairs) {
        for (const auto& p : pair_list(k)) {
            if (p.d1 * p.d2 == 1) continue;
            std::cout << "  pair (" << p.d1 << ", " << p.d2
                      << "): c1 = " << compute_c1(k, p).get_str()
                      << ", A = " << compute_A(k, p).get_str()
                      << ", n2 = " << compute_n2(k, p).get_str() << "\n";
        }
    }
    if (!json_path.empty()) {
        json j{{"k", k},
               {"d1", b->d1},
               {"d2", b->d2},
               {"A", b->A.get_str()},
               {"c1", b->c1.get_str()},
               {"X0", b->X0.get_str()},
               {"n1", b->n1},
               {"n2", b->n2.get_str()},
               {"n3", b->n3},
               {"n4", b->n4},
               {"m", b->m},
               {"C2", b->C2.get_str()},
               {"n_ineq", b->n_ineq.get_str()},
               {"n0", b->n0.get_str()}};
        write_json(json_path, j);
    }
    return 0;
}

int cmd_thue(unsigned k, unsigned n, long bound, const std::string& json_path) {
    json j;
    j["k"] = k;
    j["n"] = n;
    j["cases"] = json::array();
    for (const auto& lc : lebesgue_nagell_cases(k, n)) {
        for (const auto& beta : beta_for(lc.a)) {
            auto [re_form, im_form] = thue_forms(beta, n);
            json jc;
            jc["a"] = lc.a;
            jc["beta"] = {{"re", beta.re.get_str()}, {"im", beta.im.get_str()}};
            jc["solutions"] = json::array();
            std::cout << "a = " << lc.a << ", beta = " << beta.re.get_str() << "+"
                      << beta.im.get_str() << "i\n";
            const char* names[2] = {"re", "im"};
            const BinaryForm* forms[2] = {&re_form, &im_form};
            for (int fi = 0; fi < 2; ++fi)
                for (int rhs : {1, -1}) {
                    auto res = bounded_search(*forms[fi], rhs, bound);
                    for (auto [t, s] : res.solutions) {
                        std::cout << "  " << names[fi] << " = " << rhs << ": (t, s) = (" << t
                                  << ", " << s << ")  y1 = " << t * t + s * s << "\n";
                        jc["solutions"].push_back(
                            {{"part", names[fi]}, {"rhs", rhs}, {"t", t}, {"s", s}});
                    }
                }
            j["cases"].push_back(jc);
        }
    }
    if (!json_path.empty()) write_json(json_path, j);
    return 0;
}

json sieve_report_json(const SieveReport& rep) {
    json j;
    j["eliminated"] = json::array();
    for (const auto& c : rep.eliminated)
        j["eliminated"].push_back({{"k", c.k},
                                   {"d1", c.d1},
                                   {"d2", c.d2},
                                   {"form", c.form_label},
                                   {"n", c.n},
                                   {"t", c.t},
                                   {"ell", c.ell}});
    j["failures"] = json::array();
    for (const auto& f : rep.failures)
        j["failures"].push_back(
            {{"d1", f.d1}, {"d2", f.d2}, {"form", f.form_label}, {"n", f.n}, {"reason", f.reason}});
    j["wall_time_s"] = rep.wall_time_s;
    j["exponents"] = rep.exponents;
    j["mean_n_seconds"] = rep.mean_n_seconds;
    j["max_n_seconds"] = rep.max_n_seconds;
    return j;
}

int cmd_sieve(unsigned k, u64 n_from, u64 n_to, u64 t_max, unsigned workers,
              const std::string& newforms, const std::string& certs_path, bool no_parity,
              const std::string& json_path) {
    std::vector<DecompositionPair> pairs;
    for (const auto& p : pair_list(k))
        if (p.d1 * p.d2 > 1) pairs.push_back(p);
    if (pairs.empty()) {
        std::cout << "k = " << k << ": nothing to sieve (no nontrivial pairs)\n";
        return 0;
    }
    u64 level = expected_level(k, pairs.front());
    std::string path = newforms.empty() ? newforms_path(default_data_dir(), level) : newforms;
    auto records = load(path);
    std::vector<const NewformRecord*> forms;
    for (const auto& r : records)
        if (r.level == level) forms.push_back(&r);

    SieveConfig sc;
    sc.t_max = t_max;
    sc.n_lo = n_from;
    sc.n_hi = n_to;
    sc.workers = workers;
    sc.trace_parity_refinement = !no_parity;
    IntPoly f_k = build_f(k);
    auto rep = sieve_range(k, pairs, forms, sc, f_k);

    std::cout << "sieve k = " << k << ", n in [" << n_from << ", " << n_to << "], t <= " << t_max
              << ", workers = " << workers << "\n"
              << "  exponents: " << rep.exponents << "\n"
              << "  eliminated: " << rep.eliminated.size() << "\n"
              << "  failures: " << rep.failures.size() << "\n"
              << "  wall: " << rep.wall_time_s << " s (max per-n " << rep.max_n_seconds << " s)\n";
    for (const auto& f : rep.failures)
        std::cout << "  FAIL n = " << f.n << " (" << f.d1 << "," << f.d2 << ") " << f.form_label
                  << ": " << f.reason << "\n";
    if (!certs_path.empty()) write_certificates(certs_path, rep.eliminated);
    if (!json_path.empty()) write_json(json_path, sieve_report_json(rep));
    return rep.failures.empty() ? 0 : 1;
}

int cmd_verify_cert(const std::string& certs_path, const std::string& newforms) {
    auto certs = read_certificates(certs_path);
    std::map<u64, std::vector<NewformRecord>> by_level;
    std::size_t bad = 0;
    for (const auto& c : certs) {
        u64 level = expected_level(c.k, {c.k, c.d1, c.d2});
        if (!by_level.count(level)) {
            std::string path =
                newforms.empty() ? newforms_path(default_data_dir(), level) : newforms;
            by_level[level] = load(path);
        }
        auto res = verify_certificate(c, by_level[level]);
        if (!res.ok) {
            ++bad;
            std::cout << "BAD n = " << c.n << " t = " << c.t << " ell = " << c.ell << " form "
                      << c.form_label << ": " << res.reason << "\n";
        }
    }
    std::cout << certs.size() << " certificate(s), " << bad << " bad\n";
    return bad == 0 ? 0 : 1;
}

int cmd_prove(unsigned k, ProveConfig cfg, const std::string& json_path) {
    auto rep = prove_k(k, cfg);
    std::cout << "k = " << k << "\n";
    std::cout << "pairs (d1 d2 > 1):";
    for (auto [d1, d2] : rep.pairs) std::cout << " (" << d1 << "," << d2 << ")";
    std::cout << "\n";
    for (const auto& m : rep.modular)
        std::cout << "  form " << m.label << " at level " << m.level << " pair (" << m.d1 << ","
                  << m.d2 << "): " << m.status << "\n";
    if (rep.bounds) std::cout << "n0 = " << rep.bounds->n0.get_str() << "\n";
    if (rep.sieve_run)
        std::cout << "sieve [" << rep.sieve_lo << ", " << rep.sieve_hi
                  << "]: eliminated = " << rep.sieve.eliminated.size()
                  << ", failures = " << rep.sieve.failures.size() << "\n";
    if (rep.sieve_skipped_unnecessary) std::cout << "sieve skipped: nothing survived the bound step\n";
    std::cout << "verdict: " << verdict_name(rep.verdict) << "\n";
    for (const auto& g : rep.gaps) std::cout << "gap: " << g << "\n";
    if (!json_path.empty()) write_json(json_path, report_to_json(rep));
    return rep.verdict == Verdict::FullyVerifiedAtConfiguredScale ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale prover for x^k + (x+1)^k = y^n, k = 2 (mod 4)"};
    app.require_subcommand(1);

    unsigned k = 10, n = 3;
    long thue_bound = 50;
    bool nontrivial = false, all_pairs = false, no_parity = false;
    u64 n_from = 11, n_to = 100, t_max = 1050;
    unsigned workers = 1;
    std::string json_path, newforms, certs_path, config_path;

    auto* dec = app.add_subcommand("decompose", "pairs (d1, d2) and the prime set P(k)");
    dec->add_option("--k", k)->required();
    dec->add_flag("--nontrivial", nontrivial, "only pairs with d1 d2 > 1");
    dec->add_option("--json", json_path);

    auto* bnd = app.add_subcommand("bounds", "exponent bound chain and n0");
    bnd->add_option("--k", k)->required();
    bnd->add_flag("--all-pairs", all_pairs);
    bnd->add_option("--json", json_path);

    auto* thue = app.add_subcommand("thue", "bounded search of the degree-n forms");
    thue->add_option("--k", k)->required();
    thue->add_option("--n", n)->required();
    thue->add_option("--bound", thue_bound);
    thue->add_option("--json", json_path);

    auto* sv = app.add_subcommand("sieve", "per-exponent elimination over a prime range");
    sv->add_option("--k", k)->required();
    sv->add_option("--n-from", n_from);
    sv->add_option("--n-to", n_to);
    sv->add_option("--t-max", t_max);
    sv->add_option("--workers", workers);
    sv->add_option("--newforms", newforms, "newform data file (default from POWERSUM_DATA)");
    sv->add_option("--certs", certs_path, "write certificates (NDJSON)");
    sv->add_flag("--no-parity-refinement", no_parity);
    sv->add_option("--json", json_path);

    auto* vc = app.add_subcommand("verify-cert", "re-check emitted certificates independently");
    vc->add_option("--certs", certs_path)->required();
    vc->add_option("--newforms", newforms);

    auto* pv = app.add_subcommand("prove", "full pipeline for one k");
    pv->add_option("--k", k)->required();
    pv->add_option("--n-to", n_to, "sieve range cap")->default_val(5000);
    pv->add_option("--t-max", t_max);
    pv->add_option("--workers", workers);
    pv->add_option("--thue-bound", thue_bound)->default_val(200);
    pv->add_option("--data", newforms, "data directory");
    pv->add_option("--config", config_path, "key = value config file");
    pv->add_flag("--no-parity-refinement", no_parity);
    pv->add_option("--json", json_path);

    app.add_subcommand("check-known", "verify the known exceptional solutions");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) return cmd_decompose(k, nontrivial, json_path);
        if (bnd->parsed()) return cmd_bounds(k, all_pairs, json_path);
        if (thue->parsed()) return cmd_thue(k, n, thue_bound, json_path);
        if (sv->parsed())
            return cmd_sieve(k, n_from, n_to, t_max, workers, newforms, certs_path, no_parity,
                             json_path);
        if (vc->parsed()) return cmd_verify_cert(certs_path, newforms);
        if (pv->parsed()) {
            ProveConfig cfg;
            cfg.data_dir = default_data_dir();
            if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
            if (pv->count("--n-to")) cfg.sieve_n_hi = n_to;
            if (pv->count("--t-max")) cfg.t_max = t_max;
            if (pv->count("--workers")) cfg.workers = workers;
            if (pv->count("--thue-bound")) cfg.thue_bound = thue_bound;
            if (pv->count("--data")) cfg.data_dir = newforms;
            if (no_parity) cfg.parity_refinement = false;
            return cmd_prove(k, cfg, json_path);
        }
        if (app.get_subcommand("check-known")->parsed()) {
            bool ok = check_known_solutions();
            std::cout << (ok ? "known solutions verified\n" : "known-solution check FAILED\n");
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
