#include "powersum/kraus_sieve.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>
#include <omp.h>

#include "powersum/frey_finite_field.hpp"

namespace powersum {

using nlohmann::json;

namespace {

// charpoly of a_ell(f) reduced mod n, plus the mod-n value of
// Norm(a_ell(f)^2 - 4); nullopt when the form has no data at ell.
struct FormModN {
    std::vector<u64> q_mod_n;
    u64 norm_asq_minus_4_mod_n;
};

std::optional<FormModN> form_data_mod_n(const NewformRecord& rec, u64 ell, u64 n,
                                        TraceCache& cache) {
    std::vector<mpz_class> q;
    if (const HeckeEntry* e = rec.find_hecke(ell)) {
        q = e->charpoly;
    } else if (rec.rational && rec.curve &&
               mpz_divisible_ui_p(rec.curve->conductor.get_mpz_t(), ell) == 0) {
        q = {-mpz_class(cache.trace(rec, ell)), mpz_class(1)};
    } else {
        return std::nullopt;
    }
    FormModN out;
    out.q_mod_n.reserve(q.size());
    for (const auto& c : q) out.q_mod_n.push_back(mpz_fdiv_ui(c.get_mpz_t(), n));
    // Norm(a^2 - 4) = +-q(2) q(-2)
    mpz_class v(0), w(0);
    for (auto it = q.rbegin(); it != q.rend(); ++it) {
        v = v * 2 + *it;
        w = w * (-2) + *it;
    }
    out.norm_asq_minus_4_mod_n = mpz_fdiv_ui(mpz_class(v * w).get_mpz_t(), n);
    return out;
}

u64 eval_mod_n(const std::vector<u64>& q, u64 x, u64 n) {
    u64 acc = 0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) acc = (mulmod(acc, x, n) + *it) % n;
    return acc;
}

struct BatchItem {
    const NewformRecord* rec;
    bool done = false;
    bool data_starved = false;
    u64 t = 0, ell = 0;
};

// Shared t-escalation for every form of one (pair, n): A(t, ell) and the
// Frey traces do not depend on the form, so they are computed once.
void eliminate_batch(unsigned k, const DecompositionPair& pair, std::vector<BatchItem>& items,
                     u64 n, u64 t_max, const IntPoly& f_k, TraceCache& cache) {
    for (u64 t = 2; t <= t_max; t += 2) {
        u64 ell = t * n + 1;
        if (!is_prime_u64(ell)) continue;
        if (k % ell == 0) continue;

        bool anyone_active = false;
        for (auto& it : items)
            if (!it.done) anyone_active = true;
        if (!anyone_active) return;

        auto A = build_A(ell, t, k, pair, f_k);
        // Frey traces, shared across forms; the +-x0 symmetry keeps one
        // point count per {x0, -x0} class.
        std::map<u64, long> trace_by_x0;
        for (const auto& pt : A) {
            if (trace_by_x0.count(pt.x0)) continue;
            u64 mirror = (ell - pt.x0) % ell;
            auto mit = trace_by_x0.find(mirror);
            long a;
            if (mit != trace_by_x0.end()) {
                a = ell % 4 == 1 ? mit->second : -mit->second;
            } else {
                a = trace_of_frobenius(FreyCurveModL{ell, pt.x0, pt.zeta});
            }
            trace_by_x0[pt.x0] = a;
        }

        bool ell_1_mod_4 = ell % 4 == 1;
        for (auto& item : items) {
            if (item.done) continue;
            auto fd = form_data_mod_n(*item.rec, ell, n, cache);
            if (!fd) {
                item.data_starved = true;
                continue;
            }
            bool eliminated = true;
            if (ell_1_mod_4 && fd->norm_asq_minus_4_mod_n == 0) eliminated = false;
            if (eliminated)
                for (const auto& pt : A) {
                    u64 aE = (u64)((trace_by_x0[pt.x0] % (long)n + (long)n) % (long)n);
                    if (eval_mod_n(fd->q_mod_n, aE, n) == 0) {
                        eliminated = false;
                        break;
                    }
                }
            if (eliminated) {
                item.done = true;
                item.t = t;
                item.ell = ell;
            }
        }
    }
}

}  // namespace

std::variant<EliminationCertificate, SieveFailure> eliminate_exponent(
    unsigned k, const DecompositionPair& pair, const NewformRecord& form, u64 n, u64 t_max,
    const IntPoly& f_k, TraceCache& cache) {
    if (n < 11 || !is_prime_u64(n))
        throw std::invalid_argument("eliminate_exponent: n must be a prime >= 11");
    std::vector<BatchItem> items{BatchItem{&form}};
    eliminate_batch(k, pair, items, n, t_max, f_k, cache);
    const auto& it = items[0];
    if (it.done) return EliminationCertificate{k, pair.d1, pair.d2, form.label, n, it.t, it.ell};
    return SieveFailure{pair.d1, pair.d2, form.label, n,
                        it.data_starved ? "hecke data exhausted" : "t exhausted"};
}

SieveReport sieve_range(unsigned k, const std::vector<DecompositionPair>& pairs,
                        const std::vector<const NewformRecord*>& forms, const SieveConfig& config,
                        const IntPoly& f_k) {
    SieveReport report;
    std::vector<u64> ns;
    for (u64 n = std::max<u64>(config.n_lo, 2); n <= config.n_hi; ++n)
        if (is_prime_u64(n)) ns.push_back(n);
    report.exponents = ns.size();
    if (ns.empty() || forms.empty() || pairs.empty()) return report;

    struct Slot {
        std::vector<EliminationCertificate> certs;
        std::vector<SieveFailure> fails;
        double seconds = 0;
    };
    std::vector<Slot> slots(ns.size());
    TraceCache cache;

    auto t0 = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic) num_threads(config.workers)
    for (long i = 0; i < (long)ns.size(); ++i) {
        auto tn0 = std::chrono::steady_clock::now();
        u64 n = ns[i];
        auto& slot = slots[i];
        for (const auto& pair : pairs) {
            std::vector<BatchItem> items;
            for (const NewformRecord* f : forms) items.push_back(BatchItem{f});
            eliminate_batch(k, pair, items, n, config.t_max, f_k, cache);
            for (const auto& it : items) {
                if (it.done)
                    slot.certs.push_back({k, pair.d1, pair.d2, it.rec->label, n, it.t, it.ell});
                else
                    slot.fails.push_back({pair.d1, pair.d2, it.rec->label, n,
                                          it.data_starved ? "hecke data exhausted" : "t exhausted"});
            }
        }
        slot.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - tn0).count();
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    double sum = 0;
    for (auto& s : slots) {
        report.eliminated.insert(report.eliminated.end(), s.certs.begin(), s.certs.end());
        report.failures.insert(report.failures.end(), s.fails.begin(), s.fails.end());
        sum += s.seconds;
        report.max_n_seconds = std::max(report.max_n_seconds, s.seconds);
    }
    report.mean_n_seconds = ns.empty() ? 0 : sum / (double)ns.size();
    auto cert_key = [](const EliminationCertificate& c) {
        return std::tuple(c.n, c.d1, c.d2, c.form_label);
    };
    std::sort(report.eliminated.begin(), report.eliminated.end(),
              [&](const auto& a, const auto& b) { return cert_key(a) < cert_key(b); });
    std::sort(report.failures.begin(), report.failures.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.n, a.d1, a.d2, a.form_label) < std::tuple(b.n, b.d1, b.d2, b.form_label);
    });
    return report;
}

VerifyResult verify_certificate(const EliminationCertificate& cert,
                                const std::vector<NewformRecord>& forms) {
    const NewformRecord* rec = nullptr;
    for (const auto& f : forms)
        if (f.label == cert.form_label) rec = &f;
    if (!rec) throw std::invalid_argument("verify_certificate: unknown label " + cert.form_label);

    if (cert.t < 2 || cert.t % 2 != 0) return {false, "shape: t must be even >= 2"};
    if (cert.ell != cert.t * cert.n + 1) return {false, "shape: ell != t*n + 1"};
    if (!is_prime_u64(cert.ell)) return {false, "shape: ell not prime"};
    if (!is_prime_u64(cert.n) || cert.n < 11) return {false, "shape: n not a prime >= 11"};
    if (cert.k % cert.ell == 0) return {false, "shape: ell divides k"};
    DecompositionPair pair{cert.k, cert.d1, cert.d2};
    auto valid_pairs = pair_list(cert.k);
    if (std::find(valid_pairs.begin(), valid_pairs.end(), pair) == valid_pairs.end())
        return {false, "shape: (d1, d2) not an admissible pair for k"};
    if (expected_level(cert.k, pair) != rec->level) return {false, "shape: level mismatch"};

    IntPoly f_k = build_f(cert.k);
    auto A = cert.ell < 100000 ? build_A_bruteforce(cert.ell, cert.t, cert.k, pair, f_k)
                               : build_A(cert.ell, cert.t, cert.k, pair, f_k);
    mpz_class n_z((unsigned long)cert.n);
    if (cert.ell % 4 == 1) {
        mpz_class norm4 = norm_trace_diff(*rec, cert.ell, mpz_class(2)) *
                          norm_trace_diff(*rec, cert.ell, mpz_class(-2));
        if (mpz_divisible_p(norm4.get_mpz_t(), n_z.get_mpz_t()))
            return {false, "condition: n divides Norm(a_f^2 - 4)"};
    }
    for (const auto& pt : A) {
        long aE = trace_of_frobenius(FreyCurveModL{cert.ell, pt.x0, pt.zeta});
        mpz_class norm = norm_trace_diff(*rec, cert.ell, mpz_class(aE));
        if (mpz_divisible_p(norm.get_mpz_t(), n_z.get_mpz_t()))
            return {false, "condition: n divides Norm(a_f - a_E) at x0 = " + std::to_string(pt.x0)};
    }
    return {true, ""};
}

void write_certificates(const std::string& path, const std::vector<EliminationCertificate>& certs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_certificates: cannot open " + path);
    for (const auto& c : certs) {
        json j{{"k", c.k},       {"d1", c.d1}, {"d2", c.d2}, {"form", c.form_label},
               {"n", c.n},       {"t", c.t},   {"ell", c.ell}};
        out << j.dump() << "\n";
    }
}

std::vector<EliminationCertificate> read_certificates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_certificates: cannot open " + path);
    std::vector<EliminationCertificate> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        out.push_back({j.at("k").get<unsigned>(), j.at("d1").get<u64>(), j.at("d2").get<u64>(),
                       j.at("form").get<std::string>(), j.at("n").get<u64>(), j.at("t").get<u64>(),
                       j.at("ell").get<u64>()});
    }
    return out;
}

}  // namespace powersum
