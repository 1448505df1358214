#include "powersum/newform_store.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace powersum {

using nlohmann::json;

mpz_class EllipticCurveQ::discriminant() const {
    mpz_class b2 = a1 * a1 + 4 * a2;
    mpz_class b4 = 2 * a4 + a1 * a3;
    mpz_class b6 = a3 * a3 + 4 * a6;
    mpz_class b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

WeierstrassModL EllipticCurveQ::reduce(u64 ell) const {
    if (ell < 3) throw std::invalid_argument("reduce: ell must be an odd prime");
    if (mpz_divisible_ui_p(conductor.get_mpz_t(), ell))
        throw std::invalid_argument("reduce: bad reduction at ell = " + std::to_string(ell));
    auto red = [&](const mpz_class& v) { return mpz_fdiv_ui(v.get_mpz_t(), ell); };
    return {ell, red(a1), red(a2), red(a3), red(a4), red(a6)};
}

const HeckeEntry* NewformRecord::find_hecke(u64 ell) const {
    auto it = std::lower_bound(hecke.begin(), hecke.end(), ell,
                               [](const HeckeEntry& e, u64 v) { return e.ell < v; });
    return it != hecke.end() && it->ell == ell ? &*it : nullptr;
}

u64 expected_level(unsigned k, const DecompositionPair& pair) {
    u64 level = 128;
    for (auto [p, e] : factorize_u64(pair.d1 * pair.d2)) level *= p;
    return level;
}

namespace {

mpz_class mpz_from_json(const json& v, const std::string& where) {
    if (v.is_number_integer()) return mpz_class((long)v.get<std::int64_t>());
    if (v.is_string()) return mpz_class(v.get<std::string>());
    throw std::runtime_error("newform_store: " + where + ": expected integer or decimal string");
}

mpz_class eval_monic(const std::vector<mpz_class>& c, const mpz_class& x) {
    mpz_class acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

using QPoly = std::vector<mpq_class>;  // coefficient of X^i at index i

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qderiv(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * (long)i);
    return d;
}

QPoly qrem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
        a.pop_back();
        qtrim(a);
    }
    return a;
}

int qsign_at(const QPoly& p, const mpq_class& x) {
    mpq_class acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return sgn(acc);
}

int sturm_variations(const std::vector<QPoly>& chain, const mpq_class& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = qsign_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

}  // namespace

bool hasse_bound_holds(const HeckeEntry& entry) {
    QPoly q;
    for (const auto& c : entry.charpoly) q.emplace_back(c);
    qtrim(q);
    if (q.size() < 2) return false;
    // squarefree part q / gcd(q, q')
    QPoly a = q, b = qderiv(q);
    while (!b.empty()) {
        QPoly r = qrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    QPoly sf = q;
    if (a.size() > 1) {
        // exact division q / a
        QPoly quot(q.size() - a.size() + 1, mpq_class(0));
        QPoly rem = q;
        while (rem.size() >= a.size() && !rem.empty()) {
            mpq_class c = rem.back() / a.back();
            std::size_t shift = rem.size() - a.size();
            quot[shift] = c;
            for (std::size_t i = 0; i < a.size(); ++i) rem[i + shift] -= c * a[i];
            qtrim(rem);
        }
        sf = quot;
        qtrim(sf);
    }
    std::vector<QPoly> chain{sf, qderiv(sf)};
    qtrim(chain[1]);
    while (chain.back().size() > 1) {
        QPoly r = qrem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    mpz_class w4;
    mpz_class fourell = 4 * mpz_class((unsigned long)entry.ell);
    mpz_sqrt(w4.get_mpz_t(), fourell.get_mpz_t());
    mpq_class hi(w4 + 1), lo(-(w4 + 1));
    int distinct_in_range = sturm_variations(chain, lo) - sturm_variations(chain, hi);
    return distinct_in_range == (int)sf.size() - 1;
}

std::vector<NewformRecord> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("newform_store: cannot open " + path);
    json root = json::parse(in, nullptr, true, true);
    if (!root.is_array()) throw std::runtime_error("newform_store: top level must be a list");

    std::vector<NewformRecord> out;
    TraceCache cache;
    for (const auto& jr : root) {
        NewformRecord rec;
        rec.label = jr.at("label").get<std::string>();
        const std::string where = "record " + rec.label;
        rec.level = jr.at("level").get<std::uint64_t>();
        rec.degree = jr.at("degree").get<unsigned>();
        rec.rational = jr.at("rational").get<bool>();

        if (rec.level % 128 != 0) throw std::runtime_error(where + ": level not divisible by 2^7");
        u64 odd = rec.level / 128;
        if (odd % 2 == 0) throw std::runtime_error(where + ": level/2^7 must be odd");
        for (auto [p, e] : factorize_u64(odd))
            if (e > 1) throw std::runtime_error(where + ": level/2^7 must be squarefree");
        if (rec.rational != (rec.degree == 1))
            throw std::runtime_error(where + ": rational flag inconsistent with degree");

        const auto& jc = jr.at("curve");
        if (rec.rational) {
            if (!jc.is_array() || jc.size() != 5)
                throw std::runtime_error(where + ": rational record needs curve [a1,a2,a3,a4,a6]");
            EllipticCurveQ E;
            E.a1 = mpz_from_json(jc[0], where + ".curve");
            E.a2 = mpz_from_json(jc[1], where + ".curve");
            E.a3 = mpz_from_json(jc[2], where + ".curve");
            E.a4 = mpz_from_json(jc[3], where + ".curve");
            E.a6 = mpz_from_json(jc[4], where + ".curve");
            E.conductor = mpz_class((unsigned long)rec.level);
            if (E.discriminant() == 0) throw std::runtime_error(where + ": singular curve");
            rec.curve = std::move(E);
        } else if (!jc.is_null()) {
            throw std::runtime_error(where + ": irrational record must have curve = null");
        }

        for (const auto& je : jr.at("hecke")) {
            HeckeEntry e;
            e.ell = je.at("ell").get<std::uint64_t>();
            for (const auto& jcoef : je.at("charpoly"))
                e.charpoly.push_back(mpz_from_json(jcoef, where + ".hecke"));
            const std::string ewhere = where + ", ell = " + std::to_string(e.ell);
            if (e.charpoly.empty() || e.charpoly.back() != 1)
                throw std::runtime_error(ewhere + ": charpoly must be monic");
            if (e.charpoly.size() != rec.degree + 1)
                throw std::runtime_error(ewhere + ": charpoly degree != record degree");
            if (2 * rec.level % e.ell != 0 && !hasse_bound_holds(e))
                throw std::runtime_error(ewhere + ": Hasse bound violated");
            rec.hecke.push_back(std::move(e));
        }
        std::sort(rec.hecke.begin(), rec.hecke.end(),
                  [](const HeckeEntry& a, const HeckeEntry& b) { return a.ell < b.ell; });
        for (std::size_t i = 1; i < rec.hecke.size(); ++i)
            if (rec.hecke[i].ell == rec.hecke[i - 1].ell)
                throw std::runtime_error(where + ": duplicate hecke entry at ell = " +
                                         std::to_string(rec.hecke[i].ell));
        if (!rec.rational && rec.hecke.empty())
            throw std::runtime_error(where + ": irrational record without hecke data");

        // Cached entries of rational records must agree with point counting.
        if (rec.rational)
            for (const auto& e : rec.hecke) {
                if (2 * rec.level % e.ell == 0 || e.ell >= (1u << 20)) continue;
                long a = trace_of_frobenius(rec.curve->reduce(e.ell));
                if (e.charpoly[0] != -mpz_class(a))
                    throw std::runtime_error(where + ": cached a_" + std::to_string(e.ell) +
                                             " disagrees with the curve");
            }

        out.push_back(std::move(rec));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (out[i].label == out[j].label)
                throw std::runtime_error("newform_store: duplicate label " + out[i].label);
    return out;
}

long TraceCache::trace(const NewformRecord& rec, u64 ell) {
    if (!rec.rational || !rec.curve)
        throw std::invalid_argument("TraceCache: record " + rec.label + " is not rational");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find({rec.label, ell});
        if (it != memo_.end()) return it->second;
    }
    long a = trace_of_frobenius(rec.curve->reduce(ell));
    std::lock_guard<std::mutex> lk(mu_);
    memo_[{rec.label, ell}] = a;  // deterministic value: races are benign
    return a;
}

mpz_class norm_trace_diff(const NewformRecord& rec, u64 ell, const mpz_class& a) {
    if (const HeckeEntry* e = rec.find_hecke(ell)) return abs(eval_monic(e->charpoly, a));
    if (rec.rational && rec.curve && mpz_divisible_ui_p(rec.curve->conductor.get_mpz_t(), ell) == 0) {
        long af = trace_of_frobenius(rec.curve->reduce(ell));
        return abs(mpz_class(af) - a);
    }
    throw std::runtime_error("norm_trace_diff: no Hecke data for " + rec.label + " at ell = " +
                             std::to_string(ell));
}

namespace {

std::vector<u64> prime_factors_ge(const mpz_class& B, u64 floor_val) {
    std::vector<u64> out;
    mpz_class rest = abs(B);
    if (rest <= 1) return out;
    for (u64 p : primes_up_to(100000)) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p))
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            if (p >= floor_val) out.push_back(p);
        }
        if (rest == 1) break;
    }
    while (rest > 1) {
        if (is_prime(rest)) {
            if (rest.fits_ulong_p() && mpz_get_ui(rest.get_mpz_t()) >= floor_val)
                out.push_back(mpz_get_ui(rest.get_mpz_t()));
            else if (!rest.fits_ulong_p())
                throw std::runtime_error("bound_exponent: oversized surviving prime");
            break;
        }
        if (!rest.fits_ulong_p())
            throw std::runtime_error("bound_exponent: cannot factor residual bound");
        for (auto [p, e] : factorize_u64(mpz_get_ui(rest.get_mpz_t())))
            if (p >= floor_val) out.push_back(p);
        break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

ExponentBound bound_exponent(const NewformRecord& rec, const std::vector<u64>& primes,
                             const BoundExponentConfig& cfg) {
    if (primes.empty()) throw std::invalid_argument("bound_exponent: empty prime list");
    for (u64 ell : primes)
        if (2 * rec.level % ell == 0)
            throw std::invalid_argument("bound_exponent: ell = " + std::to_string(ell) +
                                        " divides 2 * level");
    ExponentBound out;
    mpz_class B(0);
    for (u64 ell : primes) {
        // charpoly of a_ell(f)
        std::vector<mpz_class> q;
        if (const HeckeEntry* e = rec.find_hecke(ell)) {
            q = e->charpoly;
        } else if (rec.rational && rec.curve) {
            long a = trace_of_frobenius(rec.curve->reduce(ell));
            q = {-mpz_class(a), mpz_class(1)};
        } else {
            throw std::runtime_error("bound_exponent: no Hecke data for " + rec.label +
                                     " at ell = " + std::to_string(ell));
        }
        mpz_class lp1((unsigned long)(ell + 1));
        mpz_class R = mpz_class((unsigned long)ell) * abs(eval_monic(q, lp1)) *
                      abs(eval_monic(q, -lp1));
        mpz_class w4;
        mpz_class fourell = 4 * mpz_class((unsigned long)ell);
        mpz_sqrt(w4.get_mpz_t(), fourell.get_mpz_t());
        long W = mpz_get_si(w4.get_mpz_t());
        long start = -W, step = cfg.trace_parity_refinement ? 2 : 1;
        if (cfg.trace_parity_refinement && (start & 1)) ++start;
        for (long a = start; a <= W; a += step) R *= abs(eval_monic(q, mpz_class(a)));
        mpz_gcd(B.get_mpz_t(), B.get_mpz_t(), R.get_mpz_t());
    }
    out.B = B;
    if (B == 0) {
        out.unbounded = true;
        return out;
    }
    out.surviving = prime_factors_ge(B, 11);
    return out;
}

}  // namespace powersum
