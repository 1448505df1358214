#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "powersum/decomposition.hpp"
#include "powersum/frey_finite_field.hpp"

namespace powersum {

struct EllipticCurveQ {
    mpz_class a1, a2, a3, a4, a6;
    mpz_class conductor;

    mpz_class discriminant() const;
    /// Reduction mod ell; requires ell odd, ell coprime to the conductor.
    WeierstrassModL reduce(u64 ell) const;
};

struct HeckeEntry {
    u64 ell;
    std::vector<mpz_class> charpoly;  // c0..cd, monic, degree = eigenvalue-field degree
};

/// Weight-2 newform: exact curve data when rational, tabulated Hecke
/// characteristic polynomials otherwise.
struct NewformRecord {
    std::string label;
    u64 level;
    unsigned degree;
    bool rational;
    std::optional<EllipticCurveQ> curve;  // present iff rational
    std::vector<HeckeEntry> hecke;        // sorted by ell

    const HeckeEntry* find_hecke(u64 ell) const;
};

/// Level of the newform space attached to (k, pair): 2^7 * rad(d1*d2).
u64 expected_level(unsigned k, const DecompositionPair& pair);

/// Loads and validates a newform data file (JSON list of records).
/// Throws std::runtime_error naming the offending record and field.
std::vector<NewformRecord> load(const std::string& path);

/// |Norm_{K_f/Q}(a_ell(f) - a)| = |charpoly_ell(a)|.  For rational records
/// without a tabulated entry the trace is recomputed from the curve
/// (requires ell coprime to the conductor).
mpz_class norm_trace_diff(const NewformRecord& rec, u64 ell, const mpz_class& a);

/// Thread-safe memo of point-counted traces for rational records.
class TraceCache {
public:
    long trace(const NewformRecord& rec, u64 ell);

private:
    std::mutex mu_;
    std::map<std::pair<std::string, u64>, long> memo_;
};

struct BoundExponentConfig {
    /// Restrict the admissible trace set to even integers (the Frey curve
    /// has the rational 2-torsion point (0,0), forcing even traces).
    bool trace_parity_refinement = true;
};

struct ExponentBound {
    bool unbounded = false;          // gcd chain hit 0 at every tried ell
    std::vector<u64> surviving;      // primes n >= 11 dividing B
    mpz_class B;
};

/// B = gcd over ell of  ell * |Norm((ell+1)^2 - a_ell(f)^2)| *
/// prod_{a in T_ell} |Norm(a_ell(f) - a)|, T_ell the admissible trace set.
/// Requires every ell coprime to 2 * level.
ExponentBound bound_exponent(const NewformRecord& rec, const std::vector<u64>& primes,
                             const BoundExponentConfig& cfg = {});

/// Distinct real roots of the monic charpoly all lie in [-2 sqrt(ell),
/// 2 sqrt(ell)] (Sturm count on the squarefree part).
bool hasse_bound_holds(const HeckeEntry& entry);

}  // namespace powersum
