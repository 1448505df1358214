#pragma once

#include <string>
#include <variant>
#include <vector>

#include "powersum/decomposition.hpp"
#include "powersum/newform_store.hpp"
#include "powersum/polynomial_core.hpp"

namespace powersum {

/// Witness that exponent n is eliminated for (k, d1, d2, form): at
/// ell = t n + 1 the congruence conditions exclude every point of A(t, ell).
struct EliminationCertificate {
    unsigned k;
    u64 d1, d2;
    std::string form_label;
    u64 n;
    u64 t;
    u64 ell;
    bool operator==(const EliminationCertificate&) const = default;
};

struct SieveFailure {
    u64 d1, d2;
    std::string form_label;
    u64 n;
    std::string reason;
    bool operator==(const SieveFailure&) const = default;
};

struct SieveConfig {
    u64 t_max = 1050;
    u64 n_lo = 11;
    u64 n_hi = 11;
    unsigned workers = 1;
    /// Forwarded to bound_exponent when the caller pre-filters forms; the
    /// per-n elimination itself computes exact traces and ignores it.
    bool trace_parity_refinement = true;
};

struct SieveReport {
    std::vector<EliminationCertificate> eliminated;
    std::vector<SieveFailure> failures;
    double wall_time_s = 0;
    std::size_t exponents = 0;
    double mean_n_seconds = 0;
    double max_n_seconds = 0;
};

/// One exponent, one form: escalates even t = 2, 4, ..., t_max.
std::variant<EliminationCertificate, SieveFailure> eliminate_exponent(
    unsigned k, const DecompositionPair& pair, const NewformRecord& form, u64 n, u64 t_max,
    const IntPoly& f_k, TraceCache& cache);

/// Every prime n in [n_lo, n_hi] x every pair x every form; work is
/// sharded by n across `workers`; the report ordering is deterministic.
SieveReport sieve_range(unsigned k, const std::vector<DecompositionPair>& pairs,
                        const std::vector<const NewformRecord*>& forms, const SieveConfig& config,
                        const IntPoly& f_k);

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

/// Independent re-check of one certificate: brute-force A(t, ell)
/// (full scan for ell < 10^5) and exact arbitrary-precision norms.
VerifyResult verify_certificate(const EliminationCertificate& cert,
                                const std::vector<NewformRecord>& forms);

void write_certificates(const std::string& path, const std::vector<EliminationCertificate>& certs);
std::vector<EliminationCertificate> read_certificates(const std::string& path);

}  // namespace powersum
