#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "powersum/kraus_sieve.hpp"
#include "powersum/laurent_bounds.hpp"

namespace powersum {

struct ProveConfig {
    u64 sieve_n_hi = 5000;  // desk-scale cap on the sieve range
    u64 t_max = 1050;
    unsigned workers = 1;
    bool parity_refinement = true;
    long thue_bound = 200;
    std::string data_dir;  // directory holding newforms_<level>.json
};

/// Reads key = value lines (t_max, n_hi, workers, thue_bound, data_dir,
/// parity_refinement); unknown keys are rejected.
ProveConfig load_config_file(const std::string& path, ProveConfig base = {});

struct SmallNOutcome {
    unsigned n = 0;
    u64 a = 0;
    std::string beta;
    std::size_t nontrivial_solutions = 0;
    std::vector<u64> y1_candidates;  // distinct odd t^2 + s^2 with t s != 0, plus the sweep
    bool all_rejected = true;
};

struct ModularOutcome {
    u64 d1 = 0, d2 = 0;
    u64 level = 0;
    std::string label;
    std::string status;  // eliminated | survives | unbounded
    std::vector<u64> surviving;
};

enum class Verdict { FullyVerifiedAtConfiguredScale, GapsListed };

struct ProofReport {
    unsigned k = 0;
    std::vector<std::pair<u64, u64>> pairs;  // d1 d2 > 1
    std::vector<Y1Triple> y1_triples;
    std::vector<u64> y1_witness_primes;  // parallel to y1_triples
    std::vector<SmallNOutcome> small_n;
    std::vector<ModularOutcome> modular;
    std::optional<BoundBreakdown> bounds;
    bool sieve_run = false;
    bool sieve_skipped_unnecessary = false;
    u64 sieve_lo = 0, sieve_hi = 0;
    SieveReport sieve;
    Verdict verdict = Verdict::GapsListed;
    std::vector<std::string> gaps;
};

nlohmann::json report_to_json(const ProofReport& r);
std::string verdict_name(Verdict v);

/// Full per-k pipeline: small-n Thue stage, pair enumeration and y1 = 1
/// exclusions, per-form exponent bounding, the Table-2 bound, and the
/// sieve over the configured prefix.
ProofReport prove_k(unsigned k, const ProveConfig& config);

/// 239^2 + 1 = 2 * 13^4,  119^2 + 120^2 = 13^4, and the x = 0 family.
bool check_known_solutions();

std::string newforms_path(const std::string& data_dir, u64 level);

}  // namespace powersum
