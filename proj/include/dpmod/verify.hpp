#pragma once

// Batch checks that recompute each closed-form claim about the two example
// modules by brute force and record how the two agree.
//
// Every case carries an oracle value (computed by direct binomial sums and
// row reduction, cross-checked against a second computational route) and
// the closed-form value. Verdicts:
//   match                 oracle equals the closed form
//   paper-typo-suspected  oracle differs from the closed form inside its
//                         stated range; evidence is kept in the note
//   out-of-range          closed form is undefined or is not claimed here
//   fail                  the two computational routes disagree

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dpmod/filtration.hpp"
#include "dpmod/frobmod.hpp"

namespace dpmod {

using Json = nlohmann::ordered_json;

enum class Verdict { Match, PaperTypoSuspected, OutOfRange, Fail };

std::string to_string(Verdict v);

struct CaseRecord {
    Json inputs;
    std::string oracle;
    std::string paper;
    Verdict verdict = Verdict::Match;
    std::string note;
};

struct VerdictCounts {
    std::size_t match = 0;
    std::size_t suspected = 0;
    std::size_t out_of_range = 0;
    std::size_t fail = 0;

    VerdictCounts& operator+=(const VerdictCounts& o);
};

struct CheckReport {
    std::string check;
    std::uint64_t p = 0;
    Json params = Json::object();
    std::vector<CaseRecord> cases;
    Json findings = Json::object();

    [[nodiscard]] VerdictCounts summary() const;
    [[nodiscard]] bool passed() const { return summary().fail == 0; }
    [[nodiscard]] Json to_json() const;
};

/// (k, e): the factor (D_{p^k})^e. Distinct k, ascending, e >= 1.
using PowerPattern = std::vector<std::pair<unsigned, unsigned>>;

/// Tabulated value of D_{p^k}(x^{p^alpha} x^{p^beta}), alpha <= beta. The
/// p = 2, alpha = beta = k - 1 row gives x^{p^alpha}.
SparsePoly lemma31_table(Prime p, unsigned alpha, unsigned beta, unsigned k);
/// Closed form x^p (k = 0) or x^{p^{k+1}} + x^{p^{k-1}} for D_{p^k} sigma_k
/// with g_r = x^{(p+1)p^r}.
SparsePoly lemma41a_closed_form(Prime p, unsigned k);
/// Five-row table for a product of powers of D_{p^k} applied to s2.
ModuleElement lemma41b_table(Prime p, const PowerPattern& pattern);
/// Every pattern with sum e_i p^{k_i} <= budget, including the empty one.
std::vector<PowerPattern> enumerate_patterns(Prime p, Exponent budget);
std::string format_pattern(const PowerPattern& pattern);

CheckReport check_lemma31(Prime p, unsigned kmax);
CheckReport check_lemma41a(Prime p, unsigned kmax);
CheckReport check_lemma41b(Prime p, Exponent budget);
CheckReport check_thm42(Prime p, std::uint64_t imin, std::uint64_t imax);
CheckReport check_thm32(Prime p, unsigned emax);
CheckReport limits_report(Prime p, unsigned emax);

/// Parameters used by `verify all`, sized to finish in seconds.
struct VerifyDefaults {
    unsigned lemma31_kmax;
    unsigned lemma41a_kmax;
    Exponent lemma41b_budget;
    std::uint64_t thm42_imin;
    std::uint64_t thm42_imax;
    unsigned thm32_emax;
    unsigned limits_emax;
};

VerifyDefaults verify_defaults(Prime p);
std::vector<CheckReport> verify_all(Prime p);
std::vector<CheckReport> verify_all(Prime p, const VerifyDefaults& params);

/// {"checks": [...], "summary": {...}}
Json reports_to_json(std::span<const CheckReport> reports);
VerdictCounts total_summary(std::span<const CheckReport> reports);

/// Renders a rational with six significant digits (display only).
std::string format_decimal(const BigRational& r);

}  // namespace dpmod
