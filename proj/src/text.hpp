#pragma once

// Shared lexer for the polynomial and operator text formats.

#include <cstdint>
#include <string_view>
#include <vector>

namespace dpmod::text {

enum class FactorKind { Coeff, X, D };

struct Factor {
    FactorKind kind;
    std::uint64_t value;  // coefficient, x-exponent or divided-power order
};

using TermFactors = std::vector<Factor>;

/// Splits `t1 + t2 + ...` into terms and each term into `*`-separated
/// factors: an integer, `x`, `x^e` or `D_b`. Throws ParseError.
std::vector<TermFactors> lex_sum(std::string_view text);

std::string_view trim(std::string_view s);

}  // namespace dpmod::text
