#pragma once

// Divided-power differential operators on F_p[x], in the normal form
// sum c * x^a D_b, where D_b(x^v) = C(v, b) x^(v-b).

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpmod/fieldpoly.hpp"

namespace dpmod {

/// The basis symbol x^a D_b.
struct BasisOp {
    Exponent a = 0;  // power of x
    Exponent b = 0;  // divided-power order

    /// Bernstein degree a + b.
    [[nodiscard]] Exponent bdeg() const { return checked::add(a, b); }

    friend auto operator<=>(const BasisOp&, const BasisOp&) = default;
};

/// Orders basis symbols by (b, a), the enumeration order of bernstein_basis.
struct BasisOpOrder {
    bool operator()(const BasisOp& l, const BasisOp& r) const {
        return l.b != r.b ? l.b < r.b : l.a < r.a;
    }
};

struct OpTerm {
    BasisOp op;
    std::uint64_t coeff;

    friend bool operator==(const OpTerm&, const OpTerm&) = default;
};

/// F_p-linear combination of basis symbols, sorted by BasisOpOrder with no
/// zero coefficients.
class Operator {
public:
    explicit Operator(Prime p) : p_(p) {}

    static Operator basis(Prime p, BasisOp op, std::uint64_t coeff = 1);
    /// D_b alone.
    static Operator divided_power(Prime p, Exponent b) { return basis(p, {0, b}); }
    /// Sums repeated symbols and reduces coefficients.
    static Operator from_terms(Prime p, std::vector<OpTerm> terms);

    [[nodiscard]] Prime modulus() const noexcept { return p_; }
    [[nodiscard]] std::span<const OpTerm> terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    /// Largest divided-power order; 0 for the zero operator.
    [[nodiscard]] Exponent order() const;
    /// Largest Bernstein degree; 0 for the zero operator.
    [[nodiscard]] Exponent bdeg() const;

    friend bool operator==(const Operator&, const Operator&) = default;

private:
    Prime p_;
    std::vector<OpTerm> terms_;
};

Operator add(const Operator& u, const Operator& v);
Operator scale(FpCoeff c, const Operator& u);

SparsePoly apply_basis(const BasisOp& op, const SparsePoly& f);
SparsePoly apply(const Operator& op, const SparsePoly& f);

/// Normal form of the composition u o v.
///
/// Uses D_b o x^c = sum_j C(c, j) x^(c-j) D_(b-j) (the commutation rule
/// D_b x = x D_b + D_(b-1) iterated) followed by the divided-power merge
/// D_b o D_d = C(b+d, b) D_(b+d).
Operator op_mul(const Operator& u, const Operator& v);

/// All (a, b) with a + b <= i, ordered by b then a.
std::vector<BasisOp> bernstein_basis(Exponent i);

/// Least s with b < p^s; min_level(0) = 0.
unsigned min_level(Exponent b, Prime p);

/// Operator text: terms `c*x^a*D_b` joined by " + "; factors with a = 0,
/// b = 0 or c = 1 are omitted, and the zero operator prints as "0".
Operator parse_operator(std::string_view text, Prime p);
std::string format_operator(const Operator& op);

}  // namespace dpmod
