#pragma once

// Prime field F_p and the sparse univariate polynomial ring F_p[x].

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dpmod {

using Exponent = std::uint64_t;

/// Degree of a polynomial; std::nullopt stands for minus infinity (the zero
/// polynomial).
using Degree = std::optional<Exponent>;

namespace checked {

/// Overflow-checked exponent arithmetic. Each throws RangeError instead of
/// wrapping.
Exponent add(Exponent a, Exponent b);
Exponent sub(Exponent a, Exponent b);
Exponent mul(Exponent a, Exponent b);
Exponent pow(Exponent base, unsigned e);

}  // namespace checked

/// A prime modulus. Primality is checked on construction; moduli are kept
/// below 2^32 so that a product of two residues fits in 64 bits.
class Prime {
public:
    static constexpr std::uint64_t kMax = (std::uint64_t{1} << 32) - 1;

    explicit Prime(std::uint64_t p);

    [[nodiscard]] std::uint64_t value() const noexcept { return p_; }

    friend bool operator==(Prime, Prime) = default;

private:
    std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

/// Canonical residue in [0, p).
class FpCoeff {
public:
    FpCoeff(std::uint64_t raw, Prime p) : value_(raw % p.value()), p_(p) {}

    static FpCoeff from_int(std::int64_t v, Prime p);

    [[nodiscard]] std::uint64_t value() const noexcept { return value_; }
    [[nodiscard]] Prime modulus() const noexcept { return p_; }
    [[nodiscard]] bool is_zero() const noexcept { return value_ == 0; }

    [[nodiscard]] FpCoeff inverse() const;  // throws InputError on zero

    friend FpCoeff operator+(FpCoeff a, FpCoeff b);
    friend FpCoeff operator-(FpCoeff a, FpCoeff b);
    friend FpCoeff operator*(FpCoeff a, FpCoeff b);
    friend FpCoeff operator-(FpCoeff a);
    friend bool operator==(FpCoeff, FpCoeff) = default;

private:
    std::uint64_t value_;
    Prime p_;
};

namespace fp {

// Raw residue helpers; operands must already be canonical.
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}
inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);

}  // namespace fp

/// C(n, k) mod p, digit by digit in base p (Lucas). Zero when k > n.
FpCoeff binom_mod_p(std::uint64_t n, std::uint64_t k, Prime p);

/// Raw-residue form of binom_mod_p for hot loops.
std::uint64_t binom_mod_p_raw(std::uint64_t n, std::uint64_t k, std::uint64_t p);

struct Term {
    Exponent exponent;
    std::uint64_t coeff;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Element of F_p[x]. Terms are kept sorted by ascending exponent with no zero
/// coefficients stored; the zero polynomial has no terms.
class SparsePoly {
public:
    explicit SparsePoly(Prime p) : p_(p) {}

    static SparsePoly monomial(Prime p, Exponent e, std::uint64_t coeff = 1);
    static SparsePoly constant(Prime p, std::int64_t c);
    /// Accepts terms in any order with unreduced coefficients and repeats.
    static SparsePoly from_terms(Prime p, std::vector<Term> terms);

    [[nodiscard]] Prime modulus() const noexcept { return p_; }
    [[nodiscard]] std::span<const Term> terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] Degree degree() const noexcept;
    [[nodiscard]] std::uint64_t coeff(Exponent e) const noexcept;

    friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

private:
    friend class PolyBuilder;

    Prime p_;
    std::vector<Term> terms_;
};

/// Accumulates terms and produces a normalized SparsePoly.
class PolyBuilder {
public:
    explicit PolyBuilder(Prime p) : p_(p) {}

    void add_term(Exponent e, std::uint64_t coeff);
    void add_scaled(const SparsePoly& f, std::uint64_t coeff);
    [[nodiscard]] SparsePoly build() &&;

private:
    Prime p_;
    std::vector<Term> terms_;
};

void require_same_modulus(Prime a, Prime b);

SparsePoly add(const SparsePoly& f, const SparsePoly& g);
SparsePoly sub(const SparsePoly& f, const SparsePoly& g);
SparsePoly mul(const SparsePoly& f, const SparsePoly& g);
SparsePoly neg(const SparsePoly& f);
SparsePoly scale(FpCoeff c, const SparsePoly& f);
/// x^a * f
SparsePoly shift(const SparsePoly& f, Exponent a);
SparsePoly pow(const SparsePoly& f, std::uint64_t n);

inline SparsePoly operator+(const SparsePoly& f, const SparsePoly& g) { return add(f, g); }
inline SparsePoly operator-(const SparsePoly& f, const SparsePoly& g) { return sub(f, g); }
inline SparsePoly operator*(const SparsePoly& f, const SparsePoly& g) { return mul(f, g); }
inline SparsePoly operator-(const SparsePoly& f) { return neg(f); }

/// p-adic valuation of a positive integer.
unsigned valuation(std::uint64_t n, Prime p);

/// Largest s with f in R^{p^s}, i.e. the minimum p-adic valuation over the
/// exponents of f. std::nullopt means "infinite" (f is zero or constant).
std::optional<unsigned> frobenius_level(const SparsePoly& f);

/// Canonical text: `c*x^e` terms joined by " + " in ascending exponent order,
/// unit coefficients omitted, zero polynomial as "0". Parsing accepts any
/// term order and combines repeated exponents.
SparsePoly parse_poly(std::string_view text, Prime p);
std::string format_poly(const SparsePoly& f);

}  // namespace dpmod
