#include "dpmod/fieldpoly.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dpmod/errors.hpp"
#include "text.hpp"

namespace dpmod {

namespace checked {

Exponent add(Exponent a, Exponent b) {
    Exponent r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw RangeError("exponent overflow: " + std::to_string(a) + " + " + std::to_string(b));
    }
    return r;
}

Exponent sub(Exponent a, Exponent b) {
    if (b > a) {
        throw RangeError("exponent underflow: " + std::to_string(a) + " - " + std::to_string(b));
    }
    return a - b;
}

Exponent mul(Exponent a, Exponent b) {
    Exponent r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw RangeError("exponent overflow: " + std::to_string(a) + " * " + std::to_string(b));
    }
    return r;
}

Exponent pow(Exponent base, unsigned e) {
    Exponent r = 1;
    for (unsigned i = 0; i < e; ++i) r = mul(r, base);
    return r;
}

}  // namespace checked

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

Prime::Prime(std::uint64_t p) : p_(p) {
    if (p > kMax) {
        throw InputError("modulus " + std::to_string(p) + " exceeds the supported maximum 2^32-1");
    }
    if (!is_prime(p)) {
        throw InputError("modulus " + std::to_string(p) + " is not prime");
    }
}

namespace fp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) {
        throw InputError("zero has no inverse mod " + std::to_string(p));
    }
    return pow(a, p - 2, p);
}

}  // namespace fp

FpCoeff FpCoeff::from_int(std::int64_t v, Prime p) {
    const auto m = static_cast<std::int64_t>(p.value());
    auto r = v % m;
    if (r < 0) r += m;
    return FpCoeff(static_cast<std::uint64_t>(r), p);
}

FpCoeff FpCoeff::inverse() const { return FpCoeff(fp::inv(value_, p_.value()), p_); }

FpCoeff operator+(FpCoeff a, FpCoeff b) {
    require_same_modulus(a.p_, b.p_);
    return FpCoeff(fp::add(a.value_, b.value_, a.p_.value()), a.p_);
}

FpCoeff operator-(FpCoeff a, FpCoeff b) {
    require_same_modulus(a.p_, b.p_);
    return FpCoeff(fp::sub(a.value_, b.value_, a.p_.value()), a.p_);
}

FpCoeff operator*(FpCoeff a, FpCoeff b) {
    require_same_modulus(a.p_, b.p_);
    return FpCoeff(fp::mul(a.value_, b.value_, a.p_.value()), a.p_);
}

FpCoeff operator-(FpCoeff a) { return FpCoeff(fp::neg(a.value_, a.p_.value()), a.p_); }

namespace {

// C(a, b) mod p for 0 <= b <= a < p.
std::uint64_t small_binom(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    b = std::min(b, a - b);
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint64_t j = 0; j < b; ++j) {
        num = fp::mul(num, a - j, p);
        den = fp::mul(den, j + 1, p);
    }
    return fp::mul(num, fp::inv(den, p), p);
}

}  // namespace

std::uint64_t binom_mod_p_raw(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (p == 2) {
        return (k & ~n) == 0 ? 1 : 0;
    }
    std::uint64_t result = 1;
    while (k > 0) {
        const std::uint64_t nd = n % p;
        const std::uint64_t kd = k % p;
        if (kd > nd) return 0;
        if (kd != 0 && kd != nd) {
            result = fp::mul(result, small_binom(nd, kd, p), p);
        }
        n /= p;
        k /= p;
    }
    return result;
}

FpCoeff binom_mod_p(std::uint64_t n, std::uint64_t k, Prime p) {
    return FpCoeff(binom_mod_p_raw(n, k, p.value()), p);
}

// ---------------------------------------------------------------------------

void require_same_modulus(Prime a, Prime b) {
    if (a != b) {
        throw InputError("modulus mismatch: " + std::to_string(a.value()) + " vs " +
                         std::to_string(b.value()));
    }
}

void PolyBuilder::add_term(Exponent e, std::uint64_t coeff) {
    coeff %= p_.value();
    if (coeff != 0) terms_.push_back({e, coeff});
}

void PolyBuilder::add_scaled(const SparsePoly& f, std::uint64_t coeff) {
    require_same_modulus(p_, f.modulus());
    coeff %= p_.value();
    if (coeff == 0) return;
    for (const Term& t : f.terms()) {
        terms_.push_back({t.exponent, fp::mul(t.coeff, coeff, p_.value())});
    }
}

SparsePoly PolyBuilder::build() && {
    const std::uint64_t p = p_.value();
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    SparsePoly out(p_);
    for (const Term& t : terms_) {
        if (!out.terms_.empty() && out.terms_.back().exponent == t.exponent) {
            out.terms_.back().coeff = fp::add(out.terms_.back().coeff, t.coeff, p);
            if (out.terms_.back().coeff == 0) out.terms_.pop_back();
        } else {
            out.terms_.push_back(t);
        }
    }
    terms_.clear();
    return out;
}

SparsePoly SparsePoly::monomial(Prime p, Exponent e, std::uint64_t coeff) {
    PolyBuilder b(p);
    b.add_term(e, coeff);
    return std::move(b).build();
}

SparsePoly SparsePoly::constant(Prime p, std::int64_t c) {
    return monomial(p, 0, FpCoeff::from_int(c, p).value());
}

SparsePoly SparsePoly::from_terms(Prime p, std::vector<Term> terms) {
    PolyBuilder b(p);
    for (const Term& t : terms) b.add_term(t.exponent, t.coeff);
    return std::move(b).build();
}

Degree SparsePoly::degree() const noexcept {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().exponent;
}

std::uint64_t SparsePoly::coeff(Exponent e) const noexcept {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, Exponent x) { return t.exponent < x; });
    return (it != terms_.end() && it->exponent == e) ? it->coeff : 0;
}

SparsePoly add(const SparsePoly& f, const SparsePoly& g) {
    PolyBuilder b(f.modulus());
    b.add_scaled(f, 1);
    b.add_scaled(g, 1);
    return std::move(b).build();
}

SparsePoly sub(const SparsePoly& f, const SparsePoly& g) {
    PolyBuilder b(f.modulus());
    b.add_scaled(f, 1);
    b.add_scaled(g, f.modulus().value() - 1);
    return std::move(b).build();
}

SparsePoly neg(const SparsePoly& f) {
    PolyBuilder b(f.modulus());
    b.add_scaled(f, f.modulus().value() - 1);
    return std::move(b).build();
}

SparsePoly scale(FpCoeff c, const SparsePoly& f) {
    require_same_modulus(c.modulus(), f.modulus());
    PolyBuilder b(f.modulus());
    b.add_scaled(f, c.value());
    return std::move(b).build();
}

SparsePoly mul(const SparsePoly& f, const SparsePoly& g) {
    require_same_modulus(f.modulus(), g.modulus());
    const std::uint64_t p = f.modulus().value();
    PolyBuilder b(f.modulus());
    for (const Term& s : f.terms()) {
        for (const Term& t : g.terms()) {
            b.add_term(checked::add(s.exponent, t.exponent), fp::mul(s.coeff, t.coeff, p));
        }
    }
    return std::move(b).build();
}

SparsePoly shift(const SparsePoly& f, Exponent a) {
    if (a == 0) return f;
    PolyBuilder b(f.modulus());
    for (const Term& t : f.terms()) b.add_term(checked::add(t.exponent, a), t.coeff);
    return std::move(b).build();
}

SparsePoly pow(const SparsePoly& f, std::uint64_t n) {
    SparsePoly result = SparsePoly::constant(f.modulus(), 1);
    SparsePoly base = f;
    while (n > 0) {
        if (n & 1) result = mul(result, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return result;
}

unsigned valuation(std::uint64_t n, Prime p) {
    unsigned v = 0;
    while (n % p.value() == 0) {
        n /= p.value();
        ++v;
    }
    return v;
}

std::optional<unsigned> frobenius_level(const SparsePoly& f) {
    std::optional<unsigned> level;
    for (const Term& t : f.terms()) {
        if (t.exponent == 0) continue;
        const unsigned v = valuation(t.exponent, f.modulus());
        if (!level || v < *level) level = v;
    }
    return level;
}

// ---------------------------------------------------------------------------

SparsePoly parse_poly(std::string_view text, Prime p) {
    if (text::trim(text) == "0") return SparsePoly(p);
    PolyBuilder b(p);
    for (const text::TermFactors& factors : text::lex_sum(text)) {
        std::uint64_t coeff = 1;
        Exponent e = 0;
        std::size_t i = 0;
        if (i < factors.size() && factors[i].kind == text::FactorKind::Coeff) {
            coeff = factors[i].value;
            if (coeff == 0 || coeff >= p.value()) {
                throw ParseError("coefficient " + std::to_string(coeff) + " outside 1.." +
                                 std::to_string(p.value() - 1) + " in '" + std::string(text) + "'");
            }
            ++i;
        }
        if (i < factors.size() && factors[i].kind == text::FactorKind::X) {
            e = factors[i].value;
            ++i;
        }
        if (i != factors.size()) {
            throw ParseError("polynomial terms have the form c*x^e: '" + std::string(text) + "'");
        }
        b.add_term(e, coeff);
    }
    return std::move(b).build();
}

std::string format_poly(const SparsePoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const Term& t : f.terms()) {
        if (!out.empty()) out += " + ";
        const bool unit = t.coeff == 1;
        if (t.exponent == 0) {
            out += std::to_string(t.coeff);
            continue;
        }
        if (!unit) out += std::to_string(t.coeff) + "*";
        out += "x";
        if (t.exponent != 1) out += "^" + std::to_string(t.exponent);
    }
    return out;
}

}  // namespace dpmod
