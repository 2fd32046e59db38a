#include "dpmod/diffop.hpp"

#include <algorithm>
#include <limits>

#include "dpmod/errors.hpp"
#include "text.hpp"

namespace dpmod {

Operator Operator::basis(Prime p, BasisOp op, std::uint64_t coeff) {
    return from_terms(p, {{op, coeff}});
}

Operator Operator::from_terms(Prime p, std::vector<OpTerm> terms) {
    const std::uint64_t m = p.value();
    for (OpTerm& t : terms) t.coeff %= m;
    std::sort(terms.begin(), terms.end(),
              [](const OpTerm& l, const OpTerm& r) { return BasisOpOrder{}(l.op, r.op); });
    Operator out(p);
    for (const OpTerm& t : terms) {
        if (t.coeff == 0) continue;
        if (!out.terms_.empty() && out.terms_.back().op == t.op) {
            out.terms_.back().coeff = fp::add(out.terms_.back().coeff, t.coeff, m);
            if (out.terms_.back().coeff == 0) out.terms_.pop_back();
        } else {
            out.terms_.push_back(t);
        }
    }
    return out;
}

Exponent Operator::order() const {
    Exponent r = 0;
    for (const OpTerm& t : terms_) r = std::max(r, t.op.b);
    return r;
}

Exponent Operator::bdeg() const {
    Exponent r = 0;
    for (const OpTerm& t : terms_) r = std::max(r, t.op.bdeg());
    return r;
}

Operator add(const Operator& u, const Operator& v) {
    require_same_modulus(u.modulus(), v.modulus());
    std::vector<OpTerm> terms(u.terms().begin(), u.terms().end());
    terms.insert(terms.end(), v.terms().begin(), v.terms().end());
    return Operator::from_terms(u.modulus(), std::move(terms));
}

Operator scale(FpCoeff c, const Operator& u) {
    require_same_modulus(c.modulus(), u.modulus());
    std::vector<OpTerm> terms(u.terms().begin(), u.terms().end());
    for (OpTerm& t : terms) t.coeff = fp::mul(t.coeff, c.value(), c.modulus().value());
    return Operator::from_terms(u.modulus(), std::move(terms));
}

SparsePoly apply_basis(const BasisOp& op, const SparsePoly& f) {
    const std::uint64_t p = f.modulus().value();
    PolyBuilder out(f.modulus());
    for (const Term& t : f.terms()) {
        if (t.exponent < op.b) continue;
        const std::uint64_t c = binom_mod_p_raw(t.exponent, op.b, p);
        if (c == 0) continue;
        out.add_term(checked::add(t.exponent - op.b, op.a), fp::mul(c, t.coeff, p));
    }
    return std::move(out).build();
}

SparsePoly apply(const Operator& op, const SparsePoly& f) {
    require_same_modulus(op.modulus(), f.modulus());
    PolyBuilder out(f.modulus());
    for (const OpTerm& t : op.terms()) {
        out.add_scaled(apply_basis(t.op, f), t.coeff);
    }
    return std::move(out).build();
}

Operator op_mul(const Operator& u, const Operator& v) {
    require_same_modulus(u.modulus(), v.modulus());
    const std::uint64_t p = u.modulus().value();
    std::vector<OpTerm> terms;
    for (const OpTerm& l : u.terms()) {
        for (const OpTerm& r : v.terms()) {
            const std::uint64_t c = fp::mul(l.coeff, r.coeff, p);
            const Exponent jmax = std::min(l.op.b, r.op.a);
            for (Exponent j = 0; j <= jmax; ++j) {
                const std::uint64_t commute = binom_mod_p_raw(r.op.a, j, p);
                if (commute == 0) continue;
                const Exponent order = checked::add(l.op.b - j, r.op.b);
                const std::uint64_t merge = binom_mod_p_raw(order, r.op.b, p);
                if (merge == 0) continue;
                const Exponent xpow = checked::add(l.op.a, r.op.a - j);
                terms.push_back({{xpow, order}, fp::mul(c, fp::mul(commute, merge, p), p)});
            }
        }
    }
    return Operator::from_terms(u.modulus(), std::move(terms));
}

std::vector<BasisOp> bernstein_basis(Exponent i) {
    std::vector<BasisOp> out;
    out.reserve(static_cast<std::size_t>((i + 1) * (i + 2) / 2));
    for (Exponent b = 0; b <= i; ++b) {
        for (Exponent a = 0; a + b <= i; ++a) out.push_back({a, b});
    }
    return out;
}

unsigned min_level(Exponent b, Prime p) {
    unsigned s = 0;
    Exponent power = 1;  // p^s
    while (b >= power) {
        ++s;
        if (power > std::numeric_limits<Exponent>::max() / p.value()) break;
        power *= p.value();
    }
    return s;
}

// ---------------------------------------------------------------------------

Operator parse_operator(std::string_view text, Prime p) {
    if (text::trim(text) == "0") return Operator(p);
    std::vector<OpTerm> terms;
    for (const text::TermFactors& factors : text::lex_sum(text)) {
        OpTerm term{{0, 0}, 1};
        std::size_t i = 0;
        if (i < factors.size() && factors[i].kind == text::FactorKind::Coeff) {
            term.coeff = factors[i].value;
            if (term.coeff == 0 || term.coeff >= p.value()) {
                throw ParseError("coefficient " + std::to_string(term.coeff) + " outside 1.." +
                                 std::to_string(p.value() - 1) + " in '" + std::string(text) + "'");
            }
            ++i;
        }
        if (i < factors.size() && factors[i].kind == text::FactorKind::X) {
            term.op.a = factors[i++].value;
        }
        if (i < factors.size() && factors[i].kind == text::FactorKind::D) {
            term.op.b = factors[i++].value;
        }
        if (i != factors.size()) {
            throw ParseError("operator terms must be in normal form c*x^a*D_b: '" +
                             std::string(text) + "'");
        }
        terms.push_back(term);
    }
    return Operator::from_terms(p, std::move(terms));
}

std::string format_operator(const Operator& op) {
    if (op.is_zero()) return "0";
    std::string out;
    for (const OpTerm& t : op.terms()) {
        if (!out.empty()) out += " + ";
        std::vector<std::string> factors;
        if (t.coeff != 1) factors.push_back(std::to_string(t.coeff));
        if (t.op.a == 1) factors.emplace_back("x");
        if (t.op.a > 1) factors.push_back("x^" + std::to_string(t.op.a));
        if (t.op.b > 0) factors.push_back("D_" + std::to_string(t.op.b));
        if (factors.empty()) factors.emplace_back("1");
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i > 0) out += "*";
            out += factors[i];
        }
    }
    return out;
}

}  // namespace dpmod
