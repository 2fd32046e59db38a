#include "dpmod/frobmod.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "dpmod/errors.hpp"
#include "text.hpp"

namespace dpmod {

GeneratorSequence GeneratorSequence::ex1(Prime p) { return {p, SequenceKind::Ex1, {}}; }

GeneratorSequence GeneratorSequence::ex2(Prime p) { return {p, SequenceKind::Ex2, {}}; }

GeneratorSequence GeneratorSequence::custom(Prime p, std::vector<SparsePoly> g) {
    for (const SparsePoly& gr : g) require_same_modulus(p, gr.modulus());
    return {p, SequenceKind::Custom, std::move(g)};
}

std::optional<std::size_t> GeneratorSequence::coverage() const {
    if (kind_ == SequenceKind::Custom) return custom_.size();
    return std::nullopt;
}

SparsePoly GeneratorSequence::g(unsigned r) const {
    const Exponent p = p_.value();
    switch (kind_) {
        case SequenceKind::Ex1:
            return SparsePoly::monomial(p_, checked::add(checked::pow(p, r), checked::pow(p, 2 * r)));
        case SequenceKind::Ex2:
            return SparsePoly::monomial(p_, checked::mul(p + 1, checked::pow(p, r)));
        case SequenceKind::Custom:
            break;
    }
    if (r >= custom_.size()) {
        throw InputError("custom generator sequence has " + std::to_string(custom_.size()) +
                         " entries; this computation needs at least " + std::to_string(r + 1) +
                         " (g_0..g_" + std::to_string(r) + ")");
    }
    return custom_[r];
}

std::string to_string(SequenceKind kind) {
    switch (kind) {
        case SequenceKind::Ex1: return "ex1";
        case SequenceKind::Ex2: return "ex2";
        case SequenceKind::Custom: return "custom";
    }
    return "?";
}

SequenceValidation validate_sequence(const GeneratorSequence& gseq, unsigned rmax) {
    if (auto cov = gseq.coverage(); cov && *cov < std::size_t{rmax} + 1) {
        throw InputError("custom generator sequence has " + std::to_string(*cov) +
                         " entries; validation up to r=" + std::to_string(rmax) + " needs " +
                         std::to_string(rmax + 1));
    }
    for (unsigned r = 0; r <= rmax; ++r) {
        const auto level = frobenius_level(gseq.g(r));
        if (level && *level < r) {
            return {false, r,
                    "g_" + std::to_string(r) + " = " + format_poly(gseq.g(r)) + " is not in R^{p^" +
                        std::to_string(r) + "} (Frobenius level " + std::to_string(*level) + ")"};
        }
    }
    return {};
}

GeneratorSequence parse_sequence_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("sequence file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("p") || !doc.contains("g") ||
        !doc["p"].is_number_unsigned() || !doc["g"].is_array()) {
        throw ParseError(R"(sequence file must look like {"p": 2, "g": ["x^3", ...]})");
    }
    const Prime p(doc["p"].get<std::uint64_t>());
    std::vector<SparsePoly> g;
    for (const auto& entry : doc["g"]) {
        if (!entry.is_string()) throw ParseError("sequence entries must be polynomial strings");
        g.push_back(parse_poly(entry.get<std::string>(), p));
    }
    return GeneratorSequence::custom(p, std::move(g));
}

GeneratorSequence load_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sequence file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_sequence_json(buf.str());
}

// ---------------------------------------------------------------------------

ModuleElement ModuleElement::s1(Prime p) { return {SparsePoly::constant(p, 1), SparsePoly(p)}; }
ModuleElement ModuleElement::s2(Prime p) { return {SparsePoly(p), SparsePoly::constant(p, 1)}; }
ModuleElement ModuleElement::zero(Prime p) { return {SparsePoly(p), SparsePoly(p)}; }

ModuleElement add(const ModuleElement& m, const ModuleElement& n) {
    return {m.f1 + n.f1, m.f2 + n.f2};
}

ModuleElement scale(FpCoeff c, const ModuleElement& m) { return {scale(c, m.f1), scale(c, m.f2)}; }

ModuleElement parse_element(std::string_view text, Prime p) {
    text = text::trim(text);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
        throw ParseError("module element must look like (f1, f2): '" + std::string(text) + "'");
    }
    const std::string_view inner = text.substr(1, text.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos || inner.find(',', comma + 1) != std::string_view::npos) {
        throw ParseError("module element needs exactly two coordinates: '" + std::string(text) + "'");
    }
    return {parse_poly(inner.substr(0, comma), p), parse_poly(inner.substr(comma + 1), p)};
}

std::string format_element(const ModuleElement& m) {
    return "(" + format_poly(m.f1) + ", " + format_poly(m.f2) + ")";
}

// ---------------------------------------------------------------------------

FrobModule::FrobModule(GeneratorSequence gseq) : gseq_(std::move(gseq)), zero_(gseq_.modulus()) {}

const SparsePoly& FrobModule::sigma(std::int64_t n) const {
    if (n < 0) return zero_;
    const auto idx = static_cast<std::size_t>(n);
    {
        std::shared_lock lock(mutex_);
        if (idx < sigma_.size()) return sigma_[idx];
    }
    if (auto cov = gseq_.coverage(); cov && *cov <= idx) (void)gseq_.g(static_cast<unsigned>(idx));
    std::unique_lock lock(mutex_);
    while (sigma_.size() <= idx) {
        const auto r = static_cast<unsigned>(sigma_.size());
        SparsePoly next = sigma_.empty() ? neg(gseq_.g(0)) : sub(sigma_.back(), gseq_.g(r));
        sigma_.push_back(std::move(next));
    }
    return sigma_[idx];
}

ModuleElement act_basis(const FrobModule& module, const BasisOp& op, const ModuleElement& m,
                        std::optional<unsigned> level) {
    const Prime p = module.modulus();
    require_same_modulus(p, m.f1.modulus());
    require_same_modulus(p, m.f2.modulus());
    const unsigned needed = min_level(op.b, p);
    if (level && *level < needed) {
        throw InputError("D_" + std::to_string(op.b) + " does not lie in D_" +
                         std::to_string(*level) + " (needs level >= " + std::to_string(needed) + ")");
    }
    const unsigned s = level.value_or(needed);
    const BasisOp d{0, op.b};

    const SparsePoly df2 = apply_basis(d, m.f2);
    SparsePoly first(p);
    if (m.f2.is_zero() || op.b == 0) {
        first = apply_basis(d, m.f1);
    } else {
        const SparsePoly& sigma = module.sigma(static_cast<std::int64_t>(s) - 1);
        first = apply_basis(d, m.f1 + m.f2 * sigma) - df2 * sigma;
    }
    return {shift(first, op.a), shift(df2, op.a)};
}

ModuleElement act(const FrobModule& module, const Operator& op, const ModuleElement& m) {
    require_same_modulus(module.modulus(), op.modulus());
    const Prime p = module.modulus();
    PolyBuilder f1(p);
    PolyBuilder f2(p);
    for (const OpTerm& t : op.terms()) {
        const ModuleElement image = act_basis(module, t.op, m);
        f1.add_scaled(image.f1, t.coeff);
        f2.add_scaled(image.f2, t.coeff);
    }
    return {std::move(f1).build(), std::move(f2).build()};
}

ModuleElement ses_embed(const SparsePoly& f) { return {f, SparsePoly(f.modulus())}; }

SparsePoly ses_project(const ModuleElement& m) { return m.f2; }

ModuleElement displayed_formula_act(const FrobModule& module, unsigned k, const ModuleElement& m) {
    const Prime p = module.modulus();
    const BasisOp d{0, checked::pow(p.value(), k)};
    const SparsePoly& sigma = module.sigma(k);
    return {apply_basis(d, m.f1) + apply_basis(d, sigma) * m.f2, apply_basis(d, m.f2)};
}

}  // namespace dpmod
