#pragma once

// The two-generator Frobenius-descent D-module M = R s1 + R s2.
//
// M is glued from free R^{p^i}-modules M^(i) with generators s1^(i), s2^(i)
// along Theta_i(s1^(i+1)) = s1^(i), Theta_i(s2^(i+1)) = g_i s1^(i) + s2^(i).
// Relative to the level-s generators an element f1 s1 + f2 s2 has
// coordinates (f1 + f2 sigma_{s-1}, f2), where sigma_n = -(g_0 + ... + g_n),
// and D_s acts on those coordinates through R.

#include <cstdint>
#include <deque>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "dpmod/diffop.hpp"
#include "dpmod/fieldpoly.hpp"

namespace dpmod {

enum class SequenceKind { Ex1, Ex2, Custom };

/// The rule r -> g_r. Ex1: g_r = x^(p^r + p^2r). Ex2: g_r = x^((p+1) p^r).
/// Custom: an explicit finite list g_0, ..., g_rmax.
class GeneratorSequence {
public:
    static GeneratorSequence ex1(Prime p);
    static GeneratorSequence ex2(Prime p);
    static GeneratorSequence custom(Prime p, std::vector<SparsePoly> g);

    [[nodiscard]] Prime modulus() const noexcept { return p_; }
    [[nodiscard]] SequenceKind kind() const noexcept { return kind_; }
    /// Number of available terms for Custom; std::nullopt for built-ins.
    [[nodiscard]] std::optional<std::size_t> coverage() const;

    /// Throws InputError when a Custom list is too short.
    [[nodiscard]] SparsePoly g(unsigned r) const;

private:
    GeneratorSequence(Prime p, SequenceKind kind, std::vector<SparsePoly> g)
        : p_(p), kind_(kind), custom_(std::move(g)) {}

    Prime p_;
    SequenceKind kind_;
    std::vector<SparsePoly> custom_;
};

std::string to_string(SequenceKind kind);

struct SequenceValidation {
    bool ok = true;
    std::optional<unsigned> first_violation;
    std::string message;
};

/// Checks g_r in R^{p^r} for r <= rmax.
SequenceValidation validate_sequence(const GeneratorSequence& gseq, unsigned rmax);

/// Reads `{"p": 2, "g": ["x^3", "x^6"]}`. Throws ParseError.
GeneratorSequence parse_sequence_json(std::string_view json_text);
GeneratorSequence load_sequence_file(const std::string& path);

/// f1 s1 + f2 s2.
struct ModuleElement {
    SparsePoly f1;
    SparsePoly f2;

    static ModuleElement s1(Prime p);
    static ModuleElement s2(Prime p);
    static ModuleElement zero(Prime p);

    [[nodiscard]] Prime modulus() const { return f1.modulus(); }
    [[nodiscard]] bool is_zero() const { return f1.is_zero() && f2.is_zero(); }

    friend bool operator==(const ModuleElement&, const ModuleElement&) = default;
};

ModuleElement add(const ModuleElement& m, const ModuleElement& n);
ModuleElement scale(FpCoeff c, const ModuleElement& m);

/// Text form `(f1, f2)` with both coordinates in polynomial text format.
ModuleElement parse_element(std::string_view text, Prime p);
std::string format_element(const ModuleElement& m);

/// The module determined by a generator sequence. Partial sums sigma_n are
/// memoized behind a shared mutex; sigma returns references that stay valid
/// for the lifetime of the module.
class FrobModule {
public:
    explicit FrobModule(GeneratorSequence gseq);

    FrobModule(const FrobModule&) = delete;
    FrobModule& operator=(const FrobModule&) = delete;

    [[nodiscard]] Prime modulus() const noexcept { return gseq_.modulus(); }
    [[nodiscard]] const GeneratorSequence& sequence() const noexcept { return gseq_; }

    /// -(g_0 + ... + g_n); sigma(-1) is the zero polynomial.
    [[nodiscard]] const SparsePoly& sigma(std::int64_t n) const;

private:
    GeneratorSequence gseq_;
    mutable std::shared_mutex mutex_;
    mutable std::deque<SparsePoly> sigma_;  // sigma_[n] = sigma(n)
    SparsePoly zero_;
};

/// x^a D_b acting on m through the level-s generators, where s defaults to
/// min_level(b). Any admissible level (b < p^s) gives the same result.
ModuleElement act_basis(const FrobModule& module, const BasisOp& op, const ModuleElement& m,
                        std::optional<unsigned> level = std::nullopt);

ModuleElement act(const FrobModule& module, const Operator& op, const ModuleElement& m);

/// R -> M, f -> (f, 0).
ModuleElement ses_embed(const SparsePoly& f);
/// M -> R, (f1, f2) -> f2.
SparsePoly ses_project(const ModuleElement& m);

/// (D_{p^k} f1 + D_{p^k}(sigma_k) f2, D_{p^k} f2), evaluated term for term.
/// Agrees with act_basis when f2 is constant; kept for cross-checking.
ModuleElement displayed_formula_act(const FrobModule& module, unsigned k, const ModuleElement& m);

}  // namespace dpmod
