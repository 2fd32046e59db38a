#pragma once

// Exact K-dimensions of Bernstein-filtration images F_i * {generators} in M,
// together with the closed-form dimension formula and lower bound they are
// compared against.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dpmod/frobmod.hpp"

namespace dpmod {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Monomials x^e s2 come before x^e s1; within a component exponents ascend.
enum class Component : std::uint8_t { S2 = 0, S1 = 1 };

struct ModuleMonomial {
    Component component;
    Exponent exponent;

    friend auto operator<=>(const ModuleMonomial&, const ModuleMonomial&) = default;
};

struct VecEntry {
    ModuleMonomial column;
    std::uint64_t coeff;

    friend auto operator<=>(const VecEntry&, const VecEntry&) = default;
};

/// Sparse coordinate vector of an element of M, sorted by column.
using SparseVec = std::vector<VecEntry>;

SparseVec to_vector(const ModuleElement& m);
ModuleElement from_vector(const SparseVec& v, Prime p);

/// Reduced row echelon basis over F_p. Every row is keyed by its pivot, the
/// smallest column it touches; the pivot coefficient is 1 and no other row
/// has a nonzero entry in that column.
class SpanAccumulator {
public:
    explicit SpanAccumulator(Prime p) : p_(p) {}

    /// Returns true when the vector enlarged the span.
    bool insert(const ModuleElement& m);
    bool insert(SparseVec v);

    [[nodiscard]] bool contains(const ModuleElement& m) const;
    [[nodiscard]] std::size_t dimension() const noexcept { return rows_.size(); }
    [[nodiscard]] const std::map<ModuleMonomial, SparseVec>& rows() const noexcept { return rows_; }
    [[nodiscard]] Prime modulus() const noexcept { return p_; }

private:
    [[nodiscard]] SparseVec reduce(SparseVec v) const;

    Prime p_;
    std::map<ModuleMonomial, SparseVec> rows_;
};

std::size_t span_dim(std::span<const ModuleElement> elements);

struct FiltrationOptions {
    /// Skip zero images and images already inserted. Never changes results.
    bool deduplicate = true;
};

struct FiltrationImage {
    std::vector<ModuleElement> elements;  // nonzero images that were inserted
    std::size_t dim = 0;
};

/// dim_K of F_i * gens: every x^a D_b with a + b <= i applied to every
/// generator.
FiltrationImage filtration_image(const FrobModule& module, std::span<const ModuleElement> gens,
                                 Exponent i, FiltrationOptions options = {});

/// Exact non-negative rational num/den in lowest terms.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Ratio of(std::int64_t num, std::int64_t den);
    [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Ratio&, const Ratio&) = default;
    friend std::strong_ordering operator<=>(const Ratio& l, const Ratio& r);
};

std::string to_string(const Ratio& r);

/// Unique e with p^e <= i < p^{e+1}. Requires i >= 1.
unsigned e_of(std::uint64_t i, Prime p);
unsigned e_of(const BigInt& i, Prime p);

/// True when the closed formula for dim F_i s2 has integer inputs (i >= p).
bool thm42_defined(std::uint64_t i, Prime p);

/// dim F_i s2 for g_r = x^{(p+1) p^r}:
///   2i + p^{e+1} - p^e + 2   if p^{e+1} - p^e + p^{e-1} <= i < p^{e+1},
///   3i - p^{e-1} + 3         if p^e <= i < p^{e+1} - p^e + p^{e-1}.
/// Throws FormulaUndefinedError for i < p, where p^{e-1} = 1/p.
std::int64_t thm42_formula(std::uint64_t i, Prime p);
BigInt thm42_formula_exact(const BigInt& i, Prime p);
/// 1 for the 2i + ... branch, 2 for the 3i - ... branch.
int thm42_branch(const BigInt& i, Prime p);

/// Lower bound for dim F_{p^i} {s1, s2} when g_r = x^{p^r + p^{2r}}:
///   (i - c + 1) p^i - p^c (p^{i-c+1} - 1) / (p - 1),  c = ceil(i / 2).
std::int64_t thm32_bound(unsigned i, Prime p);

struct GrowthRecord {
    std::uint64_t i = 0;
    std::size_t dim = 0;
    std::optional<Ratio> ratio;  // dim / i, absent for i = 0
    std::optional<std::int64_t> formula_value;
    std::optional<bool> match;
};

struct GrowthSeries {
    std::vector<GrowthRecord> records;
    std::optional<Ratio> empirical_slope_bound;  // max dim / i over i >= 1
};

/// Dimensions at each i in strictly ascending `i_values`, computed
/// incrementally (operators of Bernstein degree in (i_prev, i] are added at
/// each step). Formula columns are filled for g_r = x^{(p+1)p^r} with
/// gens = {s2} wherever the closed formula is defined.
GrowthSeries growth_series(const FrobModule& module, std::span<const ModuleElement> gens,
                           std::span<const std::uint64_t> i_values);

}  // namespace dpmod
