#include "dpmod/filtration.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "dpmod/errors.hpp"

namespace dpmod {

SparseVec to_vector(const ModuleElement& m) {
    SparseVec v;
    v.reserve(m.f1.size() + m.f2.size());
    for (const Term& t : m.f2.terms()) v.push_back({{Component::S2, t.exponent}, t.coeff});
    for (const Term& t : m.f1.terms()) v.push_back({{Component::S1, t.exponent}, t.coeff});
    return v;
}

ModuleElement from_vector(const SparseVec& v, Prime p) {
    PolyBuilder f1(p);
    PolyBuilder f2(p);
    for (const VecEntry& e : v) {
        (e.column.component == Component::S1 ? f1 : f2).add_term(e.column.exponent, e.coeff);
    }
    return {std::move(f1).build(), std::move(f2).build()};
}

namespace {

// v - c * row, merged by column.
SparseVec axpy(const SparseVec& v, std::uint64_t c, const SparseVec& row, std::uint64_t p) {
    SparseVec out;
    out.reserve(v.size() + row.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < v.size() || j < row.size()) {
        if (j == row.size() || (i < v.size() && v[i].column < row[j].column)) {
            out.push_back(v[i++]);
        } else if (i == v.size() || row[j].column < v[i].column) {
            out.push_back({row[j].column, fp::neg(fp::mul(c, row[j].coeff, p), p)});
            ++j;
        } else {
            const std::uint64_t x = fp::sub(v[i].coeff, fp::mul(c, row[j].coeff, p), p);
            if (x != 0) out.push_back({v[i].column, x});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

SparseVec SpanAccumulator::reduce(SparseVec v) const {
    const std::uint64_t p = p_.value();
    std::size_t pos = 0;
    while (pos < v.size()) {
        auto it = rows_.find(v[pos].column);
        if (it == rows_.end()) {
            ++pos;
            continue;
        }
        // Row entries start at its pivot, so v[0..pos) is untouched.
        v = axpy(v, v[pos].coeff, it->second, p);
    }
    return v;
}

bool SpanAccumulator::insert(const ModuleElement& m) {
    require_same_modulus(p_, m.modulus());
    return insert(to_vector(m));
}

bool SpanAccumulator::insert(SparseVec v) {
    const std::uint64_t p = p_.value();
    v = reduce(std::move(v));
    if (v.empty()) return false;

    const std::uint64_t inv = fp::inv(v.front().coeff, p);
    for (VecEntry& e : v) e.coeff = fp::mul(e.coeff, inv, p);
    const ModuleMonomial pivot = v.front().column;

    // Only rows with a smaller pivot can touch the new pivot column.
    for (auto it = rows_.begin(); it != rows_.end() && it->first < pivot; ++it) {
        SparseVec& row = it->second;
        auto hit = std::lower_bound(row.begin(), row.end(), pivot,
                                    [](const VecEntry& e, const ModuleMonomial& c) { return e.column < c; });
        if (hit == row.end() || hit->column != pivot) continue;
        row = axpy(row, hit->coeff, v, p);
    }
    rows_.emplace(pivot, std::move(v));
    return true;
}

bool SpanAccumulator::contains(const ModuleElement& m) const {
    require_same_modulus(p_, m.modulus());
    return reduce(to_vector(m)).empty();
}

std::size_t span_dim(std::span<const ModuleElement> elements) {
    if (elements.empty()) return 0;
    SpanAccumulator acc(elements.front().modulus());
    for (const ModuleElement& m : elements) acc.insert(m);
    return acc.dimension();
}

namespace {

class ImageCollector {
public:
    ImageCollector(Prime p, bool deduplicate) : acc_(p), deduplicate_(deduplicate) {}

    void add(ModuleElement image, std::vector<ModuleElement>* keep) {
        if (image.is_zero()) return;
        SparseVec v = to_vector(image);
        if (deduplicate_ && !seen_.insert(v).second) return;
        acc_.insert(std::move(v));
        if (keep) keep->push_back(std::move(image));
    }

    [[nodiscard]] std::size_t dimension() const { return acc_.dimension(); }

private:
    SpanAccumulator acc_;
    bool deduplicate_;
    std::set<SparseVec> seen_;
};

void require_gens_modulus(const FrobModule& module, std::span<const ModuleElement> gens) {
    for (const ModuleElement& g : gens) require_same_modulus(module.modulus(), g.modulus());
}

}  // namespace

FiltrationImage filtration_image(const FrobModule& module, std::span<const ModuleElement> gens,
                                 Exponent i, FiltrationOptions options) {
    require_gens_modulus(module, gens);
    ImageCollector collector(module.modulus(), options.deduplicate);
    FiltrationImage out;
    for (const BasisOp& op : bernstein_basis(i)) {
        for (const ModuleElement& g : gens) collector.add(act_basis(module, op, g), &out.elements);
    }
    out.dim = collector.dimension();
    return out;
}

// ---------------------------------------------------------------------------

Ratio Ratio::of(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InputError("ratio with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

std::strong_ordering operator<=>(const Ratio& l, const Ratio& r) {
    const __int128 a = static_cast<__int128>(l.num) * r.den;
    const __int128 b = static_cast<__int128>(r.num) * l.den;
    return a < b ? std::strong_ordering::less
                 : (a > b ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const Ratio& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

unsigned e_of(std::uint64_t i, Prime p) {
    if (i == 0) throw InputError("e_of requires i >= 1");
    unsigned e = 0;
    std::uint64_t power = 1;  // p^e <= i
    while (power <= i / p.value()) {
        power *= p.value();
        ++e;
    }
    return e;
}

unsigned e_of(const BigInt& i, Prime p) {
    if (i < 1) throw InputError("e_of requires i >= 1");
    unsigned e = 0;
    BigInt power = p.value();
    while (power <= i) {
        power *= p.value();
        ++e;
    }
    return e;
}

bool thm42_defined(std::uint64_t i, Prime p) { return i >= p.value(); }

namespace {

std::int64_t to_int64(const BigInt& v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw RangeError(std::string(what) + " exceeds 64-bit range");
    }
    return v.convert_to<std::int64_t>();
}

}  // namespace

int thm42_branch(const BigInt& i, Prime p) {
    if (i < p.value()) {
        throw FormulaUndefinedError("closed formula undefined for i = " + i.str() +
                                    " < p = " + std::to_string(p.value()) +
                                    " (p^{e-1} is not an integer when e = 0)");
    }
    const unsigned e = e_of(i, p);
    const BigInt pe = boost::multiprecision::pow(BigInt(p.value()), e);
    const BigInt boundary = pe * p.value() - pe + pe / p.value();
    return i >= boundary ? 1 : 2;
}

BigInt thm42_formula_exact(const BigInt& i, Prime p) {
    const int branch = thm42_branch(i, p);
    const unsigned e = e_of(i, p);
    const BigInt pe = boost::multiprecision::pow(BigInt(p.value()), e);
    if (branch == 1) return 2 * i + pe * p.value() - pe + 2;
    return 3 * i - pe / p.value() + 3;
}

std::int64_t thm42_formula(std::uint64_t i, Prime p) {
    return to_int64(thm42_formula_exact(BigInt(i), p), "closed formula value");
}

std::int64_t thm32_bound(unsigned i, Prime p) {
    if (i == 0) throw InputError("thm32_bound requires i >= 1");
    const unsigned c = (i + 1) / 2;
    const BigInt P(p.value());
    using boost::multiprecision::pow;
    const BigInt bound = BigInt(i - c + 1) * pow(P, i) - pow(P, c) * (pow(P, i - c + 1) - 1) / (P - 1);
    return to_int64(bound, "lower bound");
}

GrowthSeries growth_series(const FrobModule& module, std::span<const ModuleElement> gens,
                           std::span<const std::uint64_t> i_values) {
    require_gens_modulus(module, gens);
    for (std::size_t k = 1; k < i_values.size(); ++k) {
        if (i_values[k] <= i_values[k - 1]) throw InputError("i values must be strictly ascending");
    }
    const Prime p = module.modulus();
    const bool formula_applies = module.sequence().kind() == SequenceKind::Ex2 && gens.size() == 1 &&
                                 gens.front() == ModuleElement::s2(p);

    ImageCollector collector(p, true);
    GrowthSeries series;
    std::uint64_t next_degree = 0;
    for (const std::uint64_t i : i_values) {
        for (std::uint64_t d = next_degree; d <= i; ++d) {
            for (std::uint64_t b = 0; b <= d; ++b) {
                const BasisOp op{d - b, b};
                for (const ModuleElement& g : gens) collector.add(act_basis(module, op, g), nullptr);
            }
        }
        next_degree = i + 1;

        GrowthRecord rec;
        rec.i = i;
        rec.dim = collector.dimension();
        if (i >= 1) {
            rec.ratio = Ratio::of(static_cast<std::int64_t>(rec.dim), static_cast<std::int64_t>(i));
            if (!series.empirical_slope_bound || *rec.ratio > *series.empirical_slope_bound) {
                series.empirical_slope_bound = rec.ratio;
            }
        }
        if (formula_applies && thm42_defined(i, p)) {
            rec.formula_value = thm42_formula(i, p);
            rec.match = *rec.formula_value == static_cast<std::int64_t>(rec.dim);
        }
        series.records.push_back(rec);
    }
    return series;
}

}  // namespace dpmod
