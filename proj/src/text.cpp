#include "text.hpp"

#include <charconv>
#include <string>

#include "dpmod/errors.hpp"

namespace dpmod::text {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::uint64_t parse_number(std::string_view s, std::string_view whole) {
    if (s.empty()) {
        throw ParseError("missing number in '" + std::string(whole) + "'");
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) {
        throw ParseError("number out of range in '" + std::string(whole) + "'");
    }
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("malformed number '" + std::string(s) + "' in '" + std::string(whole) + "'");
    }
    return v;
}

Factor parse_factor(std::string_view f, std::string_view whole) {
    f = trim(f);
    if (f.empty()) {
        throw ParseError("empty factor in '" + std::string(whole) + "'");
    }
    if (f.front() == '-') {
        throw ParseError("negative values are not allowed in '" + std::string(whole) + "'");
    }
    if (f.front() == 'x') {
        if (f.size() == 1) {
            return {FactorKind::X, 1};
        }
        if (f[1] != '^') {
            throw ParseError("expected 'x^e' in '" + std::string(whole) + "'");
        }
        return {FactorKind::X, parse_number(trim(f.substr(2)), whole)};
    }
    if (f.front() == 'D') {
        if (f.size() < 2 || f[1] != '_') {
            throw ParseError("expected 'D_b' in '" + std::string(whole) + "'");
        }
        return {FactorKind::D, parse_number(trim(f.substr(2)), whole)};
    }
    return {FactorKind::Coeff, parse_number(f, whole)};
}

}  // namespace

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<TermFactors> lex_sum(std::string_view text) {
    const std::string_view whole = text;
    if (trim(text).empty()) {
        throw ParseError("empty expression");
    }
    std::vector<TermFactors> terms;
    while (true) {
        const auto plus = text.find('+');
        std::string_view term = trim(text.substr(0, plus));
        if (term.empty()) {
            throw ParseError("empty term in '" + std::string(whole) + "'");
        }
        TermFactors factors;
        while (true) {
            const auto star = term.find('*');
            factors.push_back(parse_factor(term.substr(0, star), whole));
            if (star == std::string_view::npos) break;
            term.remove_prefix(star + 1);
        }
        terms.push_back(std::move(factors));
        if (plus == std::string_view::npos) break;
        text.remove_prefix(plus + 1);
    }
    return terms;
}

}  // namespace dpmod::text
