#include <doctest.h>

#include "dpmod/diffop.hpp"
#include "dpmod/errors.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace dpmod;

namespace {

SparsePoly P(const char* text, std::uint64_t p) { return parse_poly(text, Prime(p)); }

Operator random_operator(testing::Rng& rng, Prime p, std::size_t max_terms, Exponent max_a, Exponent max_b) {
    std::vector<OpTerm> terms;
    const std::size_t n = rng.uniform(0, max_terms);
    for (std::size_t k = 0; k < n; ++k) {
        terms.push_back({{rng.uniform(0, max_a), rng.uniform(0, max_b)}, rng.uniform(1, p.value() - 1)});
    }
    return Operator::from_terms(p, std::move(terms));
}

}  // namespace

TEST_CASE("apply_basis examples") {
    CHECK(apply_basis({0, 2}, P("x^6", 2)) == P("x^4", 2));
    for (std::uint64_t p : {2, 3, 5}) {
        for (unsigned alpha = 0; alpha < 5; ++alpha) {
            const Exponent q = oracle::ipow(p, alpha);
            CHECK(apply_basis({0, q}, SparsePoly::monomial(Prime(p), q)) == P("1", p));
        }
    }
    CHECK(apply_basis({0, 9}, P("x^4 + x^8", 3)).is_zero());
    CHECK(apply_basis({1, 1}, P("x^3", 2)) == P("x^3", 2));
    CHECK(apply_basis({3, 0}, P("1 + x", 5)) == P("x^3 + x^4", 5));
}

TEST_CASE("apply examples") {
    const Prime p(2);
    const Operator op = add(Operator::divided_power(p, 2), Operator::divided_power(p, 1));
    CHECK(apply(op, P("x^3", 2)) == P("x + x^2", 2));
    CHECK(apply(Operator(p), P("x^3 + 1", 2)).is_zero());
    CHECK(apply(Operator::basis(p, {0, 0}), P("x^3 + 1", 2)) == P("x^3 + 1", 2));
    CHECK_THROWS_AS(apply(Operator::divided_power(Prime(3), 1), P("x", 2)), InputError);
}

TEST_CASE("apply_basis agrees with the binomial oracle") {
    testing::Rng rng(10);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const oracle::BinomTable binom(p.value(), 400);
        const SparsePoly f = rng.poly(p, 8, 300);
        const BasisOp op{rng.uniform(0, 20), rng.uniform(0, 80)};
        REQUIRE(oracle::from_sparse(apply_basis(op, f)) ==
                oracle::shift(oracle::divided_power(oracle::from_sparse(f), op.b, p.value(), binom), op.a));
    }
}

TEST_CASE("op_mul examples") {
    const Prime p(2);
    CHECK(op_mul(Operator::divided_power(p, 1), Operator::divided_power(p, 1)).is_zero());
    const Operator expected = Operator::from_terms(p, {{{1, 1}, 1}, {{0, 0}, 1}});
    CHECK(op_mul(Operator::divided_power(p, 1), Operator::basis(p, {1, 0})) == expected);
    for (Exponent a : {0, 1, 5, 16}) {
        CHECK(op_mul(Operator::divided_power(p, a), Operator::divided_power(p, 0)) == Operator::divided_power(p, a));
    }
}

TEST_CASE("divided powers merge: D_a D_b = C(a+b, a) D_{a+b}") {
    testing::Rng rng(11);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const Exponent a = rng.uniform(0, 200);
        const Exponent b = rng.uniform(0, 200);
        const Operator lhs = op_mul(Operator::divided_power(p, a), Operator::divided_power(p, b));
        const std::uint64_t c = oracle::big_binom_mod(a + b, a, p.value());
        const Operator rhs = Operator::basis(p, {0, a + b}, c);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("op_mul is coherent with apply") {
    testing::Rng rng(12);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const Operator u = random_operator(rng, p, 3, 6, 12);
        const Operator v = random_operator(rng, p, 3, 6, 12);
        const SparsePoly f = rng.poly(p, 6, 40);
        const Operator uv = op_mul(u, v);
        REQUIRE(apply(uv, f) == apply(u, apply(v, f)));
        REQUIRE(uv.bdeg() <= u.bdeg() + v.bdeg());
    }
}

TEST_CASE("op_mul is associative") {
    testing::Rng rng(13);
    for (int t = 0; t < 200; ++t) {
        const Prime p = rng.prime();
        const Operator u = random_operator(rng, p, 2, 4, 9);
        const Operator v = random_operator(rng, p, 2, 4, 9);
        const Operator w = random_operator(rng, p, 2, 4, 9);
        REQUIRE(op_mul(op_mul(u, v), w) == op_mul(u, op_mul(v, w)));
    }
}

TEST_CASE("Leibniz sum identity") {
    testing::Rng rng(14);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const SparsePoly f = rng.poly(p, 5, 60);
        const SparsePoly g = rng.poly(p, 5, 60);
        const Exponent b = rng.uniform(0, 64);
        PolyBuilder sum(p);
        for (Exponent j = 0; j <= b; ++j) sum.add_scaled(apply_basis({0, j}, f) * apply_basis({0, b - j}, g), 1);
        REQUIRE(apply_basis({0, b}, f * g) == std::move(sum).build());
    }
}

TEST_CASE("D_b is R^{p^s}-linear for b < p^s") {
    testing::Rng rng(15);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const unsigned s = static_cast<unsigned>(rng.uniform(1, p.value() == 2 ? 5 : 3));
        const Exponent q = oracle::ipow(p.value(), s);
        const Exponent b = rng.uniform(0, q - 1);
        const SparsePoly h = rng.poly(p, 3, 6);
        const SparsePoly f = rng.poly(p, 5, 50);
        const SparsePoly hq = pow(h, q);
        REQUIRE(apply_basis({0, b}, hq * f) == hq * apply_basis({0, b}, f));
    }
}

TEST_CASE("bernstein_basis") {
    const std::vector<BasisOp> two{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}};
    CHECK(bernstein_basis(2) == two);
    CHECK(bernstein_basis(0) == std::vector<BasisOp>{{0, 0}});
    CHECK(bernstein_basis(5).size() == 21);
    for (Exponent i = 0; i < 30; ++i) {
        const auto basis = bernstein_basis(i);
        REQUIRE(basis.size() == (i + 1) * (i + 2) / 2);
        for (const BasisOp& op : basis) REQUIRE(op.bdeg() <= i);
        REQUIRE(std::is_sorted(basis.begin(), basis.end(), BasisOpOrder{}));
    }
}

TEST_CASE("min_level") {
    CHECK(min_level(4, Prime(2)) == 3);
    CHECK(min_level(1, Prime(2)) == 1);
    CHECK(min_level(0, Prime(2)) == 0);
    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (unsigned k = 0; k < 8; ++k) {
            const Exponent q = oracle::ipow(p, k);
            CHECK(min_level(q, Prime(p)) == k + 1);
            CHECK(min_level(q - 1, Prime(p)) == k);
        }
    }
    CHECK(min_level(~Exponent{0}, Prime(2)) == 64);
}

TEST_CASE("Lemma table for D_{p^k}(x^{p^a} x^{p^b}) against direct binomials") {
    // Cases of the table: k = a = b; k = a < b; a < b = k; p = 2, a = b = k - 1; otherwise 0.
    std::size_t checked_cells = 0;
    std::size_t typo_cells = 0;
    for (std::uint64_t p : {2, 3, 5}) {
        const Prime P(p);
        for (unsigned alpha = 0; alpha <= 4; ++alpha) {
            for (unsigned beta = alpha; beta <= 4; ++beta) {
                for (unsigned k = 0; k <= 5; ++k) {
                    const Exponent pa = oracle::ipow(p, alpha);
                    const Exponent pb = oracle::ipow(p, beta);
                    const Exponent pk = oracle::ipow(p, k);
                    const SparsePoly value = apply_basis({0, pk}, SparsePoly::monomial(P, pa + pb));
                    // Independent value from big-integer binomials.
                    oracle::Poly direct;
                    if (pa + pb >= pk) oracle::add_to(direct, pa + pb - pk, oracle::big_binom_mod(pa + pb, pk, p), p);
                    REQUIRE(oracle::from_sparse(value) == direct);

                    SparsePoly table(P);
                    if (k == alpha && alpha == beta) {
                        table = SparsePoly::monomial(P, pa) + SparsePoly::monomial(P, pb);
                    } else if (k == alpha && alpha < beta) {
                        table = SparsePoly::monomial(P, pb);
                    } else if (alpha < beta && beta == k) {
                        table = SparsePoly::monomial(P, pa);
                    } else if (p == 2 && alpha == beta && alpha + 1 == k) {
                        table = SparsePoly::monomial(P, pa);
                    }
                    if (p == 2 && alpha == beta && alpha + 1 == k) {
                        CHECK(value == SparsePoly::constant(P, 1));
                        CHECK(value != table);
                        ++typo_cells;
                    } else {
                        CHECK(value == table);
                    }
                    ++checked_cells;
                }
            }
        }
    }
    CHECK(checked_cells == 3 * 15 * 6);
    CHECK(typo_cells == 5);
}

TEST_CASE("operator parse and format") {
    const Prime p(5);
    const Operator op = parse_operator("x^2*D_4 + D_1", p);
    CHECK(op == Operator::from_terms(p, {{{2, 4}, 1}, {{0, 1}, 1}}));
    CHECK(format_operator(op) == "D_1 + x^2*D_4");
    CHECK(format_operator(parse_operator("3*x*D_2 + 2", p)) == "2 + 3*x*D_2");
    CHECK(format_operator(parse_operator("D_0", p)) == "1");
    CHECK(format_operator(Operator(p)) == "0");
    CHECK(parse_operator("0", p).is_zero());
    CHECK(op.order() == 4);
    CHECK(op.bdeg() == 6);
    for (const char* bad : {"", "D_", "D_2*x", "x^2 D_4", "5*D_1", "D_1 +", "d_1", "D_-1", "x^*D_1", "D_1*D_2"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_operator(bad, p), ParseError);
    }
}

TEST_CASE("operator format/parse round trip") {
    testing::Rng rng(16);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const Operator op = random_operator(rng, p, 4, 30, 30);
        REQUIRE(parse_operator(format_operator(op), p) == op);
    }
}

TEST_CASE("operator overflow raises a range error") {
    const Prime p(2);
    const Exponent big = Exponent{1} << 63;
    CHECK_THROWS_AS(op_mul(Operator::basis(p, {big, 0}), Operator::basis(p, {big, 0})), RangeError);
    CHECK_THROWS_AS(apply_basis({big, 0}, SparsePoly::monomial(p, big)), RangeError);
}
