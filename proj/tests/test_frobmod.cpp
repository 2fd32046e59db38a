#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <thread>

#include "dpmod/errors.hpp"
#include "dpmod/frobmod.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace dpmod;

namespace {

SparsePoly P(const char* text, std::uint64_t p) { return parse_poly(text, Prime(p)); }
ModuleElement E(const char* text, std::uint64_t p) { return parse_element(text, Prime(p)); }

ModuleElement random_element(testing::Rng& rng, Prime p, Exponent max_exp) {
    return {rng.poly(p, 4, max_exp), rng.poly(p, 4, max_exp)};
}

oracle::Example to_oracle(SequenceKind kind) {
    return kind == SequenceKind::Ex1 ? oracle::Example::Ex1 : oracle::Example::Ex2;
}

}  // namespace

TEST_CASE("generator sequences") {
    for (std::uint64_t p : {2, 3, 5}) {
        const Prime P_(p);
        const auto ex1 = GeneratorSequence::ex1(P_);
        const auto ex2 = GeneratorSequence::ex2(P_);
        for (unsigned r = 0; r < 6; ++r) {
            CHECK(ex1.g(r) == SparsePoly::monomial(P_, oracle::generator_exponent(oracle::Example::Ex1, p, r)));
            CHECK(ex2.g(r) == SparsePoly::monomial(P_, oracle::generator_exponent(oracle::Example::Ex2, p, r)));
        }
        CHECK_FALSE(ex1.coverage().has_value());
    }
    CHECK(to_string(SequenceKind::Ex1) == "ex1");
    CHECK(to_string(SequenceKind::Custom) == "custom");
}

TEST_CASE("validate_sequence") {
    CHECK(validate_sequence(GeneratorSequence::ex2(Prime(3)), 4).ok);
    for (std::uint64_t p : {2, 3, 5, 7}) CHECK(validate_sequence(GeneratorSequence::ex1(Prime(p)), 6).ok);

    const auto bad = GeneratorSequence::custom(Prime(2), {P("x^3", 2), P("x^5", 2)});
    const SequenceValidation v = validate_sequence(bad, 1);
    CHECK_FALSE(v.ok);
    CHECK(v.first_violation == std::optional<unsigned>(1));
    CHECK(validate_sequence(bad, 0).ok);

    try {
        (void)validate_sequence(bad, 4);
        FAIL("expected an input error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("5") != std::string::npos);
    }
}

TEST_CASE("sequence files") {
    const auto g = parse_sequence_json(R"({"p": 2, "g": ["x^3", "x^6", "x^12"]})");
    CHECK(g.kind() == SequenceKind::Custom);
    CHECK(g.coverage() == std::optional<std::size_t>(3));
    CHECK(g.g(1) == P("x^6", 2));
    CHECK_THROWS_AS((void)g.g(3), InputError);
    for (const char* bad : {"", "{", R"({"p": 4, "g": []})", R"({"g": ["x"]})", R"({"p": 2})",
                            R"({"p": 2, "g": ["x^"]})", R"({"p": 2, "g": [3]})", R"([1, 2])"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_sequence_json(bad), InputError);
    }
    CHECK_THROWS_AS(load_sequence_file("/nonexistent/gseq.json"), InputError);

    const std::string path = "test_frobmod_gseq.json";
    std::ofstream(path) << R"({"p": 3, "g": ["x^4", "x^12"]})";
    const auto loaded = load_sequence_file(path);
    CHECK(loaded.modulus() == Prime(3));
    CHECK(loaded.g(0) == P("x^4", 3));
    std::remove(path.c_str());
}

TEST_CASE("sigma") {
    const FrobModule ex2(GeneratorSequence::ex2(Prime(2)));
    CHECK(ex2.sigma(1) == P("x^3 + x^6", 2));
    CHECK(ex2.sigma(-1).is_zero());
    const FrobModule ex1(GeneratorSequence::ex1(Prime(3)));
    CHECK(ex1.sigma(0) == P("2*x^2", 3));
    for (std::uint64_t p : {2, 3, 5}) {
        for (auto kind : {SequenceKind::Ex1, SequenceKind::Ex2}) {
            const FrobModule m(kind == SequenceKind::Ex1 ? GeneratorSequence::ex1(Prime(p))
                                                         : GeneratorSequence::ex2(Prime(p)));
            for (long n = 0; n < 6; ++n) {
                REQUIRE(oracle::from_sparse(m.sigma(n)) == oracle::sigma(to_oracle(kind), p, n));
                for (long k = 0; k < n; ++k) {
                    const auto level = frobenius_level(m.sigma(n) - m.sigma(k));
                    REQUIRE((!level || *level >= static_cast<unsigned>(k + 1)));
                }
            }
        }
    }
    const FrobModule custom(GeneratorSequence::custom(Prime(2), {P("x^3", 2)}));
    CHECK_THROWS_AS((void)custom.sigma(1), InputError);
}

TEST_CASE("sigma cache under concurrent readers") {
    const FrobModule m(GeneratorSequence::ex1(Prime(3)));
    std::vector<std::thread> threads;
    std::vector<int> ok(8, 1);
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            for (long n = (t % 2 ? 12 : 0); n >= 0 && n <= 12; n += (t % 2 ? -1 : 1)) {
                if (oracle::from_sparse(m.sigma(n)) != oracle::sigma(oracle::Example::Ex1, 3, n)) ok[t] = 0;
            }
        });
    }
    for (auto& th : threads) th.join();
    for (int v : ok) CHECK(v == 1);
}

TEST_CASE("act_basis examples") {
    const Prime p(2);
    const FrobModule ex2(GeneratorSequence::ex2(p));
    const ModuleElement s2 = ModuleElement::s2(p);
    CHECK(act_basis(ex2, {0, 2}, s2) == E("(x + x^4, 0)", 2));
    CHECK(act_basis(ex2, {0, 1}, s2) == E("(x^2, 0)", 2));
    CHECK(act_basis(ex2, {0, 2}, E("(0, x)", 2)) == E("(x^5, 0)", 2));
    for (Exponent b = 1; b < 10; ++b) CHECK(act_basis(ex2, {0, b}, ModuleElement::s1(p)).is_zero());
    const ModuleElement m = E("(1 + x^2, x^3)", 2);
    CHECK(act_basis(ex2, {3, 0}, m) == ModuleElement{shift(m.f1, 3), shift(m.f2, 3)});
    CHECK_THROWS_AS(act_basis(ex2, {0, 4}, s2, 2), InputError);
    CHECK_NOTHROW(act_basis(ex2, {0, 4}, s2, 3));
}

TEST_CASE("act_basis agrees with the oracle action") {
    testing::Rng rng(20);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const auto kind = rng.uniform(0, 1) ? SequenceKind::Ex1 : SequenceKind::Ex2;
        const FrobModule module(kind == SequenceKind::Ex1 ? GeneratorSequence::ex1(p) : GeneratorSequence::ex2(p));
        const oracle::BinomTable binom(p.value(), 5000);
        const ModuleElement m = random_element(rng, p, 30);
        const BasisOp op{rng.uniform(0, 5), rng.uniform(0, p.value() == 2 ? 40 : 60)};
        REQUIRE(oracle::from_element(act_basis(module, op, m)) ==
                oracle::act(to_oracle(kind), p.value(), op.a, op.b, oracle::from_element(m), binom));
    }
}

TEST_CASE("act_basis is independent of the level") {
    testing::Rng rng(21);
    int cases = 0;
    while (cases < 600) {
        const Prime p = rng.prime();
        const auto kind = rng.uniform(0, 1) ? SequenceKind::Ex1 : SequenceKind::Ex2;
        const FrobModule module(kind == SequenceKind::Ex1 ? GeneratorSequence::ex1(p) : GeneratorSequence::ex2(p));
        const ModuleElement m = random_element(rng, p, 20);
        const BasisOp op{rng.uniform(0, 4), rng.uniform(0, 30)};
        const unsigned s0 = min_level(op.b, p);
        const unsigned top = p.value() == 2 ? 8 : (p.value() == 3 ? 5 : 4);
        if (s0 > top) continue;
        const ModuleElement base = act_basis(module, op, m, s0);
        for (unsigned s = s0 + 1; s <= top; ++s) REQUIRE(act_basis(module, op, m, s) == base);
        ++cases;
    }
}

TEST_CASE("second coordinate depends only on f2") {
    testing::Rng rng(22);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const FrobModule module(GeneratorSequence::ex2(p));
        const ModuleElement m = random_element(rng, p, 20);
        const ModuleElement n{rng.poly(p, 4, 20), m.f2};
        const BasisOp op{rng.uniform(0, 4), rng.uniform(0, 30)};
        REQUIRE(act_basis(module, op, m).f2 == act_basis(module, op, n).f2);
        REQUIRE(act_basis(module, op, m).f2 == apply_basis(op, m.f2));
    }
}

TEST_CASE("act is linear and agrees with op_mul factorizations") {
    testing::Rng rng(23);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const FrobModule module(rng.uniform(0, 1) ? GeneratorSequence::ex1(p) : GeneratorSequence::ex2(p));
        const Operator u = Operator::from_terms(
            p, {{{rng.uniform(0, 3), rng.uniform(0, 12)}, rng.uniform(1, p.value() - 1)},
                {{rng.uniform(0, 3), rng.uniform(0, 12)}, rng.uniform(1, p.value() - 1)}});
        const Operator v = Operator::from_terms(p, {{{rng.uniform(0, 3), rng.uniform(0, 12)}, 1}});
        const ModuleElement m = random_element(rng, p, 15);
        const ModuleElement n = random_element(rng, p, 15);
        REQUIRE(act(module, op_mul(u, v), m) == act(module, u, act(module, v, m)));
        REQUIRE(act(module, u, add(m, n)) == add(act(module, u, m), act(module, u, n)));
        REQUIRE(act(module, add(u, v), m) == add(act(module, u, m), act(module, v, m)));
    }
}

TEST_CASE("act examples") {
    for (std::uint64_t pv : {2, 3, 5}) {
        const Prime p(pv);
        const FrobModule module(GeneratorSequence::ex2(p));
        const ModuleElement s2 = ModuleElement::s2(p);
        const ModuleElement m = E("(x + x^3, 1 + x^2)", pv);
        CHECK(act(module, Operator(p), m).is_zero());
        CHECK(act(module, Operator::basis(p, {0, 0}), m) == m);
        for (unsigned k = 0; k < 4; ++k) {
            const Exponent q = oracle::ipow(pv, k);
            const ModuleElement once = act(module, Operator::divided_power(p, q), s2);
            const ModuleElement twice = act(module, Operator::divided_power(p, q * pv), once);
            // D_{p^k} s2 = -(x^{p^{k+1}} + x^{p^{k-1}}) s1 (or -x^p s1), and D_{p^{k+1}} sends it to -s1.
            CHECK(twice == scale(FpCoeff::from_int(-1, p), ModuleElement::s1(p)));
        }
    }
}

TEST_CASE("generator action identities") {
    for (std::uint64_t pv : {2, 3, 5}) {
        const Prime p(pv);
        for (auto kind : {SequenceKind::Ex1, SequenceKind::Ex2}) {
            const FrobModule module(kind == SequenceKind::Ex1 ? GeneratorSequence::ex1(p) : GeneratorSequence::ex2(p));
            for (unsigned k = 0; k <= 4; ++k) {
                const Exponent q = oracle::ipow(pv, k);
                const SparsePoly r = apply_basis({0, q}, module.sigma(k));
                for (Exponent j = 0; j < 6; ++j) {
                    REQUIRE(act_basis(module, {j, q}, ModuleElement::s2(p)) ==
                            ModuleElement{shift(r, j), SparsePoly(p)});
                }
            }
        }
    }
}

TEST_CASE("D_{p^k} sigma_k on EX2 is minus one times x^{p^{k+1}} + x^{p^{k-1}}") {
    for (std::uint64_t pv : {2, 3, 5}) {
        const Prime p(pv);
        const FrobModule module(GeneratorSequence::ex2(p));
        const oracle::BinomTable binom(pv, 200000);
        for (unsigned k = 0; k <= 6; ++k) {
            const Exponent q = oracle::ipow(pv, k);
            const SparsePoly value = apply_basis({0, q}, module.sigma(k));
            REQUIRE(oracle::from_sparse(value) ==
                    oracle::divided_power(oracle::sigma(oracle::Example::Ex2, pv, k), q, pv, binom));
            const SparsePoly closed = k == 0 ? SparsePoly::monomial(p, pv)
                                             : SparsePoly::monomial(p, q * pv) + SparsePoly::monomial(p, q / pv);
            CHECK(value == neg(closed));
            if (pv == 2) CHECK(value == closed);
        }
    }
}

TEST_CASE("EX1 degree law") {
    for (std::uint64_t pv : {2, 3}) {
        const Prime p(pv);
        const FrobModule module(GeneratorSequence::ex1(p));
        for (unsigned k = 1; k <= 6; ++k) {
            const Exponent q = oracle::ipow(pv, k);
            const SparsePoly r = apply_basis({0, q}, module.sigma(k));
            REQUIRE(r.degree() == Degree(q * q));
            for (Exponent j : {0, 1, 7}) REQUIRE(shift(r, j).degree() == Degree(j + q * q));
        }
    }
}

TEST_CASE("short exact sequence") {
    const Prime p(2);
    CHECK(ses_embed(P("x^2", 2)) == E("(x^2, 0)", 2));
    CHECK(ses_project(E("(x^5, x)", 2)) == P("x", 2));
    CHECK(ses_project(ses_embed(P("1 + x^3", 2))).is_zero());
}

TEST_CASE("ses maps commute with the action") {
    testing::Rng rng(24);
    for (int t = 0; t < 500; ++t) {
        const Prime p = rng.prime();
        const FrobModule module(rng.uniform(0, 1) ? GeneratorSequence::ex1(p) : GeneratorSequence::ex2(p));
        const Operator theta = Operator::from_terms(
            p, {{{rng.uniform(0, 4), rng.uniform(0, 30)}, rng.uniform(1, p.value() - 1)},
                {{rng.uniform(0, 4), rng.uniform(0, 30)}, rng.uniform(1, p.value() - 1)}});
        const SparsePoly f = rng.poly(p, 5, 40);
        const ModuleElement m = random_element(rng, p, 25);
        REQUIRE(act(module, theta, ses_embed(f)) == ses_embed(apply(theta, f)));
        REQUIRE(ses_project(act(module, theta, m)) == apply(theta, ses_project(m)));
    }
}

TEST_CASE("displayed formula") {
    const Prime p(2);
    const FrobModule ex2(GeneratorSequence::ex2(p));
    CHECK(displayed_formula_act(ex2, 1, ModuleElement::s2(p)) == E("(x + x^4, 0)", 2));
    CHECK(displayed_formula_act(ex2, 1, ModuleElement::s2(p)) == act_basis(ex2, {0, 2}, ModuleElement::s2(p)));
    const SparsePoly f1 = P("x + x^5 + x^9", 2);
    CHECK(displayed_formula_act(ex2, 2, {f1, SparsePoly(p)}) == ModuleElement{apply_basis({0, 4}, f1), SparsePoly(p)});
    CHECK(displayed_formula_act(ex2, 1, E("(0, x)", 2)) == E("(x^2 + x^5, 0)", 2));
    CHECK(act_basis(ex2, {0, 2}, E("(0, x)", 2)) == E("(x^5, 0)", 2));

    // Agreement whenever f2 is constant.
    testing::Rng rng(25);
    for (int t = 0; t < 200; ++t) {
        const Prime q = rng.prime();
        const FrobModule module(GeneratorSequence::ex2(q));
        const unsigned k = static_cast<unsigned>(rng.uniform(0, 3));
        const ModuleElement m{rng.poly(q, 4, 30), SparsePoly::constant(q, static_cast<std::int64_t>(rng.uniform(0, 4)))};
        REQUIRE(displayed_formula_act(module, k, m) == act_basis(module, {0, oracle::ipow(q.value(), k)}, m));
    }
}

TEST_CASE("element parse and format") {
    CHECK(E("(0,1)", 2) == ModuleElement::s2(Prime(2)));
    CHECK(E("( 1 , 0 )", 3) == ModuleElement::s1(Prime(3)));
    CHECK(format_element(E("(x^4 + x, 0)", 2)) == "(x + x^4, 0)");
    for (const char* bad : {"", "(1)", "(1, 2, 3)", "1, 2", "(x^, 0)", "(0, 1", "(a, b)"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_element(bad, Prime(3)), ParseError);
    }
    CHECK_THROWS_AS(add(ModuleElement::s1(Prime(2)), ModuleElement::s1(Prime(3))), InputError);
}

TEST_CASE("custom sequence coverage errors name the required length") {
    const FrobModule module(GeneratorSequence::custom(Prime(2), {P("x^3", 2), P("x^6", 2)}));
    CHECK_NOTHROW(act_basis(module, {0, 3}, ModuleElement::s2(Prime(2))));
    try {
        (void)act_basis(module, {0, 8}, ModuleElement::s2(Prime(2)));
        FAIL("expected an input error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("4") != std::string::npos);
    }
}
