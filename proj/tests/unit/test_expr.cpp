#include <doctest.h>

#include <bit>
#include <cmath>
#include <optional>

#include "support.hpp"
#include "zmc/errors.hpp"
#include "zmc/expr.hpp"

using namespace zmc;
using zmc::test::Rng;

namespace {

const std::vector<std::string> kW{"w"};

cplx at(std::string_view src, cplx w) { return eval(parse(src, "w"), w); }

std::optional<cplx> try_eval(const ExprNode& n, cplx w) {
    try {
        const cplx v = evaluate(n, std::span<const cplx>(&w, 1), kW);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
        return v;
    } catch (const EvalDomainError&) {
        return std::nullopt;
    }
}

bool same_bits(cplx a, cplx b) {
    return std::bit_cast<std::uint64_t>(a.real()) == std::bit_cast<std::uint64_t>(b.real()) &&
           std::bit_cast<std::uint64_t>(a.imag()) == std::bit_cast<std::uint64_t>(b.imag());
}

}  // namespace

TEST_CASE("polynomial and elementary values") {
    CHECK(at("w^2 + 1", 2.0) == cplx(5.0, 0.0));
    CHECK(at("exp(w)*sin(w)", 0.0) == cplx(0.0, 0.0));
    CHECK(at("log(w)", 1.0) == cplx(0.0, 0.0));

    const cplx v = at("w^3 - 2", cplx(1.0, 1.0));
    CHECK(v.real() == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("precedence and associativity") {
    CHECK(at("-w^2", 3.0) == cplx(-9.0, 0.0));
    CHECK(at("8/2/2", 0.0) == cplx(2.0, 0.0));
    CHECK(at("2-3-4", 0.0) == cplx(-5.0, 0.0));
    CHECK(at("w^-2", 2.0) == cplx(0.25, 0.0));
    CHECK(at("w^(-2)", 2.0) == cplx(0.25, 0.0));
    CHECK(at("2*i*i", 0.0) == cplx(-2.0, 0.0));
    CHECK(at("1 + 2*3^2", 0.0) == cplx(19.0, 0.0));
}

TEST_CASE("principal branches") {
    const double pi = std::acos(-1.0);
    CHECK(std::abs(at("log(w)", -1.0) - cplx(0.0, pi)) < 1e-15);
    CHECK(std::abs(at("sqrt(w)", -4.0) - cplx(0.0, 2.0)) < 1e-15);
    CHECK(std::abs(at("atan(w)", 1.0) - cplx(pi / 4.0, 0.0)) < 1e-15);
}

TEST_CASE("syntax errors carry offsets") {
    try {
        parse("w +", "w");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 3);
    }
    CHECK_THROWS_AS(parse("w^1.5", "w"), SyntaxError);
    CHECK_THROWS_AS(parse("(w", "w"), SyntaxError);
    CHECK_THROWS_AS(parse("w w", "w"), SyntaxError);
    CHECK_THROWS_AS(parse("", "w"), SyntaxError);
    CHECK_THROWS_AS(parse("w^w", "w"), SyntaxError);
}

TEST_CASE("unknown identifiers") {
    CHECK_THROWS_AS(parse("z + 1", "w"), UnknownIdentifier);
    CHECK_THROWS_AS(parse("foo(w)", "w"), UnknownIdentifier);
    CHECK_NOTHROW(parse("z + 1", "z"));
}

TEST_CASE("evaluation domain errors") {
    CHECK_THROWS_AS(at("1/w", 0.0), EvalDomainError);
    CHECK_THROWS_AS(at("log(w)", 0.0), EvalDomainError);
    CHECK_THROWS_AS(at("w^-1", 0.0), EvalDomainError);
}

TEST_CASE("exact derivatives") {
    CHECK(eval(differentiate(parse("w^3", "w")), 2.0) == cplx(12.0, 0.0));
    CHECK(eval(differentiate(parse("7", "w")), cplx(0.3, 0.9)) == cplx(0.0, 0.0));
    CHECK(std::abs(eval(differentiate(parse("tanh(w)", "w")), 0.0) - 1.0) < 1e-15);

    const cplx w(0.4, -0.7);
    CHECK(std::abs(eval(differentiate(parse("exp(2*w)", "w")), w) - 2.0 * std::exp(2.0 * w)) < 1e-14);
    CHECK(std::abs(eval(differentiate(parse("log(w)", "w")), w) - 1.0 / w) < 1e-14);
    CHECK(std::abs(eval(differentiate(parse("sqrt(w)", "w")), w) - 0.5 / std::sqrt(w)) < 1e-14);
    CHECK(std::abs(eval(differentiate(parse("atan(w)", "w")), w) - 1.0 / (1.0 + w * w)) < 1e-14);
    CHECK(std::abs(eval(differentiate(parse("tan(w)", "w")), w) - 1.0 / (std::cos(w) * std::cos(w))) < 1e-14);
}

TEST_CASE("bivariate partials") {
    const auto z = BivariateExpr::parse("x*x*y + sin(y)");
    const cplx x(0.3, 0.1), y(-0.2, 0.4);
    CHECK(std::abs(z.partial(0)(x, y) - 2.0 * x * y) < 1e-15);
    CHECK(std::abs(z.partial(1)(x, y) - (x * x + std::cos(y))) < 1e-15);
    CHECK(std::abs(z.partial(0).partial(1)(x, y) - 2.0 * x) < 1e-15);
}

TEST_CASE("renamed expressions evaluate identically") {
    const auto e = parse("w^2 + exp(w)", "w");
    const auto r = e.renamed("u");
    CHECK(r.varname() == "u");
    CHECK(same_bits(e(cplx(0.3, 0.2)), r(cplx(0.3, 0.2))));
}

TEST_CASE("property: derivative agrees with central differences") {
    Rng rng(0x5eed0001);
    constexpr double h = 1e-5;
    int accepted = 0;
    int failures = 0;
    for (int trial = 0; trial < 3000 && accepted < 1000; ++trial) {
        const NodePtr tree = zmc::test::random_tree(rng, 4);
        const cplx w = rng.in_box(-2.0, 2.0, -2.0, 2.0);
        const NodePtr d1 = derive(tree, 0);
        const NodePtr d3 = derive(derive(d1, 0), 0);

        const auto f = try_eval(*tree, w);
        const auto fp = try_eval(*tree, w + h);
        const auto fm = try_eval(*tree, w - h);
        const auto d = try_eval(*d1, w);
        const auto third = try_eval(*d3, w);
        if (!f || !fp || !fm || !d || !third) continue;

        // Conditioning filter: bounded values and third derivative, and an
        // increment consistent with a bounded slope (no branch cut between
        // the stencil points).
        if (std::abs(*f) > 1e4 || std::abs(*third) > 1e4) continue;
        if (std::abs(*fp - *fm) > 20.0 * h * (1.0 + std::abs(*d))) continue;

        ++accepted;
        const cplx fd = (*fp - *fm) / (2.0 * h);
        if (std::abs(fd - *d) > 1e-6 * (1.0 + std::abs(*d))) {
            ++failures;
            MESSAGE("mismatch for " << print_tree(*tree, kW) << " at w = " << w);
        }
    }
    CHECK(accepted >= 300);
    CHECK(failures == 0);
}

TEST_CASE("property: print/parse round trip on random trees") {
    Rng rng(0x5eed0002);
    for (int trial = 0; trial < 1000; ++trial) {
        const NodePtr tree = zmc::test::random_tree(rng, 5);
        const std::string text = print_tree(*tree, kW);
        const NodePtr back = parse_tree(text, kW);
        REQUIRE_MESSAGE(node::equals(*tree, *back), text);

        for (int k = 0; k < 3; ++k) {
            const cplx w = rng.in_box(-2.0, 2.0, -2.0, 2.0);
            const auto a = try_eval(*tree, w);
            const auto b = try_eval(*back, w);
            REQUIRE(a.has_value() == b.has_value());
            if (a) CHECK_MESSAGE(same_bits(*a, *b), text);
        }
    }
}
