#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace nctorus;
using fixtures::g;

namespace
{
    const auto half = DeformationParameter::parse("1/2");
    Element parse(const std::string& s, const DeformationParameter& beta = half) { return parse_element(s, beta); }
    PhaseCoefficient q(long a, long b = 1) { return PhaseCoefficient(make_rational(a, b)); }
}

TEST(Moments, Validation)
{
    auto m = MomentSequence<GaussianRational>::from_entries({{2, g(1, 2, 1, 3)}});
    EXPECT_EQ(m.at(-2), g(1, 2, -1, 3));
    EXPECT_EQ(m.at(0), g(1, 1));
    EXPECT_EQ(m.at(1), g(0, 1));
    EXPECT_TRUE(m.is_admissible(2));
    EXPECT_FALSE(m.is_admissible(4));
    EXPECT_FALSE(m.is_admissible(0));
    EXPECT_TRUE(MomentSequence<GaussianRational>().is_admissible(0));
    EXPECT_THROW(MomentSequence<GaussianRational>::from_entries({{0, g(1, 2)}}), InputError);
    EXPECT_THROW(MomentSequence<GaussianRational>::from_entries({{1, g(1, 1, 1, 1)}}), InputError);
    EXPECT_THROW(MomentSequence<GaussianRational>::from_entries({{1, g(1, 2)}, {-1, g(1, 3)}}), InputError);
}

TEST(Trace, Examples)
{
    EXPECT_EQ(eval_trace(Element::one(), half), q(1));
    EXPECT_EQ(eval_trace(parse("u[1]*u[2]^-1"), half), q(0));
    EXPECT_EQ(eval_trace(parse("u[1]*u[1]^-1"), half), q(1));
    // phases survive: u1 u2 u1^-1 u2^-1 = e(beta)
    EXPECT_EQ(eval_trace(parse("u[1]*u[2]*u[1]^-1*u[2]^-1", DeformationParameter::parse("1/3")),
                         DeformationParameter::parse("1/3")),
              PhaseCoefficient::term(Rational(1), make_rational(1, 3)));
}

TEST(Product, Examples)
{
    auto omega = MomentSequence<GaussianRational>::from_entries({{2, g(1, 2)}});
    EXPECT_EQ(eval_product(parse("u[0]^2*u[5]^-2"), omega, half), q(1, 4));
    EXPECT_EQ(eval_product(parse("u[3]"), omega, half), q(0));
    EXPECT_EQ(eval_product(parse("u[5]^-2*u[0]^2"), omega, half), q(1, 4));
    auto quarter = DeformationParameter::parse("1/4");
    auto omega4 = MomentSequence<GaussianRational>::from_entries({{2, g(0, 1, 1, 2)}});
    EXPECT_EQ(eval_product(parse("u[1]^2*u[0]^-2", quarter), omega4, quarter), q(1, 4));
}

TEST(Product, InadmissibleIsRejectedInExactMode)
{
    auto bad = MomentSequence<GaussianRational>::from_entries({{1, g(1, 2)}});
    EXPECT_THROW(eval_product(Element::one(), bad, half), InputError);
    auto irr = DeformationParameter::irrational();
    EXPECT_THROW(eval_product(Element::one(), MomentSequence<GaussianRational>::from_entries({{2, g(1, 2)}}), irr), InputError);
    EXPECT_NO_THROW(eval_product(Element::one(), MomentSequence<GaussianRational>(), irr));
}

TEST(Product, LebesgueEqualsTrace)
{
    std::mt19937_64 rng(31);
    for (auto text : {"1/2", "3/8", "irrational"})
    {
        auto beta = DeformationParameter::parse(text);
        for (int i = 0; i < 200; ++i)
        {
            Element x = random_element(rng, beta, WordShape{3, 3, 4, 3});
            ASSERT_EQ(eval_product(x, MomentSequence<GaussianRational>(), beta), eval_trace(x, beta));
        }
    }
}

TEST(Block, Examples)
{
    auto mix = fixtures::two_point_mixture();
    // a single block: the base value on the translated word
    ExactEvaluator block(StateSpec::block(1, mix), half);
    ExactEvaluator base(mix, half);
    EXPECT_EQ(block(parse("u[3]^2*u[4]^2")), base(parse("u[0]^2*u[1]^2")));
    EXPECT_EQ(block(parse("u[3]^2*u[4]^2")), q(1, 4));
    // two blocks with n0 = 1
    auto one = DeformationParameter::parse("1");
    auto p = fixtures::product({{1, g(1, 3)}, {2, g(1, 5)}});
    for (std::int64_t n : {1, 2, 3})
    {
        ExactEvaluator b(StateSpec::block(n, p), one);
        ExactEvaluator phi0(p, one);
        Element x = multiply(Element::generator(-n - 1), Element::generator(0), one);
        EXPECT_EQ(b(x), phi0(shift(Element::generator(-n - 1), 2 * n + 1)) * phi0(Element::generator(0)));
    }
    // block degree 1 is not a multiple of n0 = 2
    EXPECT_EQ(ExactEvaluator(StateSpec::block(1, StateSpec::trace()), half)(parse("u[0]")), q(0));
}

TEST(Block, BaseMustBeStationary)
{
    auto b = StateSpec::block(1, StateSpec::trace());
    EXPECT_THROW(StateSpec::block(1, b), InputError);
    EXPECT_THROW(StateSpec::cesaro(1, b), InputError);
    EXPECT_THROW(StateSpec::block(-1, StateSpec::trace()), InputError);
    EXPECT_NO_THROW(StateSpec::block(1, StateSpec::cesaro(2, StateSpec::trace())));
}

TEST(Cesaro, Examples)
{
    auto mix = fixtures::two_point_mixture();
    EXPECT_EQ(eval_cesaro(Element::one(), 3, mix, half), q(1));
    std::mt19937_64 rng(32);
    for (int i = 0; i < 100; ++i)
    {
        Element x = random_element(rng, half, WordShape{3, 2, 3, 3});
        ASSERT_EQ(eval_cesaro(x, 0, mix, half), eval_block_product(x, 0, mix, half));
    }
    // tau-invariance of the Cesaro average
    ExactEvaluator phi(StateSpec::cesaro(2, mix), half);
    for (int i = 0; i < 100; ++i)
    {
        Element x = random_element(rng, half, WordShape{4, 2, 3, 3});
        ASSERT_EQ(phi(shift(x, 1)), phi(x));
    }
}

TEST(Cesaro, BoundOnMixtureBase)
{
    // stationary non-product base, where the block average genuinely differs
    auto mix = fixtures::two_point_mixture();
    ExactEvaluator phi(mix, half);
    Element x = parse("u[0]^2*u[1]^2");
    for (std::int64_t n = 1; n <= 10; ++n)
    {
        PhaseCoefficient gap = eval_cesaro(x, n, mix, half) - phi(x);
        // s = 1; |gap|^2 <= (4/(2n+1))^2
        Rational bound = make_rational(4, 2 * n + 1);
        EXPECT_GE((PhaseCoefficient(bound * bound) - gap * gap.conj()).sign(), 0) << n;
    }
    // with n = 1 the pair straddles a block boundary once in three shifts
    EXPECT_EQ(eval_cesaro(x, 1, mix, half), q(1, 6));
}

TEST(Mixture, Examples)
{
    auto p = fixtures::product({{2, g(1, 2)}});
    Element x = parse("u[0]^2 + 3*u[1]^-2*u[4]^2");
    EXPECT_EQ(eval_mixture(x, {{Rational(1), p}}, half), eval_product(x, MomentSequence<GaussianRational>::from_entries({{2, g(1, 2)}}), half));
    auto tr = StateSpec::trace();
    EXPECT_EQ(eval_mixture(x, {{make_rational(1, 2), tr}, {make_rational(1, 2), tr}}, half), eval_trace(x, half));
    EXPECT_THROW(StateSpec::mixture({{make_rational(1, 2), tr}}), InputError);
    EXPECT_THROW(StateSpec::mixture({{make_rational(3, 2), tr}, {make_rational(-1, 2), tr}}), InputError);
}

TEST(Clustering, Examples)
{
    auto p = fixtures::product({{2, g(1, 2)}, {4, g(1, 3)}});
    ExactEvaluator phi(p, half);
    Element x = parse("u[0]^2*u[1]^-2 + u[2]^4");
    Element y = parse("u[-1]^2 + 2*u[1]^4");
    EXPECT_EQ(clustering_gap(phi, x, y, 10), q(0));
    ExactEvaluator tr(StateSpec::trace(), half);
    EXPECT_EQ(clustering_gap(tr, parse("u[0]"), parse("u[0]"), 5), q(0));
    ExactEvaluator mix(fixtures::two_point_mixture(), half);
    EXPECT_EQ(clustering_gap(mix, parse("u[0]^2"), parse("u[0]^2"), 1), q(1, 4));
}

TEST(StateAxioms, UnitalHermitianPositive)
{
    std::mt19937_64 rng(33);
    for (const auto& s : fixtures::all_kinds())
    {
        ExactEvaluator phi(s.spec, half);
        EXPECT_EQ(phi(Element::one()), q(1)) << s.name;
        for (int i = 0; i < 100; ++i)
        {
            Element x = random_element(rng, half, WordShape{3, 3, 3, 3});
            ASSERT_EQ(phi(adjoint(x, half)), phi(x).conj()) << s.name;
            PhaseCoefficient v = phi(multiply(adjoint(x, half), x, half));
            ASSERT_TRUE(v.is_real()) << s.name;
            ASSERT_GE(v.sign(), 0) << s.name << " on " << x;
        }
    }
}

TEST(StateAxioms, TraceIsTracial)
{
    std::mt19937_64 rng(34);
    for (auto text : {"1/2", "2/5", "irrational"})
    {
        auto beta = DeformationParameter::parse(text);
        for (int i = 0; i < 100; ++i)
        {
            Element x = random_element(rng, beta, WordShape{3, 3, 3, 3});
            Element y = random_element(rng, beta, WordShape{3, 3, 3, 3});
            ASSERT_EQ(eval_trace(multiply(x, y, beta), beta), eval_trace(multiply(y, x, beta), beta));
        }
    }
}

TEST(StateAxioms, FloatPathAgreesWithExact)
{
    std::mt19937_64 rng(35);
    for (const auto& s : fixtures::all_kinds())
    {
        ExactEvaluator exact(s.spec, half);
        FloatEvaluator approx(to_float(s.spec), half);
        for (int i = 0; i < 50; ++i)
        {
            Element x = random_element(rng, half, WordShape{3, 3, 3, 3});
            ASSERT_LT(std::abs(exact(x).to_complex() - approx(x)), 1e-9) << s.name;
        }
    }
}

TEST(StateFiles, RoundTrip)
{
    for (const auto& s : fixtures::all_kinds())
    {
        Json j = state_to_json(s.spec);
        auto back = state_from_json<GaussianRational>(j);
        EXPECT_EQ(state_to_json(back), j) << s.name;
    }
    auto p = parse_state<GaussianRational>(R"({"kind": "product", "moments": [[2, "1/2", "1/3"], [-4, 0, "-1/4"]]})");
    const auto& omega = std::get<StateSpec::Product>(p->kind()).omega;
    EXPECT_EQ(omega.at(-2), g(1, 2, -1, 3));
    EXPECT_EQ(omega.at(4), g(0, 1, 1, 4));
    auto f = parse_state<std::complex<double>>(R"({"kind": "product", "moments": [[1, 0.25, -0.5]]})");
    EXPECT_NEAR(std::abs(std::get<FloatStateSpec::Product>(f->kind()).omega.at(-1) - std::complex<double>(0.25, 0.5)), 0, 1e-15);
}

TEST(StateFiles, Errors)
{
    EXPECT_THROW(parse_state<GaussianRational>("{"), InputError);
    EXPECT_THROW(parse_state<GaussianRational>(R"({"kind": "bogus"})"), InputError);
    EXPECT_THROW(parse_state<GaussianRational>(R"({"kind": "product", "moments": [[1, 0.5, 0]]})"), InputError);
    EXPECT_THROW(parse_state<GaussianRational>(R"({"kind": "product", "moments": [[1, "1/2"]]})"), InputError);
    EXPECT_THROW(parse_state<GaussianRational>(R"({"kind": "block", "base": {"kind": "trace"}})"), InputError);
    EXPECT_THROW(parse_state<GaussianRational>(R"({"kind": "mixture", "parts": [["1/3", {"kind": "trace"}]]})"), InputError);
    EXPECT_THROW(load_state<GaussianRational>("/nonexistent/state.json"), InputError);
}
