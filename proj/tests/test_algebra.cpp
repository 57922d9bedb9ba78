#include "nctorus/element.hpp"
#include "nctorus/expression.hpp"
#include "nctorus/oracle.hpp"
#include "nctorus/random.hpp"

#include <gtest/gtest.h>

using namespace nctorus;

namespace
{
    const auto quarter = DeformationParameter::parse("1/4");

    PhaseCoefficient phase(const DeformationParameter& beta, long m) { return beta.phase(Integer(m)); }

    Element u(std::int64_t i, std::int64_t k = 1) { return Element::generator(i, k); }

    Element random_small(std::mt19937_64& rng, const DeformationParameter& beta)
    {
        return random_element(rng, beta, WordShape{3, 3, 4, 3});
    }
}

TEST(NormalForm, Examples)
{
    auto a = normal_form(Word{{2, 1}, {1, 1}});
    EXPECT_EQ(a.phase_exponent, -1);
    EXPECT_EQ(a.word, (Word{{1, 1}, {2, 1}}));

    auto b = normal_form(Word{{1, 1}, {2, 1}});
    EXPECT_EQ(b.phase_exponent, 0);

    // u3^2 u0^-1 u3^-2: the single out-of-order pair (u3^2, u0^-1) gives -(2)(-1)
    auto c = normal_form(Word{{3, 2}, {0, -1}, {3, -2}});
    EXPECT_EQ(c.phase_exponent, 2);
    EXPECT_EQ(c.word, (Word{{0, -1}}));

    auto d = normal_form(Word{{5, 1}, {5, -1}});
    EXPECT_EQ(d.phase_exponent, 0);
    EXPECT_TRUE(d.word.empty());
}

TEST(NormalForm, IdempotentAndMatchesBruteForce)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 3000; ++i)
    {
        Word w = random_word(rng, WordShape{10, 5, 10, 1});
        auto fast = normal_form(w);
        auto slow = oracle::brute_normal_form(w);
        ASSERT_EQ(fast.phase_exponent, slow.phase_exponent) << w.to_string();
        ASSERT_EQ(fast.word, slow.word) << w.to_string();
        auto again = normal_form(fast.word);
        ASSERT_EQ(again.phase_exponent, 0);
        ASSERT_EQ(again.word, fast.word);
    }
}

TEST(NormalForm, LargeExponentsUseArbitraryPrecision)
{
    const std::int64_t big = std::int64_t(1) << 40;
    auto nf = normal_form(Word{{1, big}, {0, big}, {1, -big}, {0, -big}});
    // inverted pairs: (u1^b, u0^b), (u1^b, u0^-b), (u1^-b, u0^-b)
    Integer brute_phase = -(Integer(big) * big) - (Integer(big) * -big) - (Integer(-big) * -big);
    EXPECT_EQ(nf.phase_exponent, brute_phase);
    EXPECT_TRUE(nf.word.empty());
}

TEST(Multiply, Examples)
{
    Element x = u(1) + u(2);
    EXPECT_EQ(multiply(Element::one(), x, quarter), x);
    // u1 u2 and u2 u1 differ by e(beta) on the same word
    Element a = multiply(u(1), u(2), quarter);
    Element b = multiply(u(2), u(1), quarter);
    EXPECT_EQ(a, b.scaled(phase(quarter, 1)));
    EXPECT_EQ(b, Element::monomial(Word{{1, 1}, {2, 1}}, phase(quarter, -1)));
    // (u0 + u1) u0^-1 = 1 + e(beta) u0^-1 u1
    Element c = multiply(u(0) + u(1), u(0, -1), quarter);
    EXPECT_EQ(c, Element::one() + Element::monomial(Word{{0, -1}, {1, 1}}, phase(quarter, 1)));
}

TEST(Multiply, Associative)
{
    std::mt19937_64 rng(5);
    for (auto text : {"1/2", "1/4", "3/8", "2/7", "irrational"})
    {
        auto beta = DeformationParameter::parse(text);
        for (int i = 0; i < 60; ++i)
        {
            Element x = random_small(rng, beta), y = random_small(rng, beta), z = random_small(rng, beta);
            ASSERT_EQ(multiply(multiply(x, y, beta), z, beta), multiply(x, multiply(y, z, beta), beta)) << text;
        }
    }
}

TEST(Adjoint, Examples)
{
    EXPECT_EQ(adjoint(u(3), quarter), u(3, -1));
    auto scalar = Element::constant(PhaseCoefficient::term(Rational(1), make_rational(1, 3)));
    EXPECT_EQ(adjoint(scalar, quarter), Element::constant(PhaseCoefficient::term(Rational(1), make_rational(-1, 3))));
    // (u1 u2)^* = u2^-1 u1^-1 = e(-beta) u1^-1 u2^-1
    EXPECT_EQ(adjoint(multiply(u(1), u(2), quarter), quarter), Element::monomial(Word{{1, -1}, {2, -1}}, phase(quarter, -1)));
}

TEST(Adjoint, InvolutiveAntiHomomorphism)
{
    std::mt19937_64 rng(6);
    for (auto text : {"1/2", "3/8", "irrational"})
    {
        auto beta = DeformationParameter::parse(text);
        for (int i = 0; i < 80; ++i)
        {
            Element x = random_small(rng, beta), y = random_small(rng, beta);
            ASSERT_EQ(adjoint(adjoint(x, beta), beta), x);
            ASSERT_EQ(adjoint(multiply(x, y, beta), beta), multiply(adjoint(y, beta), adjoint(x, beta), beta));
        }
    }
}

TEST(Degree, ExamplesAndAdditivity)
{
    EXPECT_EQ(degree(multiply(u(0, 2), u(5, -1), quarter)).value, 1);
    EXPECT_EQ(degree(u(0) + u(1)).value, 1);
    EXPECT_TRUE(degree(u(0) + u(0, 2)).is_mixed());
    EXPECT_EQ(degree(Element()).value, 0);

    std::mt19937_64 rng(8);
    int checked = 0;
    while (checked < 200)
    {
        Element x = Element::from_word(random_word(rng, WordShape{3, 3, 4, 1}), quarter);
        Element y = Element::from_word(random_word(rng, WordShape{3, 3, 4, 1}), quarter);
        Element xy = multiply(x, y, quarter);
        if (xy.is_zero())
        {
            continue;
        }
        ASSERT_EQ(*degree(xy).value, *degree(x).value + *degree(y).value);
        ++checked;
    }
}

TEST(Expectations, E)
{
    Element w = Element::monomial(Word{{1, 1}, {2, -1}});
    EXPECT_EQ(gauge_expectation_E(w), w);
    EXPECT_TRUE(gauge_expectation_E(u(1)).is_zero());
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i)
    {
        Element x = random_small(rng, quarter);
        Element ex = gauge_expectation_E(x);
        ASSERT_EQ(gauge_expectation_E(ex), ex);
        ASSERT_TRUE(ex.is_zero() || degree(ex).value == 0);
        if (degree(x).value == 0)
        {
            ASSERT_EQ(ex, x);
        }
    }
}

TEST(Expectations, F)
{
    EXPECT_EQ(gauge_expectation_F(u(1, 2), 2), u(1, 2));
    EXPECT_TRUE(gauge_expectation_F(u(1), 2).is_zero());
    EXPECT_TRUE(gauge_expectation_F(multiply(u(1, 2), u(3), quarter), 2).is_zero());
    EXPECT_EQ(gauge_expectation_F(u(1, 3) + Element::one(), 0), Element::one());
    std::mt19937_64 rng(10);
    for (int i = 0; i < 100; ++i)
    {
        Element x = random_small(rng, quarter);
        Element fx = gauge_expectation_F(x, 2);
        ASSERT_EQ(gauge_expectation_F(fx, 2), fx);
        for (const auto& [w, c] : fx.terms())
        {
            for (const auto& f : w.factors())
            {
                ASSERT_EQ(f.exponent % 2, 0);
            }
        }
    }
}

TEST(Gauge, Global)
{
    EXPECT_EQ(apply_gauge(u(0), make_rational(1, 2)), -u(0));
    Element w = Element::monomial(Word{{1, 1}, {2, -1}});
    EXPECT_EQ(apply_gauge(w, make_rational(1, 7)), w);
    EXPECT_EQ(apply_gauge(u(0, 2), make_rational(1, 4)), -u(0, 2));
}

TEST(Gauge, Coordinatewise)
{
    EXPECT_EQ(apply_coordinate_gauge(u(0), {{0, make_rational(1, 3)}}), u(0).scaled(PhaseCoefficient::term(Rational(1), make_rational(1, 3))));
    Element x = u(0) + multiply(u(4, 2), u(-1), quarter);
    EXPECT_EQ(apply_coordinate_gauge(x, {}), x);
    Element w = Element::monomial(Word{{0, 1}, {1, 1}});
    EXPECT_EQ(apply_coordinate_gauge(w, {{0, make_rational(1, 2)}, {1, make_rational(1, 2)}}), w);
}

TEST(IncreasingMaps, ActOnElements)
{
    EXPECT_EQ(apply_increasing_map(u(0), IncreasingMap::shift(1), quarter), u(1));
    Element x = u(3) + multiply(u(1, 2), u(0, -1), quarter);
    EXPECT_EQ(apply_increasing_map(x, IncreasingMap::identity(), quarter), x);
    Element y = Element::monomial(Word{{-1, 1}, {0, 1}});
    EXPECT_EQ(apply_increasing_map(y, IncreasingMap::partial_shift(0), quarter), Element::monomial(Word{{-1, 1}, {1, 1}}));
    EXPECT_THROW(apply_increasing_map(u(0) + u(1), IncreasingMap::table(0, {5, 5 + 0}), quarter), InputError);
}

TEST(IncreasingMaps, PreserveNormalFormPhase)
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 300; ++i)
    {
        Word w = random_word(rng, WordShape{4, 4, 8, 1});
        auto h = random_increasing_map(-4, 4, rng());
        std::vector<Factor> moved(w.factors().begin(), w.factors().end());
        for (auto& f : moved)
        {
            f.index = h(f.index);
        }
        ASSERT_EQ(normal_form(Word(moved)).phase_exponent, normal_form(w).phase_exponent);
    }
}

TEST(IncreasingMaps, EndomorphismProperty)
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i)
    {
        Element x = random_small(rng, quarter), y = random_small(rng, quarter);
        auto h = random_increasing_map(-3, 3, rng());
        ASSERT_EQ(apply_increasing_map(multiply(x, y, quarter), h, quarter),
                  multiply(apply_increasing_map(x, h, quarter), apply_increasing_map(y, h, quarter), quarter));
    }
}

TEST(NormalForm, AdmissibleWordsHaveTrivialPhase)
{
    std::mt19937_64 rng(14);
    for (auto text : {"1/2", "1/4", "3/8", "5/12", "7/18", "13/72"})
    {
        auto beta = DeformationParameter::parse(text);
        const std::int64_t n0 = isotropy(beta).n0_or_zero();
        for (int i = 0; i < 200; ++i)
        {
            Word w = random_word(rng, WordShape{5, 3, 8, 1});
            std::vector<Factor> scaled(w.factors().begin(), w.factors().end());
            for (auto& f : scaled)
            {
                f.exponent *= n0;
            }
            auto [ph, nf] = normal_form(Word(scaled), beta);
            ASSERT_EQ(ph, PhaseCoefficient(1)) << text;
        }
    }
}

TEST(ElementText, CanonicalPrinting)
{
    EXPECT_EQ(Element().to_string(), "0");
    EXPECT_EQ(Element::one().to_string(), "1");
    Element x = u(0, 2).scaled(PhaseCoefficient::term(make_rational(1, 2), make_rational(1, 3))) - u(1);
    EXPECT_EQ(x.to_string(), "1/2 * e(1/3) * u[0]^2 - u[1]");
}
