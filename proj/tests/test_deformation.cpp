#include "nctorus/deformation.hpp"
#include "nctorus/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nctorus;

namespace
{
    std::map<Integer, unsigned> factors(std::initializer_list<std::pair<long, unsigned>> list)
    {
        std::map<Integer, unsigned> out;
        for (auto [p, m] : list)
        {
            out[Integer(p)] = m;
        }
        return out;
    }
}

TEST(Canonicalize, ReducesAndFactors)
{
    auto a = DeformationParameter::canonicalize(2, 8);
    EXPECT_EQ(a.value(), make_rational(1, 4));
    EXPECT_EQ(a.denominator_factors(), factors({{2, 2}}));

    auto b = DeformationParameter::canonicalize(3, 1);
    EXPECT_EQ(b.value(), Rational(3));
    EXPECT_TRUE(b.denominator_factors().empty());

    auto c = DeformationParameter::canonicalize(-5, -10);
    EXPECT_EQ(c.value(), make_rational(1, 2));
    EXPECT_EQ(c.denominator_factors(), factors({{2, 1}}));
}

TEST(Canonicalize, ZeroDenominatorIsRejected)
{
    EXPECT_THROW(DeformationParameter::canonicalize(1, 0), InputError);
    EXPECT_THROW(DeformationParameter::parse("3/0"), InputError);
    EXPECT_THROW(DeformationParameter::parse("x"), InputError);
}

TEST(Canonicalize, FactorizationMultipliesBack)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i)
    {
        Integer den(static_cast<unsigned long>(rng() % 1000000000000ULL + 1));
        auto beta = DeformationParameter::canonicalize(Integer(1), den);
        Integer product = 1;
        for (const auto& [p, m] : beta.denominator_factors())
        {
            EXPECT_NE(mpz_probab_prime_p(p.get_mpz_t(), 30), 0) << p;
            for (unsigned j = 0; j < m; ++j)
            {
                product *= p;
            }
        }
        EXPECT_EQ(product, den);
    }
    // a product of two large primes goes through the Pollard-Brent path
    Integer p("1000000007"), q("998244353");
    auto beta = DeformationParameter::canonicalize(Integer(1), p * q);
    EXPECT_EQ(beta.denominator_factors(), (std::map<Integer, unsigned>{{q, 1}, {p, 1}}));
}

TEST(Isotropy, Examples)
{
    EXPECT_EQ(isotropy(DeformationParameter::parse("1/4")).delta_generator, Integer(2));
    EXPECT_EQ(isotropy(DeformationParameter::parse("1/2")).delta_generator, Integer(2));
    EXPECT_EQ(isotropy(DeformationParameter::parse("3")).delta_generator, Integer(1));
    EXPECT_EQ(isotropy(DeformationParameter::parse("3/8")).delta_generator, Integer(4));
    EXPECT_EQ(isotropy(DeformationParameter::parse("5/12")).delta_generator, Integer(6));

    auto irr = isotropy(DeformationParameter::irrational());
    EXPECT_FALSE(irr.delta_generator.has_value());
    EXPECT_TRUE(std::holds_alternative<AllOfCircle>(irr.annihilator));
    EXPECT_EQ(irr.n0_or_zero(), 0);

    auto rat = isotropy(DeformationParameter::parse("7/72"));
    ASSERT_TRUE(std::holds_alternative<RootsOfUnity>(rat.annihilator));
    EXPECT_EQ(std::get<RootsOfUnity>(rat.annihilator).n0, Integer(12));
}

TEST(Isotropy, MatchesBruteForceAndDividesSquare)
{
    for (unsigned long D = 1; D <= 20000; ++D)
    {
        auto n0 = *isotropy(DeformationParameter::canonicalize(Integer(1), Integer(D))).delta_generator;
        ASSERT_EQ(n0, Integer(oracle::brute_n0(D))) << "D = " << D;
        ASSERT_EQ(Integer(n0 * n0) % D, 0);
    }
}

TEST(Isotropy, SubgroupIsClosedUnderAddition)
{
    std::mt19937_64 rng(3);
    for (auto text : {"1/2", "1/4", "3/8", "5/12", "7/72", "11/1000"})
    {
        auto beta = DeformationParameter::parse(text);
        Integer n0 = *isotropy(beta).delta_generator;
        for (int i = 0; i < 50; ++i)
        {
            Integer k = n0 * Integer(static_cast<long>(rng() % 41) - 20);
            Integer l = n0 * Integer(static_cast<long>(rng() % 41) - 20);
            Rational v = beta.value() * Rational((k + l) * (k + l));
            EXPECT_EQ(v.get_den(), 1) << text;
        }
    }
}

TEST(Isotropy, PureFunction)
{
    auto a = isotropy(DeformationParameter::parse("9/20"));
    auto b = isotropy(DeformationParameter::parse("9/20"));
    EXPECT_EQ(a.delta_generator, b.delta_generator);
    EXPECT_EQ(a.annihilator, b.annihilator);
}

TEST(Bicharacter, Exponent)
{
    EXPECT_EQ(bicharacter_exponent(2, 3), 6);
    EXPECT_EQ(bicharacter_exponent(0, 7), 0);
    EXPECT_EQ(bicharacter_exponent(-2, 5), -10);
    Integer big("123456789012345678901234567890");
    EXPECT_EQ(bicharacter_exponent(big, big), big * big);
}

TEST(Phase, FoldsForRationalBeta)
{
    auto beta = DeformationParameter::parse("1/4");
    EXPECT_EQ(beta.phase(Integer(2)), PhaseCoefficient(-1));
    EXPECT_EQ(beta.phase(Integer(4)), PhaseCoefficient(1));
    auto irr = DeformationParameter::irrational();
    EXPECT_FALSE(irr.phase(Integer(1)) == PhaseCoefficient(1));
    EXPECT_EQ(irr.phase(Integer(0)), PhaseCoefficient(1));
    EXPECT_EQ(irr.phase(Integer(3)).to_string(), "E(3)");
}
