#pragma once

// Deterministic random words and Elements for property checks.

#include "nctorus/element.hpp"

#include <random>

namespace nctorus
{
    struct WordShape
    {
        std::int64_t max_index = 2;
        std::int64_t max_exponent = 2;
        std::size_t max_factors = 3;
        std::size_t max_terms = 3;
    };

    /// Raw (not normal-ordered) word with 0..max_factors factors.
    inline Word random_word(std::mt19937_64& rng, const WordShape& shape)
    {
        if (shape.max_exponent < 1)
        {
            throw InputError("max exponent must be at least 1");
        }
        std::uniform_int_distribution<std::size_t> length(0, shape.max_factors);
        std::uniform_int_distribution<std::int64_t> index(-shape.max_index, shape.max_index);
        std::uniform_int_distribution<std::int64_t> magnitude(1, shape.max_exponent);
        std::bernoulli_distribution negative(0.5);
        std::vector<Factor> factors;
        const std::size_t n = length(rng);
        for (std::size_t i = 0; i < n; ++i)
        {
            std::int64_t e = magnitude(rng);
            factors.push_back({index(rng), negative(rng) ? -e : e});
        }
        return Word(std::move(factors));
    }

    /// Nonzero small coefficient r * e(q) with r in {+-1..3}/{1..4} and q in (1/12)Z.
    inline PhaseCoefficient random_coefficient(std::mt19937_64& rng)
    {
        std::uniform_int_distribution<long> num(1, 3), den(1, 4), angle(0, 11);
        std::bernoulli_distribution negative(0.5), rotated(0.3);
        Rational r = make_rational(negative(rng) ? -num(rng) : num(rng), den(rng));
        Rational q = rotated(rng) ? make_rational(angle(rng), 12) : Rational(0);
        return PhaseCoefficient::term(r, q);
    }

    /// Sum of 1..max_terms random words with random coefficients, canonicalized.
    inline Element random_element(std::mt19937_64& rng, const DeformationParameter& beta, const WordShape& shape)
    {
        std::uniform_int_distribution<std::size_t> terms(1, std::max<std::size_t>(1, shape.max_terms));
        Element x;
        const std::size_t n = terms(rng);
        for (std::size_t i = 0; i < n; ++i)
        {
            PhaseCoefficient c = random_coefficient(rng);
            x += Element::from_word(random_word(rng, shape), beta).scaled(c);
        }
        return x;
    }
}
