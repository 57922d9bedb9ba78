#pragma once

// Budgeted invariance checks for states: spreadability (phi o alpha_h = phi for
// strictly increasing h), stationarity under tau^p, and invariance under the
// gauge rotations by n0-th roots of unity.
//
// Each check runs an exhaustive pass over a finite grammar (all normal-form
// words up to the budget) followed by seeded random trials; trial i draws from
// an mt19937_64 seeded with seed ^ i. Exact evaluators compare exactly, float
// evaluators within 1e-9.

#include "nctorus/element.hpp"
#include "nctorus/increasing_map.hpp"
#include "nctorus/random.hpp"
#include "nctorus/states.hpp"

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace nctorus
{
    struct CheckBudget
    {
        std::size_t trials = 1000;
        std::uint64_t seed = 0;
        std::int64_t max_index = 2;
        std::int64_t max_exponent = 2;
        std::size_t max_factors = 3;
        bool exhaustive = true;
        /// generator grammar for maps in the exhaustive pass
        std::int64_t max_partial_shift = 2;
        std::size_t max_map_length = 2;

        std::string describe() const
        {
            std::ostringstream os;
            os << "trials=" << trials << " seed=" << seed << " max-index=" << max_index << " max-exponent=" << max_exponent
               << " max-factors=" << max_factors;
            if (exhaustive)
            {
                os << " exhaustive(maps: <=" << max_map_length << " generators, |l|<=" << max_partial_shift << ")";
            }
            return os.str();
        }
    };

    struct Witness
    {
        Element x;
        std::string transform;
        std::string transformed_value;
        std::string original_value;
    };

    struct CheckReport
    {
        std::string property;
        bool passed = true;
        std::size_t exhaustive_cases = 0;
        std::size_t random_cases = 0;
        std::string budget;
        std::optional<Witness> witness;

        std::string to_string() const
        {
            std::ostringstream os;
            os << property << ": " << (passed ? "pass" : "FAIL") << " (" << exhaustive_cases << " exhaustive, " << random_cases
               << " random; " << budget << ")";
            if (witness)
            {
                os << "\n  witness x = " << witness->x.to_string() << "\n  transform = " << witness->transform
                   << "\n  phi(T x) = " << witness->transformed_value << "\n  phi(x)   = " << witness->original_value;
            }
            return os.str();
        }
    };

    /// Every normal-form word with at most max_factors factors, indices in
    /// [-max_index, max_index] and exponents in [-max_exponent, max_exponent] \ {0}.
    inline std::vector<Word> enumerate_normal_words(std::int64_t max_index, std::int64_t max_exponent, std::size_t max_factors)
    {
        std::vector<Word> out{Word()};
        std::vector<std::vector<Factor>> layer{{}};
        for (std::size_t len = 1; len <= max_factors; ++len)
        {
            std::vector<std::vector<Factor>> next;
            for (const auto& prefix : layer)
            {
                std::int64_t start = prefix.empty() ? -max_index : prefix.back().index + 1;
                for (std::int64_t i = start; i <= max_index; ++i)
                {
                    for (std::int64_t e = -max_exponent; e <= max_exponent; ++e)
                    {
                        if (e == 0)
                        {
                            continue;
                        }
                        auto f = prefix;
                        f.push_back({i, e});
                        out.emplace_back(f);
                        next.push_back(std::move(f));
                    }
                }
            }
            layer = std::move(next);
        }
        return out;
    }

    namespace detail
    {
        using Transform = std::function<Element(const Element&)>;

        struct NamedTransform
        {
            std::string name;
            Transform apply;
        };

        template <class Scalar>
        bool compare_once(const StateEvaluator<Scalar>& phi, const Element& x, const NamedTransform& t, CheckReport& report)
        {
            using ops = scalar_ops<Scalar>;
            Scalar original = phi(x);
            Scalar transformed = phi(t.apply(x));
            if (ops::equal(original, transformed))
            {
                return true;
            }
            report.passed = false;
            report.witness = Witness{x, t.name, ops::to_string(transformed), ops::to_string(original)};
            return false;
        }

        /// Exhaustive pass over the word grammar and the fixed transforms, then
        /// random trials with transforms drawn per trial. Stops at the first failure.
        template <class Scalar>
        CheckReport run_check(const StateEvaluator<Scalar>& phi, std::string property, const CheckBudget& budget,
                              const std::vector<NamedTransform>& fixed,
                              const std::function<NamedTransform(std::mt19937_64&, const Element&)>& draw)
        {
            CheckReport report;
            report.property = std::move(property);
            report.budget = budget.describe();
            if (budget.exhaustive)
            {
                for (const auto& w : enumerate_normal_words(budget.max_index, budget.max_exponent, budget.max_factors))
                {
                    Element x = Element::monomial(w);
                    for (const auto& t : fixed)
                    {
                        ++report.exhaustive_cases;
                        if (!compare_once(phi, x, t, report))
                        {
                            return report;
                        }
                    }
                }
            }
            WordShape shape{budget.max_index, budget.max_exponent, budget.max_factors, 3};
            for (std::size_t i = 0; i < budget.trials; ++i)
            {
                std::mt19937_64 rng(budget.seed ^ static_cast<std::uint64_t>(i));
                Element x = random_element(rng, phi.beta(), shape);
                NamedTransform t = draw(rng, x);
                ++report.random_cases;
                if (!compare_once(phi, x, t, report))
                {
                    return report;
                }
            }
            return report;
        }

        inline NamedTransform map_transform(IncreasingMap h, const DeformationParameter& beta)
        {
            std::string name = "alpha_h with h = " + h.to_string();
            return {std::move(name), [h = std::move(h), beta](const Element& x) { return apply_increasing_map(x, h, beta); }};
        }

        inline NamedTransform shift_transform(std::int64_t power)
        {
            return {"tau^" + std::to_string(power), [power](const Element& x) { return shift(x, power); }};
        }

        inline NamedTransform gauge_transform(Rational angle)
        {
            std::string name = "gamma_z with z = e(" + angle.get_str() + ")";
            return {std::move(name), [angle = std::move(angle)](const Element& x) { return apply_gauge(x, angle); }};
        }
    }

    /// phi o alpha_h = phi. Exhaustive maps: compositions of at most
    /// max_map_length generators theta_l (|l| <= max_partial_shift), tau, tau^-1.
    /// Random trials: a random table map on the support window of x, or a
    /// random generator composition.
    template <class Scalar>
    CheckReport check_spreadable(const StateEvaluator<Scalar>& phi, const CheckBudget& budget)
    {
        std::vector<detail::NamedTransform> fixed;
        for (auto& h : generator_compositions(budget.max_partial_shift, budget.max_map_length))
        {
            fixed.push_back(detail::map_transform(std::move(h), phi.beta()));
        }
        const auto beta = phi.beta();
        auto draw = [&beta, &budget](std::mt19937_64& rng, const Element& x) {
            auto [lo, hi] = detail::index_window(x);
            if (std::bernoulli_distribution(0.5)(rng))
            {
                return detail::map_transform(random_increasing_map(lo, hi, rng()), beta);
            }
            const std::int64_t L = std::max<std::int64_t>(budget.max_partial_shift, 1);
            std::uniform_int_distribution<int> pick(0, 2);
            std::uniform_int_distribution<std::int64_t> l(-L, L);
            std::uniform_int_distribution<std::size_t> length(1, 4);
            std::vector<IncreasingMap> parts;
            const std::size_t n = length(rng);
            for (std::size_t i = 0; i < n; ++i)
            {
                switch (pick(rng))
                {
                case 0: parts.push_back(IncreasingMap::shift(1)); break;
                case 1: parts.push_back(IncreasingMap::shift(-1)); break;
                default: parts.push_back(IncreasingMap::partial_shift(l(rng))); break;
                }
            }
            return detail::map_transform(IncreasingMap::compose(std::move(parts)), beta);
        };
        return detail::run_check<Scalar>(phi, "spreadable", budget, fixed, draw);
    }

    /// phi o tau^power = phi (the fixed transform in both passes).
    template <class Scalar>
    CheckReport check_stationary(const StateEvaluator<Scalar>& phi, std::int64_t power, const CheckBudget& budget)
    {
        std::vector<detail::NamedTransform> fixed{detail::shift_transform(power)};
        auto draw = [power](std::mt19937_64&, const Element&) { return detail::shift_transform(power); };
        return detail::run_check<Scalar>(phi, "stationary(power " + std::to_string(power) + ")", budget, fixed, draw);
    }

    /// phi o gamma_z = phi for z ranging over the n0-th roots of unity. For
    /// irrational beta (annihilator the whole circle) the random trials use
    /// random rational angles p/q, q <= 24, on top of a fixed set of twelfths.
    template <class Scalar>
    CheckReport check_gauge_invariant(const StateEvaluator<Scalar>& phi, const CheckBudget& budget)
    {
        std::vector<detail::NamedTransform> fixed;
        const std::int64_t n0 = phi.n0();
        if (n0 > 0)
        {
            for (std::int64_t k = 0; k < n0; ++k)
            {
                fixed.push_back(detail::gauge_transform(make_rational(k, n0)));
            }
        }
        else
        {
            for (long k = 0; k < 12; ++k)
            {
                fixed.push_back(detail::gauge_transform(make_rational(k, 12)));
            }
        }
        auto draw = [n0](std::mt19937_64& rng, const Element&) {
            if (n0 > 0)
            {
                std::uniform_int_distribution<std::int64_t> k(0, n0 - 1);
                return detail::gauge_transform(make_rational(k(rng), n0));
            }
            std::uniform_int_distribution<long> q(1, 24);
            long den = q(rng);
            std::uniform_int_distribution<long> p(0, den - 1);
            return detail::gauge_transform(make_rational(p(rng), den));
        };
        std::string property = n0 > 0 ? "gauge-invariant(z^" + std::to_string(n0) + " = 1)" : "gauge-invariant(all z)";
        return detail::run_check<Scalar>(phi, property, budget, fixed, draw);
    }
}
