#pragma once

// States and parameters shared by the unit tests and the acceptance binary.

#include "nctorus/nctorus.hpp"

#include <string>
#include <vector>

namespace fixtures
{
    using namespace nctorus;

    inline GaussianRational g(long re_num, long re_den, long im_num = 0, long im_den = 1)
    {
        return GaussianRational{make_rational(re_num, re_den), make_rational(im_num, im_den)};
    }

    inline StatePtr product(std::map<std::int64_t, GaussianRational> moments)
    {
        return StateSpec::product(MomentSequence<GaussianRational>::from_entries(moments));
    }

    struct NamedState
    {
        std::string name;
        StatePtr spec;
    };

    /// Five admissible, positive-definite moment sequences for a given n0.
    inline std::vector<NamedState> admissible_products(std::int64_t n0)
    {
        const std::int64_t a = n0, b = 2 * n0;
        const std::string sa = std::to_string(a), sb = std::to_string(b);
        return {
            {"c" + sa + "=1/2", product({{a, g(1, 2)}})},
            {"c" + sa + "=-1/2", product({{a, g(-1, 2)}})},
            {"c" + sa + "=i/2", product({{a, g(0, 1, 1, 2)}})},
            {"c" + sa + "=c" + sb + "=1/4", product({{a, g(1, 4)}, {b, g(1, 4)}})},
            {"c" + sa + "=(1+i)/4,c" + sb + "=1/8", product({{a, g(1, 4, 1, 4)}, {b, g(1, 8)}})},
        };
    }

    inline StatePtr two_point_mixture()
    {
        return StateSpec::mixture({{make_rational(1, 2), product({{2, g(1, 2)}})}, {make_rational(1, 2), product({{2, g(-1, 2)}})}});
    }

    /// Every state kind at beta = 1/2.
    inline std::vector<NamedState> all_kinds()
    {
        auto p = product({{2, g(1, 2)}});
        auto mix = two_point_mixture();
        return {
            {"trace", StateSpec::trace()},
            {"product", p},
            {"block(1, mixture)", StateSpec::block(1, mix)},
            {"block(2, product)", StateSpec::block(2, p)},
            {"cesaro(1, mixture)", StateSpec::cesaro(1, mix)},
            {"mixture", mix},
            {"mixture(trace, product)", StateSpec::mixture({{make_rational(1, 3), StateSpec::trace()}, {make_rational(2, 3), p}})},
        };
    }

    /// Frozen Gram witness for the inadmissible functional c_{+-1} = 1 at beta = 1/2.
    inline std::vector<Element> inadmissible_gram_family()
    {
        return {Element::monomial(Word{{0, -2}}), Element::monomial(Word{{0, -2}, {1, -2}}),
                Element::monomial(Word{{0, -2}, {1, -1}})};
    }
}
