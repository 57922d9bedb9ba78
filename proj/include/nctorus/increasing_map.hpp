#pragma once

// Strictly increasing maps Z -> Z with finite descriptions: shifts tau^k, the
// partial shifts theta_l (k -> k for k < l, k -> k + 1 for k >= l), compositions
// of those, and explicit tables on a window.

#include "nctorus/numbers.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace nctorus
{
    class IncreasingMap
    {
    public:
        struct Shift
        {
            std::int64_t k;
        };
        struct PartialShift
        {
            std::int64_t l;
        };
        /// Applied right to left: {f, g} is f o g.
        struct Composite
        {
            std::vector<IncreasingMap> parts;
        };
        /// values[i] = h(lo + i); outside the window h continues with slope 1.
        struct Table
        {
            std::int64_t lo;
            std::vector<std::int64_t> values;
        };

        IncreasingMap() : kind_(Shift{0}) {}

        static IncreasingMap identity() { return IncreasingMap(Shift{0}); }
        static IncreasingMap shift(std::int64_t k) { return IncreasingMap(Shift{k}); }
        static IncreasingMap partial_shift(std::int64_t l) { return IncreasingMap(PartialShift{l}); }
        static IncreasingMap compose(std::vector<IncreasingMap> parts) { return IncreasingMap(Composite{std::move(parts)}); }

        static IncreasingMap table(std::int64_t lo, std::vector<std::int64_t> values)
        {
            if (values.empty())
            {
                throw InputError("increasing map table must be non-empty");
            }
            for (std::size_t i = 1; i < values.size(); ++i)
            {
                if (values[i - 1] >= values[i])
                {
                    throw InputError("increasing map table is not strictly increasing at position " + std::to_string(i));
                }
            }
            return IncreasingMap(Table{lo, std::move(values)});
        }

        std::int64_t operator()(std::int64_t k) const
        {
            return std::visit(
                [k](const auto& m) -> std::int64_t {
                    using T = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<T, Shift>)
                    {
                        return checked_add(k, m.k);
                    }
                    else if constexpr (std::is_same_v<T, PartialShift>)
                    {
                        return k < m.l ? k : checked_add(k, 1);
                    }
                    else if constexpr (std::is_same_v<T, Composite>)
                    {
                        std::int64_t v = k;
                        for (auto it = m.parts.rbegin(); it != m.parts.rend(); ++it)
                        {
                            v = (*it)(v);
                        }
                        return v;
                    }
                    else
                    {
                        const auto hi = m.lo + static_cast<std::int64_t>(m.values.size()) - 1;
                        if (k < m.lo)
                        {
                            return checked_add(m.values.front(), k - m.lo);
                        }
                        if (k > hi)
                        {
                            return checked_add(m.values.back(), k - hi);
                        }
                        return m.values[static_cast<std::size_t>(k - m.lo)];
                    }
                },
                kind_);
        }

        bool is_strictly_increasing_on(std::int64_t lo, std::int64_t hi) const
        {
            for (std::int64_t k = lo; k < hi; ++k)
            {
                if ((*this)(k) >= (*this)(k + 1))
                {
                    return false;
                }
            }
            return true;
        }

        /// Text form: "tau^k", "theta_l", "table(lo: v0, v1, ...)", composites joined by " o ".
        std::string to_string() const
        {
            return std::visit(
                [](const auto& m) -> std::string {
                    using T = std::decay_t<decltype(m)>;
                    std::ostringstream os;
                    if constexpr (std::is_same_v<T, Shift>)
                    {
                        if (m.k == 0)
                        {
                            os << "id";
                        }
                        else
                        {
                            os << "tau^" << m.k;
                        }
                    }
                    else if constexpr (std::is_same_v<T, PartialShift>)
                    {
                        os << "theta_" << m.l;
                    }
                    else if constexpr (std::is_same_v<T, Composite>)
                    {
                        if (m.parts.empty())
                        {
                            os << "id";
                        }
                        for (std::size_t i = 0; i < m.parts.size(); ++i)
                        {
                            os << (i ? " o " : "") << m.parts[i].to_string();
                        }
                    }
                    else
                    {
                        os << "table(" << m.lo << ":";
                        for (std::size_t i = 0; i < m.values.size(); ++i)
                        {
                            os << (i ? ", " : " ") << m.values[i];
                        }
                        os << ")";
                    }
                    return os.str();
                },
                kind_);
        }

    private:
        std::variant<Shift, PartialShift, Composite, Table> kind_;

        template <class Kind>
        explicit IncreasingMap(Kind k) : kind_(std::move(k))
        {
        }
    };

    /// A table map on [lo, hi] with random start offset in [-2, 2] and gaps of 1..3.
    /// The identity is among the possible outcomes.
    inline IncreasingMap random_increasing_map(std::int64_t lo, std::int64_t hi, std::uint64_t seed)
    {
        if (lo > hi)
        {
            throw InputError("random_increasing_map: empty window");
        }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> offset(-2, 2);
        std::uniform_int_distribution<std::int64_t> gap(1, 3);
        std::vector<std::int64_t> values;
        values.reserve(static_cast<std::size_t>(hi - lo + 1));
        values.push_back(lo + offset(rng));
        for (std::int64_t k = lo + 1; k <= hi; ++k)
        {
            values.push_back(values.back() + gap(rng));
        }
        return IncreasingMap::table(lo, std::move(values));
    }

    /// All compositions of at most max_length generators from {theta_l : |l| <= max_l} and tau, tau^-1.
    inline std::vector<IncreasingMap> generator_compositions(std::int64_t max_l, std::size_t max_length)
    {
        std::vector<IncreasingMap> gens;
        for (std::int64_t l = -max_l; l <= max_l; ++l)
        {
            gens.push_back(IncreasingMap::partial_shift(l));
        }
        gens.push_back(IncreasingMap::shift(1));
        gens.push_back(IncreasingMap::shift(-1));

        std::vector<std::vector<IncreasingMap>> layer{{}};
        std::vector<IncreasingMap> out{IncreasingMap::identity()};
        for (std::size_t len = 1; len <= max_length; ++len)
        {
            std::vector<std::vector<IncreasingMap>> next;
            for (const auto& prefix : layer)
            {
                for (const auto& g : gens)
                {
                    auto parts = prefix;
                    parts.push_back(g);
                    out.push_back(IncreasingMap::compose(parts));
                    next.push_back(std::move(parts));
                }
            }
            layer = std::move(next);
        }
        return out;
    }
}
