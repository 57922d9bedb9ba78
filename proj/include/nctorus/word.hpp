#pragma once

// Words u_{l1}^{k1} ... u_{ln}^{kn} in the generators and their normal form.
//
// Reordering uses u_k^s u_l^t = e^{-2 pi i beta s t} u_l^t u_k^s for k > l, so
// the phase of a word is minus the sum of a_i a_j over index inversions
// (i < j, index_i > index_j). A stable merge sort counts those weighted
// inversions in O(n log n).

#include "nctorus/deformation.hpp"
#include "nctorus/numbers.hpp"

#include <compare>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace nctorus
{
    struct Factor
    {
        std::int64_t index;
        std::int64_t exponent;

        friend auto operator<=>(const Factor&, const Factor&) = default;
    };

    class Word
    {
    public:
        Word() = default;

        /// Zero exponents are elided.
        explicit Word(std::vector<Factor> factors) : factors_(std::move(factors))
        {
            std::erase_if(factors_, [](const Factor& f) { return f.exponent == 0; });
        }

        Word(std::initializer_list<Factor> factors) : Word(std::vector<Factor>(factors)) {}

        static Word generator(std::int64_t index, std::int64_t exponent = 1) { return Word({Factor{index, exponent}}); }

        std::span<const Factor> factors() const { return factors_; }
        std::size_t size() const { return factors_.size(); }
        bool empty() const { return factors_.empty(); }

        /// Strictly increasing indices.
        bool is_normal() const
        {
            for (std::size_t i = 1; i < factors_.size(); ++i)
            {
                if (factors_[i - 1].index >= factors_[i].index)
                {
                    return false;
                }
            }
            return true;
        }

        std::int64_t degree() const
        {
            std::int64_t d = 0;
            for (const auto& f : factors_)
            {
                d = checked_add(d, f.exponent);
            }
            return d;
        }

        Word concat(const Word& other) const
        {
            std::vector<Factor> f = factors_;
            f.insert(f.end(), other.factors_.begin(), other.factors_.end());
            return Word(std::move(f));
        }

        /// Factors reversed with negated exponents (the word of the adjoint, before reordering).
        Word reversed_inverse() const
        {
            std::vector<Factor> f;
            f.reserve(factors_.size());
            for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
            {
                f.push_back({it->index, -it->exponent});
            }
            return Word(std::move(f));
        }

        Word shifted(std::int64_t k) const
        {
            std::vector<Factor> f = factors_;
            for (auto& x : f)
            {
                x.index = checked_add(x.index, k);
            }
            return Word(std::move(f));
        }

        std::string to_string() const
        {
            if (factors_.empty())
            {
                return "1";
            }
            std::ostringstream os;
            for (std::size_t i = 0; i < factors_.size(); ++i)
            {
                if (i > 0)
                {
                    os << " * ";
                }
                os << "u[" << factors_[i].index << "]";
                if (factors_[i].exponent != 1)
                {
                    os << "^" << factors_[i].exponent;
                }
            }
            return os.str();
        }

        friend auto operator<=>(const Word&, const Word&) = default;
        friend bool operator==(const Word&, const Word&) = default;
        friend std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.to_string(); }

    private:
        std::vector<Factor> factors_;
    };

    struct NormalForm
    {
        /// w = e^{2 pi i beta phase_exponent} * word
        Integer phase_exponent;
        Word word;
    };

    namespace detail
    {
        struct InversionOverflow
        {
        };

        struct Int128Accumulator
        {
            __int128 value = 0;
            void add_product(std::int64_t a, __int128 b)
            {
                __int128 p;
                if (__builtin_mul_overflow(static_cast<__int128>(a), b, &p) || __builtin_add_overflow(value, p, &value))
                {
                    throw InversionOverflow{};
                }
            }
            static __int128 add(__int128 a, std::int64_t b)
            {
                __int128 r;
                if (__builtin_add_overflow(a, static_cast<__int128>(b), &r))
                {
                    throw InversionOverflow{};
                }
                return r;
            }
            static __int128 sub(__int128 a, std::int64_t b)
            {
                __int128 r;
                if (__builtin_sub_overflow(a, static_cast<__int128>(b), &r))
                {
                    throw InversionOverflow{};
                }
                return r;
            }
            Integer result() const
            {
                // split into two 64-bit halves for GMP
                bool negative = value < 0;
                unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(value) : static_cast<unsigned __int128>(value);
                Integer hi(static_cast<unsigned long>(mag >> 64));
                Integer lo(static_cast<unsigned long>(mag & ~0ul));
                Integer r = (hi << 64) + lo;
                return negative ? Integer(-r) : r;
            }
        };

        struct BigAccumulator
        {
            Integer value = 0;
            void add_product(std::int64_t a, const Integer& b) { value += Integer(static_cast<long>(a)) * b; }
            static Integer add(const Integer& a, std::int64_t b) { return a + Integer(static_cast<long>(b)); }
            static Integer sub(const Integer& a, std::int64_t b) { return a - Integer(static_cast<long>(b)); }
            Integer result() const { return value; }
        };

        /// Sorts by index (stable) and returns sum of a_i a_j over inversions.
        template <class Acc, class Sum>
        Integer weighted_inversions(std::vector<Factor>& v)
        {
            Acc acc;
            std::vector<Factor> tmp(v.size());
            for (std::size_t width = 1; width < v.size(); width *= 2)
            {
                for (std::size_t lo = 0; lo + width < v.size(); lo += 2 * width)
                {
                    std::size_t mid = lo + width;
                    std::size_t hi = std::min(lo + 2 * width, v.size());
                    Sum left_remaining = 0;
                    for (std::size_t i = lo; i < mid; ++i)
                    {
                        left_remaining = Acc::add(left_remaining, v[i].exponent);
                    }
                    std::size_t i = lo, j = mid, out = lo;
                    while (i < mid && j < hi)
                    {
                        if (v[j].index < v[i].index)
                        {
                            // every remaining left factor has a larger index
                            acc.add_product(v[j].exponent, left_remaining);
                            tmp[out++] = v[j++];
                        }
                        else
                        {
                            left_remaining = Acc::sub(left_remaining, v[i].exponent);
                            tmp[out++] = v[i++];
                        }
                    }
                    while (i < mid)
                    {
                        tmp[out++] = v[i++];
                    }
                    while (j < hi)
                    {
                        tmp[out++] = v[j++];
                    }
                    std::copy(tmp.begin() + lo, tmp.begin() + hi, v.begin() + lo);
                }
            }
            return acc.result();
        }
    }

    /// Normal form of a word: strictly increasing indices, merged exponents,
    /// zero exponents elided, and the accumulated commutation phase exponent.
    inline NormalForm normal_form(const Word& w)
    {
        std::vector<Factor> v(w.factors().begin(), w.factors().end());
        Integer inversions;
        try
        {
            std::vector<Factor> work = v;
            inversions = detail::weighted_inversions<detail::Int128Accumulator, __int128>(work);
            v = std::move(work);
        }
        catch (const detail::InversionOverflow&)
        {
            inversions = detail::weighted_inversions<detail::BigAccumulator, Integer>(v);
        }
        std::vector<Factor> merged;
        merged.reserve(v.size());
        for (const auto& f : v)
        {
            if (!merged.empty() && merged.back().index == f.index)
            {
                merged.back().exponent = checked_add(merged.back().exponent, f.exponent);
            }
            else
            {
                merged.push_back(f);
            }
        }
        return NormalForm{-inversions, Word(std::move(merged))};
    }

    /// Same as normal_form, with the phase exponent folded into a coefficient.
    inline std::pair<PhaseCoefficient, Word> normal_form(const Word& w, const DeformationParameter& beta)
    {
        auto nf = normal_form(w);
        return {beta.phase(nf.phase_exponent), std::move(nf.word)};
    }
}
