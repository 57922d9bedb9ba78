#pragma once

// Moment sequences c_l = omega(z^l) of states on C(T), finitely supported.

#include "nctorus/numbers.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>

namespace nctorus
{
    template <class M>
    struct moment_traits;

    template <>
    struct moment_traits<GaussianRational>
    {
        static GaussianRational one() { return GaussianRational(1); }
        static GaussianRational conj(const GaussianRational& c) { return c.conj(); }
        static bool is_zero(const GaussianRational& c) { return c.is_zero(); }
        static bool equal(const GaussianRational& a, const GaussianRational& b) { return a == b; }
        static bool contractive(const GaussianRational& c) { return c.norm() <= 1; }
        static std::string to_string(const GaussianRational& c)
        {
            std::ostringstream os;
            os << c;
            return os.str();
        }
    };

    template <>
    struct moment_traits<std::complex<double>>
    {
        static constexpr double tolerance = 1e-9;
        static std::complex<double> one() { return 1.0; }
        static std::complex<double> conj(const std::complex<double>& c) { return std::conj(c); }
        static bool is_zero(const std::complex<double>& c) { return std::abs(c) <= tolerance; }
        static bool equal(const std::complex<double>& a, const std::complex<double>& b) { return std::abs(a - b) <= tolerance; }
        static bool contractive(const std::complex<double>& c) { return std::abs(c) <= 1 + tolerance; }
        static std::string to_string(const std::complex<double>& c)
        {
            std::ostringstream os;
            os.precision(12);
            os << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
            return os.str();
        }
    };

    template <class M>
    class MomentSequence
    {
    public:
        using value_type = M;
        using traits = moment_traits<M>;

        /// Haar measure: c_l = delta_{l,0}.
        MomentSequence() { moments_.emplace(0, traits::one()); }

        static MomentSequence lebesgue() { return MomentSequence(); }

        /// Missing negative (or positive) partners are filled by Hermitian symmetry;
        /// c_0 defaults to 1 and must equal 1 when given.
        static MomentSequence from_entries(const std::map<std::int64_t, M>& entries)
        {
            MomentSequence s;
            for (const auto& [l, c] : entries)
            {
                if (l == 0)
                {
                    if (!traits::equal(c, traits::one()))
                    {
                        throw InputError("moment c_0 must equal 1, got " + traits::to_string(c));
                    }
                    continue;
                }
                if (!traits::contractive(c))
                {
                    throw InputError("moment c_" + std::to_string(l) + " = " + traits::to_string(c) + " exceeds 1 in modulus");
                }
                auto partner = entries.find(-l);
                if (partner != entries.end() && !traits::equal(partner->second, traits::conj(c)))
                {
                    throw InputError("moments c_" + std::to_string(l) + " and c_" + std::to_string(-l) +
                                     " are not complex conjugates");
                }
                if (traits::is_zero(c))
                {
                    continue;
                }
                s.moments_[l] = c;
                s.moments_[-l] = traits::conj(c);
            }
            return s;
        }

        M at(std::int64_t l) const
        {
            auto it = moments_.find(l);
            return it == moments_.end() ? M{} : it->second;
        }

        const std::map<std::int64_t, M>& moments() const { return moments_; }

        /// c_l vanishes whenever n0 does not divide l (n0 = 0: only Lebesgue qualifies).
        bool is_admissible(std::int64_t n0) const
        {
            for (const auto& [l, c] : moments_)
            {
                if (!is_multiple(l, n0) && !traits::is_zero(c))
                {
                    return false;
                }
            }
            return true;
        }

        bool is_lebesgue() const { return moments_.size() == 1; }

        std::int64_t max_order() const { return moments_.rbegin()->first; }

    private:
        std::map<std::int64_t, M> moments_;
    };

    inline MomentSequence<std::complex<double>> to_float(const MomentSequence<GaussianRational>& m)
    {
        std::map<std::int64_t, std::complex<double>> entries;
        for (const auto& [l, c] : m.moments())
        {
            entries[l] = {c.re.get_d(), c.im.get_d()};
        }
        return MomentSequence<std::complex<double>>::from_entries(entries);
    }
}
