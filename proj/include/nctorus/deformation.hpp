#pragma once

// The deformation parameter beta = alpha / 2pi and the isotropy data derived
// from it: Delta = {k : beta k^2 in Z} = n0 Z and its annihilator in the circle.

#include "nctorus/cyclotomic.hpp"
#include "nctorus/numbers.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace nctorus
{
    namespace detail
    {
        inline void add_factor(std::map<Integer, unsigned>& out, const Integer& p, unsigned e = 1) { out[p] += e; }

        inline Integer pollard_brent(const Integer& n)
        {
            if (mpz_even_p(n.get_mpz_t()))
            {
                return 2;
            }
            for (unsigned long c = 1;; ++c)
            {
                Integer y = 2, x, ys, q = 1, g = 1;
                unsigned long r = 1, m = 128;
                auto f = [&](const Integer& v) {
                    Integer t = v * v + c;
                    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
                    return t;
                };
                do
                {
                    x = y;
                    for (unsigned long i = 0; i < r; ++i)
                    {
                        y = f(y);
                    }
                    unsigned long k = 0;
                    do
                    {
                        ys = y;
                        for (unsigned long i = 0; i < std::min(m, r - k); ++i)
                        {
                            y = f(y);
                            Integer diff = abs(x - y);
                            q = q * diff;
                            mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                        }
                        g = gcd(q, n);
                        k += m;
                    } while (k < r && g == 1);
                    r *= 2;
                } while (g == 1);
                if (g == n)
                {
                    do
                    {
                        ys = f(ys);
                        g = gcd(abs(x - ys), n);
                    } while (g == 1);
                }
                if (g != n)
                {
                    return g;
                }
            }
        }

        inline void factor_into(Integer n, std::map<Integer, unsigned>& out)
        {
            for (unsigned long p : {2ul, 3ul, 5ul})
            {
                while (mpz_divisible_ui_p(n.get_mpz_t(), p))
                {
                    add_factor(out, Integer(p));
                    n /= p;
                }
            }
            if (n.fits_ulong_p())
            {
                unsigned long v = n.get_ui();
                for (unsigned long p = 7; p <= v / p && p < 1000000; p += 2)
                {
                    while (v % p == 0)
                    {
                        add_factor(out, Integer(p));
                        v /= p;
                    }
                }
                n = v;
            }
            else
            {
                // trial division by odd numbers up to a fixed bound, then probabilistic splitting
                for (unsigned long p = 7; p < 100000; p += 2)
                {
                    if (Integer(p) * p > n)
                    {
                        break;
                    }
                    while (mpz_divisible_ui_p(n.get_mpz_t(), p))
                    {
                        add_factor(out, Integer(p));
                        n /= p;
                    }
                }
            }
            if (n == 1)
            {
                return;
            }
            if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0)
            {
                add_factor(out, n);
                return;
            }
            Integer d = pollard_brent(n);
            factor_into(d, out);
            factor_into(n / d, out);
        }
    }

    /// Prime factorization of a positive integer.
    inline std::map<Integer, unsigned> factorize(const Integer& n)
    {
        if (n <= 0)
        {
            throw InputError("factorize expects a positive integer");
        }
        std::map<Integer, unsigned> out;
        detail::factor_into(n, out);
        return out;
    }

    class DeformationParameter
    {
    public:
        struct RationalBeta
        {
            Rational value;
            std::map<Integer, unsigned> denominator_factors;
        };
        struct IrrationalBeta
        {
            /// Numeric stand-in used only by the floating evaluation path.
            double sample_value;
        };

        /// Golden ratio conjugate; the default numeric sample for symbolic irrational beta.
        static constexpr double default_irrational_sample = 0.6180339887498949;

        static DeformationParameter canonicalize(const Integer& numerator, const Integer& denominator)
        {
            if (denominator == 0)
            {
                throw InputError("deformation parameter with zero denominator");
            }
            Rational q = make_rational(numerator, denominator);
            return DeformationParameter(RationalBeta{q, factorize(q.get_den())});
        }

        static DeformationParameter canonicalize(long numerator, long denominator)
        {
            return canonicalize(Integer(numerator), Integer(denominator));
        }

        static DeformationParameter irrational(double sample_value = default_irrational_sample)
        {
            return DeformationParameter(IrrationalBeta{sample_value});
        }

        /// "N/D", "N" or "irrational".
        static DeformationParameter parse(std::string_view text)
        {
            if (text == "irrational")
            {
                return irrational();
            }
            Rational q = parse_rational(text);
            return canonicalize(q.get_num(), q.get_den());
        }

        bool is_rational() const { return std::holds_alternative<RationalBeta>(kind_); }

        const Rational& value() const { return rational_data().value; }
        const std::map<Integer, unsigned>& denominator_factors() const { return rational_data().denominator_factors; }

        double numeric_value() const
        {
            if (is_rational())
            {
                return value().get_d();
            }
            return std::get<IrrationalBeta>(kind_).sample_value;
        }

        /// e^{2 pi i beta m}: folded into e(.) for rational beta, symbolic E(m) otherwise.
        PhaseCoefficient phase(const Integer& m) const
        {
            if (m == 0)
            {
                return PhaseCoefficient(1);
            }
            if (is_rational())
            {
                return PhaseCoefficient::term(Rational(1), value() * m);
            }
            return PhaseCoefficient::term(Rational(1), Rational(0), m);
        }

        std::string to_string() const { return is_rational() ? value().get_str() : std::string("irrational"); }

        friend bool operator==(const DeformationParameter& a, const DeformationParameter& b)
        {
            if (a.is_rational() != b.is_rational())
            {
                return false;
            }
            return a.is_rational() ? a.value() == b.value() : true;
        }

    private:
        std::variant<RationalBeta, IrrationalBeta> kind_;

        explicit DeformationParameter(std::variant<RationalBeta, IrrationalBeta> kind) : kind_(std::move(kind)) {}

        const RationalBeta& rational_data() const
        {
            if (!is_rational())
            {
                throw std::logic_error("irrational deformation parameter has no rational value");
            }
            return std::get<RationalBeta>(kind_);
        }
    };

    struct AllOfCircle
    {
        friend bool operator==(AllOfCircle, AllOfCircle) { return true; }
    };

    struct RootsOfUnity
    {
        Integer n0;
        friend bool operator==(const RootsOfUnity&, const RootsOfUnity&) = default;
    };

    struct IsotropyData
    {
        std::variant<AllOfCircle, RootsOfUnity> annihilator;
        /// Generator n0 of Delta; absent when Delta = {0}.
        std::optional<Integer> delta_generator;

        /// n0 as a machine integer, with 0 standing for the trivial subgroup.
        std::int64_t n0_or_zero() const { return delta_generator ? to_int64(*delta_generator) : 0; }
    };

    /// Delta = n0 Z with n0 = prod p^ceil(m/2) over the denominator's factorization.
    inline IsotropyData isotropy(const DeformationParameter& beta)
    {
        if (!beta.is_rational())
        {
            return IsotropyData{AllOfCircle{}, std::nullopt};
        }
        Integer n0 = 1;
        for (const auto& [p, m] : beta.denominator_factors())
        {
            Integer power;
            mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), (m + 1) / 2);
            n0 *= power;
        }
        return IsotropyData{RootsOfUnity{n0}, n0};
    }

    /// The integer m with u_alpha(k, l) = e^{2 pi i beta m}.
    inline Integer bicharacter_exponent(const Integer& k, const Integer& l)
    {
        return k * l;
    }
}
