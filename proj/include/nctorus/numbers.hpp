#pragma once

// Arbitrary precision integers and rationals, Gaussian rationals, and the
// small amount of checked machine arithmetic the word layer needs.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nctorus
{
    using Integer = mpz_class;
    using Rational = mpq_class;

    /// Raised for malformed user input (bad rationals, bad state files, bad
    /// expressions, inadmissible states in exact mode).
    class InputError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    inline Rational make_rational(Integer num, Integer den)
    {
        if (den == 0)
        {
            throw InputError("zero denominator");
        }
        Rational q(std::move(num), std::move(den));
        q.canonicalize();
        return q;
    }

    inline Rational make_rational(long num, long den = 1)
    {
        return make_rational(Integer(num), Integer(den));
    }

    inline Integer parse_integer(std::string_view text)
    {
        std::string s(text);
        if (s.empty())
        {
            throw InputError("empty integer literal");
        }
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size())
        {
            throw InputError("malformed integer '" + s + "'");
        }
        for (std::size_t i = start; i < s.size(); ++i)
        {
            if (s[i] < '0' || s[i] > '9')
            {
                throw InputError("malformed integer '" + s + "'");
            }
        }
        if (s[0] == '+')
        {
            s.erase(0, 1);
        }
        return Integer(s, 10);
    }

    /// Parses "p" or "p/q" with q > 0.
    inline Rational parse_rational(std::string_view text)
    {
        auto slash = text.find('/');
        if (slash == std::string_view::npos)
        {
            return Rational(parse_integer(text));
        }
        Integer num = parse_integer(text.substr(0, slash));
        auto den_text = text.substr(slash + 1);
        if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        {
            throw InputError("malformed rational '" + std::string(text) + "': denominator must be a positive integer");
        }
        Integer den = parse_integer(den_text);
        if (den == 0)
        {
            throw InputError("malformed rational '" + std::string(text) + "': zero denominator");
        }
        return make_rational(std::move(num), std::move(den));
    }

    inline std::string to_string(const Integer& z)
    {
        return z.get_str();
    }

    inline std::string to_string(const Rational& q)
    {
        return q.get_str();
    }

    inline Integer floor(const Rational& q)
    {
        Integer result;
        mpz_fdiv_q(result.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        return result;
    }

    /// Representative of q modulo 1 in [0, 1).
    inline Rational mod_one(const Rational& q)
    {
        if (q.get_den() == 1)
        {
            return Rational(0);
        }
        Rational r = q - Rational(floor(q));
        return r;
    }

    inline Integer lcm(const Integer& a, const Integer& b)
    {
        Integer r;
        mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    }

    inline Integer gcd(const Integer& a, const Integer& b)
    {
        Integer r;
        mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    }

    inline std::int64_t to_int64(const Integer& z)
    {
        if (!z.fits_slong_p())
        {
            throw std::overflow_error("integer " + z.get_str() + " does not fit in 64 bits");
        }
        return z.get_si();
    }

    inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
    {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r))
        {
            throw std::overflow_error("64-bit overflow in index or exponent arithmetic");
        }
        return r;
    }

    inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
    {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r))
        {
            throw std::overflow_error("64-bit overflow in index or exponent arithmetic");
        }
        return r;
    }

    /// k is a multiple of n, with the convention that the multiples of 0 are {0}.
    inline bool is_multiple(std::int64_t k, std::int64_t n)
    {
        return n == 0 ? k == 0 : k % n == 0;
    }

    /// Exact complex number with rational real and imaginary parts.
    struct GaussianRational
    {
        Rational re;
        Rational im;

        GaussianRational() = default;
        GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
        GaussianRational(long r) : re(r), im(0) {}

        GaussianRational conj() const { return {re, -im}; }
        Rational norm() const { return re * re + im * im; }
        bool is_zero() const { return re == 0 && im == 0; }

        friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b)
        {
            return {a.re + b.re, a.im + b.im};
        }
        friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b)
        {
            return {a.re - b.re, a.im - b.im};
        }
        friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
        friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b)
        {
            return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
        }
        friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b)
        {
            Rational n = b.norm();
            if (n == 0)
            {
                throw std::domain_error("division by zero Gaussian rational");
            }
            GaussianRational p = a * b.conj();
            return {p.re / n, p.im / n};
        }
        friend bool operator==(const GaussianRational& a, const GaussianRational& b)
        {
            return a.re == b.re && a.im == b.im;
        }
        friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g)
        {
            os << g.re.get_str();
            if (g.im != 0)
            {
                os << (g.im > 0 ? " + " : " - ") << Rational(abs(g.im)).get_str() << "i";
            }
            return os;
        }
    };
}
