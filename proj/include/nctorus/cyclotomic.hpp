#pragma once

// Exact scalars of the form  sum_j r_j * e(q_j) * E(m_j)
//   e(q) = exp(2 pi i q), q rational;  E(m) = exp(2 pi i m beta).
//
// Cyclotomic holds one E-slice: an element of the cyclotomic field Q(zeta_L),
// stored in the power basis {zeta_L^j : 0 <= j < phi(L)} where L is the lcm of
// the angle denominators. The representation is reduced modulo Phi_L, so a
// value is zero iff its term map is empty. Two different L may represent the
// same number, hence equality is decided on the difference.
//
// PhaseCoefficient is a Laurent polynomial in the symbol E with Cyclotomic
// coefficients. For rational beta, E is folded into e(.) when the phase is
// created, so only the E^0 slice is ever populated.

#include "nctorus/numbers.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nctorus
{
    namespace detail
    {
        using Poly = std::vector<Integer>;  // low degree first

        inline Poly poly_divide_exact(Poly num, const Poly& den)
        {
            // den monic
            const std::size_t dn = den.size() - 1;
            Poly quot(num.size() - dn, Integer(0));
            for (std::size_t i = num.size(); i-- > dn;)
            {
                Integer c = num[i];
                if (c == 0)
                {
                    continue;
                }
                quot[i - dn] = c;
                for (std::size_t k = 0; k <= dn; ++k)
                {
                    num[i - dn + k] -= c * den[k];
                }
            }
            return quot;
        }

        inline Poly compute_cyclotomic_polynomial(unsigned long n, std::map<unsigned long, Poly>& cache);

        /// Phi_n with integer coefficients; memoized behind a mutex.
        inline const Poly& cyclotomic_polynomial(unsigned long n)
        {
            static std::mutex mutex;
            static std::map<unsigned long, Poly> cache;
            std::lock_guard lock(mutex);
            auto it = cache.find(n);
            if (it != cache.end())
            {
                return it->second;
            }
            Poly p = compute_cyclotomic_polynomial(n, cache);
            return cache.emplace(n, std::move(p)).first->second;
        }

        inline Poly compute_cyclotomic_polynomial(unsigned long n, std::map<unsigned long, Poly>& cache)
        {
            Poly p(n + 1, Integer(0));
            p[0] = -1;
            p[n] = 1;
            for (unsigned long d = 1; d < n; ++d)
            {
                if (n % d != 0)
                {
                    continue;
                }
                auto it = cache.find(d);
                if (it == cache.end())
                {
                    it = cache.emplace(d, compute_cyclotomic_polynomial(d, cache)).first;
                }
                p = poly_divide_exact(std::move(p), it->second);
            }
            return p;
        }

        inline unsigned long angle_modulus(const Integer& den)
        {
            // Beyond this the dense reduction is impractical for a desk-scale tool.
            constexpr unsigned long limit = 1ul << 22;
            if (!den.fits_ulong_p() || den.get_ui() > limit)
            {
                throw std::overflow_error("phase angle denominator " + den.get_str() + " is too large");
            }
            return den.get_ui();
        }

        class Mpfr
        {
        public:
            explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(value_, prec); }
            ~Mpfr() { mpfr_clear(value_); }
            Mpfr(const Mpfr&) = delete;
            Mpfr& operator=(const Mpfr&) = delete;
            mpfr_ptr get() { return value_; }

        private:
            mpfr_t value_;
        };
    }

    class Cyclotomic
    {
    public:
        Cyclotomic() = default;

        static Cyclotomic rational(const Rational& r)
        {
            Cyclotomic c;
            if (r != 0)
            {
                c.terms_.emplace(Rational(0), r);
            }
            return c;
        }

        /// r * e(angle)
        static Cyclotomic root(const Rational& angle, const Rational& r = Rational(1))
        {
            Cyclotomic c;
            if (r != 0)
            {
                c.terms_.emplace(mod_one(angle), r);
                c.normalize();
            }
            return c;
        }

        static Cyclotomic gaussian(const GaussianRational& g)
        {
            Cyclotomic c = rational(g.re);
            if (g.im != 0)
            {
                c.terms_.emplace(Rational(1, 4), g.im);
            }
            return c;
        }

        /// angle in [0,1) -> rational coefficient
        const std::map<Rational, Rational>& terms() const { return terms_; }
        bool is_zero() const { return terms_.empty(); }

        Integer conductor_bound() const
        {
            Integer l = 1;
            for (const auto& [angle, coeff] : terms_)
            {
                l = lcm(l, angle.get_den());
            }
            return l;
        }

        Cyclotomic conj() const
        {
            Cyclotomic c;
            for (const auto& [angle, coeff] : terms_)
            {
                c.terms_.emplace(mod_one(-angle), coeff);
            }
            c.normalize();
            return c;
        }

        Cyclotomic& operator+=(const Cyclotomic& o)
        {
            for (const auto& [angle, coeff] : o.terms_)
            {
                terms_[angle] += coeff;
            }
            normalize();
            return *this;
        }

        Cyclotomic& operator-=(const Cyclotomic& o)
        {
            for (const auto& [angle, coeff] : o.terms_)
            {
                terms_[angle] -= coeff;
            }
            normalize();
            return *this;
        }

        friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
        friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }

        friend Cyclotomic operator-(const Cyclotomic& a)
        {
            Cyclotomic c = a;
            for (auto& [angle, coeff] : c.terms_)
            {
                coeff = -coeff;
            }
            return c;
        }

        friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b)
        {
            Cyclotomic c;
            if (a.is_zero() || b.is_zero())
            {
                return c;
            }
            for (const auto& [qa, ra] : a.terms_)
            {
                for (const auto& [qb, rb] : b.terms_)
                {
                    Rational q = qa + qb;
                    if (q >= 1)
                    {
                        q -= 1;
                    }
                    c.terms_[q] += ra * rb;
                }
            }
            c.normalize();
            return c;
        }

        Cyclotomic scaled(const Rational& r) const
        {
            Cyclotomic c;
            if (r == 0)
            {
                return c;
            }
            c.terms_ = terms_;
            for (auto& [angle, coeff] : c.terms_)
            {
                coeff *= r;
            }
            return c;
        }

        friend bool operator==(const Cyclotomic& a, const Cyclotomic& b)
        {
            if (a.terms_ == b.terms_)
            {
                return true;
            }
            return (a - b).is_zero();
        }

        std::optional<Rational> as_rational() const
        {
            if (terms_.empty())
            {
                return Rational(0);
            }
            if (terms_.size() == 1 && terms_.begin()->first == 0)
            {
                return terms_.begin()->second;
            }
            return rational_if_trivial();
        }

        std::optional<GaussianRational> as_gaussian() const
        {
            // Sum of the value and its conjugate isolates twice the real part.
            Cyclotomic twice_re = *this + conj();
            Cyclotomic twice_im_i = *this - conj();
            auto re = twice_re.rational_if_trivial();
            if (!re)
            {
                return std::nullopt;
            }
            // (z - conj z) = 2 i Im z ; multiply by -i
            Cyclotomic twice_im = twice_im_i * root(Rational(3, 4));
            auto im = twice_im.rational_if_trivial();
            if (!im)
            {
                return std::nullopt;
            }
            return GaussianRational(*re / 2, *im / 2);
        }

        std::complex<double> to_complex() const
        {
            std::complex<double> z = 0;
            for (const auto& [angle, coeff] : terms_)
            {
                double t = 2.0 * std::numbers::pi * angle.get_d();
                z += coeff.get_d() * std::complex<double>(std::cos(t), std::sin(t));
            }
            return z;
        }

        bool is_real() const { return *this == conj(); }

        /// Exact sign of a real cyclotomic number: zero is decided algebraically,
        /// nonzero values by MPFR evaluation with a rigorous error margin at
        /// increasing precision.
        int sign() const
        {
            if (is_zero())
            {
                return 0;
            }
            if (!is_real())
            {
                throw std::domain_error("sign of a non-real cyclotomic number");
            }
            if (auto r = as_rational_fast())
            {
                return sgn(*r);
            }
            for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2)
            {
                detail::Mpfr sum(prec), term(prec), pi(prec), coef(prec), bound(prec);
                mpfr_set_ui(sum.get(), 0, MPFR_RNDN);
                mpfr_set_ui(bound.get(), 0, MPFR_RNDN);
                mpfr_const_pi(pi.get(), MPFR_RNDN);
                for (const auto& [angle, c] : terms_)
                {
                    mpfr_mul_q(term.get(), pi.get(), angle.get_mpq_t(), MPFR_RNDN);
                    mpfr_mul_ui(term.get(), term.get(), 2, MPFR_RNDN);
                    mpfr_cos(term.get(), term.get(), MPFR_RNDN);
                    mpfr_set_q(coef.get(), c.get_mpq_t(), MPFR_RNDN);
                    mpfr_mul(term.get(), term.get(), coef.get(), MPFR_RNDN);
                    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
                    mpfr_abs(coef.get(), coef.get(), MPFR_RNDU);
                    mpfr_add_ui(coef.get(), coef.get(), 1, MPFR_RNDU);
                    mpfr_add(bound.get(), bound.get(), coef.get(), MPFR_RNDU);
                }
                // each term carries a few ulps of relative error; 2^(16 - prec) per unit is generous
                mpfr_mul_2si(bound.get(), bound.get(), 16 - prec, MPFR_RNDU);
                detail::Mpfr magnitude(prec);
                mpfr_abs(magnitude.get(), sum.get(), MPFR_RNDN);
                if (mpfr_cmp(magnitude.get(), bound.get()) > 0)
                {
                    return mpfr_sgn(sum.get()) > 0 ? 1 : -1;
                }
            }
            throw std::runtime_error("sign determination did not converge");
        }

        /// Multiplicative inverse in Q(zeta_L), by solving the linear system of
        /// multiplication-by-this in the power basis.
        Cyclotomic inverse() const
        {
            if (is_zero())
            {
                throw std::domain_error("inverse of zero");
            }
            if (terms_.size() == 1)
            {
                const auto& [angle, coeff] = *terms_.begin();
                return root(-angle, 1 / coeff);
            }
            const unsigned long L = detail::angle_modulus(conductor_bound());
            const auto& phi = detail::cyclotomic_polynomial(L);
            const std::size_t deg = phi.size() - 1;
            // column k = coefficients of this * zeta^k
            std::vector<std::vector<Rational>> m(deg, std::vector<Rational>(deg + 1, Rational(0)));
            for (std::size_t k = 0; k < deg; ++k)
            {
                Cyclotomic col = *this * root(make_rational(static_cast<long>(k), static_cast<long>(L)));
                auto dense = col.dense(L);
                for (std::size_t row = 0; row < deg; ++row)
                {
                    m[row][k] = dense[row];
                }
            }
            m[0][deg] = 1;
            // Gauss-Jordan
            for (std::size_t col = 0; col < deg; ++col)
            {
                std::size_t pivot = col;
                while (pivot < deg && m[pivot][col] == 0)
                {
                    ++pivot;
                }
                if (pivot == deg)
                {
                    throw std::logic_error("singular multiplication matrix for a nonzero cyclotomic number");
                }
                std::swap(m[pivot], m[col]);
                Rational inv = 1 / m[col][col];
                for (std::size_t k = col; k <= deg; ++k)
                {
                    m[col][k] *= inv;
                }
                for (std::size_t row = 0; row < deg; ++row)
                {
                    if (row == col || m[row][col] == 0)
                    {
                        continue;
                    }
                    Rational f = m[row][col];
                    for (std::size_t k = col; k <= deg; ++k)
                    {
                        m[row][k] -= f * m[col][k];
                    }
                }
            }
            Cyclotomic result;
            for (std::size_t j = 0; j < deg; ++j)
            {
                if (m[j][deg] != 0)
                {
                    result.terms_.emplace(make_rational(static_cast<long>(j), static_cast<long>(L)), m[j][deg]);
                }
            }
            result.normalize();
            return result;
        }

    private:
        std::map<Rational, Rational> terms_;

        static int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

        std::optional<Rational> as_rational_fast() const
        {
            if (terms_.size() == 1 && terms_.begin()->first == 0)
            {
                return terms_.begin()->second;
            }
            return std::nullopt;
        }

        std::optional<Rational> rational_if_trivial() const
        {
            if (terms_.empty())
            {
                return Rational(0);
            }
            if (terms_.size() == 1 && terms_.begin()->first == 0)
            {
                return terms_.begin()->second;
            }
            // a rational can still be written in a non-trivial basis of a larger field
            Rational guess = real_part_rational_guess();
            if ((*this - rational(guess)).is_zero())
            {
                return guess;
            }
            return std::nullopt;
        }

        /// Normalized field trace Tr(z) / [Q(zeta_L):Q]; equals z whenever z is rational.
        Rational real_part_rational_guess() const
        {
            Rational sum(0);
            for (const auto& [angle, coeff] : terms_)
            {
                sum += coeff * ramanujan_ratio(angle);
            }
            return sum;
        }

        /// Tr_{Q(zeta_d)/Q}(zeta_d^j) / phi(d) for angle = j/d in lowest terms, = mu(d)/phi(d).
        static Rational ramanujan_ratio(const Rational& angle)
        {
            unsigned long d = detail::angle_modulus(angle.get_den());
            long mu = 1;
            unsigned long phi = 1;
            unsigned long rest = d;
            for (unsigned long p = 2; p * p <= rest; ++p)
            {
                if (rest % p != 0)
                {
                    continue;
                }
                unsigned e = 0;
                unsigned long pk = 1;
                while (rest % p == 0)
                {
                    rest /= p;
                    pk *= p;
                    ++e;
                }
                phi *= pk / p * (p - 1);
                mu = e > 1 ? 0 : -mu;
            }
            if (rest > 1)
            {
                phi *= rest - 1;
                mu = -mu;
            }
            return make_rational(mu, static_cast<long>(phi));
        }

        std::vector<Rational> dense(unsigned long L) const
        {
            std::vector<Rational> v(L, Rational(0));
            for (const auto& [angle, coeff] : terms_)
            {
                Rational pos = angle * Rational(Integer(L));
                v[pos.get_num().get_ui()] += coeff;
            }
            const auto& phi = detail::cyclotomic_polynomial(L);
            const std::size_t deg = phi.size() - 1;
            for (std::size_t d = L; d-- > deg;)
            {
                if (v[d] == 0)
                {
                    continue;
                }
                Rational c = v[d];
                for (std::size_t k = 0; k <= deg; ++k)
                {
                    v[d - deg + k] -= c * phi[k];
                }
            }
            v.resize(deg);
            return v;
        }

        void normalize()
        {
            std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
            if (terms_.empty())
            {
                return;
            }
            if (terms_.size() == 1 && terms_.begin()->first == 0)
            {
                return;
            }
            const unsigned long L = detail::angle_modulus(conductor_bound());
            auto v = dense(L);
            terms_.clear();
            for (std::size_t j = 0; j < v.size(); ++j)
            {
                if (v[j] != 0)
                {
                    terms_.emplace(make_rational(static_cast<long>(j), static_cast<long>(L)), std::move(v[j]));
                }
            }
        }
    };

    class PhaseCoefficient
    {
    public:
        PhaseCoefficient() = default;
        PhaseCoefficient(long r) : PhaseCoefficient(Rational(r)) {}
        PhaseCoefficient(const Rational& r) : PhaseCoefficient(Cyclotomic::rational(r)) {}
        PhaseCoefficient(Cyclotomic c)
        {
            if (!c.is_zero())
            {
                slices_.emplace(Integer(0), std::move(c));
            }
        }

        /// r * e(q) * E(m)
        static PhaseCoefficient term(const Rational& r, const Rational& q = Rational(0), const Integer& m = Integer(0))
        {
            PhaseCoefficient p;
            Cyclotomic c = Cyclotomic::root(q, r);
            if (!c.is_zero())
            {
                p.slices_.emplace(m, std::move(c));
            }
            return p;
        }

        static PhaseCoefficient gaussian(const GaussianRational& g) { return PhaseCoefficient(Cyclotomic::gaussian(g)); }

        /// E exponent -> cyclotomic coefficient
        const std::map<Integer, Cyclotomic>& slices() const { return slices_; }
        bool is_zero() const { return slices_.empty(); }
        bool is_cyclotomic() const { return slices_.empty() || (slices_.size() == 1 && slices_.begin()->first == 0); }

        Cyclotomic cyclotomic_part() const
        {
            if (!is_cyclotomic())
            {
                throw std::domain_error("coefficient depends on the symbolic phase E(m)");
            }
            return slices_.empty() ? Cyclotomic() : slices_.begin()->second;
        }

        PhaseCoefficient conj() const
        {
            PhaseCoefficient p;
            for (const auto& [m, c] : slices_)
            {
                p.slices_.emplace(-m, c.conj());
            }
            return p;
        }

        PhaseCoefficient& operator+=(const PhaseCoefficient& o)
        {
            for (const auto& [m, c] : o.slices_)
            {
                auto it = slices_.find(m);
                if (it == slices_.end())
                {
                    slices_.emplace(m, c);
                }
                else
                {
                    it->second += c;
                    if (it->second.is_zero())
                    {
                        slices_.erase(it);
                    }
                }
            }
            return *this;
        }

        PhaseCoefficient& operator-=(const PhaseCoefficient& o) { return *this += -o; }

        friend PhaseCoefficient operator+(PhaseCoefficient a, const PhaseCoefficient& b) { return a += b; }
        friend PhaseCoefficient operator-(PhaseCoefficient a, const PhaseCoefficient& b) { return a -= b; }

        friend PhaseCoefficient operator-(const PhaseCoefficient& a)
        {
            PhaseCoefficient p = a;
            for (auto& [m, c] : p.slices_)
            {
                c = -c;
            }
            return p;
        }

        friend PhaseCoefficient operator*(const PhaseCoefficient& a, const PhaseCoefficient& b)
        {
            PhaseCoefficient p;
            for (const auto& [ma, ca] : a.slices_)
            {
                for (const auto& [mb, cb] : b.slices_)
                {
                    p += PhaseCoefficient(ma + mb, ca * cb);
                }
            }
            return p;
        }

        PhaseCoefficient& operator*=(const PhaseCoefficient& o) { return *this = *this * o; }

        PhaseCoefficient scaled(const Rational& r) const
        {
            PhaseCoefficient p;
            if (r == 0)
            {
                return p;
            }
            for (const auto& [m, c] : slices_)
            {
                p.slices_.emplace(m, c.scaled(r));
            }
            return p;
        }

        friend bool operator==(const PhaseCoefficient& a, const PhaseCoefficient& b) { return (a - b).is_zero(); }

        /// Inverse exists in closed form only for a single E-slice.
        PhaseCoefficient inverse() const
        {
            if (slices_.size() != 1)
            {
                throw std::domain_error("inverse of a non-monomial symbolic phase sum");
            }
            const auto& [m, c] = *slices_.begin();
            return PhaseCoefficient(-m, c.inverse());
        }

        friend PhaseCoefficient operator/(const PhaseCoefficient& a, const PhaseCoefficient& b) { return a * b.inverse(); }

        bool is_real() const { return *this == conj(); }

        /// Sign of a real value. Requires no dependence on the symbolic phase.
        int sign() const
        {
            if (is_zero())
            {
                return 0;
            }
            return cyclotomic_part().sign();
        }

        std::optional<Rational> as_rational() const
        {
            if (!is_cyclotomic())
            {
                return std::nullopt;
            }
            return cyclotomic_part().as_rational();
        }

        std::optional<GaussianRational> as_gaussian() const
        {
            if (!is_cyclotomic())
            {
                return std::nullopt;
            }
            return cyclotomic_part().as_gaussian();
        }

        /// Numeric value; beta is needed only when E-slices are present.
        std::complex<double> to_complex(double beta = 0.0) const
        {
            std::complex<double> z = 0;
            for (const auto& [m, c] : slices_)
            {
                double t = 2.0 * std::numbers::pi * std::fmod(m.get_d() * beta, 1.0);
                z += c.to_complex() * std::complex<double>(std::cos(t), std::sin(t));
            }
            return z;
        }

        /// Canonical text: sum of "r * e(q) * E(m)" parts, e.g. "1/2 - e(1/3) * E(2)".
        std::string to_string() const
        {
            if (is_zero())
            {
                return "0";
            }
            std::ostringstream os;
            bool first = true;
            for (const auto& [m, c] : slices_)
            {
                for (const auto& [q, r] : c.terms())
                {
                    bool negative = r < 0;
                    Rational mag = negative ? Rational(-r) : r;
                    if (first)
                    {
                        if (negative)
                        {
                            os << "-";
                        }
                    }
                    else
                    {
                        os << (negative ? " - " : " + ");
                    }
                    first = false;
                    bool wrote = false;
                    if (mag != 1 || (q == 0 && m == 0))
                    {
                        os << mag.get_str();
                        wrote = true;
                    }
                    if (q != 0)
                    {
                        os << (wrote ? " * " : "") << "e(" << q.get_str() << ")";
                        wrote = true;
                    }
                    if (m != 0)
                    {
                        os << (wrote ? " * " : "") << "E(" << m.get_str() << ")";
                    }
                }
            }
            return os.str();
        }

        /// Number of printed parts (used to decide on parentheses).
        std::size_t part_count() const
        {
            std::size_t n = 0;
            for (const auto& [m, c] : slices_)
            {
                n += c.terms().size();
            }
            return n;
        }

        friend std::ostream& operator<<(std::ostream& os, const PhaseCoefficient& p) { return os << p.to_string(); }

    private:
        std::map<Integer, Cyclotomic> slices_;

        PhaseCoefficient(const Integer& m, Cyclotomic c)
        {
            if (!c.is_zero())
            {
                slices_.emplace(m, std::move(c));
            }
        }
    };
}
