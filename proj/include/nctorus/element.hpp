#pragma once

// Finite linear combinations of normal-form words with exact phase
// coefficients, and the structural maps on them: product, adjoint, degree,
// the gauge conditional expectations E and F, gauge rotations and the
// endomorphisms induced by strictly increasing index maps.

#include "nctorus/cyclotomic.hpp"
#include "nctorus/deformation.hpp"
#include "nctorus/increasing_map.hpp"
#include "nctorus/word.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace nctorus
{
    class Element
    {
    public:
        using Terms = std::map<Word, PhaseCoefficient>;

        Element() = default;

        static Element constant(const PhaseCoefficient& c) { return monomial(Word(), c); }
        static Element one() { return constant(PhaseCoefficient(1)); }

        /// c * w for a word already in normal form.
        static Element monomial(Word w, const PhaseCoefficient& c = PhaseCoefficient(1))
        {
            if (!w.is_normal())
            {
                throw std::invalid_argument("Element::monomial expects a normal-form word, got " + w.to_string());
            }
            Element e;
            e.add_term(std::move(w), c);
            return e;
        }

        /// Any word, normal-ordered with its commutation phase.
        static Element from_word(const Word& w, const DeformationParameter& beta)
        {
            auto [phase, nf] = normal_form(w, beta);
            return monomial(std::move(nf), phase);
        }

        static Element generator(std::int64_t index, std::int64_t exponent = 1)
        {
            return monomial(Word::generator(index, exponent));
        }

        const Terms& terms() const { return terms_; }
        bool is_zero() const { return terms_.empty(); }

        Element& operator+=(const Element& o)
        {
            for (const auto& [w, c] : o.terms_)
            {
                add_term(w, c);
            }
            return *this;
        }

        Element& operator-=(const Element& o)
        {
            for (const auto& [w, c] : o.terms_)
            {
                add_term(w, -c);
            }
            return *this;
        }

        friend Element operator+(Element a, const Element& b) { return a += b; }
        friend Element operator-(Element a, const Element& b) { return a -= b; }
        friend Element operator-(const Element& a) { return Element() - a; }

        Element scaled(const PhaseCoefficient& c) const
        {
            Element e;
            for (const auto& [w, coeff] : terms_)
            {
                e.add_term(w, coeff * c);
            }
            return e;
        }

        friend bool operator==(const Element&, const Element&) = default;

        /// Canonical text: terms in word order, "coefficient * word".
        std::string to_string() const
        {
            if (terms_.empty())
            {
                return "0";
            }
            std::ostringstream os;
            bool first = true;
            for (const auto& [w, c] : terms_)
            {
                std::string coeff;
                bool negative = false;
                if (c.part_count() == 1)
                {
                    coeff = c.to_string();
                    if (coeff.front() == '-')
                    {
                        negative = true;
                        coeff.erase(0, 1);
                    }
                }
                else
                {
                    coeff = "(" + c.to_string() + ")";
                }
                if (first)
                {
                    os << (negative ? "-" : "");
                }
                else
                {
                    os << (negative ? " - " : " + ");
                }
                first = false;
                if (w.empty())
                {
                    os << coeff;
                }
                else if (coeff == "1")
                {
                    os << w.to_string();
                }
                else
                {
                    os << coeff << " * " << w.to_string();
                }
            }
            return os.str();
        }

        friend std::ostream& operator<<(std::ostream& os, const Element& e) { return os << e.to_string(); }

    private:
        Terms terms_;

        void add_term(const Word& w, const PhaseCoefficient& c)
        {
            if (c.is_zero())
            {
                return;
            }
            auto it = terms_.find(w);
            if (it == terms_.end())
            {
                terms_.emplace(w, c);
                return;
            }
            it->second += c;
            if (it->second.is_zero())
            {
                terms_.erase(it);
            }
        }
    };

    inline Element multiply(const Element& x, const Element& y, const DeformationParameter& beta)
    {
        Element out;
        for (const auto& [wx, cx] : x.terms())
        {
            for (const auto& [wy, cy] : y.terms())
            {
                auto [phase, nf] = normal_form(wx.concat(wy), beta);
                out += Element::monomial(std::move(nf), cx * cy * phase);
            }
        }
        return out;
    }

    /// (u_l^k)^* = u_l^{-k}: reverse, negate exponents, re-order, conjugate coefficients.
    inline Element adjoint(const Element& x, const DeformationParameter& beta)
    {
        Element out;
        for (const auto& [w, c] : x.terms())
        {
            auto [phase, nf] = normal_form(w.reversed_inverse(), beta);
            out += Element::monomial(std::move(nf), c.conj() * phase);
        }
        return out;
    }

    struct Degree
    {
        /// nullopt when the terms have differing degrees
        std::optional<std::int64_t> value;

        bool is_mixed() const { return !value.has_value(); }
        friend bool operator==(const Degree&, const Degree&) = default;
    };

    /// Common exponent sum of all terms; the zero element has degree 0.
    inline Degree degree(const Element& x)
    {
        std::optional<std::int64_t> d;
        for (const auto& [w, c] : x.terms())
        {
            std::int64_t dw = w.degree();
            if (d && *d != dw)
            {
                return Degree{std::nullopt};
            }
            d = dw;
        }
        return Degree{d.value_or(0)};
    }

    namespace detail
    {
        template <class Keep>
        Element filter_terms(const Element& x, Keep keep)
        {
            Element out;
            for (const auto& [w, c] : x.terms())
            {
                if (keep(w))
                {
                    out += Element::monomial(w, c);
                }
            }
            return out;
        }
    }

    /// Average over the global gauge action: keeps the degree-0 terms.
    inline Element gauge_expectation_E(const Element& x)
    {
        return detail::filter_terms(x, [](const Word& w) { return w.degree() == 0; });
    }

    /// Average over the coordinatewise action of the n0-th roots of unity: keeps
    /// the terms whose every exponent is a multiple of n0 (n0 = 0 keeps only constants).
    inline Element gauge_expectation_F(const Element& x, std::int64_t n0)
    {
        if (n0 < 0)
        {
            throw InputError("gauge_expectation_F: n0 must be non-negative");
        }
        return detail::filter_terms(x, [n0](const Word& w) {
            for (const auto& f : w.factors())
            {
                if (!is_multiple(f.exponent, n0))
                {
                    return false;
                }
            }
            return true;
        });
    }

    /// gamma_z with z = e(angle): a term of degree m picks up e(m * angle).
    inline Element apply_gauge(const Element& x, const Rational& angle)
    {
        Element out;
        for (const auto& [w, c] : x.terms())
        {
            Rational turn = angle * Rational(Integer(static_cast<long>(w.degree())));
            out += Element::monomial(w, c * PhaseCoefficient::term(Rational(1), turn));
        }
        return out;
    }

    /// gamma_z with z_l = e(angles[l]) on each coordinate (0 where unspecified).
    inline Element apply_coordinate_gauge(const Element& x, const std::map<std::int64_t, Rational>& angles)
    {
        Element out;
        for (const auto& [w, c] : x.terms())
        {
            Rational turn(0);
            for (const auto& f : w.factors())
            {
                auto it = angles.find(f.index);
                if (it != angles.end())
                {
                    turn += it->second * Rational(Integer(static_cast<long>(f.exponent)));
                }
            }
            out += Element::monomial(w, c * PhaseCoefficient::term(Rational(1), turn));
        }
        return out;
    }

    namespace detail
    {
        inline std::pair<std::int64_t, std::int64_t> index_window(const Element& x)
        {
            bool any = false;
            std::int64_t lo = 0, hi = 0;
            for (const auto& [w, c] : x.terms())
            {
                for (const auto& f : w.factors())
                {
                    lo = any ? std::min(lo, f.index) : f.index;
                    hi = any ? std::max(hi, f.index) : f.index;
                    any = true;
                }
            }
            return {lo, hi};
        }
    }

    /// alpha_h(u_l) = u_{h(l)}. Requires h strictly increasing on the support of x.
    inline Element apply_increasing_map(const Element& x, const IncreasingMap& h, const DeformationParameter& beta)
    {
        auto [lo, hi] = detail::index_window(x);
        if (!h.is_strictly_increasing_on(lo, hi))
        {
            throw InputError("map " + h.to_string() + " is not strictly increasing on the support [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
        }
        Element out;
        for (const auto& [w, c] : x.terms())
        {
            std::vector<Factor> f(w.factors().begin(), w.factors().end());
            for (auto& factor : f)
            {
                factor.index = h(factor.index);
            }
            auto [phase, nf] = normal_form(Word(std::move(f)), beta);
            out += Element::monomial(std::move(nf), c * phase);
        }
        return out;
    }

    /// tau^k(x): every index moves by k.
    inline Element shift(const Element& x, std::int64_t k)
    {
        Element out;
        for (const auto& [w, c] : x.terms())
        {
            out += Element::monomial(w.shifted(k), c);
        }
        return out;
    }
}
