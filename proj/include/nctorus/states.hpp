#pragma once

// Distinguished states on the infinite noncommutative torus and their exact
// (or floating) evaluation on Elements.
//
//   trace            tr(w) = [w is the empty word]
//   product(omega)   x omega(u_{j1}^{a1} ... u_{jm}^{am}) = c_{a1} ... c_{am}   (normal-form word)
//   block(n, base)   blocks B_r = [r(2n+1) - n, r(2n+1) + n]; a block whose total
//                    degree is not a multiple of n0 sends the word to 0, otherwise
//                    value = prod_r base(block word translated back to B_0)
//   cesaro(n, base)  (1/(2n+1)) sum_{k=-n..n} block(n, base)(tau^k w)
//   mixture          sum_i w_i part_i
//
// State values on a normal-form word carry no commutation phase; phases live in
// the Element coefficients.

#include "nctorus/cyclotomic.hpp"
#include "nctorus/deformation.hpp"
#include "nctorus/element.hpp"
#include "nctorus/moments.hpp"

#include <complex>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nctorus
{
    enum class Mode
    {
        exact,
        floating,
    };

    template <class M>
    class BasicStateSpec
    {
    public:
        using Ptr = std::shared_ptr<const BasicStateSpec>;

        struct Trace
        {
        };
        struct Product
        {
            MomentSequence<M> omega;
        };
        struct BlockProduct
        {
            std::int64_t n;
            Ptr base;
        };
        struct Cesaro
        {
            std::int64_t n;
            Ptr base;
        };
        struct Mixture
        {
            std::vector<std::pair<Rational, Ptr>> parts;
        };
        using Kind = std::variant<Trace, Product, BlockProduct, Cesaro, Mixture>;

        static Ptr trace() { return make(Trace{}); }
        static Ptr product(MomentSequence<M> omega) { return make(Product{std::move(omega)}); }

        static Ptr block(std::int64_t n, Ptr base)
        {
            check_block_argument(n, base, "block");
            return make(BlockProduct{n, std::move(base)});
        }

        static Ptr cesaro(std::int64_t n, Ptr base)
        {
            check_block_argument(n, base, "cesaro");
            return make(Cesaro{n, std::move(base)});
        }

        static Ptr mixture(std::vector<std::pair<Rational, Ptr>> parts)
        {
            if (parts.empty())
            {
                throw InputError("mixture needs at least one part");
            }
            Rational total(0);
            for (const auto& [w, part] : parts)
            {
                if (w <= 0)
                {
                    throw InputError("mixture weight " + w.get_str() + " is not positive");
                }
                if (!part)
                {
                    throw InputError("mixture part is null");
                }
                total += w;
            }
            if (total != 1)
            {
                throw InputError("mixture weights sum to " + total.get_str() + ", not 1");
            }
            return make(Mixture{std::move(parts)});
        }

        const Kind& kind() const { return kind_; }

        template <class T>
        bool is() const
        {
            return std::holds_alternative<T>(kind_);
        }

        /// Trace, Product, Cesaro, and mixtures of those: the shift-invariant specs.
        bool is_stationary_evaluable() const
        {
            if (is<Trace>() || is<Product>() || is<Cesaro>())
            {
                return true;
            }
            if (const auto* m = std::get_if<Mixture>(&kind_))
            {
                for (const auto& [w, part] : m->parts)
                {
                    if (!part->is_stationary_evaluable())
                    {
                        return false;
                    }
                }
                return true;
            }
            return false;
        }

        std::string kind_name() const
        {
            static constexpr const char* names[] = {"trace", "product", "block", "cesaro", "mixture"};
            return names[kind_.index()];
        }

    private:
        Kind kind_;

        explicit BasicStateSpec(Kind k) : kind_(std::move(k)) {}

        static Ptr make(Kind k) { return Ptr(new BasicStateSpec(std::move(k))); }

        static void check_block_argument(std::int64_t n, const Ptr& base, const char* what)
        {
            if (n < 0)
            {
                throw InputError(std::string(what) + ": n must be non-negative");
            }
            if (!base)
            {
                throw InputError(std::string(what) + ": missing base state");
            }
            if (!base->is_stationary_evaluable())
            {
                throw InputError(std::string(what) + ": base must be trace, product, cesaro or a mixture of those, got " +
                                 base->kind_name());
            }
        }
    };

    using StateSpec = BasicStateSpec<GaussianRational>;
    using FloatStateSpec = BasicStateSpec<std::complex<double>>;
    using StatePtr = StateSpec::Ptr;
    using FloatStatePtr = FloatStateSpec::Ptr;

    inline FloatStatePtr to_float(const StatePtr& spec)
    {
        return std::visit(
            [](const auto& k) -> FloatStatePtr {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, StateSpec::Trace>)
                {
                    return FloatStateSpec::trace();
                }
                else if constexpr (std::is_same_v<T, StateSpec::Product>)
                {
                    return FloatStateSpec::product(to_float(k.omega));
                }
                else if constexpr (std::is_same_v<T, StateSpec::BlockProduct>)
                {
                    return FloatStateSpec::block(k.n, to_float(k.base));
                }
                else if constexpr (std::is_same_v<T, StateSpec::Cesaro>)
                {
                    return FloatStateSpec::cesaro(k.n, to_float(k.base));
                }
                else
                {
                    std::vector<std::pair<Rational, FloatStatePtr>> parts;
                    for (const auto& [w, p] : k.parts)
                    {
                        parts.emplace_back(w, to_float(p));
                    }
                    return FloatStateSpec::mixture(std::move(parts));
                }
            },
            spec->kind());
    }

    template <class S>
    struct scalar_ops;

    template <>
    struct scalar_ops<PhaseCoefficient>
    {
        using moment_type = GaussianRational;
        static constexpr Mode mode = Mode::exact;
        static PhaseCoefficient zero() { return PhaseCoefficient(); }
        static PhaseCoefficient one() { return PhaseCoefficient(1); }
        static PhaseCoefficient from_rational(const Rational& r) { return PhaseCoefficient(r); }
        static PhaseCoefficient from_coefficient(const PhaseCoefficient& c, const DeformationParameter&) { return c; }
        static PhaseCoefficient from_moment(const GaussianRational& g) { return PhaseCoefficient::gaussian(g); }
        static PhaseCoefficient conj(const PhaseCoefficient& a) { return a.conj(); }
        static bool is_zero(const PhaseCoefficient& a) { return a.is_zero(); }
        static bool equal(const PhaseCoefficient& a, const PhaseCoefficient& b) { return a == b; }
        static std::string to_string(const PhaseCoefficient& a) { return a.to_string(); }
        static std::complex<double> to_complex(const PhaseCoefficient& a, const DeformationParameter& beta)
        {
            return a.to_complex(beta.numeric_value());
        }
    };

    template <>
    struct scalar_ops<std::complex<double>>
    {
        using moment_type = std::complex<double>;
        static constexpr Mode mode = Mode::floating;
        static constexpr double tolerance = 1e-9;
        static std::complex<double> zero() { return 0.0; }
        static std::complex<double> one() { return 1.0; }
        static std::complex<double> from_rational(const Rational& r) { return r.get_d(); }
        static std::complex<double> from_coefficient(const PhaseCoefficient& c, const DeformationParameter& beta)
        {
            return c.to_complex(beta.numeric_value());
        }
        static std::complex<double> from_moment(const std::complex<double>& c) { return c; }
        static std::complex<double> conj(const std::complex<double>& a) { return std::conj(a); }
        static bool is_zero(const std::complex<double>& a) { return a == 0.0; }
        static bool equal(const std::complex<double>& a, const std::complex<double>& b) { return std::abs(a - b) <= tolerance; }
        static std::string to_string(const std::complex<double>& a)
        {
            std::ostringstream os;
            os.precision(12);
            os << a.real() << (a.imag() < 0 ? " - " : " + ") << std::abs(a.imag()) << "i";
            return os.str();
        }
        static std::complex<double> to_complex(const std::complex<double>& a, const DeformationParameter&) { return a; }
    };

    /// Evaluates a state spec on Elements. Scalar = PhaseCoefficient (exact) or
    /// std::complex<double> (floating). Construction validates admissibility of
    /// every product component against the ambient n0: rejected in exact mode,
    /// reported as a warning in floating mode.
    template <class Scalar>
    class StateEvaluator
    {
    public:
        using ops = scalar_ops<Scalar>;
        using Moment = typename ops::moment_type;
        using Spec = BasicStateSpec<Moment>;

        StateEvaluator(typename Spec::Ptr spec, DeformationParameter beta)
            : spec_(std::move(spec)), beta_(std::move(beta)), n0_(isotropy(beta_).n0_or_zero())
        {
            if (!spec_)
            {
                throw InputError("null state spec");
            }
            validate(*spec_);
        }

        const DeformationParameter& beta() const { return beta_; }
        std::int64_t n0() const { return n0_; }
        const typename Spec::Ptr& spec() const { return spec_; }
        const std::vector<std::string>& warnings() const { return warnings_; }

        Scalar operator()(const Element& x) const
        {
            Scalar total = ops::zero();
            for (const auto& [w, c] : x.terms())
            {
                Scalar v = on_word(w);
                if (!ops::is_zero(v))
                {
                    total += ops::from_coefficient(c, beta_) * v;
                }
            }
            return total;
        }

        /// Value on a normal-form word.
        Scalar on_word(const Word& w) const { return eval(*spec_, w); }

    private:
        typename Spec::Ptr spec_;
        DeformationParameter beta_;
        std::int64_t n0_;
        std::vector<std::string> warnings_;

        void validate(const Spec& s)
        {
            std::visit(
                [this](const auto& k) {
                    using T = std::decay_t<decltype(k)>;
                    if constexpr (std::is_same_v<T, typename Spec::Product>)
                    {
                        if (!k.omega.is_admissible(n0_))
                        {
                            std::string msg = beta_.is_rational()
                                                  ? "moment sequence is not admissible: c_l must vanish unless " + std::to_string(n0_) +
                                                        " divides l"
                                                  : "for irrational beta only the Lebesgue moment sequence is admissible";
                            if constexpr (ops::mode == Mode::exact)
                            {
                                throw InputError(msg);
                            }
                            else
                            {
                                warnings_.push_back(msg + " (not a state; evaluated as a functional)");
                            }
                        }
                    }
                    else if constexpr (std::is_same_v<T, typename Spec::BlockProduct> || std::is_same_v<T, typename Spec::Cesaro>)
                    {
                        validate(*k.base);
                    }
                    else if constexpr (std::is_same_v<T, typename Spec::Mixture>)
                    {
                        for (const auto& [w, p] : k.parts)
                        {
                            validate(*p);
                        }
                    }
                },
                s.kind());
        }

        Scalar eval(const Spec& s, const Word& w) const
        {
            return std::visit(
                [&](const auto& k) -> Scalar {
                    using T = std::decay_t<decltype(k)>;
                    if constexpr (std::is_same_v<T, typename Spec::Trace>)
                    {
                        return w.empty() ? ops::one() : ops::zero();
                    }
                    else if constexpr (std::is_same_v<T, typename Spec::Product>)
                    {
                        return eval_product_word(k.omega, w);
                    }
                    else if constexpr (std::is_same_v<T, typename Spec::BlockProduct>)
                    {
                        return eval_block_word(k.n, *k.base, w);
                    }
                    else if constexpr (std::is_same_v<T, typename Spec::Cesaro>)
                    {
                        Scalar sum = ops::zero();
                        for (std::int64_t j = -k.n; j <= k.n; ++j)
                        {
                            sum += eval_block_word(k.n, *k.base, w.shifted(j));
                        }
                        return sum * ops::from_rational(make_rational(Integer(1), Integer(static_cast<long>(2 * k.n + 1))));
                    }
                    else
                    {
                        Scalar sum = ops::zero();
                        for (const auto& [weight, part] : k.parts)
                        {
                            Scalar v = eval(*part, w);
                            if (!ops::is_zero(v))
                            {
                                sum += ops::from_rational(weight) * v;
                            }
                        }
                        return sum;
                    }
                },
                s.kind());
        }

        Scalar eval_product_word(const MomentSequence<Moment>& omega, const Word& w) const
        {
            Scalar v = ops::one();
            for (const auto& f : w.factors())
            {
                Moment c = omega.at(f.exponent);
                if (moment_traits<Moment>::is_zero(c))
                {
                    return ops::zero();
                }
                v = v * ops::from_moment(c);
            }
            return v;
        }

        static std::int64_t block_of(std::int64_t index, std::int64_t n)
        {
            const std::int64_t width = 2 * n + 1;
            std::int64_t shifted = checked_add(index, n);
            std::int64_t q = shifted / width;
            if (shifted % width != 0 && shifted < 0)
            {
                --q;
            }
            return q;
        }

        Scalar eval_block_word(std::int64_t n, const Spec& base, const Word& w) const
        {
            const std::int64_t width = 2 * n + 1;
            Scalar v = ops::one();
            auto factors = w.factors();
            std::size_t start = 0;
            while (start < factors.size())
            {
                std::int64_t r = block_of(factors[start].index, n);
                std::size_t end = start;
                std::int64_t block_degree = 0;
                while (end < factors.size() && block_of(factors[end].index, n) == r)
                {
                    block_degree = checked_add(block_degree, factors[end].exponent);
                    ++end;
                }
                if (!is_multiple(block_degree, n0_))
                {
                    return ops::zero();
                }
                std::vector<Factor> local(factors.begin() + static_cast<std::ptrdiff_t>(start),
                                          factors.begin() + static_cast<std::ptrdiff_t>(end));
                Word block_word = Word(std::move(local)).shifted(-checked_mul(r, width));
                Scalar b = eval(base, block_word);
                if (ops::is_zero(b))
                {
                    return ops::zero();
                }
                v = v * b;
                start = end;
            }
            return v;
        }
    };

    using ExactEvaluator = StateEvaluator<PhaseCoefficient>;
    using FloatEvaluator = StateEvaluator<std::complex<double>>;

    inline PhaseCoefficient eval_trace(const Element& x, const DeformationParameter& beta)
    {
        return ExactEvaluator(StateSpec::trace(), beta)(x);
    }

    inline PhaseCoefficient eval_product(const Element& x, const MomentSequence<GaussianRational>& omega, const DeformationParameter& beta)
    {
        return ExactEvaluator(StateSpec::product(omega), beta)(x);
    }

    inline PhaseCoefficient eval_block_product(const Element& x, std::int64_t n, const StatePtr& base, const DeformationParameter& beta)
    {
        return ExactEvaluator(StateSpec::block(n, base), beta)(x);
    }

    inline PhaseCoefficient eval_cesaro(const Element& x, std::int64_t n, const StatePtr& base, const DeformationParameter& beta)
    {
        return ExactEvaluator(StateSpec::cesaro(n, base), beta)(x);
    }

    inline PhaseCoefficient eval_mixture(const Element& x, std::vector<std::pair<Rational, StatePtr>> parts, const DeformationParameter& beta)
    {
        return ExactEvaluator(StateSpec::mixture(std::move(parts)), beta)(x);
    }

    /// phi(x tau^K(y)) - phi(x) phi(y)
    template <class Scalar>
    Scalar clustering_gap(const StateEvaluator<Scalar>& phi, const Element& x, const Element& y, std::int64_t K)
    {
        Element product = multiply(x, shift(y, K), phi.beta());
        return phi(product) - phi(x) * phi(y);
    }
}
