#pragma once

// Independent verifiers used by the test suites and the `oracle` CLI:
//   * one-swap-at-a-time normal ordering
//   * n0 by direct search
//   * the clock-and-shift representation of the rational torus on (C^D)^{(x) m}
//   * Toeplitz and Gram positivity checks (exact LDL^* or dense eigensolve)

#include "nctorus/cyclotomic.hpp"
#include "nctorus/element.hpp"
#include "nctorus/moments.hpp"
#include "nctorus/states.hpp"
#include "nctorus/word.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace nctorus::oracle
{
    /// Expands every factor into unit steps and bubble-sorts them, one adjacent
    /// transposition at a time. From u_l u_k = lambda u_k u_l (l < k):
    ///   u_k   u_l    = lambda^-1 u_l    u_k
    ///   u_k^-1 u_l   = lambda    u_l    u_k^-1
    ///   u_k   u_l^-1 = lambda    u_l^-1 u_k
    ///   u_k^-1 u_l^-1 = lambda^-1 u_l^-1 u_k^-1
    /// i.e. swapping u_k^s u_l^t (k > l) contributes exponent -s*t.
    inline NormalForm brute_normal_form(const Word& w)
    {
        std::vector<Factor> units;
        for (const auto& f : w.factors())
        {
            const std::int64_t step = f.exponent > 0 ? 1 : -1;
            for (std::int64_t i = 0; i != f.exponent; i += step)
            {
                units.push_back({f.index, step});
            }
        }
        Integer phase = 0;
        bool swapped = true;
        while (swapped)
        {
            swapped = false;
            for (std::size_t i = 0; i + 1 < units.size(); ++i)
            {
                if (units[i].index > units[i + 1].index)
                {
                    phase -= units[i].exponent * units[i + 1].exponent;
                    std::swap(units[i], units[i + 1]);
                    swapped = true;
                }
            }
        }
        std::vector<Factor> merged;
        for (const auto& u : units)
        {
            if (!merged.empty() && merged.back().index == u.index)
            {
                merged.back().exponent += u.exponent;
            }
            else
            {
                merged.push_back(u);
            }
        }
        return NormalForm{phase, Word(std::move(merged))};
    }

    /// min{k >= 1 : D | k^2}. The minimum divides D (D | k^2 and D | D^2 give
    /// D | gcd(k, D)^2), so only divisors of D are scanned, in increasing order.
    inline std::uint64_t brute_n0(std::uint64_t D)
    {
        if (D == 0)
        {
            throw InputError("brute_n0 expects D >= 1");
        }
        std::vector<std::uint64_t> small, large;
        for (std::uint64_t d = 1; d * d <= D; ++d)
        {
            if (D % d == 0)
            {
                small.push_back(d);
                if (d != D / d)
                {
                    large.push_back(D / d);
                }
            }
        }
        small.insert(small.end(), large.rbegin(), large.rend());
        for (std::uint64_t k : small)
        {
            if (static_cast<unsigned __int128>(k) * k % D == 0)
            {
                return k;
            }
        }
        return D;
    }

    /// Sparse matrix with exactly one nonzero per column: M e_k = phase[k] e_{perm[k]}.
    struct MonomialMatrix
    {
        std::vector<std::size_t> perm;
        std::vector<std::complex<double>> phase;

        static MonomialMatrix identity(std::size_t n)
        {
            MonomialMatrix m;
            m.perm.resize(n);
            m.phase.assign(n, 1.0);
            for (std::size_t k = 0; k < n; ++k)
            {
                m.perm[k] = k;
            }
            return m;
        }

        std::size_t dim() const { return perm.size(); }

        friend MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b)
        {
            MonomialMatrix c;
            c.perm.resize(b.dim());
            c.phase.resize(b.dim());
            for (std::size_t k = 0; k < b.dim(); ++k)
            {
                c.perm[k] = a.perm[b.perm[k]];
                c.phase[k] = b.phase[k] * a.phase[b.perm[k]];
            }
            return c;
        }

        MonomialMatrix adjoint() const
        {
            MonomialMatrix m;
            m.perm.resize(dim());
            m.phase.resize(dim());
            for (std::size_t k = 0; k < dim(); ++k)
            {
                m.perm[perm[k]] = k;
                m.phase[perm[k]] = std::conj(phase[k]);
            }
            return m;
        }

        std::complex<double> trace() const
        {
            std::complex<double> t = 0;
            for (std::size_t k = 0; k < dim(); ++k)
            {
                if (perm[k] == k)
                {
                    t += phase[k];
                }
            }
            return t;
        }

        Eigen::MatrixXcd dense() const
        {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
            for (std::size_t k = 0; k < dim(); ++k)
            {
                m(static_cast<Eigen::Index>(perm[k]), static_cast<Eigen::Index>(k)) = phase[k];
            }
            return m;
        }

        /// Entrywise comparison (the zero pattern is part of the entries).
        bool approx_equal(const MonomialMatrix& o, double tol) const
        {
            if (dim() != o.dim())
            {
                return false;
            }
            for (std::size_t k = 0; k < dim(); ++k)
            {
                if (perm[k] != o.perm[k] || std::abs(phase[k] - o.phase[k]) > tol)
                {
                    // entries with |phase| <= tol on both sides would still agree, but
                    // unitary monomial matrices have unit-modulus phases
                    return false;
                }
            }
            return true;
        }

        MonomialMatrix scaled(std::complex<double> s) const
        {
            MonomialMatrix m = *this;
            for (auto& p : m.phase)
            {
                p *= s;
            }
            return m;
        }
    };

    /// u_j = C^{(x)(j-1)} (x) S (x) I^{(x)(m-j)} on (C^D)^{(x) m}, with
    /// C = diag(1, lambda, ..., lambda^{D-1}), S e_k = e_{k-1 mod D}, lambda = e(N/D).
    /// Then C S = lambda^{-1} S C and u_i u_j = lambda u_j u_i for i < j.
    class MatrixRep
    {
    public:
        MatrixRep(Rational beta, std::size_t generator_count) : beta_(std::move(beta)), m_(generator_count)
        {
            if (m_ == 0)
            {
                throw InputError("MatrixRep needs at least one generator");
            }
            const Integer& den = beta_.get_den();
            if (!den.fits_ulong_p() || den.get_ui() > 64)
            {
                throw InputError("MatrixRep: denominator too large for a dense oracle");
            }
            D_ = den.get_ui();
            dim_ = 1;
            for (std::size_t i = 0; i < m_; ++i)
            {
                dim_ *= D_;
                if (dim_ > (1u << 22))
                {
                    throw InputError("MatrixRep: dimension D^m too large");
                }
            }
            const double t = 2.0 * std::numbers::pi * mod_one(beta_).get_d();
            lambda_ = {std::cos(t), std::sin(t)};
            for (std::size_t j = 0; j < m_; ++j)
            {
                generators_.push_back(build_generator(j));
            }
            verify();
        }

        /// Memoized construction per (beta, m).
        static std::shared_ptr<const MatrixRep> get(const Rational& beta, std::size_t generator_count)
        {
            static std::shared_mutex mutex;
            static std::map<std::pair<Rational, std::size_t>, std::shared_ptr<const MatrixRep>> cache;
            auto key = std::make_pair(beta, generator_count);
            {
                std::shared_lock lock(mutex);
                auto it = cache.find(key);
                if (it != cache.end())
                {
                    return it->second;
                }
            }
            auto rep = std::make_shared<const MatrixRep>(beta, generator_count);
            std::unique_lock lock(mutex);
            return cache.emplace(key, rep).first->second;
        }

        std::size_t dimension() const { return dim_; }
        std::size_t generator_count() const { return m_; }
        std::size_t modulus() const { return D_; }
        std::complex<double> lambda() const { return lambda_; }

        /// u_j for j = 1..m
        const MonomialMatrix& generator(std::size_t j) const { return generators_.at(j - 1); }

    private:
        Rational beta_;
        std::size_t m_;
        std::size_t D_ = 0;
        std::size_t dim_ = 0;
        std::complex<double> lambda_;
        std::vector<MonomialMatrix> generators_;

        // basis index k = sum_p digit_p D^(m-1-p), tensor slot p = 0 is leftmost
        MonomialMatrix build_generator(std::size_t j) const
        {
            MonomialMatrix u;
            u.perm.resize(dim_);
            u.phase.resize(dim_);
            for (std::size_t k = 0; k < dim_; ++k)
            {
                std::vector<std::size_t> digits(m_);
                std::size_t rest = k;
                for (std::size_t p = m_; p-- > 0;)
                {
                    digits[p] = rest % D_;
                    rest /= D_;
                }
                std::complex<double> phase = 1.0;
                for (std::size_t p = 0; p < j; ++p)
                {
                    phase *= std::pow(lambda_, static_cast<double>(digits[p]));
                }
                digits[j] = (digits[j] + D_ - 1) % D_;
                std::size_t target = 0;
                for (std::size_t p = 0; p < m_; ++p)
                {
                    target = target * D_ + digits[p];
                }
                u.perm[k] = target;
                u.phase[k] = phase;
            }
            return u;
        }

        void verify() const
        {
            constexpr double tol = 1e-12;
            const auto id = MonomialMatrix::identity(dim_);
            for (std::size_t i = 0; i < m_; ++i)
            {
                if (!(generators_[i] * generators_[i].adjoint()).approx_equal(id, tol))
                {
                    throw std::logic_error("clock-and-shift generator is not unitary");
                }
                for (std::size_t j = i + 1; j < m_; ++j)
                {
                    auto lhs = generators_[i] * generators_[j];
                    auto rhs = (generators_[j] * generators_[i]).scaled(lambda_);
                    if (!lhs.approx_equal(rhs, tol))
                    {
                        throw std::logic_error("clock-and-shift generators violate the commutation relation");
                    }
                }
            }
        }
    };

    /// Normalized matrix trace of a word in the clock-and-shift representation.
    /// Indices are relabelled order-preservingly onto 1..m. Requires every per-index
    /// total exponent a to satisfy |a| < D: the representation identifies u^D
    /// with a scalar, which the universal algebra does not.
    inline std::complex<double> matrix_trace_eval(const Word& w, const Rational& beta)
    {
        std::map<std::int64_t, std::int64_t> totals;
        for (const auto& f : w.factors())
        {
            totals[f.index] += f.exponent;
        }
        const Integer& den = beta.get_den();
        for (const auto& [index, total] : totals)
        {
            if (Integer(static_cast<long>(total < 0 ? -total : total)) >= den)
            {
                throw InputError("matrix_trace_eval: total exponent " + std::to_string(total) + " of u[" + std::to_string(index) +
                                 "] is outside (-D, D) with D = " + den.get_str() +
                                 "; the finite representation wraps exponents mod D");
            }
        }
        if (totals.empty())
        {
            return 1.0;
        }
        std::map<std::int64_t, std::size_t> slot;
        for (const auto& [index, total] : totals)
        {
            slot.emplace(index, slot.size() + 1);
        }
        auto rep = MatrixRep::get(beta, slot.size());
        MonomialMatrix acc = MonomialMatrix::identity(rep->dimension());
        for (const auto& f : w.factors())
        {
            const auto& u = rep->generator(slot.at(f.index));
            const MonomialMatrix step = f.exponent > 0 ? u : u.adjoint();
            for (std::int64_t i = 0; i < (f.exponent > 0 ? f.exponent : -f.exponent); ++i)
            {
                acc = acc * step;
            }
        }
        return acc.trace() / static_cast<double>(rep->dimension());
    }

    template <class Scalar>
    struct PsdVerdict
    {
        bool psd = false;
        /// v with v^* A v < 0, when not PSD and a witness exists
        std::optional<std::vector<Scalar>> witness;
        /// v^* A v for the witness
        std::optional<Scalar> witness_value;
        /// smallest eigenvalue (floating mode only)
        std::optional<double> min_eigenvalue;
        std::string reason;
    };

    using Matrix = std::vector<std::vector<PhaseCoefficient>>;

    inline PhaseCoefficient quadratic_form(const Matrix& a, const std::vector<PhaseCoefficient>& v)
    {
        PhaseCoefficient sum;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            if (v[i].is_zero())
            {
                continue;
            }
            for (std::size_t j = 0; j < a.size(); ++j)
            {
                if (!v[j].is_zero() && !a[i][j].is_zero())
                {
                    sum += v[i].conj() * a[i][j] * v[j];
                }
            }
        }
        return sum;
    }

    /// Exact PSD test of a Hermitian matrix by symmetric elimination (LDL^*),
    /// tracking the congruence basis so that a failing pivot yields a witness.
    inline PsdVerdict<PhaseCoefficient> exact_psd(const Matrix& a)
    {
        const std::size_t n = a.size();
        PsdVerdict<PhaseCoefficient> verdict;
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = i; j < n; ++j)
            {
                if (!(a[i][j] == a[j][i].conj()))
                {
                    verdict.reason = "matrix is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
                    return verdict;
                }
            }
        }
        Matrix s = a;
        Matrix basis(n, std::vector<PhaseCoefficient>(n));
        for (std::size_t i = 0; i < n; ++i)
        {
            basis[i][i] = PhaseCoefficient(1);
        }
        auto finish_with = [&](std::vector<PhaseCoefficient> v, std::string reason) {
            verdict.psd = false;
            verdict.witness_value = quadratic_form(a, v);
            verdict.witness = std::move(v);
            verdict.reason = std::move(reason);
            if (verdict.witness_value->sign() >= 0)
            {
                throw std::logic_error("exact_psd produced a non-negative witness");
            }
            return verdict;
        };
        for (std::size_t k = 0; k < n; ++k)
        {
            const int pivot_sign = s[k][k].sign();
            if (pivot_sign < 0)
            {
                return finish_with(basis[k], "negative pivot at step " + std::to_string(k));
            }
            if (pivot_sign == 0)
            {
                for (std::size_t j = k + 1; j < n; ++j)
                {
                    if (s[j][k].is_zero())
                    {
                        continue;
                    }
                    // v = b_j + s b_k with s = -t conj(S_jk): v^*Av = S_jj - 2t |S_jk|^2
                    PhaseCoefficient mod2 = s[j][k] * s[j][k].conj();
                    PhaseCoefficient t = s[j][j].sign() > 0 ? s[j][j] / mod2 : PhaseCoefficient(1);
                    PhaseCoefficient coef = -(t * s[j][k].conj());
                    std::vector<PhaseCoefficient> v = basis[j];
                    for (std::size_t i = 0; i < n; ++i)
                    {
                        v[i] += coef * basis[k][i];
                    }
                    return finish_with(std::move(v), "zero pivot with nonzero off-diagonal at step " + std::to_string(k));
                }
                continue;
            }
            const PhaseCoefficient d_inv = s[k][k].inverse();
            for (std::size_t j = k + 1; j < n; ++j)
            {
                if (s[k][j].is_zero())
                {
                    continue;
                }
                PhaseCoefficient l = s[k][j] * d_inv;
                for (std::size_t i = 0; i < n; ++i)
                {
                    basis[j][i] -= l * basis[k][i];
                }
            }
            for (std::size_t i = k + 1; i < n; ++i)
            {
                for (std::size_t j = k + 1; j < n; ++j)
                {
                    if (!s[i][k].is_zero() && !s[k][j].is_zero())
                    {
                        s[i][j] -= s[i][k] * s[k][j] * d_inv;
                    }
                }
            }
            for (std::size_t j = k + 1; j < n; ++j)
            {
                s[k][j] = PhaseCoefficient();
                s[j][k] = PhaseCoefficient();
            }
        }
        verdict.psd = true;
        verdict.reason = "all pivots non-negative";
        return verdict;
    }

    /// Dense Hermitian eigensolve; PSD iff the smallest eigenvalue >= -1e-10.
    inline PsdVerdict<std::complex<double>> float_psd(const Eigen::MatrixXcd& a)
    {
        constexpr double tolerance = 1e-10;
        PsdVerdict<std::complex<double>> verdict;
        if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        {
            verdict.reason = "matrix is not Hermitian";
            return verdict;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
        const double lo = solver.eigenvalues()(0);
        verdict.min_eigenvalue = lo;
        verdict.psd = lo >= -tolerance;
        if (!verdict.psd)
        {
            Eigen::VectorXcd v = solver.eigenvectors().col(0);
            verdict.witness = std::vector<std::complex<double>>(v.data(), v.data() + v.size());
            verdict.witness_value = (v.adjoint() * a * v)(0, 0);
            verdict.reason = "negative eigenvalue " + std::to_string(lo);
        }
        else
        {
            verdict.reason = "smallest eigenvalue " + std::to_string(lo);
        }
        return verdict;
    }

    /// Toeplitz matrix [c_{i-j}], 0 <= i, j <= order.
    inline PsdVerdict<PhaseCoefficient> toeplitz_psd(const MomentSequence<GaussianRational>& omega, std::size_t order)
    {
        if (order < 1)
        {
            throw InputError("toeplitz_psd: order must be at least 1");
        }
        const std::size_t n = order + 1;
        Matrix a(n, std::vector<PhaseCoefficient>(n));
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = 0; j < n; ++j)
            {
                a[i][j] = PhaseCoefficient::gaussian(omega.at(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j)));
            }
        }
        return exact_psd(a);
    }

    inline PsdVerdict<std::complex<double>> toeplitz_psd(const MomentSequence<std::complex<double>>& omega, std::size_t order)
    {
        if (order < 1)
        {
            throw InputError("toeplitz_psd: order must be at least 1");
        }
        const auto n = static_cast<Eigen::Index>(order + 1);
        Eigen::MatrixXcd a(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            for (Eigen::Index j = 0; j < n; ++j)
            {
                a(i, j) = omega.at(i - j);
            }
        }
        return float_psd(a);
    }

    /// Gram matrix [phi(x_i^* x_j)].
    template <class Scalar>
    std::vector<std::vector<Scalar>> gram_matrix(const StateEvaluator<Scalar>& phi, const std::vector<Element>& words)
    {
        std::vector<Element> adjoints;
        for (const auto& x : words)
        {
            adjoints.push_back(adjoint(x, phi.beta()));
        }
        std::vector<std::vector<Scalar>> g(words.size(), std::vector<Scalar>(words.size()));
        for (std::size_t i = 0; i < words.size(); ++i)
        {
            for (std::size_t j = 0; j < words.size(); ++j)
            {
                g[i][j] = phi(multiply(adjoints[i], words[j], phi.beta()));
            }
        }
        return g;
    }

    inline PsdVerdict<PhaseCoefficient> gram_psd(const ExactEvaluator& phi, const std::vector<Element>& words)
    {
        return exact_psd(gram_matrix(phi, words));
    }

    inline PsdVerdict<std::complex<double>> gram_psd(const FloatEvaluator& phi, const std::vector<Element>& words)
    {
        auto g = gram_matrix(phi, words);
        const auto n = static_cast<Eigen::Index>(words.size());
        Eigen::MatrixXcd a(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            for (Eigen::Index j = 0; j < n; ++j)
            {
                a(i, j) = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        }
        return float_psd(a);
    }
}
