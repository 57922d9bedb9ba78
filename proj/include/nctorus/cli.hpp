#pragma once

// Command surface of the `nctorus` tool. run_cli takes argv without the
// program name and returns the exit status:
//   0  success / property holds
//   1  counterexample found or property fails
//   2  usage or input error

#include "nctorus/expression.hpp"
#include "nctorus/oracle.hpp"
#include "nctorus/state_io.hpp"
#include "nctorus/symmetry.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

namespace nctorus
{
    namespace cli
    {
        enum Exit : int
        {
            ok = 0,
            property_fails = 1,
            input_error = 2,
        };

        struct Options
        {
            std::string mode = "exact";
            std::uint64_t seed = 0;
            std::string alpha;
            std::string state_file;
            std::vector<std::string> expressions;
            CheckBudget budget;
            bool no_exhaustive = false;
            std::int64_t power = 1;
            std::int64_t n = 0;
            std::int64_t K = 0;
            std::string D;
            std::size_t toeplitz_order = 0;
        };

        inline std::string render(std::complex<double> z)
        {
            return scalar_ops<std::complex<double>>::to_string(z);
        }

        inline std::int64_t support_radius(const Element& x)
        {
            std::int64_t s = 0;
            for (const auto& [w, c] : x.terms())
            {
                for (const auto& f : w.factors())
                {
                    s = std::max(s, f.index < 0 ? -f.index : f.index);
                }
            }
            return s;
        }

        /// |z| <= bound, decided exactly (z has a real cyclotomic |z|^2).
        inline bool within_bound(const PhaseCoefficient& z, const Rational& bound)
        {
            PhaseCoefficient slack = PhaseCoefficient(bound * bound) - z * z.conj();
            return slack.sign() >= 0;
        }

        template <class Scalar>
        StateEvaluator<Scalar> load_evaluator(const Options& o, const DeformationParameter& beta, std::ostream& err)
        {
            using M = typename scalar_ops<Scalar>::moment_type;
            if (o.state_file.empty())
            {
                throw InputError("--state FILE is required");
            }
            StateEvaluator<Scalar> phi(load_state<M>(o.state_file), beta);
            for (const auto& w : phi.warnings())
            {
                err << "warning: " << w << "\n";
            }
            return phi;
        }

        inline void print_value(std::ostream& out, const std::string& label, const PhaseCoefficient& v, const DeformationParameter& beta)
        {
            out << label << " = " << v.to_string() << "\n";
            out << label << " ~ " << render(v.to_complex(beta.numeric_value())) << "\n";
        }

        inline void print_value(std::ostream& out, const std::string& label, const std::complex<double>& v, const DeformationParameter&)
        {
            out << label << " ~ " << render(v) << "\n";
        }

        inline int cmd_n0(const Options& o, std::ostream& out)
        {
            auto beta = DeformationParameter::parse(o.alpha);
            auto iso = isotropy(beta);
            if (iso.delta_generator)
            {
                out << "n0 = " << iso.delta_generator->get_str() << "\n";
            }
            else
            {
                out << "Δ_α = {0}\n";
            }
            return ok;
        }

        inline int cmd_normal_form(const Options& o, std::ostream& out)
        {
            auto beta = DeformationParameter::parse(o.alpha);
            const std::string& text = o.expressions.at(0);
            const Element canonical = parse_element(text, beta);
            out << "input: " << text << "\n";
            if (auto raw = parse_raw_word(text))
            {
                auto nf = normal_form(*raw);
                out << "phase exponent: " << nf.phase_exponent.get_str() << "\n";
                out << "normal word: " << nf.word.to_string() << "\n";
            }
            out << "canonical: " << canonical.to_string() << "\n";
            return ok;
        }

        template <class Scalar>
        int cmd_eval(const Options& o, std::ostream& out, std::ostream& err)
        {
            auto beta = DeformationParameter::parse(o.alpha);
            auto phi = load_evaluator<Scalar>(o, beta, err);
            Element x = parse_element(o.expressions.at(0), beta);
            print_value(out, "value", phi(x), beta);
            return ok;
        }

        template <class Scalar>
        int cmd_check(const std::string& property, const Options& o, std::ostream& out, std::ostream& err)
        {
            auto beta = DeformationParameter::parse(o.alpha);
            auto phi = load_evaluator<Scalar>(o, beta, err);
            CheckBudget budget = o.budget;
            budget.seed = o.seed;
            budget.exhaustive = !o.no_exhaustive;
            CheckReport report;
            if (property == "spreadable")
            {
                report = check_spreadable(phi, budget);
            }
            else if (property == "stationary")
            {
                report = check_stationary(phi, o.power, budget);
            }
            else
            {
                report = check_gauge_invariant(phi, budget);
            }
            out << report.to_string() << "\n";
            return report.passed ? ok : property_fails;
        }

        template <class Scalar>
        int cmd_cesaro(const Options& o, std::ostream& out, std::ostream& err)
        {
            using ops = scalar_ops<Scalar>;
            using M = typename ops::moment_type;
            auto beta = DeformationParameter::parse(o.alpha);
            auto base_phi = load_evaluator<Scalar>(o, beta, err);
            StateEvaluator<Scalar> phi_n(BasicStateSpec<M>::cesaro(o.n, base_phi.spec()), beta);
            Element x = parse_element(o.expressions.at(0), beta);
            Scalar a = phi_n(x);
            Scalar b = base_phi(x);
            Scalar gap = a - b;
            const std::int64_t s = support_radius(x);
            const Rational bound = make_rational(4 * s, 2 * o.n + 1);
            print_value(out, "phi_n(x)", a, beta);
            print_value(out, "phi(x)", b, beta);
            bool holds;
            if constexpr (ops::mode == Mode::exact)
            {
                out << "|gap| ~ " << std::setprecision(12) << std::abs(gap.to_complex(beta.numeric_value())) << "\n";
                holds = within_bound(gap, bound);
            }
            else
            {
                out << "|gap| ~ " << std::setprecision(12) << std::abs(gap) << "\n";
                holds = std::abs(gap) <= bound.get_d() + ops::tolerance;
            }
            out << "s = " << s << ", bound 4s/(2n+1) = " << bound.get_str() << "\n";
            out << "bound " << (holds ? "holds" : "violated") << "\n";
            return holds ? ok : property_fails;
        }

        template <class Scalar>
        int cmd_cluster(const Options& o, std::ostream& out, std::ostream& err)
        {
            auto beta = DeformationParameter::parse(o.alpha);
            auto phi = load_evaluator<Scalar>(o, beta, err);
            if (o.expressions.size() != 2)
            {
                throw InputError("cluster expects two expressions x and y");
            }
            Element x = parse_element(o.expressions[0], beta);
            Element y = parse_element(o.expressions[1], beta);
            print_value(out, "gap", clustering_gap(phi, x, y, o.K), beta);
            return ok;
        }

        inline int cmd_oracle_trace(const Options& o, std::ostream& out)
        {
            auto beta = DeformationParameter::parse(o.alpha);
            if (!beta.is_rational())
            {
                throw InputError("oracle trace needs a rational alpha");
            }
            auto raw = parse_raw_word(o.expressions.at(0));
            if (!raw)
            {
                throw InputError("oracle trace expects a product of generators, e.g. \"u[1]*u[2]*u[1]^-1\"");
            }
            auto matrix = oracle::matrix_trace_eval(*raw, beta.value());
            auto symbolic = eval_trace(Element::from_word(*raw, beta), beta);
            auto symbolic_float = symbolic.to_complex();
            out << "symbolic tr = " << symbolic.to_string() << "\n";
            out << "symbolic tr ~ " << render(symbolic_float) << "\n";
            out << "matrix tr   ~ " << render(matrix) << "\n";
            const bool agree = std::abs(matrix - symbolic_float) <= 1e-9;
            out << (agree ? "agree" : "DISAGREE") << "\n";
            return agree ? ok : property_fails;
        }

        inline int cmd_oracle_n0(const Options& o, std::ostream& out)
        {
            Integer D = parse_integer(o.D);
            if (D < 1 || !D.fits_ulong_p())
            {
                throw InputError("--D must be a positive integer below 2^64");
            }
            auto brute = oracle::brute_n0(D.get_ui());
            auto formula = isotropy(DeformationParameter::canonicalize(Integer(1), D)).delta_generator.value();
            out << "brute n0 = " << brute << "\n";
            out << "formula n0 = " << formula.get_str() << "\n";
            const bool agree = formula == Integer(static_cast<unsigned long>(brute));
            out << (agree ? "agree" : "DISAGREE") << "\n";
            return agree ? ok : property_fails;
        }

        template <class Scalar>
        void print_verdict(std::ostream& out, const oracle::PsdVerdict<Scalar>& v, const std::vector<Element>& family,
                           const DeformationParameter& beta)
        {
            out << (v.psd ? "PSD" : "NOT PSD") << " (" << v.reason << ")\n";
            if (v.min_eigenvalue)
            {
                out << "min eigenvalue ~ " << std::setprecision(12) << *v.min_eigenvalue << "\n";
            }
            if (!v.witness)
            {
                return;
            }
            if constexpr (std::is_same_v<Scalar, PhaseCoefficient>)
            {
                if (!family.empty())
                {
                    Element combo;
                    for (std::size_t i = 0; i < family.size(); ++i)
                    {
                        combo += family[i].scaled((*v.witness)[i]);
                    }
                    out << "witness v = " << combo.to_string() << "\n";
                }
                else
                {
                    out << "witness coefficients:";
                    for (const auto& c : *v.witness)
                    {
                        out << " [" << c.to_string() << "]";
                    }
                    out << "\n";
                }
                out << "phi(v* v) = " << v.witness_value->to_string() << "\n";
            }
            else
            {
                out << "witness coefficients:";
                for (const auto& c : *v.witness)
                {
                    out << " [" << render(c) << "]";
                }
                out << "\n";
                out << "quadratic form ~ " << render(*v.witness_value) << "\n";
            }
            (void)beta;
        }

        template <class Scalar>
        int cmd_oracle_psd(const Options& o, std::ostream& out, std::ostream& err)
        {
            using M = typename scalar_ops<Scalar>::moment_type;
            if (o.toeplitz_order > 0)
            {
                if (o.state_file.empty())
                {
                    throw InputError("--state FILE is required");
                }
                auto spec = load_state<M>(o.state_file);
                const auto* product = std::get_if<typename BasicStateSpec<M>::Product>(&spec->kind());
                if (!product)
                {
                    throw InputError("--toeplitz needs a product state file");
                }
                auto verdict = oracle::toeplitz_psd(product->omega, o.toeplitz_order);
                print_verdict(out, verdict, {}, DeformationParameter::canonicalize(0L, 1L));
                return verdict.psd ? ok : property_fails;
            }
            auto beta = DeformationParameter::parse(o.alpha);
            auto phi = load_evaluator<Scalar>(o, beta, err);
            std::vector<Element> family;
            for (const auto& e : o.expressions)
            {
                family.push_back(parse_element(e, beta));
            }
            if (family.empty())
            {
                throw InputError("oracle psd expects a word family (or --toeplitz ORDER)");
            }
            auto verdict = oracle::gram_psd(phi, family);
            print_verdict(out, verdict, family, beta);
            return verdict.psd ? ok : property_fails;
        }

        template <class Scalar>
        int dispatch(const std::string& command, const std::string& sub, const Options& o, std::ostream& out, std::ostream& err)
        {
            if (command == "eval") return cmd_eval<Scalar>(o, out, err);
            if (command == "check") return cmd_check<Scalar>(sub, o, out, err);
            if (command == "cesaro") return cmd_cesaro<Scalar>(o, out, err);
            if (command == "cluster") return cmd_cluster<Scalar>(o, out, err);
            if (command == "oracle" && sub == "psd") return cmd_oracle_psd<Scalar>(o, out, err);
            throw InputError("unknown command");
        }
    }

    inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
    {
        using namespace cli;
        Options o;
        CLI::App app{"Exact computations on the infinite noncommutative torus", "nctorus"};
        app.require_subcommand(1);
        app.add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        app.add_option("--seed", o.seed, "seed for randomized commands");
        auto add_alpha = [&](CLI::App* c) { c->add_option("--alpha", o.alpha, "N/D or irrational")->required(); };
        auto add_state = [&](CLI::App* c) { c->add_option("--state", o.state_file, "state file (JSON)")->required(); };

        auto* n0 = app.add_subcommand("n0", "generator n0 of the isotropy subgroup");
        add_alpha(n0);

        auto* nf = app.add_subcommand("normal-form", "normal-order an expression");
        add_alpha(nf);
        nf->add_option("expression", o.expressions)->required()->expected(1);

        auto* ev = app.add_subcommand("eval", "evaluate a state on an expression");
        add_alpha(ev);
        add_state(ev);
        ev->add_option("expression", o.expressions)->required()->expected(1);

        auto* check = app.add_subcommand("check", "invariance checks");
        check->require_subcommand(1);
        for (const char* name : {"spreadable", "stationary", "gauge"})
        {
            auto* c = check->add_subcommand(name);
            add_alpha(c);
            add_state(c);
            c->add_option("--trials", o.budget.trials);
            c->add_option("--max-index", o.budget.max_index)->check(CLI::NonNegativeNumber);
            c->add_option("--max-exponent", o.budget.max_exponent)->check(CLI::PositiveNumber);
            c->add_option("--max-factors", o.budget.max_factors);
            c->add_flag("--no-exhaustive", o.no_exhaustive, "skip the exhaustive pass");
            c->add_option("--seed", o.seed, "seed for the random trials");
            if (std::string(name) == "stationary")
            {
                c->add_option("--power", o.power, "shift power");
            }
        }

        auto* ces = app.add_subcommand("cesaro", "Cesaro symmetrization and the 4s/(2n+1) bound");
        add_alpha(ces);
        add_state(ces);
        ces->add_option("--n", o.n)->required()->check(CLI::NonNegativeNumber);
        ces->add_option("expression", o.expressions)->required()->expected(1);

        auto* clu = app.add_subcommand("cluster", "clustering gap phi(x tau^K(y)) - phi(x) phi(y)");
        add_alpha(clu);
        add_state(clu);
        clu->add_option("--K", o.K)->required();
        clu->add_option("expressions", o.expressions)->required()->expected(2);

        auto* orc = app.add_subcommand("oracle", "independent verifiers");
        orc->require_subcommand(1);
        auto* otr = orc->add_subcommand("trace", "matrix trace vs symbolic trace");
        add_alpha(otr);
        otr->add_option("word", o.expressions)->required()->expected(1);
        auto* on0 = orc->add_subcommand("n0", "brute-force n0 vs formula");
        on0->add_option("--D", o.D, "denominator")->required();
        auto* opsd = orc->add_subcommand("psd", "Gram or Toeplitz positivity");
        opsd->add_option("--alpha", o.alpha, "N/D or irrational");
        opsd->add_option("--state", o.state_file, "state file (JSON)");
        opsd->add_option("--toeplitz", o.toeplitz_order, "Toeplitz order (product states)");
        opsd->add_option("words", o.expressions);

        std::reverse(args.begin(), args.end());
        try
        {
            app.parse(args);
        }
        catch (const CLI::CallForHelp& e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::CallForAllHelp& e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError& e)
        {
            app.exit(e, out, err);
            return input_error;
        }

        try
        {
            const bool exact = o.mode == "exact";
            if (n0->parsed()) return cmd_n0(o, out);
            if (nf->parsed()) return cmd_normal_form(o, out);
            if (orc->parsed() && otr->parsed()) return cmd_oracle_trace(o, out);
            if (orc->parsed() && on0->parsed()) return cmd_oracle_n0(o, out);
            std::string command, sub;
            if (ev->parsed()) command = "eval";
            if (ces->parsed()) command = "cesaro";
            if (clu->parsed()) command = "cluster";
            if (check->parsed())
            {
                command = "check";
                sub = check->get_subcommands().front()->get_name();
            }
            if (orc->parsed() && opsd->parsed())
            {
                command = "oracle";
                sub = "psd";
                if (o.toeplitz_order == 0 && o.alpha.empty())
                {
                    throw InputError("oracle psd needs --alpha (or --toeplitz ORDER)");
                }
            }
            return exact ? dispatch<PhaseCoefficient>(command, sub, o, out, err)
                         : dispatch<std::complex<double>>(command, sub, o, out, err);
        }
        catch (const InputError& e)
        {
            err << "error: " << e.what() << "\n";
            return input_error;
        }
        catch (const std::overflow_error& e)
        {
            err << "error: " << e.what() << "\n";
            return input_error;
        }
    }
}
