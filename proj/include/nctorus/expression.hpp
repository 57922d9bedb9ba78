#pragma once

// Text form of Elements.
//
//   element  := ['+' | '-'] term (('+' | '-') term)*
//   term     := atom ('*' atom)*
//   atom     := rational | 'e(' rational ')' | 'E(' int ')'
//             | 'u[' int ']' ('^' int)? | '(' element ')' | 'adj(' element ')'
//   rational := int ('/' posint)?
//
// e(q) = exp(2 pi i q) and E(m) = exp(2 pi i m beta). Products are normal-ordered
// as they are parsed. Printing is Element::to_string, which this grammar reads back.

#include "nctorus/element.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace nctorus
{
    class ParseError : public InputError
    {
    public:
        ParseError(const std::string& message, std::size_t line, std::size_t column)
            : InputError("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
              line_(line), column_(column)
        {
        }

        std::size_t line() const { return line_; }
        std::size_t column() const { return column_; }

    private:
        std::size_t line_;
        std::size_t column_;
    };

    namespace detail
    {
        class ExpressionParser
        {
        public:
            ExpressionParser(std::string_view text, const DeformationParameter& beta) : text_(text), beta_(beta) {}

            Element parse()
            {
                Element x = element();
                skip_space();
                if (pos_ != text_.size())
                {
                    fail("unexpected '" + std::string(1, text_[pos_]) + "'");
                }
                return x;
            }

        private:
            std::string_view text_;
            const DeformationParameter& beta_;
            std::size_t pos_ = 0;

            [[noreturn]] void fail(const std::string& message, std::size_t at) const
            {
                std::size_t line = 1, column = 1;
                for (std::size_t i = 0; i < at && i < text_.size(); ++i)
                {
                    if (text_[i] == '\n')
                    {
                        ++line;
                        column = 1;
                    }
                    else
                    {
                        ++column;
                    }
                }
                throw ParseError(message, line, column);
            }

            [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }

            void skip_space()
            {
                while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
                {
                    ++pos_;
                }
            }

            bool peek(char c)
            {
                skip_space();
                return pos_ < text_.size() && text_[pos_] == c;
            }

            bool accept(char c)
            {
                if (peek(c))
                {
                    ++pos_;
                    return true;
                }
                return false;
            }

            void expect(char c)
            {
                if (!accept(c))
                {
                    fail(pos_ < text_.size() ? "expected '" + std::string(1, c) + "', found '" + std::string(1, text_[pos_]) + "'"
                                             : "expected '" + std::string(1, c) + "', found end of input");
                }
            }

            bool accept_keyword(std::string_view word)
            {
                skip_space();
                if (text_.substr(pos_, word.size()) != word)
                {
                    return false;
                }
                std::size_t after = pos_ + word.size();
                while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after])))
                {
                    ++after;
                }
                const char next = word.back() == '[' || word.back() == '(' ? '\0' : '(';
                if (next != '\0' && (after >= text_.size() || text_[after] != next))
                {
                    return false;
                }
                pos_ += word.size();
                return true;
            }

            Integer integer()
            {
                skip_space();
                const std::size_t start = pos_;
                std::size_t p = pos_;
                if (p < text_.size() && (text_[p] == '-' || text_[p] == '+'))
                {
                    ++p;
                    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p])))
                    {
                        ++p;
                    }
                }
                const std::size_t digits = p;
                while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p])))
                {
                    ++p;
                }
                if (p == digits)
                {
                    fail("expected an integer", start);
                }
                Integer z(std::string(text_.substr(digits, p - digits)), 10);
                if (text_[start] == '-')
                {
                    z = -z;
                }
                pos_ = p;
                return z;
            }

            std::int64_t small_integer(const char* what)
            {
                const std::size_t start = (skip_space(), pos_);
                Integer z = integer();
                if (!z.fits_slong_p())
                {
                    fail(std::string(what) + " " + z.get_str() + " does not fit in 64 bits", start);
                }
                return z.get_si();
            }

            Rational rational()
            {
                const std::size_t start = (skip_space(), pos_);
                Integer num = integer();
                if (!accept('/'))
                {
                    return Rational(num);
                }
                skip_space();
                const std::size_t den_start = pos_;
                if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
                {
                    fail("malformed rational: denominator must be a positive integer", den_start);
                }
                Integer den = integer();
                if (den == 0)
                {
                    fail("malformed rational: zero denominator", start);
                }
                return make_rational(num, den);
            }

            Element element()
            {
                Element x;
                bool negative = false;
                if (accept('-'))
                {
                    negative = true;
                }
                else
                {
                    accept('+');
                }
                Element t = term();
                x = negative ? -t : t;
                while (true)
                {
                    if (accept('+'))
                    {
                        x += term();
                    }
                    else if (accept('-'))
                    {
                        x -= term();
                    }
                    else
                    {
                        return x;
                    }
                }
            }

            Element term()
            {
                Element x = atom();
                while (accept('*'))
                {
                    x = multiply(x, atom(), beta_);
                }
                return x;
            }

            Element atom()
            {
                skip_space();
                const std::size_t start = pos_;
                if (pos_ >= text_.size())
                {
                    fail("unexpected end of input");
                }
                Element x;
                bool is_generator = false;
                if (accept_keyword("u["))
                {
                    std::int64_t index = small_integer("generator index");
                    expect(']');
                    std::int64_t exponent = 1;
                    if (accept('^'))
                    {
                        exponent = small_integer("exponent");
                    }
                    x = Element::monomial(Word::generator(index, exponent));
                    is_generator = true;
                }
                else if (accept_keyword("adj"))
                {
                    expect('(');
                    x = adjoint(element(), beta_);
                    expect(')');
                }
                else if (accept_keyword("e"))
                {
                    expect('(');
                    Rational q = rational();
                    expect(')');
                    x = Element::constant(PhaseCoefficient::term(Rational(1), q));
                }
                else if (accept_keyword("E"))
                {
                    expect('(');
                    Integer m = integer();
                    expect(')');
                    x = Element::constant(beta_.phase(m));
                }
                else if (accept('('))
                {
                    x = element();
                    expect(')');
                }
                else if (std::isdigit(static_cast<unsigned char>(text_[pos_])))
                {
                    x = Element::constant(PhaseCoefficient(rational()));
                }
                else
                {
                    fail("unexpected '" + std::string(1, text_[pos_]) + "'", start);
                }
                if (peek('^'))
                {
                    fail(is_generator ? "exponent on non-factor: a generator takes a single exponent"
                                      : "exponent on non-factor: '^' may only follow a generator u[i]");
                }
                return x;
            }
        };
    }

    inline Element parse_element(std::string_view text, const DeformationParameter& beta)
    {
        return detail::ExpressionParser(text, beta).parse();
    }

    /// A bare product of generators "u[i]^k * u[j] * ..." kept in its written
    /// order (no normal ordering); nullopt if the text is anything else.
    inline std::optional<Word> parse_raw_word(std::string_view text)
    {
        std::string compact;
        for (char c : text)
        {
            if (!std::isspace(static_cast<unsigned char>(c)))
            {
                compact.push_back(c);
            }
        }
        if (compact == "1")
        {
            return Word();
        }
        std::vector<Factor> factors;
        std::size_t pos = 0;
        auto read_int = [&](std::int64_t& out) {
            std::size_t start = pos;
            if (pos < compact.size() && compact[pos] == '-')
            {
                ++pos;
            }
            std::size_t digits = pos;
            while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos])))
            {
                ++pos;
            }
            if (pos == digits)
            {
                return false;
            }
            Integer z(compact.substr(start, pos - start), 10);
            if (!z.fits_slong_p())
            {
                return false;
            }
            out = z.get_si();
            return true;
        };
        while (true)
        {
            if (compact.compare(pos, 2, "u[") != 0)
            {
                return std::nullopt;
            }
            pos += 2;
            Factor f{0, 1};
            if (!read_int(f.index) || pos >= compact.size() || compact[pos] != ']')
            {
                return std::nullopt;
            }
            ++pos;
            if (pos < compact.size() && compact[pos] == '^')
            {
                ++pos;
                if (!read_int(f.exponent))
                {
                    return std::nullopt;
                }
            }
            factors.push_back(f);
            if (pos == compact.size())
            {
                return Word(std::move(factors));
            }
            if (compact[pos] != '*')
            {
                return std::nullopt;
            }
            ++pos;
        }
    }
}
