#pragma once

// JSON state files.
//
//   {"kind": "trace"}
//   {"kind": "product", "moments": [[l, re, im], ...]}
//   {"kind": "block",   "n": 2, "base": {...}}
//   {"kind": "cesaro",  "n": 2, "base": {...}}
//   {"kind": "mixture", "parts": [["1/2", {...}], ...]}
//
// Rationals are strings "p/q" (JSON integers are accepted too). Floating-mode
// files may also use JSON numbers for moments. Omitted negative moments are
// filled in by Hermitian symmetry.

#include "nctorus/states.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace nctorus
{
    using Json = nlohmann::json;

    namespace detail
    {
        inline Rational json_rational(const Json& j, const std::string& where)
        {
            if (j.is_string())
            {
                return parse_rational(j.get<std::string>());
            }
            if (j.is_number_integer())
            {
                return Rational(Integer(static_cast<long>(j.get<std::int64_t>())));
            }
            throw InputError(where + ": expected a rational string \"p/q\" or an integer, got " + j.dump());
        }

        inline std::int64_t json_int(const Json& j, const std::string& where)
        {
            if (j.is_number_integer())
            {
                return j.get<std::int64_t>();
            }
            if (j.is_string())
            {
                return to_int64(parse_integer(j.get<std::string>()));
            }
            throw InputError(where + ": expected an integer, got " + j.dump());
        }

        template <class M>
        M json_moment(const Json& re, const Json& im, const std::string& where);

        template <>
        inline GaussianRational json_moment<GaussianRational>(const Json& re, const Json& im, const std::string& where)
        {
            return GaussianRational{json_rational(re, where + " (real part)"), json_rational(im, where + " (imaginary part)")};
        }

        inline double json_double(const Json& j, const std::string& where)
        {
            if (j.is_number())
            {
                return j.get<double>();
            }
            return json_rational(j, where).get_d();
        }

        template <>
        inline std::complex<double> json_moment<std::complex<double>>(const Json& re, const Json& im, const std::string& where)
        {
            return {json_double(re, where + " (real part)"), json_double(im, where + " (imaginary part)")};
        }

        inline const Json& json_field(const Json& j, const char* key, const std::string& where)
        {
            auto it = j.find(key);
            if (it == j.end())
            {
                throw InputError(where + ": missing field \"" + key + "\"");
            }
            return *it;
        }
    }

    template <class M>
    typename BasicStateSpec<M>::Ptr state_from_json(const Json& j, const std::string& where = "state")
    {
        using Spec = BasicStateSpec<M>;
        if (!j.is_object())
        {
            throw InputError(where + ": expected an object");
        }
        const Json& kind_field = detail::json_field(j, "kind", where);
        if (!kind_field.is_string())
        {
            throw InputError(where + ": \"kind\" must be a string");
        }
        const std::string kind = kind_field.get<std::string>();
        if (kind == "trace")
        {
            return Spec::trace();
        }
        if (kind == "product")
        {
            const Json& moments = detail::json_field(j, "moments", where);
            if (!moments.is_array())
            {
                throw InputError(where + ": \"moments\" must be an array of [l, re, im]");
            }
            std::map<std::int64_t, M> entries;
            for (std::size_t i = 0; i < moments.size(); ++i)
            {
                const Json& row = moments[i];
                const std::string at = where + ".moments[" + std::to_string(i) + "]";
                if (!row.is_array() || row.size() != 3)
                {
                    throw InputError(at + ": expected [l, re, im]");
                }
                std::int64_t l = detail::json_int(row[0], at);
                if (!entries.emplace(l, detail::json_moment<M>(row[1], row[2], at)).second)
                {
                    throw InputError(at + ": duplicate moment index " + std::to_string(l));
                }
            }
            return Spec::product(MomentSequence<M>::from_entries(entries));
        }
        if (kind == "block" || kind == "cesaro")
        {
            std::int64_t n = detail::json_int(detail::json_field(j, "n", where), where + ".n");
            auto base = state_from_json<M>(detail::json_field(j, "base", where), where + ".base");
            return kind == "block" ? Spec::block(n, std::move(base)) : Spec::cesaro(n, std::move(base));
        }
        if (kind == "mixture")
        {
            const Json& parts = detail::json_field(j, "parts", where);
            if (!parts.is_array())
            {
                throw InputError(where + ": \"parts\" must be an array of [weight, state]");
            }
            std::vector<std::pair<Rational, typename Spec::Ptr>> out;
            for (std::size_t i = 0; i < parts.size(); ++i)
            {
                const std::string at = where + ".parts[" + std::to_string(i) + "]";
                if (!parts[i].is_array() || parts[i].size() != 2)
                {
                    throw InputError(at + ": expected [weight, state]");
                }
                out.emplace_back(detail::json_rational(parts[i][0], at), state_from_json<M>(parts[i][1], at));
            }
            return Spec::mixture(std::move(out));
        }
        throw InputError(where + ": unknown kind \"" + kind + "\"");
    }

    inline Json state_to_json(const StatePtr& spec)
    {
        return std::visit(
            [](const auto& k) -> Json {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, StateSpec::Trace>)
                {
                    return {{"kind", "trace"}};
                }
                else if constexpr (std::is_same_v<T, StateSpec::Product>)
                {
                    Json moments = Json::array();
                    for (const auto& [l, c] : k.omega.moments())
                    {
                        if (l > 0)
                        {
                            moments.push_back({l, c.re.get_str(), c.im.get_str()});
                        }
                    }
                    return {{"kind", "product"}, {"moments", moments}};
                }
                else if constexpr (std::is_same_v<T, StateSpec::BlockProduct>)
                {
                    return {{"kind", "block"}, {"n", k.n}, {"base", state_to_json(k.base)}};
                }
                else if constexpr (std::is_same_v<T, StateSpec::Cesaro>)
                {
                    return {{"kind", "cesaro"}, {"n", k.n}, {"base", state_to_json(k.base)}};
                }
                else
                {
                    Json parts = Json::array();
                    for (const auto& [w, p] : k.parts)
                    {
                        parts.push_back({w.get_str(), state_to_json(p)});
                    }
                    return {{"kind", "mixture"}, {"parts", parts}};
                }
            },
            spec->kind());
    }

    template <class M>
    typename BasicStateSpec<M>::Ptr parse_state(const std::string& text, const std::string& where = "state")
    {
        Json j;
        try
        {
            j = Json::parse(text);
        }
        catch (const Json::parse_error& e)
        {
            throw InputError(where + ": invalid JSON: " + e.what());
        }
        return state_from_json<M>(j, where);
    }

    template <class M>
    typename BasicStateSpec<M>::Ptr load_state(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
        {
            throw InputError("cannot open state file " + path);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return parse_state<M>(buffer.str(), path);
    }
}
