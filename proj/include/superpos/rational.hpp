#ifndef SUPERPOS_RATIONAL_HPP
#define SUPERPOS_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <concepts>
#include <type_traits>
#include <utility>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace superpos {

using Integer = mpz_class;

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime numerator and denominator). Every arithmetic result is exact.
/// Unlike mpq_class, the two-argument constructors canonicalize.
class Rational : public mpq_class {
public:
    using mpq_class::mpq_class;
    Rational() = default;
    Rational(const mpq_class& q) : mpq_class(q) {}
    Rational(mpq_class&& q) : mpq_class(std::move(q)) {}
    template <class T, class U>
    Rational(const __gmp_expr<T, U>& e) : mpq_class(e)
    {
    }

    Rational(const Integer& num, const Integer& den) : mpq_class(num, den)
    {
        if (den == 0)
            throw std::domain_error("rational with zero denominator");
        canonicalize();
    }

    template <std::integral N, std::integral D>
    Rational(N num, D den) : Rational(to_integer(num), to_integer(den))
    {
    }

private:
    template <std::integral I>
    static Integer to_integer(I v)
    {
        if constexpr (std::is_signed_v<I>)
            return Integer(static_cast<long>(v));
        else
            return Integer(static_cast<unsigned long>(v));
    }
};

using RationalVector = std::vector<Rational>;

/// Raised for malformed user input (bad literals, missing table entries,
/// unknown ids). Carries a human-readable location in what().
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a caller breaks a documented precondition.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when a construction is asked for that cannot exist.
class UnsatisfiableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw InputError("rational with zero denominator");
    return Rational(num, den);
}

namespace detail {

inline bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

inline Integer parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s))
        throw InputError("not an exact rational literal: \"" + std::string(whole) + "\"");
    Integer z(std::string(s), 10);
    return negative ? Integer(-z) : z;
}

inline Integer pow10(unsigned long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

} // namespace detail

/// Parses "p", "p/q", or a finite decimal such as "-0.25" or "1.5e-3"
/// exactly. Anything else (including "inf", "nan", "pi") is rejected.
inline Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty())
        throw InputError("empty rational literal");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = detail::parse_integer(s.substr(0, slash), text);
        std::string_view den_text = s.substr(slash + 1);
        if (!den_text.empty() && den_text.front() == '+')
            den_text.remove_prefix(1);
        if (!detail::all_digits(den_text))
            throw InputError("not an exact rational literal: \"" + std::string(text) + "\"");
        return make_rational(num, Integer(std::string(den_text), 10));
    }

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        Integer ez = detail::parse_integer(s.substr(e + 1), text);
        if (!ez.fits_slong_p() || abs(ez) > 100000)
            throw InputError("exponent out of range in \"" + std::string(text) + "\"");
        exponent = ez.get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) ||
            (!int_part.empty() && !detail::all_digits(int_part)) ||
            (!frac_part.empty() && !detail::all_digits(frac_part)))
            throw InputError("not an exact rational literal: \"" + std::string(text) + "\"");
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!detail::all_digits(s))
            throw InputError("not an exact rational literal: \"" + std::string(text) + "\"");
        digits = std::string(s);
    }
    Integer mantissa(digits, 10);
    if (negative)
        mantissa = -mantissa;
    if (exponent >= 0)
        return Rational(mantissa * detail::pow10(static_cast<unsigned long>(exponent)));
    return make_rational(mantissa, detail::pow10(static_cast<unsigned long>(-exponent)));
}

/// "p" for integers, "p/q" otherwise. Inverse of parse_rational.
inline std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

inline int sign(const Rational& q)
{
    return sgn(q);
}

inline Rational abs_value(const Rational& q)
{
    return abs(q);
}

inline Rational l1_norm(std::span<const Rational> v)
{
    Rational s = 0;
    for (const auto& x : v)
        s += abs(x);
    return s;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    if (a.size() != b.size())
        throw ContractError("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline bool is_zero_vector(std::span<const Rational> v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

/// Flips the sign of v so that its first nonzero entry is positive.
inline RationalVector leading_positive(RationalVector v)
{
    for (const auto& x : v) {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : v)
                y = -y;
        break;
    }
    return v;
}

/// Scales v to an integer vector with content (gcd of entries) 1 and a
/// positive first nonzero entry. The zero vector is returned unchanged.
inline RationalVector primitive_integer_vector(RationalVector v)
{
    if (is_zero_vector(v))
        return v;
    Integer den_lcm = 1;
    for (const auto& x : v)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    Integer content = 0;
    for (auto& x : v) {
        x *= den_lcm;
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_num_mpz_t());
    }
    for (auto& x : v)
        x /= content;
    return leading_positive(std::move(v));
}

/// Scales v to unit l1 norm with a positive first nonzero entry.
inline RationalVector l1_normalized(RationalVector v)
{
    Rational norm = l1_norm(v);
    if (norm == 0)
        throw ContractError("l1_normalized: zero vector");
    for (auto& x : v)
        x /= norm;
    return leading_positive(std::move(v));
}

} // namespace superpos

#endif // SUPERPOS_RATIONAL_HPP
