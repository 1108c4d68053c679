#ifndef NSBOX_RATIONAL_HPP
#define NSBOX_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsbox {

using BigInt = boost::multiprecision::cpp_int;

/**
 * Exact rational number with arbitrary-precision numerator and denominator.
 * Always kept canonical: gcd-reduced, denominator > 0. No floating point
 * is used anywhere in this library, so equality of values is equality of
 * representations.
 */
using Rational = boost::multiprecision::cpp_rational;

using RatVector = std::vector<Rational>;

struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses "n/d" or "n" with optional leading sign. Rejects everything else
/// (in particular decimal floats and zero denominators).
inline Rational parse_rational(const std::string& text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = (text[pos] == '-');
        ++pos;
    }
    auto read_digits = [&](const char* what) {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start)
            throw format_error("invalid rational '" + text + "': missing " + what);
        return BigInt(text.substr(start, pos - start));
    };
    BigInt num = read_digits("numerator");
    BigInt den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_digits("denominator");
        if (den == 0)
            throw format_error("invalid rational '" + text + "': zero denominator");
    }
    if (pos != text.size())
        throw format_error("invalid rational '" + text + "'");
    if (negative) num = -num;
    return Rational(num, den);
}

/// Canonical text form: "n/d", or just "n" for integers.
inline std::string rational_to_string(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

/// Size proxy used for pivot selection: bit length of numerator times
/// denominator. Smaller pivots keep coefficient growth down across the
/// many small eliminations the ensemble enumerator performs.
inline std::size_t rational_bit_size(const Rational& value) {
    BigInt product = abs(numerator(value)) * denominator(value);
    return product == 0 ? 0 : msb(product) + 1;
}

}  // namespace nsbox

#endif
