#include "wlg/rational.hpp"

#include "wlg/error.hpp"

#include <cctype>
#include <ostream>

namespace wlg {

Rational::Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(BigInt num, BigInt den) {
    require(!den.is_zero(), "ZeroDenominator", "rational denominator must be nonzero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    v_.assign(boost::multiprecision::cpp_rational(std::move(num), std::move(den)));
}

Rational& Rational::operator/=(const Rational& o) {
    require(!o.v_.is_zero(), "ZeroDenominator", "division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow(unsigned e) const {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
}

Rational Rational::parse(const std::string& text) {
    const auto bad = [&]() {
        fail("MalformedRational", "cannot parse rational from '" + text + "'");
    };
    std::size_t i = 0, n = text.size();
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t end = n;
    while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (i >= end) bad();

    const auto read_int = [&](std::size_t from, std::size_t to) -> BigInt {
        if (from >= to) bad();
        bool neg = false;
        if (text[from] == '+' || text[from] == '-') {
            neg = text[from] == '-';
            ++from;
        }
        if (from >= to) bad();
        BigInt value(0);
        for (std::size_t p = from; p < to; ++p) {
            if (!std::isdigit(static_cast<unsigned char>(text[p]))) bad();
            value = value * 10 + (text[p] - '0');
        }
        return neg ? BigInt(-value) : value;
    };

    std::size_t slash = text.find('/', i);
    if (slash == std::string::npos || slash >= end) return Rational(read_int(i, end), BigInt(1));
    BigInt num = read_int(i, slash);
    BigInt den = read_int(slash + 1, end);
    require(!den.is_zero(), "MalformedRational", "zero denominator in '" + text + "'");
    return Rational(std::move(num), std::move(den));
}

std::string Rational::str() const {
    std::string s = numerator().str();
    BigInt den = denominator();
    if (den != 1) s += "/" + den.str();
    return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace wlg
