#include "surfcol/rational.hpp"

#include <regex>

#include "surfcol/errors.hpp"

namespace surfcol {

Rational parse_rational(const std::string& text) {
    static const std::regex pattern(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw InvalidInput("not a rational number: '" + text + "'");
    boost::multiprecision::cpp_int p(m[1].str()), q(1);
    if (m[2].matched) q = boost::multiprecision::cpp_int(m[2].str());
    if (q == 0) throw InvalidInput("zero denominator in '" + text + "'");
    return Rational(p, q);
}

std::string format_rational(const Rational& r) {
    auto p = numerator(r), q = denominator(r);
    if (q == 1) return p.str();
    return p.str() + "/" + q.str();
}

} // namespace surfcol
