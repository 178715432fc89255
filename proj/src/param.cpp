#include "xlab/param.hpp"

#include <cctype>
#include <cstdio>
#include <numeric>

#include "xlab/errors.hpp"

namespace xlab {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

long parse_long(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw Error(ErrorKind::Input, "cannot parse parameter value '" + whole + "'");
    }
    if (used != s.size()) throw Error(ErrorKind::Input, "cannot parse parameter value '" + whole + "'");
    return v;
}

}  // namespace

ParamValue ParamValue::pi_fraction(long num, long den) {
    if (den == 0) throw Error(ErrorKind::Input, "zero denominator in pi fraction");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long g = std::gcd(num, den);
    ParamValue p;
    p.pi_num = g == 0 ? 0 : num / g;
    p.pi_den = g == 0 ? 1 : den / g;
    return p;
}

double ParamValue::approx() const {
    return offset + static_cast<double>(pi_num) * 3.14159265358979323846 / static_cast<double>(pi_den);
}

ParamValue ParamValue::plus_pi(long num, long den) const {
    ParamValue frac = pi_fraction(pi_num * den + num * pi_den, pi_den * den);
    frac.offset = offset;
    return frac;
}

ParamValue ParamValue::plus(double delta) const {
    ParamValue p = *this;
    p.offset += delta;
    return p;
}

ParamValue ParamValue::parse(const std::string& text) {
    const std::string s = trim(text);
    const auto pos = s.find("pi");
    if (pos == std::string::npos) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Input, "cannot parse parameter value '" + text + "'");
        }
        if (used != s.size()) throw Error(ErrorKind::Input, "cannot parse parameter value '" + text + "'");
        return {v};
    }
    std::string head = trim(s.substr(0, pos));
    std::string tail = trim(s.substr(pos + 2));
    if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
    long num = 1;
    if (head == "-") {
        num = -1;
    } else if (head == "+" || head.empty()) {
        num = 1;
    } else {
        num = parse_long(head, text);
    }
    long den = 1;
    if (!tail.empty()) {
        if (tail.front() != '/') throw Error(ErrorKind::Input, "cannot parse parameter value '" + text + "'");
        den = parse_long(trim(tail.substr(1)), text);
    }
    return pi_fraction(num, den);
}

std::string ParamValue::to_string() const {
    char buf[64];
    if (pi_num == 0) {
        std::snprintf(buf, sizeof buf, "%.17g", offset);
    } else if (offset == 0.0) {
        std::snprintf(buf, sizeof buf, "%ld*pi/%ld", pi_num, pi_den);
    } else {
        std::snprintf(buf, sizeof buf, "%.17g%+ld*pi/%ld", offset, pi_num, pi_den);
    }
    return buf;
}

}  // namespace xlab
