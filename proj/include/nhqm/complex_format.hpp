#pragma once

// Text grammar for complex scalars used in configs and reports:
//   <float> | <float>(+|-)<float>i      e.g.  "1.5-2i", "0.25", "-3+0.5i"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "nhqm/core.hpp"

namespace nhqm {

inline Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ConfigError("empty complex literal");

    auto parse_float = [](const std::string& t) -> double {
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size() || t.empty())
            throw ConfigError("bad float in complex literal: '" + t + "'");
        return v;
    };

    if (s.back() != 'i') return Complex(parse_float(s), 0.0);

    std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not leading and not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos)
        throw ConfigError("complex literal must be <float>(+|-)<float>i: '" + text + "'");
    double re = parse_float(body.substr(0, split));
    double im = parse_float(body.substr(split));
    return Complex(re, im);
}

inline std::string format_double(double v, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

inline std::string format_complex(Complex z, int digits = 17) {
    if (z.imag() == 0.0) return format_double(z.real(), digits);
    std::string s = format_double(z.real(), digits);
    s += (z.imag() < 0.0 || (z.imag() == 0.0 && std::signbit(z.imag()))) ? "-" : "+";
    s += format_double(std::abs(z.imag()), digits);
    s += "i";
    return s;
}

}  // namespace nhqm
