#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stabpoly {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;

inline Int rat_floor(const Rat& q) {
    Int n = boost::multiprecision::numerator(q);
    Int d = boost::multiprecision::denominator(q);  // d > 0 by normalization
    Int f = n / d;
    if (n < 0 && f * d != n) --f;
    return f;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

// Fractional part in [0, 1).
inline Rat rat_frac(const Rat& q) { return q - Rat(rat_floor(q)); }

inline bool is_integer(const Rat& q) { return boost::multiprecision::denominator(q) == 1; }

// Parses "p", "-p", "p/q", "-p/q". Exact; no float syntax accepted.
inline Rat parse_rat(std::string_view s) {
    auto bad = [&] { throw std::invalid_argument("not an exact rational: '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    size_t slash = s.find('/');
    auto parse_int = [&](std::string_view t) -> Int {
        if (t.empty()) bad();
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) bad();
        for (size_t j = i; j < t.size(); ++j)
            if (t[j] < '0' || t[j] > '9') bad();
        return Int(std::string(t));
    };
    if (slash == std::string_view::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) bad();
    return Rat(num, den);
}

inline std::string rat_str(const Rat& q) {
    Int n = boost::multiprecision::numerator(q);
    Int d = boost::multiprecision::denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline std::string ratvec_str(const RatVec& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += rat_str(v[i]);
    }
    return out;
}

inline RatVec parse_ratvec(std::string_view s) {
    RatVec out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string_view::npos) comma = s.size();
        out.push_back(parse_rat(s.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == s.size()) break;
    }
    return out;
}

}  // namespace stabpoly
