#include "tw/rational.hpp"

#include <cctype>

namespace tw {

namespace {

bool parse_integer(const std::string& s, Integer* out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    }
    *out = Integer(s);
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        Integer p;
        if (!parse_integer(s, &p)) return std::nullopt;
        return Rational(p);
    }
    if (s.find('/', slash + 1) != std::string::npos) return std::nullopt;
    Integer p, q;
    if (!parse_integer(s.substr(0, slash), &p)) return std::nullopt;
    const std::string den = s.substr(slash + 1);
    if (!den.empty() && (den[0] == '+' || den[0] == '-')) return std::nullopt;
    if (!parse_integer(den, &q)) return std::nullopt;
    if (q == 0) return std::nullopt;
    return Rational(p, q);
}

std::string format_rational(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace tw
