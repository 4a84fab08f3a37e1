#include "wmc/exact.hpp"

#include "wmc/errors.hpp"

namespace wmc {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    auto well_formed = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!well_formed(num) || !well_formed(den) || den[0] == '-' || den[0] == '+')
        throw ValidationError("not an exact rational: '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    BigInt d(den);
    if (d == 0) throw ValidationError("zero denominator in '" + s + "'");
    Rational q(BigInt(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

}  // namespace wmc
