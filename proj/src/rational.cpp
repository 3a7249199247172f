#include "natred/rational.hpp"

#include "natred/errors.hpp"

namespace natred {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& s) {
    auto bad = [&]() { return Error(ErrorKind::SchemaError, "malformed rational '" + s + "'"); };
    if (s.empty()) throw bad();
    size_t i = 0;
    if (s[0] == '-') i = 1;
    size_t slash = s.find('/');
    auto digits = [&](size_t a, size_t b) {
        if (a >= b) return false;
        for (size_t k = a; k < b; ++k)
            if (s[k] < '0' || s[k] > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!digits(i, s.size())) throw bad();
    } else {
        if (!digits(i, slash) || !digits(slash + 1, s.size())) throw bad();
        bool zero_den = true;
        for (size_t k = slash + 1; k < s.size(); ++k)
            if (s[k] != '0') zero_den = false;
        if (zero_den) throw bad();
    }
    Rational r(s, 10);
    r.canonicalize();
    return r;
}

}  // namespace natred
