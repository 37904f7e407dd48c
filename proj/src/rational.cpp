#include "tropdiff/rational.hpp"

#include <cctype>

namespace tropdiff {

Rat parse_rat(const std::string& s) {
    if (s.empty()) fail(errc::parse_error, "empty rational literal");
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        return j;
    };
    if (s[i] == '+' || s[i] == '-') ++i;
    std::size_t num_end = digits(i);
    if (num_end == i) fail(errc::parse_error, "bad rational literal '" + s + "'");
    if (num_end == s.size()) {
        Rat q(s, 10);
        q.canonicalize();
        return q;
    }
    if (s[num_end] != '/')
        fail(errc::parse_error, "bad rational literal '" + s + "'");
    std::size_t den_begin = num_end + 1;
    std::size_t den_end = digits(den_begin);
    if (den_end == den_begin || den_end != s.size())
        fail(errc::parse_error, "bad rational literal '" + s + "'");
    Int den(s.substr(den_begin), 10);
    if (den == 0) fail(errc::parse_error, "zero denominator in '" + s + "'");
    Rat q(s, 10);
    q.canonicalize();
    return q;
}

} // namespace tropdiff
