#include "qlm/rational.hpp"

#include <cctype>
#include <sstream>

namespace qlm {

std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << rat_num(r);
    if (rat_den(r) != 1) os << "/" << rat_den(r);
    return os.str();
}

Rational rat_parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ValidationError("empty rational literal");
    auto ok_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!ok_int(s)) throw ValidationError("bad rational literal: " + text);
            return Rational(Integer(s));
        }
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!ok_int(p) || !ok_int(q)) throw ValidationError("bad rational literal: " + text);
        Integer den(q);
        if (den == 0) throw ValidationError("zero denominator: " + text);
        return Rational(Integer(p), den);
    } catch (const std::runtime_error& e) {
        throw ValidationError("bad rational literal '" + text + "': " + e.what());
    }
}

}  // namespace qlm
