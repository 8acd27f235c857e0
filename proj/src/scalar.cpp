#include "coindex/scalar.hpp"

#include <sstream>

namespace coindex {

std::string to_string(const mpq_class& q) {
    std::ostringstream os;
    os << q.get_num();
    if (q.get_den() != 1) os << "/" << q.get_den();
    return os.str();
}

std::string to_string(const GaussRat& x) {
    if (x.im == 0) return to_string(x.re);
    std::ostringstream os;
    if (x.re != 0) {
        os << to_string(x.re);
        os << (x.im > 0 ? "+" : "-");
        mpq_class a = abs(x.im);
        if (a != 1) os << to_string(a) << "*";
        os << "i";
    } else {
        if (x.im == 1) {
            os << "i";
        } else if (x.im == -1) {
            os << "-i";
        } else {
            os << to_string(x.im) << "*i";
        }
    }
    return os.str();
}

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw config_error("empty rational literal");
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw config_error("bad rational literal: " + s);
    }
}

GaussRat parse_gauss_rat(const std::string& s) {
    // accepted forms: "p/q", "p", "p/q+r/s*i", "p/q-r/s*i", "i", "-i", "r*i"
    std::string t;
    for (char c : s)
        if (!isspace((unsigned char)c)) t += c;
    if (t.empty()) throw config_error("empty Gaussian rational literal");
    auto tail_i = [&](const std::string& u) -> bool {
        return !u.empty() && u.back() == 'i';
    };
    if (!tail_i(t)) return GaussRat(parse_rational(t));
    // split at the last +/- that is not a leading sign and not inside "/"
    size_t split = std::string::npos;
    for (size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/' && t[k - 1] != '+' && t[k - 1] != '-') {
            split = k;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? "" : t.substr(0, split);
    std::string im_part = split == std::string::npos ? t : t.substr(split);
    // strip trailing "i" and optional "*"
    im_part.pop_back();
    if (!im_part.empty() && im_part.back() == '*') im_part.pop_back();
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    GaussRat out;
    out.im = parse_rational(im_part);
    out.re = re_part.empty() ? mpq_class(0) : parse_rational(re_part);
    return out;
}

}  // namespace coindex
