#include "tropdiff/printing.hpp"

#include <sstream>

namespace tropdiff {

namespace {

// "t", "t^(1/2)", "t^(0,1)".
std::string t_str(const GroupVector& g, bool force_caret = false) {
    if (g.rank() == 1 && g[0] == 1 && !force_caret) return "t";
    std::ostringstream os;
    os << "t^(";
    for (int i = 0; i < g.rank(); ++i) {
        if (i) os << ",";
        os << rat_str(g[i]);
    }
    os << ")";
    return os.str();
}

std::string o_str(const GroupVector& prec) {
    return "O(" + t_str(prec, /*force_caret=*/true) + ")";
}

// Splits a leading minus off a single-atom rendering. Multi-term renderings
// are parenthesized by the field printer and never start with '-'.
bool strip_sign(std::string& s) {
    if (!s.empty() && s[0] == '-') {
        s.erase(s.begin());
        return true;
    }
    return false;
}

void join_term(std::ostringstream& os, int& count, bool negative,
               const std::string& body) {
    if (count == 0) {
        if (negative) os << "-";
    } else {
        os << (negative ? " - " : " + ");
    }
    os << body;
    ++count;
}

// One series term "c * t^gamma" without sign.
std::string term_body(const GroupVector& gamma, std::string cs) {
    if (gamma.is_zero()) return cs;
    std::string ts = t_str(gamma);
    if (cs == "1") return ts;
    return cs + "*" + ts;
}

// Generic polynomial-style coefficient * monomial composition.
// `coef` must already be sign-stripped when strippable.
std::string with_monomial(const std::string& coef, bool parenthesize,
                          const std::string& monomial) {
    // A multi-term coefficient needs parentheses even on the constant
    // monomial: it may start with '-' or contain '+' mid-expression.
    if (monomial.empty()) return parenthesize ? "(" + coef + ")" : coef;
    if (!parenthesize && coef == "1") return monomial;
    if (parenthesize) return "(" + coef + ")*" + monomial;
    return coef + "*" + monomial;
}

std::string monomial_str(const std::vector<std::string>& names,
                         const std::vector<long>& exps) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < exps.size(); ++j) {
        if (exps[j] == 0) continue;
        if (!first) os << "*";
        os << names[j];
        if (exps[j] != 1) os << "^" << exps[j];
        first = false;
    }
    return os.str();
}

std::vector<std::string> laurent_names(int nvars) {
    std::vector<std::string> names;
    if (nvars == 1) {
        names.push_back("x");
    } else {
        for (int j = 0; j < nvars; ++j)
            names.push_back("y" + std::to_string(j + 1));
    }
    return names;
}

std::vector<std::string> sigma_names(int levels) {
    std::vector<std::string> names;
    for (int j = 0; j < levels; ++j) {
        if (j == 0)
            names.push_back("x");
        else if (j == 1)
            names.push_back("s(x)");
        else
            names.push_back("s^" + std::to_string(j) + "(x)");
    }
    return names;
}

// Renders a series as a polynomial coefficient: single exact terms inline,
// anything longer or imprecise parenthesized.
void series_coefficient(const HahnSeries& c, std::string& out, bool& negative,
                        bool& parens) {
    const CycloField& k = c.ctx()->residue();
    negative = false;
    parens = false;
    if (c.exact() && c.terms().size() == 1) {
        const auto& [gamma, ce] = c.terms().front();
        std::string cs = k.str(ce);
        negative = strip_sign(cs);
        out = term_body(gamma, cs);
        return;
    }
    parens = true;
    out = hs_str(c);
}

} // namespace

std::string hs_str(const HahnSeries& f) {
    if (f.is_exact_zero()) return "0";
    const CycloField& k = f.ctx()->residue();
    std::ostringstream os;
    int count = 0;
    for (const auto& [gamma, c] : f.terms()) {
        std::string cs = k.str(c);
        bool neg = strip_sign(cs);
        join_term(os, count, neg, term_body(gamma, cs));
    }
    if (!f.exact()) {
        if (count == 0) return o_str(*f.precision());
        os << " + " << o_str(*f.precision());
    }
    return os.str();
}

std::string laurent_str(const LaurentPoly& f) {
    if (f.is_zero()) return "0";
    auto names = laurent_names(f.nvars());
    std::ostringstream os;
    int count = 0;
    for (const auto& [e, c] : f.coeffs()) {
        std::string coef;
        bool neg = false, parens = false;
        series_coefficient(c, coef, neg, parens);
        join_term(os, count, neg, with_monomial(coef, parens, monomial_str(names, e)));
    }
    return os.str();
}

std::string sp_str(const SigmaPolynomial& g) {
    if (g.is_zero()) return "0";
    auto names = sigma_names(g.levels());
    std::ostringstream os;
    int count = 0;
    for (const auto& [e, c] : g.coeffs()) {
        std::vector<long> le(e.begin(), e.end());
        std::string coef;
        bool neg = false, parens = false;
        series_coefficient(c, coef, neg, parens);
        join_term(os, count, neg, with_monomial(coef, parens, monomial_str(names, le)));
    }
    return os.str();
}

std::string residue_poly_str(const ResiduePoly& f) {
    if (f.coeffs().empty()) return "0";
    const CycloField& k = f.ctx()->residue();
    auto names = laurent_names(f.nvars());
    std::ostringstream os;
    int count = 0;
    for (const auto& [e, c] : f.coeffs()) {
        std::string coef = k.str(c);
        bool neg = strip_sign(coef);
        join_term(os, count, neg, with_monomial(coef, false, monomial_str(names, e)));
    }
    return os.str();
}

std::string zs_str(const ZSigmaPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    int count = 0;
    for (const auto& [h, m] : p.coeffs()) {
        long mm = m;
        bool neg = mm < 0;
        if (neg) mm = -mm;
        std::string body;
        if (h == 0) {
            body = std::to_string(mm);
        } else {
            std::string name = (h == 1) ? "s" : "s^" + std::to_string(h);
            body = (mm == 1) ? name : std::to_string(mm) + "*" + name;
        }
        join_term(os, count, neg, body);
    }
    return os.str();
}

} // namespace tropdiff
