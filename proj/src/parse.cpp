#include "tropdiff/parse.hpp"

#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <utility>

namespace tropdiff {

namespace {

enum class Tok {
    num, ident, plus, minus, star, slash, caret,
    lparen, rparen, comma, lbracket, rbracket, end
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

    [[noreturn]] void error(const std::string& msg) const {
        fail(errc::parse_error,
             msg + " at position " + std::to_string(cur_.pos) + " in \"" + s_ + "\"");
    }

    Token expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) error("expected " + what);
        return take();
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        cur_.pos = i_;
        if (i_ >= s_.size()) {
            cur_ = {Tok::end, "", i_};
            return;
        }
        char c = s_[i_];
        auto one = [&](Tok k) {
            cur_ = {k, std::string(1, c), i_};
            ++i_;
        };
        switch (c) {
        case '+': one(Tok::plus); return;
        case '-': one(Tok::minus); return;
        case '*': one(Tok::star); return;
        case '/': one(Tok::slash); return;
        case '^': one(Tok::caret); return;
        case '(': one(Tok::lparen); return;
        case ')': one(Tok::rparen); return;
        case ',': one(Tok::comma); return;
        case '[': one(Tok::lbracket); return;
        case ']': one(Tok::rbracket); return;
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            cur_ = {Tok::num, s_.substr(i_, j - i_), i_};
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])))) ++j;
            cur_ = {Tok::ident, s_.substr(i_, j - i_), i_};
            i_ = j;
            return;
        }
        cur_ = {Tok::ident, std::string(1, c), i_};
        fail(errc::parse_error, std::string("unexpected character '") + c +
                                    "' at position " + std::to_string(i_) +
                                    " in \"" + s_ + "\"");
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token cur_;
};

enum class Mode { series, laurent, sigma };

// Sparse polynomial value: exponent keys with trailing zeros trimmed, so a
// key of {} is the constant monomial regardless of the final arity.
using Key = std::vector<long>;

Key trim(Key k) {
    while (!k.empty() && k.back() == 0) k.pop_back();
    return k;
}

struct PExpr {
    std::map<Key, HahnSeries> m;
};

class ExprParser {
public:
    ExprParser(Ctx ctx, Lexer& lx, Mode mode)
        : ctx_(std::move(ctx)), lx_(lx), mode_(mode) {}

    PExpr parse_expr() {
        bool neg = false;
        if (lx_.peek().kind == Tok::minus) {
            lx_.take();
            neg = true;
        } else if (lx_.peek().kind == Tok::plus) {
            lx_.take();
        }
        PExpr acc = parse_term();
        if (neg) acc = negate(acc);
        while (lx_.peek().kind == Tok::plus || lx_.peek().kind == Tok::minus) {
            bool minus = lx_.take().kind == Tok::minus;
            PExpr rhs = parse_term();
            acc = add(acc, minus ? negate(rhs) : rhs);
        }
        return acc;
    }

    // Variable usage bookkeeping for arity inference / validation.
    bool used_x = false;
    int max_y = 0; // highest y-index used, 0 when none

private:
    PExpr parse_term() {
        PExpr acc = parse_factor();
        while (lx_.peek().kind == Tok::star) {
            lx_.take();
            acc = mul(acc, parse_factor());
        }
        return acc;
    }

    PExpr parse_factor() {
        PExpr base = parse_primary();
        if (lx_.peek().kind == Tok::caret) {
            lx_.take();
            long e = parse_signed_long();
            base = pow(base, e);
        }
        return base;
    }

    PExpr parse_primary() {
        const Token& t = lx_.peek();
        switch (t.kind) {
        case Tok::num:
            return constant(series_const(parse_rational()));
        case Tok::lparen: {
            lx_.take();
            PExpr e = parse_expr();
            lx_.expect(Tok::rparen, "')'");
            return e;
        }
        case Tok::ident:
            return parse_ident();
        default:
            lx_.error("expected a value");
        }
    }

    PExpr parse_ident() {
        Token t = lx_.take();
        const std::string& w = t.text;
        const CycloField& k = ctx_->residue();
        if (w == "t") return constant(parse_t_power());
        if (w == "O") {
            lx_.expect(Tok::lparen, "'('");
            Token inner = lx_.expect(Tok::ident, "'t'");
            if (inner.text != "t") lx_.error("expected 't' inside O(...)");
            HahnSeries mono = parse_t_power();
            lx_.expect(Tok::rparen, "')'");
            return constant(HahnSeries(ctx_, {}, hs_v(mono)));
        }
        if (w == "i") {
            if (k.n() % 4 != 0)
                fail(errc::invalid_argument,
                     "'i' needs a residue field containing a 4th root of unity");
            return constant(hs_lift(ctx_, k.zeta_pow(k.n() / 4)));
        }
        if (w == "z") return constant(hs_lift(ctx_, k.zeta()));
        if (w == "x") {
            require_vars("x");
            used_x = true;
            return variable(0);
        }
        if (w == "s" && mode_ == Mode::sigma) {
            long level = 1;
            if (lx_.peek().kind == Tok::caret) {
                lx_.take();
                level = parse_signed_long();
                if (level < 0) lx_.error("negative power of s");
            }
            lx_.expect(Tok::lparen, "'('");
            Token arg = lx_.expect(Tok::ident, "'x'");
            if (arg.text != "x") lx_.error("expected 'x' inside s(...)");
            lx_.expect(Tok::rparen, "')'");
            used_x = true;
            return variable(level);
        }
        if (w.size() >= 2 && w[0] == 'y') {
            bool digits = true;
            for (std::size_t i = 1; i < w.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(w[i]))) digits = false;
            if (digits) {
                require_vars(w);
                if (mode_ == Mode::sigma) lx_.error("'" + w + "' is not allowed here");
                long idx = std::stol(w.substr(1));
                if (idx < 1) lx_.error("variable indices start at y1");
                max_y = std::max(max_y, static_cast<int>(idx));
                return variable(idx - 1);
            }
        }
        lx_.error("unknown name '" + w + "'");
    }

    void require_vars(const std::string& w) {
        if (mode_ == Mode::series)
            lx_.error("variable '" + w + "' is not allowed in a series");
    }

    // After consuming 't': optional exponent.
    HahnSeries parse_t_power() {
        GroupVector gamma = GroupVector::zero(ctx_->rank());
        if (lx_.peek().kind != Tok::caret) {
            if (ctx_->rank() != 1)
                lx_.error("bare 't' needs a rank-1 value group; write t^(...)");
            return hs_section(ctx_, GroupVector::scalar(1));
        }
        lx_.take();
        if (lx_.peek().kind == Tok::lparen) {
            lx_.take();
            std::vector<Rat> coords;
            coords.push_back(parse_signed_rational());
            while (lx_.peek().kind == Tok::comma) {
                lx_.take();
                coords.push_back(parse_signed_rational());
            }
            lx_.expect(Tok::rparen, "')'");
            if (static_cast<int>(coords.size()) != ctx_->rank())
                fail(errc::rank_mismatch,
                     "exponent rank " + std::to_string(coords.size()) +
                         " does not match value group rank " +
                         std::to_string(ctx_->rank()));
            gamma = GroupVector(std::move(coords));
        } else {
            if (ctx_->rank() != 1)
                lx_.error("scalar exponent needs a rank-1 value group");
            gamma = GroupVector::scalar(parse_signed_rational());
        }
        return hs_section(ctx_, gamma);
    }

    Rat parse_rational() {
        Token n = lx_.expect(Tok::num, "a number");
        std::string text = n.text;
        if (lx_.peek().kind == Tok::slash) {
            lx_.take();
            Token d = lx_.expect(Tok::num, "a denominator");
            text += "/" + d.text;
        }
        return parse_rat(text);
    }

    Rat parse_signed_rational() {
        bool neg = false;
        if (lx_.peek().kind == Tok::minus) {
            lx_.take();
            neg = true;
        }
        Rat q = parse_rational();
        return neg ? Rat(-q) : q;
    }

    long parse_signed_long() {
        bool neg = false;
        if (lx_.peek().kind == Tok::minus) {
            lx_.take();
            neg = true;
        }
        Token n = lx_.expect(Tok::num, "an integer");
        long v = 0;
        try {
            v = std::stol(n.text);
        } catch (const std::exception&) {
            lx_.error("integer out of range");
        }
        return neg ? -v : v;
    }

    HahnSeries series_const(const Rat& q) {
        return hs_lift(ctx_, ctx_->residue().from_rat(q));
    }

    PExpr constant(HahnSeries s) {
        PExpr e;
        if (!s.is_exact_zero()) e.m.emplace(Key{}, std::move(s));
        return e;
    }

    PExpr variable(long index) {
        Key k(static_cast<std::size_t>(index) + 1, 0);
        k[static_cast<std::size_t>(index)] = 1;
        PExpr e;
        e.m.emplace(trim(std::move(k)), HahnSeries::one(ctx_));
        return e;
    }

    PExpr add(const PExpr& a, const PExpr& b) {
        PExpr r = a;
        for (const auto& [k, c] : b.m) {
            auto it = r.m.find(k);
            if (it == r.m.end()) {
                r.m.emplace(k, c);
            } else {
                it->second = hs_add(it->second, c);
                if (it->second.is_exact_zero()) r.m.erase(it);
            }
        }
        return r;
    }

    PExpr negate(const PExpr& a) {
        PExpr r;
        for (const auto& [k, c] : a.m) r.m.emplace(k, hs_neg(c));
        return r;
    }

    PExpr mul(const PExpr& a, const PExpr& b) {
        PExpr r;
        for (const auto& [ka, ca] : a.m) {
            for (const auto& [kb, cb] : b.m) {
                Key k(std::max(ka.size(), kb.size()), 0);
                for (std::size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
                for (std::size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
                k = trim(std::move(k));
                HahnSeries c = hs_mul(ca, cb);
                auto it = r.m.find(k);
                if (it == r.m.end()) {
                    if (!c.is_exact_zero()) r.m.emplace(std::move(k), std::move(c));
                } else {
                    it->second = hs_add(it->second, c);
                    if (it->second.is_exact_zero()) r.m.erase(it);
                }
            }
        }
        return r;
    }

    PExpr pow(const PExpr& a, long e) {
        if (e == 0) return constant(HahnSeries::one(ctx_));
        if (e < 0) {
            if (a.m.size() != 1)
                fail(errc::invalid_argument,
                     "negative power of a non-monomial expression");
            const auto& [k, c] = *a.m.begin();
            if (mode_ == Mode::sigma && !k.empty())
                fail(errc::invalid_argument,
                     "negative variable powers are not allowed in a difference polynomial");
            PExpr inv;
            Key nk = k;
            for (auto& v : nk) v = -v;
            inv.m.emplace(trim(std::move(nk)), hs_inv(c));
            return pow_positive(inv, -e);
        }
        return pow_positive(a, e);
    }

    PExpr pow_positive(const PExpr& a, long e) {
        PExpr r = constant(HahnSeries::one(ctx_));
        PExpr base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            e >>= 1;
            if (e > 0) base = mul(base, base);
        }
        return r;
    }

    Ctx ctx_;
    Lexer& lx_;
    Mode mode_;
};

HahnSeries to_series(const Ctx& ctx, const PExpr& e) {
    HahnSeries r = HahnSeries::zero(ctx);
    for (const auto& [k, c] : e.m) {
        if (!k.empty())
            fail(errc::parse_error, "variables are not allowed in a series");
        r = hs_add(r, c);
    }
    return r;
}

} // namespace

HahnSeries parse_series(const Ctx& ctx, const std::string& text) {
    Lexer lx(text);
    ExprParser p(ctx, lx, Mode::series);
    PExpr e = p.parse_expr();
    lx.expect(Tok::end, "end of input");
    return to_series(ctx, e);
}

std::vector<HahnSeries> parse_series_vector(const Ctx& ctx, const std::string& text) {
    Lexer lx(text);
    lx.expect(Tok::lbracket, "'['");
    std::vector<HahnSeries> out;
    if (lx.peek().kind != Tok::rbracket) {
        for (;;) {
            ExprParser p(ctx, lx, Mode::series);
            out.push_back(to_series(ctx, p.parse_expr()));
            if (lx.peek().kind == Tok::comma) {
                lx.take();
                continue;
            }
            break;
        }
    }
    lx.expect(Tok::rbracket, "']'");
    lx.expect(Tok::end, "end of input");
    return out;
}

LaurentPoly parse_laurent(const Ctx& ctx, const std::string& text, int nvars) {
    Lexer lx(text);
    ExprParser p(ctx, lx, Mode::laurent);
    PExpr e = p.parse_expr();
    lx.expect(Tok::end, "end of input");
    if (p.used_x && p.max_y > 0)
        fail(errc::parse_error, "cannot mix 'x' with 'y1..yk' variables");
    int inferred = p.used_x ? 1 : std::max(p.max_y, 1);
    if (nvars < 0) nvars = inferred;
    if (inferred > nvars)
        fail(errc::parse_error, "expression uses more variables than declared");
    std::map<Exponent, HahnSeries> coeffs;
    for (const auto& [k, c] : e.m) {
        Exponent exp(static_cast<std::size_t>(nvars), 0);
        for (std::size_t i = 0; i < k.size(); ++i) exp[i] = k[i];
        coeffs.emplace(std::move(exp), c);
    }
    return LaurentPoly(ctx, nvars, std::move(coeffs));
}

SigmaPolynomial parse_sigma_poly(const Ctx& ctx, const std::string& text) {
    Lexer lx(text);
    ExprParser p(ctx, lx, Mode::sigma);
    PExpr e = p.parse_expr();
    lx.expect(Tok::end, "end of input");
    std::size_t levels = 1;
    for (const auto& [k, c] : e.m) levels = std::max(levels, k.size());
    std::map<MIdx, HahnSeries> coeffs;
    for (const auto& [k, c] : e.m) {
        MIdx idx(levels, 0);
        for (std::size_t i = 0; i < k.size(); ++i)
            idx[i] = static_cast<int>(k[i]);
        coeffs.emplace(std::move(idx), c);
    }
    return SigmaPolynomial(ctx, std::move(coeffs));
}

namespace {

long zs_take_int(Lexer& lx) {
    Token n = lx.expect(Tok::num, "an integer");
    try {
        return std::stol(n.text);
    } catch (const std::exception&) {
        lx.error("integer out of range");
    }
}

// coefficient ['*' s-power] | s-power, where s-power := 's' ['^' signed-int].
void zs_term(Lexer& lx, std::map<long, long>& acc, bool negative) {
    long coeff = 1;
    bool have_coeff = false;
    if (lx.peek().kind == Tok::num) {
        coeff = zs_take_int(lx);
        have_coeff = true;
    }
    long power = 0;
    bool have_s = false;
    if ((have_coeff && lx.peek().kind == Tok::star) ||
        (!have_coeff && lx.peek().kind == Tok::ident)) {
        if (have_coeff) lx.take();
        Token s = lx.expect(Tok::ident, "'s'");
        if (s.text != "s") lx.error("expected 's'");
        have_s = true;
        power = 1;
        if (lx.peek().kind == Tok::caret) {
            lx.take();
            bool neg = false;
            if (lx.peek().kind == Tok::minus) {
                lx.take();
                neg = true;
            }
            power = zs_take_int(lx);
            if (neg) power = -power;
        }
    }
    if (!have_coeff && !have_s) lx.error("expected a term");
    acc[power] += negative ? -coeff : coeff;
}

ZSigmaPoly zs_expr(Lexer& lx) {
    std::map<long, long> acc;
    bool neg = false;
    if (lx.peek().kind == Tok::minus) {
        lx.take();
        neg = true;
    } else if (lx.peek().kind == Tok::plus) {
        lx.take();
    }
    zs_term(lx, acc, neg);
    while (lx.peek().kind == Tok::plus || lx.peek().kind == Tok::minus) {
        bool minus = lx.take().kind == Tok::minus;
        zs_term(lx, acc, minus);
    }
    return ZSigmaPoly(std::move(acc));
}

} // namespace

ZSigmaPoly parse_zsigma(const std::string& text) {
    Lexer lx(text);
    ZSigmaPoly p = zs_expr(lx);
    lx.expect(Tok::end, "end of input");
    return p;
}

ZSigmaMatrix parse_zsigma_matrix(const std::string& text) {
    Lexer lx(text);
    lx.expect(Tok::lbracket, "'['");
    ZSigmaMatrix rows;
    for (;;) {
        lx.expect(Tok::lbracket, "'['");
        std::vector<ZSigmaPoly> row;
        if (lx.peek().kind != Tok::rbracket) {
            for (;;) {
                row.push_back(zs_expr(lx));
                if (lx.peek().kind == Tok::comma) {
                    lx.take();
                    continue;
                }
                break;
            }
        }
        lx.expect(Tok::rbracket, "']'");
        rows.push_back(std::move(row));
        if (lx.peek().kind == Tok::comma) {
            lx.take();
            continue;
        }
        break;
    }
    lx.expect(Tok::rbracket, "']'");
    lx.expect(Tok::end, "end of input");
    return rows;
}

GroupVector parse_group_vector(const std::string& text, int rank) {
    Lexer lx(text);
    if (lx.peek().kind == Tok::ident && lx.peek().text == "inf") {
        lx.take();
        lx.expect(Tok::end, "end of input");
        return GroupVector::infinity();
    }
    std::vector<Rat> coords;
    auto signed_rat = [&]() {
        bool neg = false;
        if (lx.peek().kind == Tok::minus) {
            lx.take();
            neg = true;
        }
        Token n = lx.expect(Tok::num, "a number");
        std::string s = n.text;
        if (lx.peek().kind == Tok::slash) {
            lx.take();
            s += "/" + lx.expect(Tok::num, "a denominator").text;
        }
        Rat q = parse_rat(s);
        return neg ? Rat(-q) : q;
    };
    if (lx.peek().kind == Tok::lparen) {
        lx.take();
        coords.push_back(signed_rat());
        while (lx.peek().kind == Tok::comma) {
            lx.take();
            coords.push_back(signed_rat());
        }
        lx.expect(Tok::rparen, "')'");
    } else {
        coords.push_back(signed_rat());
    }
    lx.expect(Tok::end, "end of input");
    if (static_cast<int>(coords.size()) != rank)
        fail(errc::rank_mismatch,
             "vector rank " + std::to_string(coords.size()) +
                 " does not match value group rank " + std::to_string(rank));
    return GroupVector(std::move(coords));
}

} // namespace tropdiff
