#include "tropdiff/sigma_poly.hpp"

#include <algorithm>

namespace tropdiff {

namespace {

constexpr int kLiftCap = 10000;

MIdx resized(MIdx i, std::size_t len) {
    i.resize(len, 0);
    return i;
}

Rat binom(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    Rat r(1);
    for (int j = 1; j <= k; ++j) r *= make_rat(n - j + 1, j);
    return r;
}

} // namespace

SigmaPolynomial::SigmaPolynomial(Ctx ctx, std::map<MIdx, HahnSeries> coeffs)
    : ctx_(std::move(ctx)) {
    if (!ctx_) fail(errc::invalid_argument, "polynomial without a model context");
    // Find the highest level actually used, then re-key at uniform length.
    int top = 0;
    for (const auto& [i, c] : coeffs) {
        if (c.indistinguishable_from_zero() && c.exact()) continue;
        check_same_context(ctx_, c.ctx());
        for (std::size_t j = 0; j < i.size(); ++j) {
            if (i[j] < 0)
                fail(errc::invalid_argument, "negative exponent in difference monomial");
            if (i[j] > 0) top = std::max(top, static_cast<int>(j));
        }
    }
    levels_ = top + 1;
    for (auto& [i, c] : coeffs) {
        if (c.is_exact_zero()) continue;
        MIdx key = resized(i, static_cast<std::size_t>(levels_));
        auto it = coeffs_.find(key);
        if (it == coeffs_.end()) {
            coeffs_.emplace(std::move(key), c);
        } else {
            it->second = hs_add(it->second, c);
            if (it->second.is_exact_zero()) coeffs_.erase(it);
        }
    }
}

SigmaPolynomial SigmaPolynomial::constant(const HahnSeries& c) {
    std::map<MIdx, HahnSeries> m;
    m.emplace(MIdx{0}, c);
    return SigmaPolynomial(c.ctx(), std::move(m));
}

SigmaPolynomial SigmaPolynomial::variable(const Ctx& ctx, int level) {
    if (level < 0) fail(errc::invalid_argument, "negative sigma level");
    MIdx i(static_cast<std::size_t>(level) + 1, 0);
    i[static_cast<std::size_t>(level)] = 1;
    std::map<MIdx, HahnSeries> m;
    m.emplace(std::move(i), HahnSeries::one(ctx));
    return SigmaPolynomial(ctx, std::move(m));
}

bool SigmaPolynomial::is_constant() const {
    for (const auto& [i, c] : coeffs_)
        if (midx_total(i) > 0) return false;
    return true;
}

SigmaPolynomial sp_add(const SigmaPolynomial& f, const SigmaPolynomial& g) {
    check_same_context(f.ctx(), g.ctx());
    std::size_t len = static_cast<std::size_t>(std::max(f.levels(), g.levels()));
    std::map<MIdx, HahnSeries> m;
    for (const auto& [i, c] : f.coeffs()) m.emplace(resized(i, len), c);
    for (const auto& [i, c] : g.coeffs()) {
        MIdx key = resized(i, len);
        auto it = m.find(key);
        if (it == m.end())
            m.emplace(std::move(key), c);
        else
            it->second = hs_add(it->second, c);
    }
    return SigmaPolynomial(f.ctx(), std::move(m));
}

SigmaPolynomial sp_neg(const SigmaPolynomial& f) {
    std::map<MIdx, HahnSeries> m;
    for (const auto& [i, c] : f.coeffs()) m.emplace(i, hs_neg(c));
    return SigmaPolynomial(f.ctx(), std::move(m));
}

SigmaPolynomial sp_sub(const SigmaPolynomial& f, const SigmaPolynomial& g) {
    return sp_add(f, sp_neg(g));
}

SigmaPolynomial sp_mul(const SigmaPolynomial& f, const SigmaPolynomial& g) {
    check_same_context(f.ctx(), g.ctx());
    std::size_t len = static_cast<std::size_t>(std::max(f.levels(), g.levels()));
    std::map<MIdx, HahnSeries> m;
    for (const auto& [i, ci] : f.coeffs())
        for (const auto& [j, cj] : g.coeffs()) {
            MIdx k = resized(i, len);
            MIdx jj = resized(j, len);
            for (std::size_t t = 0; t < len; ++t) k[t] += jj[t];
            HahnSeries prod = hs_mul(ci, cj);
            auto it = m.find(k);
            if (it == m.end())
                m.emplace(std::move(k), std::move(prod));
            else
                it->second = hs_add(it->second, prod);
        }
    return SigmaPolynomial(f.ctx(), std::move(m));
}

SigmaPolynomial sp_pow(const SigmaPolynomial& f, long e) {
    if (e < 0) fail(errc::invalid_argument, "negative power of a difference polynomial");
    SigmaPolynomial r = SigmaPolynomial::constant(HahnSeries::one(f.ctx()));
    SigmaPolynomial base = f;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = sp_mul(r, base);
        if (e > 1) base = sp_mul(base, base);
    }
    return r;
}

HahnSeries sp_eval(const SigmaPolynomial& g, const HahnSeries& a) {
    check_same_context(g.ctx(), a.ctx());
    std::vector<HahnSeries> orbit;
    orbit.reserve(static_cast<std::size_t>(g.levels()));
    for (int j = 0; j < g.levels(); ++j)
        orbit.push_back(j == 0 ? a : hs_sigma(orbit.back()));
    HahnSeries sum = HahnSeries::zero(g.ctx());
    for (const auto& [i, c] : g.coeffs()) {
        HahnSeries term = c;
        for (std::size_t j = 0; j < i.size(); ++j)
            if (i[j] > 0) term = hs_mul(term, hs_pow(orbit[j], i[j]));
        sum = hs_add(sum, term);
    }
    return sum;
}

Complexity sp_complexity(const SigmaPolynomial& g) {
    if (g.is_zero())
        fail(errc::zero_polynomial, "the zero polynomial has no complexity");
    int order = 0;
    for (const auto& [i, c] : g.coeffs())
        for (std::size_t j = 0; j < i.size(); ++j)
            if (i[j] > 0) order = std::max(order, static_cast<int>(j));
    Complexity cx;
    cx.order = order;
    for (const auto& [i, c] : g.coeffs()) {
        cx.top_degree = std::max(cx.top_degree, i[static_cast<std::size_t>(order)]);
        cx.total_degree = std::max(cx.total_degree, midx_total(i));
    }
    return cx;
}

SigmaPolynomial sp_taylor(const SigmaPolynomial& g, const MIdx& i) {
    std::size_t len = std::max(i.size(), static_cast<std::size_t>(g.levels()));
    MIdx ii = resized(i, len);
    std::map<MIdx, HahnSeries> m;
    for (const auto& [mi, c] : g.coeffs()) {
        MIdx mm = resized(mi, len);
        Rat factor(1);
        MIdx rest(len);
        bool ok = true;
        for (std::size_t j = 0; j < len; ++j) {
            if (mm[j] < ii[j]) { ok = false; break; }
            rest[j] = mm[j] - ii[j];
            factor *= binom(mm[j], ii[j]);
        }
        if (!ok || factor == 0) continue;
        HahnSeries scaled = hs_scale(c, g.ctx()->residue().from_rat(factor));
        auto it = m.find(rest);
        if (it == m.end())
            m.emplace(std::move(rest), std::move(scaled));
        else
            it->second = hs_add(it->second, scaled);
    }
    return SigmaPolynomial(g.ctx(), std::move(m));
}

std::map<MIdx, SigmaPolynomial> sp_taylor_all(const SigmaPolynomial& g) {
    // Bounding box of stored monomials.
    std::size_t len = static_cast<std::size_t>(g.levels());
    MIdx box(len, 0);
    for (const auto& [i, c] : g.coeffs())
        for (std::size_t j = 0; j < len; ++j) box[j] = std::max(box[j], i[j]);
    std::map<MIdx, SigmaPolynomial> out;
    MIdx i(len, 0);
    while (true) {
        SigmaPolynomial gi = sp_taylor(g, i);
        if (!gi.is_zero()) out.emplace(i, std::move(gi));
        // odometer over the box
        std::size_t p = 0;
        while (p < len && i[p] == box[p]) { i[p] = 0; ++p; }
        if (p == len) break;
        ++i[p];
    }
    return out;
}

namespace {

// Residue of an evaluation, with indeterminacy surfaced as an error.
CycloElement eval_residue(const SigmaPolynomial& gi, const HahnSeries& a) {
    HahnSeries val = sp_eval(gi, a);
    if (val.indistinguishable_from_zero()) {
        if (val.exact()) return a.ctx()->residue().zero();
        fail(errc::indeterminate_at_precision,
             "Taylor coefficient value is indistinguishable from zero at the "
             "working precision");
    }
    return hs_leading(val).res;
}

} // namespace

HenselConfig sp_hensel_config(const SigmaPolynomial& g, const HahnSeries& a) {
    check_same_context(g.ctx(), a.ctx());
    HenselConfig out;
    if (g.is_zero() || g.is_constant()) {
        out.reason = "polynomial is constant";
        return out;
    }
    HahnSeries ga = sp_eval(g, a);
    if (ga.indistinguishable_from_zero()) {
        if (ga.exact()) {
            out.reason = "G(a) = 0";
            return out;
        }
        fail(errc::indeterminate_at_precision,
             "G(a) is indistinguishable from zero at the working precision");
    }
    GroupVector delta = hs_v(ga);
    if (!(delta > GroupVector::zero(a.ctx()->rank()))) {
        out.reason = "v(G(a)) = " + delta.str() + " is not positive";
        return out;
    }
    for (const auto& [i, gi] : sp_taylor_all(g)) {
        if (midx_total(i) == 0) continue;
        HahnSeries val = sp_eval(gi, a);
        if (val.indistinguishable_from_zero()) {
            if (val.exact()) {
                out.reason = "v(G_(i)(a)) is infinite for a nonzero Taylor coefficient";
                return out;
            }
            fail(errc::indeterminate_at_precision,
                 "a Taylor coefficient value is indistinguishable from zero at "
                 "the working precision");
        }
        if (!hs_v(val).is_zero()) {
            out.reason = "v(G_(i)(a)) = " + hs_v(val).str() + " != 0";
            return out;
        }
    }
    out.ok = true;
    out.delta = delta;
    return out;
}

LiftResult sp_hensel_lift(const SigmaPolynomial& g, const HahnSeries& a,
                          const GroupVector& target) {
    const Ctx& ctx = g.ctx();
    if (!ctx->isometric())
        fail(errc::non_isometric,
             "successive approximation requires an isometric model "
             "(sigma_Gamma = id)");
    HenselConfig cfg = sp_hensel_config(g, a);
    if (!cfg.ok)
        fail(errc::invalid_argument, "not in Hensel configuration: " + cfg.reason);

    const CycloField& k = ctx->residue();
    LiftResult out;
    out.root = a;
    GroupVector last_delta = GroupVector::zero(ctx->rank());
    for (int step = 0;; ++step) {
        if (step > kLiftCap)
            fail(errc::iteration_limit, "lift did not reach the target precision");
        HahnSeries ga = sp_eval(g, out.root);
        if (ga.indistinguishable_from_zero()) {
            if (ga.exact()) {
                out.residual_v = GroupVector::infinity();
                return out;
            }
            if (*ga.precision() >= target) {
                out.residual_v = *ga.precision();
                return out;
            }
            fail(errc::indeterminate_at_precision,
                 "G(a) is indistinguishable from zero before reaching the target");
        }
        Leading lead = hs_leading(ga);
        if (lead.v >= target) {
            out.residual_v = lead.v;
            return out;
        }
        if (step > 0 && !(lead.v > last_delta))
            fail(errc::iteration_limit, "no valuation progress during lift");
        last_delta = lead.v;

        // Residue equation sum_j res(G_(e_j)(a)) sigma_k^j(c) = -ac(G(a)).
        std::vector<CycloElement> coeffs;
        coeffs.reserve(static_cast<std::size_t>(g.levels()));
        for (int j = 0; j < g.levels(); ++j) {
            MIdx ej(static_cast<std::size_t>(g.levels()), 0);
            ej[static_cast<std::size_t>(j)] = 1;
            SigmaPolynomial gj = sp_taylor(g, ej);
            coeffs.push_back(gj.is_zero() ? k.zero() : eval_residue(gj, out.root));
        }
        CycloElement rhs = k.neg(lead.ac);
        std::optional<CycloElement> c = solve_linear_difference(k, coeffs, rhs);
        if (!c) {
            out.status = LiftResult::Status::residue_obstruction;
            out.residual_v = lead.v;
            out.delta = lead.v;
            out.residue_coeffs = std::move(coeffs);
            out.residue_rhs = std::move(rhs);
            return out;
        }
        HahnSeries eps = hs_scale(hs_section(ctx, lead.v), *c);
        out.root = hs_add(out.root, eps);
        out.steps = step + 1;
    }
}

GroupVector sp_trop_eval(const SigmaPolynomial& g, const GroupVector& gamma) {
    if (g.is_zero())
        fail(errc::zero_polynomial, "tropicalizing the zero polynomial");
    const GroupAut& sg = g.ctx()->sigma_gamma();
    std::optional<GroupVector> best;
    for (const auto& [i, c] : g.coeffs()) {
        GroupVector w = hs_v(c); // coefficient stored nonzero; v determinate
        bool infinite = false;
        for (std::size_t j = 0; j < i.size() && !infinite; ++j) {
            if (i[j] == 0) continue;
            GroupVector gj = sg.apply(gamma, static_cast<long>(j));
            if (gj.is_infinity()) {
                infinite = true;
                break;
            }
            w = w + gj.scaled(Rat(i[j]));
        }
        if (infinite) continue; // term contributes +infinity
        if (!best || w < *best) best = w;
    }
    return best ? *best : GroupVector::infinity();
}

bool sp_is_regular(const HahnSeries& a, const std::vector<SigmaPolynomial>& family) {
    if (family.empty()) return true; // vacuous
    GroupVector va = a.indistinguishable_from_zero() && a.exact()
                         ? GroupVector::infinity()
                         : hs_v(a); // errors when indeterminate
    for (const auto& f : family) {
        check_same_context(f.ctx(), a.ctx());
        GroupVector want = sp_trop_eval(f, va);
        HahnSeries val = sp_eval(f, a);
        if (val.indistinguishable_from_zero()) {
            if (val.exact()) {
                if (!want.is_infinity()) return false;
                continue;
            }
            // Known only that v >= precision bound.
            if (!want.is_infinity() && *val.precision() > want) return false;
            fail(errc::indeterminate_at_precision,
                 "f(a) is indistinguishable from zero at the working precision");
        }
        if (hs_v(val) != want) return false;
    }
    return true;
}

} // namespace tropdiff
