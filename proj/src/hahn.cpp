#include "tropdiff/hahn.hpp"

#include <algorithm>

namespace tropdiff {

namespace {

constexpr long kExpansionCap = 20000;

// Valuation lower bound used for precision bookkeeping: the leading exponent
// when visible, the precision bound when invisibly zero, nothing ("+inf")
// for exact zero.
std::optional<GroupVector> vlow(const HahnSeries& f) {
    if (!f.terms().empty()) return f.terms().front().first;
    return f.precision(); // nullopt for exact zero
}

std::optional<GroupVector> min_prec(const std::optional<GroupVector>& a,
                                    const std::optional<GroupVector>& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

} // namespace

HahnSeries::HahnSeries(Ctx ctx, std::vector<Term> terms,
                       std::optional<GroupVector> precision)
    : ctx_(std::move(ctx)), prec_(std::move(precision)) {
    if (!ctx_) fail(errc::invalid_argument, "series without a model context");
    const int rank = ctx_->rank();
    const int dim = ctx_->residue().degree();
    for (const auto& [g, c] : terms) {
        if (g.is_infinity() || g.rank() != rank)
            fail(errc::rank_mismatch, "series exponent of wrong rank");
        if (c.dim() != dim)
            fail(errc::context_mismatch, "series coefficient from the wrong residue field");
    }
    if (prec_ && (prec_->is_infinity() || prec_->rank() != rank))
        fail(errc::rank_mismatch, "precision bound of wrong rank");
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    const CycloField& k = ctx_->residue();
    for (auto& t : terms) {
        if (prec_ && t.first >= *prec_) break;
        if (!terms_.empty() && terms_.back().first == t.first) {
            terms_.back().second = k.add(terms_.back().second, t.second);
            if (terms_.back().second.is_zero()) terms_.pop_back();
        } else if (!t.second.is_zero()) {
            terms_.push_back(std::move(t));
        }
    }
}

HahnSeries HahnSeries::one(const Ctx& ctx) {
    return HahnSeries(ctx, {{GroupVector::zero(ctx->rank()), ctx->residue().one()}});
}

HahnSeries hs_add(const HahnSeries& f, const HahnSeries& g) {
    check_same_context(f.ctx(), g.ctx());
    std::vector<HahnSeries::Term> terms = f.terms();
    terms.insert(terms.end(), g.terms().begin(), g.terms().end());
    return HahnSeries(f.ctx(), std::move(terms), min_prec(f.precision(), g.precision()));
}

HahnSeries hs_neg(const HahnSeries& f) {
    const CycloField& k = f.ctx()->residue();
    std::vector<HahnSeries::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& [gam, c] : f.terms()) terms.emplace_back(gam, k.neg(c));
    return HahnSeries(f.ctx(), std::move(terms), f.precision());
}

HahnSeries hs_sub(const HahnSeries& f, const HahnSeries& g) {
    return hs_add(f, hs_neg(g));
}

HahnSeries hs_mul(const HahnSeries& f, const HahnSeries& g) {
    check_same_context(f.ctx(), g.ctx());
    const CycloField& k = f.ctx()->residue();
    // Propagated bound: an O(t^p) tail in one factor contributes terms from
    // exponent p + v(other factor) upward.
    std::optional<GroupVector> prec;
    if (f.precision()) {
        auto vg = vlow(g);
        if (vg) prec = min_prec(prec, *f.precision() + *vg);
    }
    if (g.precision()) {
        auto vf = vlow(f);
        if (vf) prec = min_prec(prec, *g.precision() + *vf);
    }
    std::vector<HahnSeries::Term> terms;
    terms.reserve(f.terms().size() * g.terms().size());
    for (const auto& [gf, cf] : f.terms())
        for (const auto& [gg, cg] : g.terms()) {
            GroupVector e = gf + gg;
            if (prec && e >= *prec) continue;
            terms.emplace_back(std::move(e), k.mul(cf, cg));
        }
    return HahnSeries(f.ctx(), std::move(terms), std::move(prec));
}

HahnSeries hs_scale(const HahnSeries& f, const CycloElement& c) {
    const CycloField& k = f.ctx()->residue();
    if (c.is_zero()) return HahnSeries::zero(f.ctx());
    std::vector<HahnSeries::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& [gam, cf] : f.terms()) terms.emplace_back(gam, k.mul(cf, c));
    return HahnSeries(f.ctx(), std::move(terms), f.precision());
}

HahnSeries hs_shift(const HahnSeries& f, const GroupVector& gamma) {
    std::vector<HahnSeries::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& [g, c] : f.terms()) terms.emplace_back(g + gamma, c);
    std::optional<GroupVector> prec;
    if (f.precision()) prec = *f.precision() + gamma;
    return HahnSeries(f.ctx(), std::move(terms), std::move(prec));
}

HahnSeries hs_section(const Ctx& ctx, const GroupVector& gamma) {
    return HahnSeries(ctx, {{gamma, ctx->residue().one()}});
}

HahnSeries hs_lift(const Ctx& ctx, const CycloElement& c) {
    return HahnSeries(ctx, {{GroupVector::zero(ctx->rank()), c}});
}

Leading hs_leading(const HahnSeries& f) {
    const CycloField& k = f.ctx()->residue();
    if (f.terms().empty()) {
        if (f.exact()) return {GroupVector::infinity(), k.zero(), k.zero()};
        fail(errc::indeterminate_leading_term,
             "series is indistinguishable from zero at precision O(t^" +
                 f.precision()->str() + ")");
    }
    const auto& [v, ac] = f.terms().front();
    Leading out{v, ac, k.zero()};
    if (v.is_zero()) out.res = ac;
    return out;
}

GroupVector hs_v(const HahnSeries& f) { return hs_leading(f).v; }

HahnSeries hs_inv(const HahnSeries& f, std::optional<GroupVector> target) {
    const Ctx& ctx = f.ctx();
    const CycloField& k = ctx->residue();
    if (f.terms().empty()) {
        if (f.exact()) return f; // 0^{-1} = 0
        fail(errc::indeterminate_leading_term,
             "cannot invert a series indistinguishable from zero");
    }
    const GroupVector& gamma = f.terms().front().first;
    const CycloElement& c = f.terms().front().second;
    HahnSeries lead_inv(ctx, {{-gamma, k.inv(c)}});
    if (f.terms().size() == 1 && f.exact()) {
        HahnSeries r = lead_inv;
        return target ? hs_truncate(r, *target) : r;
    }
    // f = c t^gamma (1 + h); expand (1 + h)^{-1} geometrically to the
    // relative precision rho, then shift back.
    std::optional<GroupVector> rho;
    if (f.precision()) rho = *f.precision() - gamma;
    if (target) rho = min_prec(rho, *target + gamma);
    if (!rho)
        fail(errc::precision_required,
             "inverse of an exact multi-term series has infinite support; "
             "supply a target precision");
    HahnSeries u = hs_mul(f, lead_inv); // 1 + h, exact value 1 + ...
    HahnSeries h = hs_truncate(hs_sub(u, HahnSeries::one(ctx)), *rho);
    HahnSeries neg_h = hs_neg(h);
    HahnSeries sum = HahnSeries(ctx, {{GroupVector::zero(ctx->rank()), k.one()}}, rho);
    HahnSeries term = sum;
    if (!h.terms().empty()) {
        // v(h^m) = m * v(h) exactly, so the number of steps is decidable up
        // front. In a lex group of rank > 1 the expansion can be divergent:
        // if v(h) is infinitesimal against the target (its first nonzero
        // coordinate comes later), no power ever reaches rho.
        const GroupVector eta = hs_v(h);
        int lead = 0;
        while (eta[lead] == 0) ++lead;
        for (int m = 0; m < lead; ++m) {
            if ((*rho)[m] > 0)
                fail(errc::iteration_limit,
                     "inverse expansion cannot reach the target precision: the "
                     "correction valuation is infinitesimal against it");
        }
        Rat quota = (*rho)[lead] / eta[lead];
        if (quota > kExpansionCap)
            fail(errc::iteration_limit,
                 "target precision too deep for the inverse expansion");
        long bound = 2;
        if (quota > 0) {
            Int whole = quota.get_num() / quota.get_den();
            bound = whole.get_si() + 2;
        }
        for (long iter = 0; iter < bound; ++iter) {
            term = hs_truncate(hs_mul(term, neg_h), *rho);
            if (term.terms().empty()) break;
            sum = hs_add(sum, term);
        }
    }
    return hs_mul(lead_inv, sum);
}

HahnSeries hs_pow(const HahnSeries& f, long e) {
    if (e < 0) return hs_pow(hs_inv(f), -e);
    HahnSeries r = HahnSeries::one(f.ctx());
    HahnSeries base = f;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = hs_mul(r, base);
        if (e > 1) base = hs_mul(base, base);
    }
    return r;
}

HahnSeries hs_sigma(const HahnSeries& f, long power) {
    const Ctx& ctx = f.ctx();
    const CycloField& k = ctx->residue();
    const GroupAut& sg = ctx->sigma_gamma();
    std::vector<HahnSeries::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& [g, c] : f.terms())
        terms.emplace_back(sg.apply(g, power), k.apply_aut(c, power));
    std::optional<GroupVector> prec;
    if (f.precision()) prec = sg.apply(*f.precision(), power);
    return HahnSeries(ctx, std::move(terms), std::move(prec));
}

HahnSeries hs_unit_part(const HahnSeries& f) {
    if (f.is_exact_zero())
        fail(errc::zero_argument, "the zero series has no unit part");
    Leading lead = hs_leading(f); // errors when indeterminate
    return hs_shift(f, -lead.v);
}

HahnSeries hs_truncate(const HahnSeries& f, const GroupVector& prec) {
    std::optional<GroupVector> p = min_prec(f.precision(), prec);
    return HahnSeries(f.ctx(), f.terms(), std::move(p));
}

bool hs_congruent(const HahnSeries& f, const HahnSeries& g) {
    return hs_sub(f, g).indistinguishable_from_zero();
}

} // namespace tropdiff
