#include "tropdiff/demo.hpp"

#include "tropdiff/printing.hpp"

namespace tropdiff {

FixedFieldReport demo_fixed_field(const Ctx& ctx, const GroupVector& target) {
    if (!ctx->isometric())
        fail(errc::non_isometric, "the fixed-field demonstration needs an isometric model");
    const CycloField& k = ctx->residue();
    if (k.n() % 4 != 0)
        fail(errc::invalid_argument, "residue field must contain a 4th root of unity");
    CycloElement im = k.zeta_pow(k.n() / 4);
    if (k.apply_aut(im) == im)
        fail(errc::invalid_argument,
             "the residue automorphism must move i for the argument to apply");
    if (ctx->rank() != 1)
        fail(errc::invalid_argument, "the demonstration runs over a rank-1 value group");
    if (target.rank() != 1 || target.is_infinity())
        fail(errc::rank_mismatch, "target must be a finite rank-1 valuation");

    // G = x^2 - (t - 1); the right-hand side t - 1 is sigma-fixed.
    HahnSeries t = hs_section(ctx, GroupVector::scalar(1));
    HahnSeries rhs = hs_sub(t, HahnSeries::one(ctx));
    SigmaPolynomial g = sp_sub(sp_pow(SigmaPolynomial::variable(ctx), 2),
                               SigmaPolynomial::constant(rhs));

    FixedFieldReport rep;
    HahnSeries a = hs_lift(ctx, im);
    LiftResult lift = sp_hensel_lift(g, a, target);
    if (lift.status != LiftResult::Status::ok) {
        rep.pass = false;
        rep.notes.push_back("unexpected residue obstruction");
        return rep;
    }
    rep.root = lift.root;
    rep.residual_v = lift.residual_v;

    Leading lead = hs_leading(rep.root);
    rep.residue = lead.res;
    rep.residue_is_i = (lead.res == im);
    rep.sigma_moves_residue = (k.apply_aut(im) != im);
    rep.sigma_swaps_root = hs_congruent(hs_sigma(rep.root), hs_neg(rep.root));

    bool deep_enough = lift.residual_v >= target;
    rep.pass = deep_enough && rep.residue_is_i && rep.sigma_moves_residue &&
               rep.sigma_swaps_root;

    rep.notes.push_back("root " + hs_str(rep.root));
    rep.notes.push_back("squares to t - 1 up to valuation " + rep.residual_v.str());
    rep.notes.push_back("res(root) = " + k.str(rep.residue) +
                        ", res(sigma(root)) = " + k.str(k.apply_aut(rep.residue)));
    rep.notes.push_back(
        "every root of x^2 = t - 1 lies in the residue-1 ball around i or -i; "
        "sigma swaps the two balls, so no root is sigma-fixed while t - 1 is");
    return rep;
}

} // namespace tropdiff
