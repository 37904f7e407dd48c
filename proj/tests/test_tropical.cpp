#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tropdiff/tropical.hpp"

#include <algorithm>

#include "helpers.hpp"

using namespace tropdiff;
using tdt::Rng;

namespace {

HahnSeries mono(const Ctx& ctx, const Rat& exp, const Rat& coeff) {
    return HahnSeries(ctx, {{GroupVector::scalar(exp), ctx->residue().from_rat(coeff)}});
}

HahnSeries rat_series(const Ctx& ctx, const Rat& c) { return mono(ctx, Rat(0), c); }

LaurentPoly lp1(const Ctx& ctx, std::map<Exponent, HahnSeries> coeffs) {
    return LaurentPoly(ctx, 1, std::move(coeffs));
}

// x^2 - (1+t)x + t, the running example with roots 1 and t.
LaurentPoly two_roots(const Ctx& ctx) {
    HahnSeries minus_one_plus_t(ctx, {{GroupVector::zero(1), ctx->residue().from_rat(-1)},
                                      {GroupVector::scalar(Rat(1)),
                                       ctx->residue().from_rat(-1)}});
    return lp1(ctx, {{Exponent{2}, HahnSeries::one(ctx)},
                     {Exponent{1}, minus_one_plus_t},
                     {Exponent{0}, mono(ctx, Rat(1), Rat(1))}});
}

bool has_piece(const TropicalPolynomial& t, const Rat& gamma, long u) {
    for (const auto& p : t.pieces())
        if (p.gamma == GroupVector::scalar(gamma) && p.u == Exponent{u}) return true;
    return false;
}

// Random 2-variable Laurent polynomial with exact nonzero coefficients.
LaurentPoly random_bivariate(Rng& rng, const Ctx& ctx) {
    std::map<Exponent, HahnSeries> m;
    int terms = static_cast<int>(rng.range(2, 4));
    while (static_cast<int>(m.size()) < terms) {
        Exponent u{rng.range(-2, 2), rng.range(-2, 2)};
        m.emplace(std::move(u), rng.series(ctx, static_cast<int>(rng.range(1, 2))));
    }
    return LaurentPoly(ctx, 2, std::move(m));
}

} // namespace

TEST_CASE("laurent arithmetic and evaluation") {
    Ctx ctx = iso_model();
    LaurentPoly x = lp1(ctx, {{Exponent{1}, HahnSeries::one(ctx)}});
    LaurentPoly xm1 = lp1(ctx, {{Exponent{1}, HahnSeries::one(ctx)},
                                {Exponent{0}, rat_series(ctx, Rat(-1))}});
    LaurentPoly xmt = lp1(ctx, {{Exponent{1}, HahnSeries::one(ctx)},
                                {Exponent{0}, mono(ctx, Rat(1), Rat(-1))}});
    CHECK(lp_mul(xm1, xmt) == two_roots(ctx));
    CHECK(lp_pow(xm1, 2) == lp_mul(xm1, xm1));

    // Both constructed roots evaluate to exact zero.
    CHECK(lp_eval(two_roots(ctx), {HahnSeries::one(ctx)}).is_exact_zero());
    CHECK(lp_eval(two_roots(ctx), {hs_section(ctx, GroupVector::scalar(Rat(1)))})
              .is_exact_zero());

    // Coefficient-wise twisted automorphism in the doubling model.
    Ctx pc = pc_model();
    LaurentPoly f = lp1(pc, {{Exponent{1}, hs_scale(mono(pc, Rat(1), Rat(1)),
                                                    pc->residue().zeta())}});
    LaurentPoly sf = lp_sigma(f);
    CHECK(sf.coeffs().at(Exponent{1}) ==
          hs_scale(mono(pc, Rat(2), Rat(1)), pc->residue().neg(pc->residue().zeta())));

    Rng rng(71);
    for (int trial = 0; trial < 15; ++trial) {
        LaurentPoly a = rng.laurent_univariate(pc);
        LaurentPoly b = rng.laurent_univariate(pc);
        // Monomial arguments invert exactly, so negative exponents are fine.
        HahnSeries z = hs_scale(hs_section(pc, GroupVector::scalar(rng.twelfth())),
                                rng.residue_nonzero(pc->residue()));
        CHECK(lp_eval(lp_mul(a, b), {z}) ==
              hs_mul(lp_eval(a, {z}), lp_eval(b, {z})));
        CHECK(lp_eval(lp_add(a, b), {z}) ==
              hs_add(lp_eval(a, {z}), lp_eval(b, {z})));
    }

    CHECK_THROWS_AS(lp_add(x, LaurentPoly(ctx, 2)), Error);
    CHECK_THROWS_AS(lp_eval(x, {HahnSeries::one(ctx), HahnSeries::one(ctx)}), Error);
    CHECK_THROWS_AS(LaurentPoly(ctx, 0), Error);
}

TEST_CASE("tropicalization reads coefficient valuations") {
    Ctx ctx = iso_model();
    // t*x + x^2.
    LaurentPoly f = lp1(ctx, {{Exponent{1}, mono(ctx, Rat(1), Rat(1))},
                              {Exponent{2}, HahnSeries::one(ctx)}});
    TropicalPolynomial tf = tropicalize(f);
    REQUIRE(tf.pieces().size() == 2);
    CHECK(has_piece(tf, Rat(1), 1));
    CHECK(has_piece(tf, Rat(0), 2));

    TropicalPolynomial tg = tropicalize(two_roots(ctx));
    REQUIRE(tg.pieces().size() == 3);
    CHECK(has_piece(tg, Rat(0), 2));
    CHECK(has_piece(tg, Rat(0), 1));
    CHECK(has_piece(tg, Rat(1), 0));

    // A single monomial gives a single piece.
    LaurentPoly m = lp1(ctx, {{Exponent{-3}, mono(ctx, make_rat(5, 12), Rat(2))}});
    CHECK(tropicalize(m).pieces().size() == 1);

    CHECK_THROWS_AS(tropicalize(LaurentPoly(ctx, 1)), Error);

    // A coefficient with no visible term has no determinate valuation.
    HahnSeries fuzzy(ctx, {}, GroupVector::scalar(Rat(1)));
    try {
        tropicalize(lp1(ctx, {{Exponent{0}, fuzzy}, {Exponent{1}, HahnSeries::one(ctx)}}));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::indeterminate_leading_term);
    }
}

TEST_CASE("tropical evaluation counts minimizers") {
    Ctx ctx = iso_model();
    LaurentPoly f = lp1(ctx, {{Exponent{1}, mono(ctx, Rat(1), Rat(1))},
                              {Exponent{2}, HahnSeries::one(ctx)}});
    TropicalPolynomial tf = tropicalize(f);

    TropValue at1 = trop_eval(tf, {GroupVector::scalar(Rat(1))});
    CHECK(at1.value == GroupVector::scalar(Rat(2)));
    CHECK(at1.multiplicity == 2);

    TropValue at0 = trop_eval(tf, {GroupVector::scalar(Rat(0))});
    CHECK(at0.value == GroupVector::scalar(Rat(0)));
    CHECK(at0.multiplicity == 1);

    // Single piece: the minimum is never attained twice.
    TropicalPolynomial single(1, 1, {{GroupVector::scalar(Rat(1)), Exponent{3}}});
    CHECK(trop_eval(single, {GroupVector::scalar(make_rat(-7, 12))}).multiplicity == 1);

    // Bivariate: y1*y2 vs t at (1/2, 1/2) ties at value 1.
    TropicalPolynomial pair(1, 2, {{GroupVector::zero(1), Exponent{1, 1}},
                                   {GroupVector::scalar(Rat(1)), Exponent{0, 0}}});
    TropValue tie = trop_eval(pair, {GroupVector::scalar(make_rat(1, 2)),
                                     GroupVector::scalar(make_rat(1, 2))});
    CHECK(tie.value == GroupVector::scalar(Rat(1)));
    CHECK(tie.multiplicity == 2);

    CHECK_THROWS_AS(trop_eval(tf, {GroupVector::infinity()}), Error);
    CHECK_THROWS_AS(trop_eval(pair, {GroupVector::zero(1)}), Error);
    CHECK_THROWS_AS(TropicalPolynomial(1, 1,
                                       {{GroupVector::zero(1), Exponent{1}},
                                        {GroupVector::scalar(Rat(1)), Exponent{1}}}),
                    Error);
}

TEST_CASE("univariate tropical roots") {
    Ctx ctx = iso_model();
    auto roots = [](const LaurentPoly& f) {
        return trop_roots_univariate(tropicalize(f));
    };

    CHECK(roots(two_roots(ctx)) ==
          std::vector<GroupVector>{GroupVector::zero(1), GroupVector::scalar(Rat(1))});

    LaurentPoly sq = lp1(ctx, {{Exponent{2}, HahnSeries::one(ctx)},
                               {Exponent{0}, mono(ctx, Rat(1), Rat(-1))}});
    CHECK(roots(sq) == std::vector<GroupVector>{GroupVector::scalar(make_rat(1, 2))});

    LaurentPoly xp1 = lp1(ctx, {{Exponent{1}, HahnSeries::one(ctx)},
                                {Exponent{0}, HahnSeries::one(ctx)}});
    CHECK(roots(xp1) == std::vector<GroupVector>{GroupVector::zero(1)});

    // Laurent support works the same way.
    LaurentPoly lau = lp1(ctx, {{Exponent{-1}, HahnSeries::one(ctx)},
                                {Exponent{1}, rat_series(ctx, Rat(-1))}});
    CHECK(roots(lau) == std::vector<GroupVector>{GroupVector::zero(1)});

    LaurentPoly single = lp1(ctx, {{Exponent{4}, HahnSeries::one(ctx)}});
    CHECK(roots(single).empty());

    TropicalPolynomial biv(1, 2, {{GroupVector::zero(1), Exponent{1, 1}}});
    CHECK_THROWS_AS(trop_roots_univariate(biv), Error);
}

TEST_CASE("initial forms at a point") {
    Ctx ctx = iso_model();
    const CycloField& k = ctx->residue();

    LaurentPoly f = lp1(ctx, {{Exponent{1}, mono(ctx, Rat(1), Rat(1))},
                              {Exponent{2}, HahnSeries::one(ctx)}});
    ResiduePoly in1 = initial_form(f, {GroupVector::scalar(Rat(1))});
    CHECK(in1 == ResiduePoly(ctx, 1, {{Exponent{1}, k.one()}, {Exponent{2}, k.one()}}));
    CHECK_FALSE(in1.is_monomial());

    ResiduePoly in0 = initial_form(two_roots(ctx), {GroupVector::zero(1)});
    CHECK(in0 == ResiduePoly(ctx, 1, {{Exponent{2}, k.one()},
                                      {Exponent{1}, k.from_rat(-1)}}));

    // Away from the roots the initial form is a monomial.
    CHECK(initial_form(two_roots(ctx), {GroupVector::scalar(Rat(5))}).is_monomial());

    CHECK_THROWS_AS(initial_form(LaurentPoly(ctx, 1), {GroupVector::zero(1)}), Error);
}

TEST_CASE("initial forms are equivariant in the doubling model") {
    Ctx pc = pc_model();
    const CycloField& k = pc->residue();

    // Worked instance: f = i*t*x + x^2.
    LaurentPoly f = lp1(pc, {{Exponent{1}, hs_scale(mono(pc, Rat(1), Rat(1)), k.zeta())},
                             {Exponent{2}, HahnSeries::one(pc)}});
    ResiduePoly in1 = initial_form(f, {GroupVector::scalar(Rat(1))});
    CHECK(in1 == ResiduePoly(pc, 1, {{Exponent{1}, k.zeta()}, {Exponent{2}, k.one()}}));

    ResiduePoly lhs = residue_poly_sigma(in1);
    ResiduePoly rhs = initial_form(lp_sigma(f), {GroupVector::scalar(Rat(2))});
    CHECK(lhs == rhs);
    CHECK(rhs == ResiduePoly(pc, 1, {{Exponent{1}, k.neg(k.zeta())},
                                     {Exponent{2}, k.one()}}));

    // Randomized equivariance, univariate and bivariate.
    Rng rng(401);
    for (int trial = 0; trial < 100; ++trial) {
        LaurentPoly g = rng.laurent_univariate(pc);
        GroupVector gamma = GroupVector::scalar(rng.twelfth());
        ResiduePoly a = residue_poly_sigma(initial_form(g, {gamma}));
        ResiduePoly b = initial_form(lp_sigma(g), {pc->sigma_gamma().apply(gamma)});
        CHECK(a == b);
    }
    for (int trial = 0; trial < 40; ++trial) {
        LaurentPoly g = random_bivariate(rng, pc);
        TropPoint gamma{GroupVector::scalar(rng.twelfth()),
                        GroupVector::scalar(rng.twelfth())};
        TropPoint sgamma{pc->sigma_gamma().apply(gamma[0]),
                         pc->sigma_gamma().apply(gamma[1])};
        CHECK(residue_poly_sigma(initial_form(g, gamma)) ==
              initial_form(lp_sigma(g), sgamma));
    }
}

TEST_CASE("unit factors with angular component 1 change nothing") {
    Ctx ctx = pc_model();
    Rng rng(88);
    for (int trial = 0; trial < 30; ++trial) {
        LaurentPoly f = rng.laurent_univariate(ctx);
        // u = 1 + (positive-exponent tail): valuation 0, angular component 1.
        HahnSeries tail = rng.series(ctx, 2);
        HahnSeries u = hs_add(HahnSeries::one(ctx),
                              hs_mul(hs_section(ctx, GroupVector::scalar(Rat(4))), tail));
        LaurentPoly fu = lp_mul(f, lp1(ctx, {{Exponent{0}, u}}));

        GroupVector gamma = GroupVector::scalar(rng.twelfth());
        CHECK(initial_form(f, {gamma}) == initial_form(fu, {gamma}));
        TropValue a = trop_eval(tropicalize(f), {gamma});
        TropValue b = trop_eval(tropicalize(fu), {gamma});
        CHECK(a.value == b.value);
        CHECK(a.multiplicity == b.multiplicity);
    }
}

TEST_CASE("tropicalization is multiplicative pointwise") {
    Rng rng(202);
    Ctx ctx = pc_model();
    for (int trial = 0; trial < 25; ++trial) {
        LaurentPoly f = rng.laurent_univariate(ctx);
        LaurentPoly g = rng.laurent_univariate(ctx);
        TropicalPolynomial tf = tropicalize(f);
        TropicalPolynomial tg = tropicalize(g);
        TropicalPolynomial tfg = tropicalize(lp_mul(f, g));
        for (int i = 0; i < 4; ++i) {
            TropPoint p{GroupVector::scalar(rng.twelfth())};
            CHECK(trop_eval(tfg, p).value ==
                  trop_eval(tf, p).value + trop_eval(tg, p).value);
        }
    }
    for (int trial = 0; trial < 10; ++trial) {
        LaurentPoly f = random_bivariate(rng, ctx);
        LaurentPoly g = random_bivariate(rng, ctx);
        TropPoint p{GroupVector::scalar(rng.twelfth()),
                    GroupVector::scalar(rng.twelfth())};
        CHECK(trop_eval(tropicalize(lp_mul(f, g)), p).value ==
              trop_eval(tropicalize(f), p).value +
                  trop_eval(tropicalize(g), p).value);
    }
}

TEST_CASE("newton valuations from the lower hull") {
    Ctx ctx = iso_model();
    using Pair = std::pair<GroupVector, long>;

    LaurentPoly sq = lp1(ctx, {{Exponent{2}, HahnSeries::one(ctx)},
                               {Exponent{0}, mono(ctx, Rat(1), Rat(-1))}});
    CHECK(newton_valuations(sq) ==
          std::vector<Pair>{{GroupVector::scalar(make_rat(1, 2)), 2}});

    CHECK(newton_valuations(two_roots(ctx)) ==
          std::vector<Pair>{{GroupVector::zero(1), 1}, {GroupVector::scalar(Rat(1)), 1}});

    // Linear: one root at the constant's valuation.
    LaurentPoly lin = lp1(ctx, {{Exponent{1}, HahnSeries::one(ctx)},
                                {Exponent{0}, mono(ctx, make_rat(-5, 12), Rat(3))}});
    CHECK(newton_valuations(lin) ==
          std::vector<Pair>{{GroupVector::scalar(make_rat(-5, 12)), 1}});

    CHECK_THROWS_AS(newton_valuations(lp1(ctx, {{Exponent{3}, HahnSeries::one(ctx)}})),
                    Error);

    // Products of known linear factors: the multiset is the root valuations.
    Rng rng(909);
    for (int trial = 0; trial < 30; ++trial) {
        int nroots = static_cast<int>(rng.range(1, 4));
        std::vector<Rat> expected;
        LaurentPoly f = lp1(ctx, {{Exponent{0}, HahnSeries::one(ctx)}});
        for (int i = 0; i < nroots; ++i) {
            Rat g = rng.twelfth();
            expected.push_back(g);
            HahnSeries root = hs_scale(hs_section(ctx, GroupVector::scalar(g)),
                                       rng.residue_nonzero(ctx->residue()));
            f = lp_mul(f, lp1(ctx, {{Exponent{1}, HahnSeries::one(ctx)},
                                    {Exponent{0}, hs_neg(root)}}));
        }
        // A monomial shift must not change the answer.
        if (rng.chance(0.5))
            f = lp_mul(f, lp1(ctx, {{Exponent{static_cast<long>(rng.range(-3, -1))},
                                     HahnSeries::one(ctx)}}));
        std::sort(expected.begin(), expected.end());
        std::vector<Rat> got;
        for (const auto& [g, m] : newton_valuations(f))
            for (long i = 0; i < m; ++i) got.push_back(g[0]);
        CHECK(got == expected);
    }
}

TEST_CASE("kapranov cross-check") {
    Ctx ctx = iso_model();
    KapranovReport r1 = kapranov_check(two_roots(ctx));
    CHECK(r1.pass);
    CHECK(r1.notes.empty());
    CHECK(r1.trop_roots.size() == 2);

    LaurentPoly sq = lp1(ctx, {{Exponent{2}, HahnSeries::one(ctx)},
                               {Exponent{0}, mono(ctx, Rat(1), Rat(-1))}});
    KapranovReport r2 = kapranov_check(sq);
    CHECK(r2.pass);
    CHECK(r2.newton == std::vector<std::pair<GroupVector, long>>{
                           {GroupVector::scalar(make_rat(1, 2)), 2}});

    LaurentPoly xpx2 = lp1(ctx, {{Exponent{1}, HahnSeries::one(ctx)},
                                 {Exponent{2}, HahnSeries::one(ctx)}});
    KapranovReport r3 = kapranov_check(xpx2);
    CHECK(r3.pass);
    CHECK(r3.trop_roots == std::vector<GroupVector>{GroupVector::zero(1)});

    Rng rng(31337);
    for (Ctx model : {pc_model(), iso_model()}) {
        for (int trial = 0; trial < 25; ++trial) {
            KapranovReport r = kapranov_check(rng.laurent_univariate(model));
            CHECK(r.pass);
            CHECK(r.trop_roots.size() == r.newton.size());
        }
    }
}

TEST_CASE("binomial reduction at valuation zero") {
    Ctx ctx = iso_model();
    const CycloField& k = ctx->residue();

    BinomialCoset c1 = make_binomial_coset(
        IntLattice(2, {{Int(1), Int(-1)}}),
        {HahnSeries(ctx, {{GroupVector::zero(1), k.one()},
                          {GroupVector::scalar(Rat(1)), k.one()}})});
    ResidueCoset r1 = binomial_initial(c1);
    CHECK(r1.irreducible);
    CHECK(r1.targets == std::vector<CycloElement>{k.one()});
    CHECK(r1.lattice == c1.lattice);

    BinomialCoset c2 = make_binomial_coset(IntLattice(2, {{Int(2), Int(0)}}),
                                           {HahnSeries::one(ctx)});
    CHECK_FALSE(binomial_initial(c2).irreducible);

    Rng rng(606);
    HahnSeries u = rng.unit(ctx);
    BinomialCoset c3 = make_binomial_coset(IntLattice(1, {{Int(1)}}), {u});
    ResidueCoset r3 = binomial_initial(c3);
    CHECK(r3.irreducible);
    CHECK(r3.targets == std::vector<CycloElement>{hs_leading(u).res});

    // Non-unit targets are rejected: the valuation reduction comes first.
    BinomialCoset bad = make_binomial_coset(IntLattice(1, {{Int(1)}}),
                                            {mono(ctx, Rat(1), Rat(1))});
    try {
        binomial_initial(bad);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == errc::non_unit_target);
    }

    CHECK_THROWS_AS(make_binomial_coset(IntLattice(2, {{Int(1), Int(0)}}), {}), Error);
    CHECK_THROWS_AS(make_binomial_coset(IntLattice(1, {{Int(1)}}),
                                        {HahnSeries::zero(ctx)}),
                    Error);
}

TEST_CASE("binomial reduction commutes with the automorphism") {
    Ctx pc = pc_model();
    const CycloField& k = pc->residue();
    Rng rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        int ambient = static_cast<int>(rng.range(2, 3));
        IntMatrix rows;
        int nrows = static_cast<int>(rng.range(1, 2));
        for (int i = 0; i < nrows; ++i) {
            IntRow row;
            for (int j = 0; j < ambient; ++j) row.push_back(Int(rng.range(-2, 2)));
            rows.push_back(std::move(row));
        }
        IntLattice lat(ambient, rows);
        std::vector<HahnSeries> targets;
        for (int i = 0; i < lat.rank(); ++i) targets.push_back(rng.unit(pc));
        if (targets.empty()) continue;
        BinomialCoset coset = make_binomial_coset(lat, targets);

        std::vector<HahnSeries> sig_targets;
        for (const auto& b : targets) sig_targets.push_back(hs_sigma(b));
        ResidueCoset lhs = binomial_initial(make_binomial_coset(lat, sig_targets));
        ResidueCoset rhs = binomial_initial(coset);
        for (auto& c : rhs.targets) c = k.apply_aut(c);
        CHECK(lhs.lattice == rhs.lattice);
        CHECK(lhs.targets == rhs.targets);
        CHECK(lhs.irreducible == binomial_initial(coset).irreducible);
    }
}

TEST_CASE("fundamental check on binomial systems") {
    Ctx ctx = iso_model();
    const CycloField& k = ctx->residue();
    Rat half = make_rat(1, 2);

    // y1*y2 = t at gamma = (1/2, 1/2): consistent with an exact witness.
    BinomialCoset prod = make_binomial_coset(IntLattice(2, {{Int(1), Int(1)}}),
                                             {mono(ctx, Rat(1), Rat(1))});
    FundamentalReport ok = fundamental_check_binomial(
        ctx, prod, {GroupVector::scalar(half), GroupVector::scalar(half)});
    REQUIRE(ok.verdict == FundamentalVerdict::consistent);
    REQUIRE(ok.witness.size() == 2);
    CHECK(hs_mul(ok.witness[0], ok.witness[1]) == mono(ctx, Rat(1), Rat(1)));
    CHECK(hs_v(ok.witness[0]) == GroupVector::scalar(half));
    CHECK(hs_v(ok.witness[1]) == GroupVector::scalar(half));

    // Same system at gamma = (0, 0): the valuation condition already fails.
    FundamentalReport bad = fundamental_check_binomial(
        ctx, prod, {GroupVector::zero(1), GroupVector::zero(1)});
    CHECK(bad.verdict == FundamentalVerdict::inconsistent);
    CHECK(bad.note.find("v(b)") != std::string::npos);

    // y^2 = 2 at gamma = 0: no square root of 2 in Q(i); honest unknown.
    BinomialCoset sqrt2 = make_binomial_coset(IntLattice(1, {{Int(2)}}),
                                              {rat_series(ctx, Rat(2))});
    FundamentalReport unk = fundamental_check_binomial(ctx, sqrt2,
                                                       {GroupVector::zero(1)});
    CHECK(unk.verdict == FundamentalVerdict::unknown);
    CHECK(!unk.note.empty());

    // y^2 = -1 at gamma = 0 is solved by the root of unity i.
    BinomialCoset sq_m1 = make_binomial_coset(IntLattice(1, {{Int(2)}}),
                                              {rat_series(ctx, Rat(-1))});
    FundamentalReport im = fundamental_check_binomial(ctx, sq_m1,
                                                      {GroupVector::zero(1)});
    REQUIRE(im.verdict == FundamentalVerdict::consistent);
    CHECK(hs_pow(im.witness[0], 2) == rat_series(ctx, Rat(-1)));

    // A non-monomial target defeats the bounded witness search.
    BinomialCoset fat = make_binomial_coset(
        IntLattice(1, {{Int(1)}}),
        {HahnSeries(ctx, {{GroupVector::zero(1), k.one()},
                          {GroupVector::scalar(Rat(1)), k.one()}})});
    FundamentalReport fuzzy = fundamental_check_binomial(ctx, fat,
                                                         {GroupVector::zero(1)});
    CHECK(fuzzy.verdict == FundamentalVerdict::unknown);
    CHECK(fuzzy.note.find("monomial") != std::string::npos);
}

TEST_CASE("fundamental check reconstructs planted witnesses") {
    Ctx ctx = iso_model();
    const CycloField& k = ctx->residue();
    Rng rng(1717);
    int consistent = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int ambient = static_cast<int>(rng.range(2, 3));
        // Planted witness z_j = c_j * t^{g_j} with c_j = rational * i^k.
        std::vector<HahnSeries> z;
        TropPoint gamma;
        for (int j = 0; j < ambient; ++j) {
            Rat q = make_rat(rng.range(1, 5), rng.range(1, 3));
            CycloElement c = k.mul_rat(k.pow(k.zeta(), rng.range(0, 3)), q);
            GroupVector g = GroupVector::scalar(rng.twelfth());
            gamma.push_back(g);
            z.push_back(hs_scale(hs_section(ctx, g), c));
        }
        IntMatrix rows;
        int nrows = static_cast<int>(rng.range(1, 2));
        for (int i = 0; i < nrows; ++i) {
            IntRow row;
            for (int j = 0; j < ambient; ++j) row.push_back(Int(rng.range(-2, 2)));
            rows.push_back(std::move(row));
        }
        IntLattice lat(ambient, rows);
        if (lat.rank() == 0) continue;
        std::vector<HahnSeries> targets;
        for (const auto& row : lat.basis()) {
            HahnSeries prod = HahnSeries::one(ctx);
            for (int j = 0; j < ambient; ++j)
                if (row[static_cast<std::size_t>(j)] != 0)
                    prod = hs_mul(prod,
                                  hs_pow(z[static_cast<std::size_t>(j)],
                                         row[static_cast<std::size_t>(j)].get_si()));
            targets.push_back(prod);
        }
        BinomialCoset coset = make_binomial_coset(lat, targets);
        FundamentalReport rep = fundamental_check_binomial(ctx, coset, gamma);
        REQUIRE(rep.verdict == FundamentalVerdict::consistent);
        ++consistent;
        // Re-verify the returned witness independently.
        for (std::size_t i = 0; i < coset.targets.size(); ++i) {
            HahnSeries prod = HahnSeries::one(ctx);
            const auto& row = lat.basis()[i];
            for (int j = 0; j < ambient; ++j)
                if (row[static_cast<std::size_t>(j)] != 0)
                    prod = hs_mul(prod,
                                  hs_pow(rep.witness[static_cast<std::size_t>(j)],
                                         row[static_cast<std::size_t>(j)].get_si()));
            CHECK(prod == coset.targets[i]);
        }
    }
    CHECK(consistent >= 25);
}
