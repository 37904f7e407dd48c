#include "tropdiff/tropical.hpp"

#include <algorithm>
#include <set>

namespace tropdiff {

LaurentPoly::LaurentPoly(Ctx ctx, int nvars, std::map<Exponent, HahnSeries> coeffs)
    : ctx_(std::move(ctx)), nvars_(nvars) {
    if (nvars_ < 1) fail(errc::invalid_argument, "need at least one variable");
    for (auto& [u, c] : coeffs) {
        if (static_cast<int>(u.size()) != nvars_)
            fail(errc::invalid_argument, "monomial exponent of wrong arity");
        check_same_context(ctx_, c.ctx());
        if (!c.is_exact_zero()) coeffs_.emplace(u, std::move(c));
    }
}

LaurentPoly lp_add(const LaurentPoly& f, const LaurentPoly& g) {
    check_same_context(f.ctx(), g.ctx());
    if (f.nvars() != g.nvars())
        fail(errc::invalid_argument, "adding polynomials of different arity");
    std::map<Exponent, HahnSeries> m = f.coeffs();
    for (const auto& [u, c] : g.coeffs()) {
        auto it = m.find(u);
        if (it == m.end())
            m.emplace(u, c);
        else
            it->second = hs_add(it->second, c);
    }
    return LaurentPoly(f.ctx(), f.nvars(), std::move(m));
}

LaurentPoly lp_neg(const LaurentPoly& f) {
    std::map<Exponent, HahnSeries> m;
    for (const auto& [u, c] : f.coeffs()) m.emplace(u, hs_neg(c));
    return LaurentPoly(f.ctx(), f.nvars(), std::move(m));
}

LaurentPoly lp_sub(const LaurentPoly& f, const LaurentPoly& g) {
    return lp_add(f, lp_neg(g));
}

LaurentPoly lp_mul(const LaurentPoly& f, const LaurentPoly& g) {
    check_same_context(f.ctx(), g.ctx());
    if (f.nvars() != g.nvars())
        fail(errc::invalid_argument, "multiplying polynomials of different arity");
    std::map<Exponent, HahnSeries> m;
    for (const auto& [u, cu] : f.coeffs())
        for (const auto& [w, cw] : g.coeffs()) {
            Exponent e(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) e[i] = u[i] + w[i];
            HahnSeries prod = hs_mul(cu, cw);
            auto it = m.find(e);
            if (it == m.end())
                m.emplace(std::move(e), std::move(prod));
            else
                it->second = hs_add(it->second, prod);
        }
    return LaurentPoly(f.ctx(), f.nvars(), std::move(m));
}

LaurentPoly lp_pow(const LaurentPoly& f, long e) {
    if (e < 0) fail(errc::invalid_argument, "negative power of a Laurent polynomial");
    std::map<Exponent, HahnSeries> one;
    one.emplace(Exponent(static_cast<std::size_t>(f.nvars()), 0), HahnSeries::one(f.ctx()));
    LaurentPoly r(f.ctx(), f.nvars(), std::move(one));
    LaurentPoly base = f;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = lp_mul(r, base);
        if (e > 1) base = lp_mul(base, base);
    }
    return r;
}

LaurentPoly lp_sigma(const LaurentPoly& f, long power) {
    std::map<Exponent, HahnSeries> m;
    for (const auto& [u, c] : f.coeffs()) m.emplace(u, hs_sigma(c, power));
    return LaurentPoly(f.ctx(), f.nvars(), std::move(m));
}

HahnSeries lp_eval(const LaurentPoly& f, const std::vector<HahnSeries>& z) {
    if (static_cast<int>(z.size()) != f.nvars())
        fail(errc::invalid_argument, "wrong number of evaluation points");
    HahnSeries sum = HahnSeries::zero(f.ctx());
    for (const auto& [u, c] : f.coeffs()) {
        HahnSeries term = c;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] != 0) term = hs_mul(term, hs_pow(z[i], u[i]));
        sum = hs_add(sum, term);
    }
    return sum;
}

TropicalPolynomial::TropicalPolynomial(int rank, int nvars,
                                       std::vector<TropPiece> pieces)
    : rank_(rank), nvars_(nvars), pieces_(std::move(pieces)) {
    if (rank_ < 1 || nvars_ < 1)
        fail(errc::invalid_argument, "tropical polynomial needs positive rank and arity");
    for (const auto& p : pieces_) {
        if (p.gamma.is_infinity() || p.gamma.rank() != rank_)
            fail(errc::rank_mismatch, "tropical piece constant of wrong rank");
        if (static_cast<int>(p.u.size()) != nvars_)
            fail(errc::invalid_argument, "tropical piece slope of wrong arity");
    }
    std::sort(pieces_.begin(), pieces_.end(), [](const TropPiece& a, const TropPiece& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.gamma < b.gamma;
    });
    for (std::size_t i = 1; i < pieces_.size(); ++i)
        if (pieces_[i].u == pieces_[i - 1].u)
            fail(errc::invalid_argument, "duplicate slope in tropical polynomial");
}

TropicalPolynomial tropicalize(const LaurentPoly& f) {
    if (f.is_zero())
        fail(errc::zero_polynomial, "tropicalizing the zero polynomial");
    std::vector<TropPiece> pieces;
    pieces.reserve(f.coeffs().size());
    for (const auto& [u, c] : f.coeffs())
        pieces.push_back({hs_v(c), u}); // errors if v indeterminate
    return TropicalPolynomial(f.ctx()->rank(), f.nvars(), std::move(pieces));
}

TropValue trop_eval(const TropicalPolynomial& t, const TropPoint& x) {
    if (static_cast<int>(x.size()) != t.nvars())
        fail(errc::invalid_argument, "wrong number of point coordinates");
    for (const auto& xi : x)
        if (xi.is_infinity() || xi.rank() != t.rank())
            fail(errc::rank_mismatch, "point coordinate of wrong rank");
    std::optional<GroupVector> best;
    int count = 0;
    for (const auto& p : t.pieces()) {
        GroupVector w = p.gamma;
        for (std::size_t i = 0; i < p.u.size(); ++i)
            if (p.u[i] != 0) w = w + x[i].scaled(Rat(p.u[i]));
        if (!best || w < *best) {
            best = w;
            count = 1;
        } else if (w == *best) {
            ++count;
        }
    }
    if (!best)
        fail(errc::empty_input, "tropical polynomial with no pieces");
    return {*best, count};
}

std::vector<GroupVector> trop_roots_univariate(const TropicalPolynomial& t) {
    if (t.nvars() != 1)
        fail(errc::invalid_argument, "tropical root finding is univariate");
    std::vector<GroupVector> roots;
    const auto& ps = t.pieces();
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            long du = ps[i].u[0] - ps[j].u[0];
            if (du == 0) continue;
            // gamma_i + u_i x = gamma_j + u_j x
            GroupVector x = (ps[j].gamma - ps[i].gamma).scaled(make_rat(1, du));
            if (trop_eval(t, {x}).multiplicity >= 2) roots.push_back(x);
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

ResiduePoly::ResiduePoly(Ctx ctx, int nvars, std::map<Exponent, CycloElement> coeffs)
    : ctx_(std::move(ctx)), nvars_(nvars) {
    for (auto& [u, c] : coeffs) {
        if (static_cast<int>(u.size()) != nvars_)
            fail(errc::invalid_argument, "monomial exponent of wrong arity");
        if (!c.is_zero()) coeffs_.emplace(u, std::move(c));
    }
}

ResiduePoly residue_poly_sigma(const ResiduePoly& f, long power) {
    const CycloField& k = f.ctx()->residue();
    std::map<Exponent, CycloElement> m;
    for (const auto& [u, c] : f.coeffs()) m.emplace(u, k.apply_aut(c, power));
    return ResiduePoly(f.ctx(), f.nvars(), std::move(m));
}

ResiduePoly initial_form(const LaurentPoly& f, const TropPoint& gamma) {
    if (f.is_zero())
        fail(errc::zero_polynomial, "initial form of the zero polynomial");
    if (static_cast<int>(gamma.size()) != f.nvars())
        fail(errc::invalid_argument, "wrong number of point coordinates");
    std::optional<GroupVector> best;
    for (const auto& [u, c] : f.coeffs()) {
        GroupVector w = hs_v(c);
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] != 0) w = w + gamma[i].scaled(Rat(u[i]));
        if (!best || w < *best) best = w;
    }
    std::map<Exponent, CycloElement> m;
    for (const auto& [u, c] : f.coeffs()) {
        GroupVector w = hs_v(c);
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] != 0) w = w + gamma[i].scaled(Rat(u[i]));
        if (w == *best) m.emplace(u, hs_leading(c).ac);
    }
    return ResiduePoly(f.ctx(), f.nvars(), std::move(m));
}

namespace {

struct HullPoint {
    long u;
    GroupVector w;
};

// cross(P1,P2,P3) = (u2-u1)(w3-w2) - (w2-w1)(u3-u2); nonpositive means the
// middle point lies on or above the segment, so it is not a lower-hull
// vertex.
int hull_turn(const HullPoint& p1, const HullPoint& p2, const HullPoint& p3) {
    GroupVector lhs = (p3.w - p2.w).scaled(Rat(p2.u - p1.u));
    GroupVector rhs = (p2.w - p1.w).scaled(Rat(p3.u - p2.u));
    return lhs.compare(rhs);
}

} // namespace

std::vector<std::pair<GroupVector, long>> newton_valuations(const LaurentPoly& f) {
    if (f.nvars() != 1)
        fail(errc::invalid_argument, "Newton data is univariate");
    if (f.coeffs().size() < 2)
        fail(errc::invalid_argument,
             "Newton data needs at least two distinct exponents");
    std::vector<HullPoint> pts;
    for (const auto& [u, c] : f.coeffs()) pts.push_back({u[0], hs_v(c)});
    // Already sorted by exponent (map order). Monotone-chain lower hull.
    std::vector<HullPoint> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2 &&
               hull_turn(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    std::vector<std::pair<GroupVector, long>> out;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        long len = hull[i + 1].u - hull[i].u;
        GroupVector gamma = (hull[i].w - hull[i + 1].w).scaled(make_rat(1, len));
        out.emplace_back(std::move(gamma), len);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

KapranovReport kapranov_check(const LaurentPoly& f) {
    KapranovReport rep;
    rep.newton = newton_valuations(f);
    rep.trop_roots = trop_roots_univariate(tropicalize(f));
    rep.pass = true;
    std::vector<GroupVector> newton_set;
    for (const auto& [g, m] : rep.newton) newton_set.push_back(g);
    if (newton_set != rep.trop_roots) {
        rep.pass = false;
        rep.notes.push_back("tropical roots and Newton valuations disagree");
    }
    for (const auto& g : rep.trop_roots) {
        ResiduePoly in = initial_form(f, {g});
        if (in.term_count() < 2) {
            rep.pass = false;
            rep.notes.push_back("initial form at " + g.str() + " is a monomial");
        }
    }
    long total = 0;
    for (const auto& [g, m] : rep.newton) total += m;
    long span = f.coeffs().rbegin()->first[0] - f.coeffs().begin()->first[0];
    if (total != span) {
        rep.pass = false;
        rep.notes.push_back("Newton multiplicities do not sum to the degree span");
    }
    return rep;
}

BinomialCoset make_binomial_coset(IntLattice lattice, std::vector<HahnSeries> targets) {
    if (static_cast<std::size_t>(lattice.rank()) != targets.size())
        fail(errc::invalid_argument, "need exactly one target per basis row");
    for (const auto& b : targets)
        if (b.indistinguishable_from_zero())
            fail(errc::zero_argument, "binomial target must be nonzero");
    return {std::move(lattice), std::move(targets)};
}

ResidueCoset binomial_initial(const BinomialCoset& coset) {
    ResidueCoset out{coset.lattice, {}, is_primitive(coset.lattice)};
    for (const auto& b : coset.targets) {
        Leading lead = hs_leading(b);
        if (!lead.v.is_zero())
            fail(errc::non_unit_target,
                 "binomial reduction needs unit targets; got valuation " + lead.v.str());
        out.targets.push_back(lead.res);
    }
    return out;
}

namespace {

// beta = q * rho with q a positive rational and rho a root of unity of
// Q(zeta_n); returns (q, exponent of rho over the canonical generator).
struct SplitUnit {
    Rat q;
    long log; // rho = omega^log
};

// Roots of unity of Q(zeta_n): order M = n (n even) or 2n (n odd), generated
// by omega = zeta (n even) or -zeta (n odd).
long unity_order(const CycloField& k) {
    return k.n() % 2 == 0 ? k.n() : 2L * k.n();
}

CycloElement unity_generator(const CycloField& k) {
    return k.n() % 2 == 0 ? k.zeta() : k.neg(k.zeta());
}

std::optional<SplitUnit> split_unit(const CycloField& k, const CycloElement& beta) {
    if (beta.is_zero()) return std::nullopt;
    long m = unity_order(k);
    CycloElement omega = unity_generator(k);
    CycloElement pw = k.one();
    for (long j = 0; j < m; ++j) {
        // beta = q * pw with q rational?
        CycloElement q = k.mul(beta, k.inv(pw));
        if (q.is_rational() && q[0] > 0) return SplitUnit{q[0], j};
        if (j + 1 < m) pw = k.mul(pw, omega);
    }
    return std::nullopt;
}

std::vector<Int> prime_factors(Int v) {
    std::vector<Int> out;
    if (v < 0) v = -v;
    for (Int p = 2; p * p <= v; p += 1) {
        if (v % p == 0) {
            out.push_back(p);
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

long prime_exponent(Rat q, const Int& p) {
    long e = 0;
    while (q.get_num() % p == 0) { q /= Rat(p); ++e; }
    while (q.get_den() % p == 0) { q *= Rat(p); --e; }
    return e;
}

} // namespace

FundamentalReport fundamental_check_binomial(const Ctx& ctx,
                                             const BinomialCoset& coset,
                                             const TropPoint& gamma) {
    FundamentalReport rep;
    const int N = coset.lattice.ambient();
    const CycloField& k = ctx->residue();
    if (static_cast<int>(gamma.size()) != N)
        fail(errc::invalid_argument, "point arity does not match the lattice ambient");
    for (const auto& g : gamma)
        if (g.is_infinity() || g.rank() != ctx->rank())
            fail(errc::rank_mismatch, "point coordinate of wrong rank");

    const auto& rows = coset.lattice.basis();
    const std::size_t d = rows.size();
    // Valuation part: <u, gamma> must equal v(b_u) on every basis row.
    for (std::size_t i = 0; i < d; ++i) {
        GroupVector lhs = GroupVector::zero(ctx->rank());
        for (int j = 0; j < N; ++j) {
            const Int& e = rows[i][static_cast<std::size_t>(j)];
            if (e == 0) continue;
            if (!e.fits_slong_p())
                fail(errc::invalid_argument, "lattice exponent too large");
            lhs = lhs + gamma[static_cast<std::size_t>(j)].scaled(Rat(e));
        }
        const HahnSeries& b = coset.targets[i];
        if (b.indistinguishable_from_zero())
            fail(errc::zero_argument, "binomial target must be nonzero");
        if (lhs != hs_v(b)) {
            rep.verdict = FundamentalVerdict::inconsistent;
            rep.note = "row " + std::to_string(i) + ": <u,gamma> = " + lhs.str() +
                       " but v(b) = " + hs_v(b).str();
            return rep;
        }
    }
    // Residue part: need c in (k^x)^N with c^u = ac(b_u), searched over
    // c_i = (positive rational) * (root of unity).
    std::vector<SplitUnit> split(d);
    for (std::size_t i = 0; i < d; ++i) {
        const HahnSeries& b = coset.targets[i];
        if (!b.exact() || b.terms().size() != 1) {
            rep.note = "target on row " + std::to_string(i) +
                       " is not an exact monomial; witness search not attempted";
            return rep;
        }
        auto s = split_unit(k, hs_leading(b).ac);
        if (!s) {
            rep.note = "target coefficient on row " + std::to_string(i) +
                       " is not (positive rational) * (root of unity)";
            return rep;
        }
        split[i] = *s;
    }
    // Positive rational parts: one integer system per prime.
    std::set<Int> primes;
    for (const auto& s : split) {
        for (const auto& p : prime_factors(s.q.get_num())) primes.insert(p);
        for (const auto& p : prime_factors(s.q.get_den())) primes.insert(p);
    }
    // rowsT: N rows of width d (transpose), shared by all prime systems.
    IntMatrix rows_t(static_cast<std::size_t>(N), IntRow(d, Int(0)));
    for (std::size_t i = 0; i < d; ++i)
        for (int j = 0; j < N; ++j) rows_t[static_cast<std::size_t>(j)][i] = rows[i][static_cast<std::size_t>(j)];
    std::vector<Rat> qpart(static_cast<std::size_t>(N), Rat(1));
    for (const auto& p : primes) {
        IntRow rhs(d);
        for (std::size_t i = 0; i < d; ++i) rhs[i] = prime_exponent(split[i].q, p);
        auto sol = express_in_rows(static_cast<int>(d), rows_t, rhs);
        if (!sol) {
            rep.note = "no integral solution for the prime " + p.get_str();
            return rep;
        }
        for (int j = 0; j < N; ++j) {
            const Int& e = (*sol)[static_cast<std::size_t>(j)];
            if (!e.fits_slong_p())
                fail(errc::invalid_argument, "witness exponent too large");
            long el = e.get_si();
            Rat f(p);
            if (el >= 0)
                for (long t = 0; t < el; ++t) qpart[static_cast<std::size_t>(j)] *= f;
            else
                for (long t = 0; t < -el; ++t) qpart[static_cast<std::size_t>(j)] /= f;
        }
    }
    // Root-of-unity parts: solve rows * m = logs (mod M) by adjoining M*e_i.
    long m_ord = unity_order(k);
    IntMatrix rows_mod = rows_t; // N rows width d
    for (std::size_t i = 0; i < d; ++i) {
        IntRow extra(d, Int(0));
        extra[i] = m_ord;
        rows_mod.push_back(std::move(extra));
    }
    IntRow logs(d);
    for (std::size_t i = 0; i < d; ++i) logs[i] = split[i].log;
    auto usol = express_in_rows(static_cast<int>(d), rows_mod, logs);
    if (!usol) {
        rep.note = "no root-of-unity solution for the residue system";
        return rep;
    }
    CycloElement omega = unity_generator(k);
    std::vector<HahnSeries> witness;
    for (int j = 0; j < N; ++j) {
        const Int& e = (*usol)[static_cast<std::size_t>(j)];
        if (!e.fits_slong_p())
            fail(errc::invalid_argument, "witness exponent too large");
        long lg = ((e.get_si() % m_ord) + m_ord) % m_ord;
        CycloElement c = k.mul_rat(k.pow(omega, lg), qpart[static_cast<std::size_t>(j)]);
        witness.push_back(hs_scale(hs_section(ctx, gamma[static_cast<std::size_t>(j)]), c));
    }
    // Exact verification of every basis equation.
    for (std::size_t i = 0; i < d; ++i) {
        HahnSeries prod = HahnSeries::one(ctx);
        for (int j = 0; j < N; ++j) {
            const Int& e = rows[i][static_cast<std::size_t>(j)];
            if (e == 0) continue;
            prod = hs_mul(prod, hs_pow(witness[static_cast<std::size_t>(j)], e.get_si()));
        }
        if (!(prod == coset.targets[i])) {
            rep.note = "constructed witness failed exact verification";
            return rep;
        }
    }
    rep.verdict = FundamentalVerdict::consistent;
    rep.witness = std::move(witness);
    return rep;
}

} // namespace tropdiff
