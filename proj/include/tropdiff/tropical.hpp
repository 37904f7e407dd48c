#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropdiff/hahn.hpp"
#include "tropdiff/lattice.hpp"

namespace tropdiff {

// Laurent monomial exponent in n variables.
using Exponent = std::vector<long>;

// Laurent polynomial over the series field, fixed arity.
class LaurentPoly {
public:
    LaurentPoly(Ctx ctx, int nvars)
        : ctx_(std::move(ctx)), nvars_(nvars) {
        if (nvars_ < 1) fail(errc::invalid_argument, "need at least one variable");
    }
    LaurentPoly(Ctx ctx, int nvars, std::map<Exponent, HahnSeries> coeffs);

    const Ctx& ctx() const { return ctx_; }
    int nvars() const { return nvars_; }
    const std::map<Exponent, HahnSeries>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    bool operator==(const LaurentPoly& o) const {
        return nvars_ == o.nvars_ && coeffs_ == o.coeffs_;
    }

private:
    Ctx ctx_;
    int nvars_;
    std::map<Exponent, HahnSeries> coeffs_;
};

LaurentPoly lp_add(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly lp_sub(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly lp_neg(const LaurentPoly& f);
LaurentPoly lp_mul(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly lp_pow(const LaurentPoly& f, long e);
// Coefficient-wise twisted automorphism (variables are fixed).
LaurentPoly lp_sigma(const LaurentPoly& f, long power = 1);
HahnSeries lp_eval(const LaurentPoly& f, const std::vector<HahnSeries>& z);

// Point of Gamma^nvars.
using TropPoint = std::vector<GroupVector>;

// min-plus polynomial: pieces gamma_i + <u_i, x>.
struct TropPiece {
    GroupVector gamma;
    Exponent u;
};

class TropicalPolynomial {
public:
    TropicalPolynomial(int rank, int nvars, std::vector<TropPiece> pieces);

    int rank() const { return rank_; }
    int nvars() const { return nvars_; }
    const std::vector<TropPiece>& pieces() const { return pieces_; }

private:
    int rank_;
    int nvars_;
    std::vector<TropPiece> pieces_;
};

struct TropValue {
    GroupVector value;
    int multiplicity; // number of pieces attaining the min
};

// Piece set {(v(c_u), u)}; every coefficient valuation must be determinate.
TropicalPolynomial tropicalize(const LaurentPoly& f);

TropValue trop_eval(const TropicalPolynomial& t, const TropPoint& x);

// All points where the min is attained at least twice (univariate case),
// sorted increasingly. A single-piece polynomial has no roots.
std::vector<GroupVector> trop_roots_univariate(const TropicalPolynomial& t);

// Residue-coefficient Laurent polynomial (output of initial forms).
class ResiduePoly {
public:
    ResiduePoly(Ctx ctx, int nvars, std::map<Exponent, CycloElement> coeffs);

    const Ctx& ctx() const { return ctx_; }
    int nvars() const { return nvars_; }
    const std::map<Exponent, CycloElement>& coeffs() const { return coeffs_; }
    int term_count() const { return static_cast<int>(coeffs_.size()); }
    bool is_monomial() const { return coeffs_.size() == 1; }

    bool operator==(const ResiduePoly& o) const {
        return nvars_ == o.nvars_ && coeffs_ == o.coeffs_;
    }

private:
    Ctx ctx_;
    int nvars_;
    std::map<Exponent, CycloElement> coeffs_;
};

ResiduePoly residue_poly_sigma(const ResiduePoly& f, long power = 1);

// in_gamma(f): over the argmin set of w_u = v(c_u) + <u, gamma>, the residue
// coefficients ac(c_u) (after normalizing each coefficient by the section).
ResiduePoly initial_form(const LaurentPoly& f, const TropPoint& gamma);

// Univariate Newton data: the multiset of valuations of the roots of f in
// the algebraic closure, as (valuation, multiplicity) sorted increasingly.
// Requires at least two distinct exponents.
std::vector<std::pair<GroupVector, long>> newton_valuations(const LaurentPoly& f);

struct KapranovReport {
    bool pass = false;
    std::vector<GroupVector> trop_roots;
    std::vector<std::pair<GroupVector, long>> newton;
    std::vector<std::string> notes;
};

// Cross-check of the codimension-one correspondences on a univariate f:
// tropical roots = Newton valuations (as sets), and the initial form at each
// root is not a monomial.
KapranovReport kapranov_check(const LaurentPoly& f);

// Binomial system z^u = b_u for u running over a lattice basis.
struct BinomialCoset {
    IntLattice lattice = IntLattice(0);
    std::vector<HahnSeries> targets; // one per basis row
};

BinomialCoset make_binomial_coset(IntLattice lattice, std::vector<HahnSeries> targets);

struct ResidueCoset {
    IntLattice lattice;
    std::vector<CycloElement> targets;
    bool irreducible; // lattice is primitive
};

// Reduction at valuation zero: requires every target to be a unit.
ResidueCoset binomial_initial(const BinomialCoset& coset);

enum class FundamentalVerdict { consistent, inconsistent, unknown };

struct FundamentalReport {
    FundamentalVerdict verdict = FundamentalVerdict::unknown;
    std::vector<HahnSeries> witness; // when consistent
    std::string note;
};

// Given gamma in Gamma^N with <u, gamma> = v(b_u) for all basis rows, try to
// produce an exact witness z_i = s(gamma_i) * iota(c_i) with z^u = b_u. The
// residue search is bounded (roots of unity times positive rationals), so
// "unknown" is a possible honest outcome.
FundamentalReport fundamental_check_binomial(const Ctx& ctx,
                                             const BinomialCoset& coset,
                                             const TropPoint& gamma);

} // namespace tropdiff
