#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tropdiff/context.hpp"

namespace tropdiff {

// Truncated Hahn series over the residue field: finitely many terms with
// strictly increasing exponents in Q^rank, plus an optional absolute
// precision bound. A finite bound p means the series is only known below p
// (terms with exponent >= p are meaningless and never stored); no bound
// means the representation is exact.
class HahnSeries {
public:
    using Term = std::pair<GroupVector, CycloElement>;

    HahnSeries() = default;
    // Normalizes: sorts, merges equal exponents, drops zeros, truncates.
    HahnSeries(Ctx ctx, std::vector<Term> terms,
               std::optional<GroupVector> precision = std::nullopt);

    static HahnSeries zero(const Ctx& ctx) { return HahnSeries(ctx, {}, std::nullopt); }
    static HahnSeries one(const Ctx& ctx);

    const Ctx& ctx() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool exact() const { return !prec_.has_value(); }
    const std::optional<GroupVector>& precision() const { return prec_; }

    // No visible terms. With finite precision this means "indistinguishable
    // from zero", not "equal to zero".
    bool indistinguishable_from_zero() const { return terms_.empty(); }
    bool is_exact_zero() const { return terms_.empty() && exact(); }

    // Identical representation: same terms and same precision.
    bool operator==(const HahnSeries& o) const {
        return terms_ == o.terms_ && prec_ == o.prec_;
    }
    bool operator!=(const HahnSeries& o) const { return !(*this == o); }

private:
    Ctx ctx_;
    std::vector<Term> terms_;
    std::optional<GroupVector> prec_;
};

struct Leading {
    GroupVector v;    // valuation, infinity for exact zero
    CycloElement ac;  // angular component, 0 for exact zero
    CycloElement res; // residue: ac when v = 0, else 0
};

HahnSeries hs_add(const HahnSeries& f, const HahnSeries& g);
HahnSeries hs_sub(const HahnSeries& f, const HahnSeries& g);
HahnSeries hs_neg(const HahnSeries& f);
HahnSeries hs_mul(const HahnSeries& f, const HahnSeries& g);

// Inverse. Exact zero gives exact zero (0^{-1} = 0); an exact monomial
// inverts exactly; otherwise a geometric expansion runs to the available
// precision, which must come from the operand or from `target`.
HahnSeries hs_inv(const HahnSeries& f,
                  std::optional<GroupVector> target = std::nullopt);
HahnSeries hs_pow(const HahnSeries& f, long e);

// Leading data (v, ac, res). Errors with indeterminate_leading_term when the
// series has no visible terms but only finite precision.
Leading hs_leading(const HahnSeries& f);
GroupVector hs_v(const HahnSeries& f);

// Multiply by a residue constant / shift by t^gamma (exact operations).
HahnSeries hs_scale(const HahnSeries& f, const CycloElement& c);
HahnSeries hs_shift(const HahnSeries& f, const GroupVector& gamma);

// Natural embeddings: the cross-section s(gamma) = t^gamma and the lift
// iota(c) = c * t^0, both exact.
HahnSeries hs_section(const Ctx& ctx, const GroupVector& gamma);
HahnSeries hs_lift(const Ctx& ctx, const CycloElement& c);

// The twisted automorphism (and its inverse for negative powers):
// coefficients through sigma_k, exponents through sigma_Gamma.
HahnSeries hs_sigma(const HahnSeries& f, long power = 1);

// z / s(v(z)); the valuation must be determinate and z nonzero.
HahnSeries hs_unit_part(const HahnSeries& f);

// Truncate to (the min with) the given absolute precision.
HahnSeries hs_truncate(const HahnSeries& f, const GroupVector& prec);

// f and g agree on every exponent below the combined precision. When both
// are exact this is exact equality.
bool hs_congruent(const HahnSeries& f, const HahnSeries& g);

} // namespace tropdiff
