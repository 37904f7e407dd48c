#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropdiff/tropical.hpp"

namespace tropdiff {

// Element of the group ring Z[sigma, sigma^{-1}]: finitely many integer
// coefficients indexed by sigma-power. Acts on the multiplicative group:
// (sum_h m_h sigma^h) . z = prod_h sigma^h(z)^{m_h}.
class ZSigmaPoly {
public:
    ZSigmaPoly() = default;
    explicit ZSigmaPoly(std::map<long, long> coeffs) {
        for (const auto& [h, m] : coeffs)
            if (m != 0) c_.emplace(h, m);
    }

    const std::map<long, long>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long coeff(long h) const {
        auto it = c_.find(h);
        return it == c_.end() ? 0 : it->second;
    }
    long min_power() const { return c_.empty() ? 0 : c_.begin()->first; }
    long max_power() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    // Multiply by sigma^shift.
    ZSigmaPoly shifted(long shift) const {
        std::map<long, long> m;
        for (const auto& [h, v] : c_) m.emplace(h + shift, v);
        return ZSigmaPoly(std::move(m));
    }

    bool operator==(const ZSigmaPoly& o) const { return c_ == o.c_; }

private:
    std::map<long, long> c_;
};

using ZSigmaMatrix = std::vector<std::vector<ZSigmaPoly>>;

// Module action on a nonzero series.
HahnSeries zs_action(const ZSigmaPoly& p, const HahnSeries& z);

// One system row applied to a point: prod_j (a_ij . z_j).
HahnSeries zs_apply_row(const std::vector<ZSigmaPoly>& row,
                        const std::vector<HahnSeries>& z);

// The monomial-coset presentation of the system A . z = b over the orbit
// variables orb(z) = (z_j, sigma(z_j), ..., sigma^ell(z_j))_j.
struct CosetPresentation {
    long ell = 0;                          // top sigma-power after shifts
    std::vector<long> shifts;              // per-row power of sigma applied
    std::vector<std::vector<std::vector<long>>> C; // per row: nvars x (ell+1)
    std::vector<HahnSeries> raw_targets;   // b after the row shifts
    BinomialCoset coset;                   // canonical HNF form with targets
    int nvars = 0;                         // number of z variables
    int orbit_vars = 0;                    // nvars * (ell + 1)
};

// Orbit variable layout: y[j*(ell+1) + h] = sigma^h(z_j).
CosetPresentation matrix_to_coset(const Ctx& ctx, const ZSigmaMatrix& a,
                                  const std::vector<HahnSeries>& b);

struct MembershipCheck {
    bool direct = false;
    bool via_coset = false;
};

// Checks A . z = b directly and through the coset presentation; the two
// verdicts agree by construction of the presentation.
MembershipCheck check_orbit_membership(const ZSigmaMatrix& a,
                                       const std::vector<HahnSeries>& b,
                                       const std::vector<HahnSeries>& z);

// Purity transfer: from a solution z of A . z = b with unit targets, the
// componentwise unit parts u_j = z_j / s(v(z_j)) again solve the system.
std::vector<HahnSeries> purity_transfer(const ZSigmaMatrix& a,
                                        const std::vector<HahnSeries>& b,
                                        const std::vector<HahnSeries>& z);

} // namespace tropdiff
