#pragma once

#include <memory>
#include <string>

#include "tropdiff/cyclo.hpp"
#include "tropdiff/group.hpp"

namespace tropdiff {

// Ambient model: residue field Q(zeta_n) with power automorphism, plus the
// action on the value group Q^rank. Immutable and shared; series and
// polynomials hold a pointer and mixing distinct contexts is a hard error.
class ModelContext {
public:
    ModelContext(CycloField residue, GroupAut sigma_gamma)
        : residue_(std::move(residue)), sigma_gamma_(std::move(sigma_gamma)) {}

    const CycloField& residue() const { return residue_; }
    const GroupAut& sigma_gamma() const { return sigma_gamma_; }
    int rank() const { return sigma_gamma_.rank(); }
    bool isometric() const { return sigma_gamma_.is_identity(); }

    bool operator==(const ModelContext& o) const {
        return residue_ == o.residue_ && sigma_gamma_ == o.sigma_gamma_;
    }
    bool operator!=(const ModelContext& o) const { return !(*this == o); }

private:
    CycloField residue_;
    GroupAut sigma_gamma_;
};

using Ctx = std::shared_ptr<const ModelContext>;

inline Ctx make_context(int n, int a, GroupAut sigma_gamma) {
    return std::make_shared<const ModelContext>(CycloField(n, a), std::move(sigma_gamma));
}

// Preset PC: Q(zeta_4) with conjugation, value group Q, exponents doubled.
inline Ctx pc_model() { return make_context(4, 3, GroupAut({{Rat(2)}})); }

// Preset ISO: Q(zeta_4) with conjugation, isometric (identity on Q).
inline Ctx iso_model() { return make_context(4, 3, GroupAut::identity(1)); }

inline void check_same_context(const Ctx& a, const Ctx& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || *a != *b)
        fail(errc::context_mismatch, "operands belong to different model contexts");
}

} // namespace tropdiff
