#pragma once

#include <string>
#include <vector>

#include "tropdiff/sigma_poly.hpp"

namespace tropdiff {

// A worked certificate that the fixed field of an isometric model is not
// algebraically closed inside the big field: the equation x^2 = t - 1 has
// sigma-fixed right-hand side but no sigma-fixed root, because the two roots
// have residues i and -i and the residue automorphism swaps them.
struct FixedFieldReport {
    bool pass = false;
    HahnSeries root;          // approximation of the root with residue i
    GroupVector residual_v;   // v(root^2 - (t - 1))
    CycloElement residue;     // res(root)
    bool residue_is_i = false;
    bool sigma_moves_residue = false; // sigma_k(i) != i
    bool sigma_swaps_root = false;    // sigma(root) = -root to precision
    std::vector<std::string> notes;
};

// Runs in an isometric model whose residue field contains i with
// sigma_k(i) != i; anything else is an invalid_argument/non_isometric error.
// `target` is the requested residual valuation.
FixedFieldReport demo_fixed_field(const Ctx& ctx, const GroupVector& target);

} // namespace tropdiff
