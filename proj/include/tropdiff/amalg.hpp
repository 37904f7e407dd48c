#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tropdiff {

// A difference subfield of the ambient Q(zeta_n): the fixed field of the
// subgroup H <= (Z/n)^x together with the restriction of zeta -> zeta^b.
// Stored canonically: H sorted, b the least representative of b*H.
struct CycloDiffSubfield {
    int n = 1;
    std::vector<int> H;
    int b = 1;

    bool operator==(const CycloDiffSubfield& o) const {
        return n == o.n && H == o.H && b == o.b;
    }
};

// Validates and canonicalizes: H must be a subgroup of (Z/n)^x, b a unit.
CycloDiffSubfield make_subfield(int n, std::vector<int> h, int b);

// All units mod n, sorted.
std::vector<int> unit_group(int n);
// All subgroups of (Z/n)^x, each sorted, deterministic order.
std::vector<std::vector<int>> unit_subgroups(int n);

// big extends small: Fix(H_big) contains Fix(H_small) and the automorphisms
// agree on the smaller field. Subfields must share the ambient n.
bool is_extension(const CycloDiffSubfield& big, const CycloDiffSubfield& small);

struct AmalgProblem {
    CycloDiffSubfield base;
    CycloDiffSubfield left;
    CycloDiffSubfield right;
};

struct AmalgVerdict {
    bool solvable = false;
    std::optional<CycloDiffSubfield> witness; // a common extension when solvable
    std::string reason;                       // why not, otherwise
};

// Solvable iff the automorphism cosets b_L * H_L and b_R * H_R intersect;
// the witness is then (H_L intersect H_R, any common exponent).
AmalgVerdict decide_amalgamation(const AmalgProblem& p);

struct BaseReport {
    bool is_base = false;
    // A failing pair of extensions when not a base.
    std::optional<std::pair<CycloDiffSubfield, CycloDiffSubfield>> counterexample;
};

// Exhaustive check over all pairs of extensions of x inside the ambient.
BaseReport is_amalgamation_base(const CycloDiffSubfield& x);

// An ac-valued amalgamation problem: residue difference-field data plus an
// opaque description of the value-group side. The verdict of the valued
// problem is the verdict of its residue problem; the group data never
// enters, and reduce keeps it around only so that invariance is testable.
struct ValuedProblemDescriptor {
    AmalgProblem residue;
    int value_rank = 1;          // rank of the lex value group on each side
    std::string value_note;      // free-form descriptor, ignored by the verdict
};

// Projects to the residue problem (validating it); a malformed residue
// problem is an error.
AmalgProblem reduce_valued_to_residue(const ValuedProblemDescriptor& d);

} // namespace tropdiff
