#pragma once

#include <optional>
#include <vector>

#include "tropdiff/rational.hpp"

namespace tropdiff {

using IntRow = std::vector<Int>;
using IntMatrix = std::vector<IntRow>;

// Row Hermite normal form: independent rows, positive pivots with
// strictly increasing pivot columns, entries above each pivot reduced into
// [0, pivot). Unique canonical basis of the row lattice.
IntMatrix hnf_rows(int ambient, IntMatrix rows);

// Basis of {x in Z^N : rows * x^T = 0}, in HNF. Always a saturated lattice.
IntMatrix integer_kernel(int ambient, const IntMatrix& rows);

// Sublattice of Z^N given by its canonical HNF basis.
class IntLattice {
public:
    explicit IntLattice(int ambient, IntMatrix rows = {});

    int ambient() const { return ambient_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const IntMatrix& basis() const { return basis_; }

    bool contains(const IntRow& v) const;
    bool operator==(const IntLattice& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const IntLattice& o) const { return !(*this == o); }

private:
    int ambient_;
    IntMatrix basis_;
};

// Primitive closure: the unique primitive (saturated) lattice of the same
// rank containing L, i.e. (Q-span of L) intersect Z^N.
IntLattice saturate(const IntLattice& l);

bool is_primitive(const IntLattice& l);

// Index [saturate(L) : L]; always finite (the quotient is the torsion part).
Int saturation_index(const IntLattice& l);

// Exponent rows of the monomial map whose kernel is the connected component
// of the kernel of the map given by psi_rows: the saturation basis.
IntMatrix connected_component_map(int ambient, const IntMatrix& psi_rows);

// Integer coefficients x with sum_i x_i * rows_i = target, if any exist.
std::optional<IntRow> express_in_rows(int width, const IntMatrix& rows,
                                      const IntRow& target);

} // namespace tropdiff
