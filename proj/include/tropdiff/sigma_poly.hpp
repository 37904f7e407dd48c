#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropdiff/hahn.hpp"

namespace tropdiff {

// Multi-index over the sigma-levels T_0 = x, T_1 = sigma(x), ..., recording
// the exponent of each level in a monomial.
using MIdx = std::vector<int>;

inline int midx_total(const MIdx& i) {
    int s = 0;
    for (int v : i) s += v;
    return s;
}

// A difference polynomial G(x) = g(x, sigma(x), ..., sigma^n(x)) with Hahn
// series coefficients. Indices are normalized so that the highest stored
// level is actually used (or a single level for constants).
class SigmaPolynomial {
public:
    explicit SigmaPolynomial(Ctx ctx) : ctx_(std::move(ctx)), levels_(1) {}
    SigmaPolynomial(Ctx ctx, std::map<MIdx, HahnSeries> coeffs);

    static SigmaPolynomial constant(const HahnSeries& c);
    // sigma^level(x) as a polynomial.
    static SigmaPolynomial variable(const Ctx& ctx, int level = 0);

    const Ctx& ctx() const { return ctx_; }
    // Number of levels carried (= 1 + highest used sigma power; 1 for
    // constants and the zero polynomial).
    int levels() const { return levels_; }
    const std::map<MIdx, HahnSeries>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const;

    bool operator==(const SigmaPolynomial& o) const {
        return coeffs_ == o.coeffs_;
    }

private:
    Ctx ctx_;
    std::map<MIdx, HahnSeries> coeffs_;
    int levels_;
};

SigmaPolynomial sp_add(const SigmaPolynomial& f, const SigmaPolynomial& g);
SigmaPolynomial sp_sub(const SigmaPolynomial& f, const SigmaPolynomial& g);
SigmaPolynomial sp_neg(const SigmaPolynomial& f);
SigmaPolynomial sp_mul(const SigmaPolynomial& f, const SigmaPolynomial& g);
SigmaPolynomial sp_pow(const SigmaPolynomial& f, long e);

// G(a): substitute the sigma-orbit of a.
HahnSeries sp_eval(const SigmaPolynomial& g, const HahnSeries& a);

// (order, degree in the top level, total degree), ordered lexicographically.
struct Complexity {
    int order = 0;
    int top_degree = 0;
    int total_degree = 0;

    int compare(const Complexity& o) const {
        if (order != o.order) return order < o.order ? -1 : 1;
        if (top_degree != o.top_degree) return top_degree < o.top_degree ? -1 : 1;
        if (total_degree != o.total_degree) return total_degree < o.total_degree ? -1 : 1;
        return 0;
    }
    bool operator==(const Complexity& o) const { return compare(o) == 0; }
    bool operator<(const Complexity& o) const { return compare(o) < 0; }

    std::string str() const {
        return "(" + std::to_string(order) + "," + std::to_string(top_degree) +
               "," + std::to_string(total_degree) + ")";
    }
};

// Errors on the zero polynomial.
Complexity sp_complexity(const SigmaPolynomial& g);

// Normalized Taylor coefficient G_(i): sum over stored monomials m >= i of
// c_m * prod_j binom(m_j, i_j) * T^(m-i). For i = 0 this is G itself.
SigmaPolynomial sp_taylor(const SigmaPolynomial& g, const MIdx& i);
// All nonzero Taylor coefficients, including i = 0.
std::map<MIdx, SigmaPolynomial> sp_taylor_all(const SigmaPolynomial& g);

struct HenselConfig {
    bool ok = false;
    GroupVector delta;  // v(G(a)) when ok
    std::string reason; // first violated clause when not ok
};

// Configuration test: G nonconstant, G(a) != 0, v(G(a)) > 0, and
// v(G_(i)(a)) = 0 for every i != 0 with G_(i) != 0. Evaluations that are
// indistinguishable from zero at finite precision raise
// indeterminate_at_precision.
HenselConfig sp_hensel_config(const SigmaPolynomial& g, const HahnSeries& a);

struct LiftResult {
    enum class Status { ok, residue_obstruction };
    Status status = Status::ok;
    HahnSeries root;           // final approximation
    GroupVector residual_v;    // v(G(root)), infinity if exactly zero
    int steps = 0;
    // Populated on residue_obstruction: the unsolvable residue equation
    // sum_j coeffs[j] * sigma_k^j(c) = rhs at level delta.
    GroupVector delta;
    std::vector<CycloElement> residue_coeffs;
    CycloElement residue_rhs;
};

// Successive approximation in an isometric model (sigma_Gamma = id),
// starting from a in Hensel configuration, until v(G(root)) >= target.
LiftResult sp_hensel_lift(const SigmaPolynomial& g, const HahnSeries& a,
                          const GroupVector& target);

// trop(g) evaluated at gamma: min over monomials i of
// v(c_i) + sum_j i_j * sigma_Gamma^j(gamma).
GroupVector sp_trop_eval(const SigmaPolynomial& g, const GroupVector& gamma);

// a is regular for the family: v(f(a)) = trop(f)(v(a)) for every f.
bool sp_is_regular(const HahnSeries& a, const std::vector<SigmaPolynomial>& family);

} // namespace tropdiff
