#pragma once

// Shared test utilities: deterministic generators and small independent
// oracles used to cross-check library results.

#include <random>
#include <set>
#include <vector>

#include "tropdiff/amalg.hpp"
#include "tropdiff/parse.hpp"
#include "tropdiff/printing.hpp"
#include "tropdiff/zsigma.hpp"

namespace tdt {

using namespace tropdiff;

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}

    long range(long lo, long hi) { // inclusive
        return std::uniform_int_distribution<long>(lo, hi)(g);
    }
    bool chance(double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(g) < p;
    }

    // Rational in (1/12)Z intersected with [-3, 3].
    Rat twelfth() { return make_rat(range(-36, 36), 12); }

    // Small nonzero rational.
    Rat small_rat() {
        Rat q = make_rat(range(-6, 6), range(1, 4));
        if (q == 0) q = 1;
        return q;
    }

    CycloElement residue_nonzero(const CycloField& k) {
        for (;;) {
            std::vector<Rat> c(static_cast<std::size_t>(k.degree()), Rat(0));
            for (auto& x : c)
                if (chance(0.6)) x = make_rat(range(-4, 4), range(1, 3));
            CycloElement e(std::move(c));
            if (!e.is_zero()) return e;
        }
    }

    // Exact series with `terms` distinct exponents from the twelfth grid.
    HahnSeries series(const Ctx& ctx, int terms, bool force_nonzero = true) {
        std::set<Rat> used;
        std::vector<HahnSeries::Term> ts;
        for (int i = 0; i < terms; ++i) {
            Rat e = twelfth();
            if (!used.insert(e).second) continue;
            ts.emplace_back(GroupVector::scalar(e),
                            residue_nonzero(ctx->residue()));
        }
        HahnSeries f(ctx, std::move(ts));
        if (force_nonzero && f.is_exact_zero())
            return hs_lift(ctx, ctx->residue().one());
        return f;
    }

    // Unit: valuation exactly zero.
    HahnSeries unit(const Ctx& ctx, int extra_terms = 2) {
        std::vector<HahnSeries::Term> ts;
        ts.emplace_back(GroupVector::zero(1), residue_nonzero(ctx->residue()));
        for (int i = 0; i < extra_terms; ++i) {
            Rat e = make_rat(range(1, 36), 12);
            ts.emplace_back(GroupVector::scalar(e),
                            residue_nonzero(ctx->residue()));
        }
        return HahnSeries(ctx, std::move(ts));
    }

    // Univariate Laurent polynomial with at least two distinct variable
    // exponents in [-3, 3] and nonzero exact coefficients.
    LaurentPoly laurent_univariate(const Ctx& ctx) {
        std::map<Exponent, HahnSeries> coeffs;
        int want = static_cast<int>(range(2, 6));
        std::set<long> exps;
        while (static_cast<int>(exps.size()) < want) exps.insert(range(-3, 3));
        for (long u : exps)
            coeffs.emplace(Exponent{u}, series(ctx, static_cast<int>(range(1, 3))));
        return LaurentPoly(ctx, 1, std::move(coeffs));
    }

    ZSigmaPoly zsigma(int max_abs_power = 2) {
        std::map<long, long> c;
        int terms = static_cast<int>(range(1, 3));
        for (int i = 0; i < terms; ++i)
            c[range(-max_abs_power, max_abs_power)] += range(-3, 3);
        return ZSigmaPoly(std::move(c));
    }
};

// Binomial coefficient C(1/2, k), the series oracle for (1 + t)^(1/2).
inline Rat sqrt_binomial_coeff(int k) {
    Rat r = 1;
    Rat half = make_rat(1, 2);
    for (int j = 0; j < k; ++j) {
        r *= (half - j);
        r /= (j + 1);
    }
    return r;
}

// Textbook rational Gaussian elimination: does Mx = rhs have a solution?
// Independent of the library's solver (no pivot policy shared).
inline bool dense_system_solvable(std::vector<std::vector<Rat>> m,
                                  std::vector<Rat> rhs) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        std::swap(rhs[p], rhs[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
            rhs[i] -= f * rhs[r];
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return false;
    return true;
}

// Brute-force amalgamation oracle: search every subfield of the ambient for
// a common extension of both legs.
inline bool brute_force_amalgamation(const AmalgProblem& p) {
    const int n = p.base.n;
    for (const auto& h : unit_subgroups(n)) {
        for (int b : unit_group(n)) {
            CycloDiffSubfield cand = make_subfield(n, h, b);
            if (is_extension(cand, p.left) && is_extension(cand, p.right))
                return true;
        }
    }
    return false;
}

// All subfields extending x inside the ambient (deduplicated canonically).
inline std::vector<CycloDiffSubfield> all_extensions(const CycloDiffSubfield& x) {
    std::vector<CycloDiffSubfield> out;
    for (const auto& h : unit_subgroups(x.n)) {
        bool sub = true;
        for (int v : h) {
            bool found = false;
            for (int w : x.H) found = found || (w == v);
            sub = sub && found;
        }
        if (!sub) continue;
        std::set<int> seen;
        for (int b : unit_group(x.n)) {
            CycloDiffSubfield cand = make_subfield(x.n, h, b);
            if (!seen.insert(cand.b).second) continue;
            if (is_extension(cand, x)) out.push_back(cand);
        }
    }
    return out;
}

} // namespace tdt
