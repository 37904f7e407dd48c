#include "tropdiff/amalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tropdiff/errors.hpp"

namespace tropdiff {

namespace {

int norm_mod(long v, int n) { return static_cast<int>(((v % n) + n) % n); }

bool is_unit(int v, int n) { return std::gcd(norm_mod(v, n), n) == 1; }

// b * H as a sorted set.
std::vector<int> coset(int n, int b, const std::vector<int>& h) {
    std::vector<int> out;
    out.reserve(h.size());
    for (int x : h) out.push_back(norm_mod(static_cast<long>(b) * x, n));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<int> unit_group(int n) {
    // For n = 1 this is the trivial group {0} (0 being the unique residue).
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (is_unit(v, n)) out.push_back(v);
    return out;
}

CycloDiffSubfield make_subfield(int n, std::vector<int> h, int b) {
    if (n < 1) fail(errc::invalid_argument, "ambient conductor must be >= 1");
    std::set<int> hs;
    for (int v : h) {
        int x = norm_mod(v, n);
        if (!is_unit(x, n))
            fail(errc::invalid_argument,
                 std::to_string(v) + " is not a unit mod " + std::to_string(n));
        hs.insert(x);
    }
    hs.insert(norm_mod(1, n));
    // Subgroup: closed under multiplication (finiteness gives inverses).
    for (int x : hs)
        for (int y : hs)
            if (!hs.count(norm_mod(static_cast<long>(x) * y, n)))
                fail(errc::invalid_argument, "H is not closed under multiplication");
    if (!is_unit(norm_mod(b, n), n))
        fail(errc::invalid_argument,
             "automorphism exponent " + std::to_string(b) + " is not a unit mod " +
                 std::to_string(n));
    CycloDiffSubfield out;
    out.n = n;
    out.H.assign(hs.begin(), hs.end());
    std::vector<int> bh = coset(n, norm_mod(b, n), out.H);
    out.b = bh.front(); // least representative
    return out;
}

std::vector<std::vector<int>> unit_subgroups(int n) {
    std::vector<int> units = unit_group(n);
    std::set<std::vector<int>> found;
    found.insert(std::vector<int>{norm_mod(1, n)});
    // Saturate: extend every known subgroup by every unit until stable.
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<std::vector<int>> next = found;
        for (const auto& h : found)
            for (int g : units) {
                std::set<int> cl(h.begin(), h.end());
                cl.insert(g);
                // multiplicative closure
                bool changed = true;
                while (changed) {
                    changed = false;
                    std::vector<int> cur(cl.begin(), cl.end());
                    for (int x : cur)
                        for (int y : cur) {
                            int p = norm_mod(static_cast<long>(x) * y, n);
                            if (!cl.count(p)) {
                                cl.insert(p);
                                changed = true;
                            }
                        }
                }
                std::vector<int> key(cl.begin(), cl.end());
                if (next.insert(key).second) grew = true;
            }
        found = std::move(next);
    }
    return {found.begin(), found.end()};
}

bool is_extension(const CycloDiffSubfield& big, const CycloDiffSubfield& small) {
    if (big.n != small.n)
        fail(errc::context_mismatch, "subfields of different ambient conductors");
    // Fix(H_big) >= Fix(H_small) iff H_big <= H_small.
    for (int x : big.H)
        if (!std::binary_search(small.H.begin(), small.H.end(), x)) return false;
    // Automorphisms agree on the smaller field iff b_big in b_small * H_small.
    std::vector<int> cs = coset(small.n, small.b, small.H);
    return std::binary_search(cs.begin(), cs.end(), big.b);
}

AmalgVerdict decide_amalgamation(const AmalgProblem& p) {
    if (p.base.n != p.left.n || p.base.n != p.right.n)
        fail(errc::context_mismatch, "problem pieces have different ambient conductors");
    if (!is_extension(p.left, p.base) || !is_extension(p.right, p.base))
        fail(errc::invalid_argument, "left/right do not extend the base");
    const int n = p.base.n;
    std::vector<int> cl = coset(n, p.left.b, p.left.H);
    std::vector<int> cr = coset(n, p.right.b, p.right.H);
    std::vector<int> inter;
    std::set_intersection(cl.begin(), cl.end(), cr.begin(), cr.end(),
                          std::back_inserter(inter));
    AmalgVerdict out;
    if (inter.empty()) {
        out.reason = "the automorphism cosets b_L*H_L and b_R*H_R are disjoint";
        return out;
    }
    std::vector<int> h3;
    std::set_intersection(p.left.H.begin(), p.left.H.end(), p.right.H.begin(),
                          p.right.H.end(), std::back_inserter(h3));
    out.solvable = true;
    out.witness = make_subfield(n, h3, inter.front());
    return out;
}

BaseReport is_amalgamation_base(const CycloDiffSubfield& x) {
    const int n = x.n;
    // All extensions of x in the ambient: subgroups of H_x with a compatible
    // automorphism exponent.
    std::vector<CycloDiffSubfield> exts;
    for (const auto& h : unit_subgroups(n)) {
        // subgroup of H_x?
        bool sub = true;
        for (int v : h)
            if (!std::binary_search(x.H.begin(), x.H.end(), v)) { sub = false; break; }
        if (!sub) continue;
        std::set<int> seen;
        for (int bx : coset(n, x.b, x.H)) {
            CycloDiffSubfield cand = make_subfield(n, h, bx);
            if (!seen.insert(cand.b).second) continue;
            if (is_extension(cand, x)) exts.push_back(cand);
        }
    }
    BaseReport out;
    out.is_base = true;
    for (const auto& l : exts)
        for (const auto& r : exts) {
            AmalgVerdict v = decide_amalgamation({x, l, r});
            if (!v.solvable) {
                out.is_base = false;
                out.counterexample = std::make_pair(l, r);
                return out;
            }
        }
    return out;
}

AmalgProblem reduce_valued_to_residue(const ValuedProblemDescriptor& d) {
    if (d.value_rank < 1)
        fail(errc::invalid_argument, "value group rank must be positive");
    // Re-canonicalize and validate the residue data; the value-group side is
    // deliberately discarded (divisible ordered abelian groups always
    // amalgamate, so only the residue problem can obstruct).
    AmalgProblem p;
    p.base = make_subfield(d.residue.base.n, d.residue.base.H, d.residue.base.b);
    p.left = make_subfield(d.residue.left.n, d.residue.left.H, d.residue.left.b);
    p.right = make_subfield(d.residue.right.n, d.residue.right.H, d.residue.right.b);
    if (p.base.n != p.left.n || p.base.n != p.right.n)
        fail(errc::context_mismatch, "problem pieces have different ambient conductors");
    if (!is_extension(p.left, p.base) || !is_extension(p.right, p.base))
        fail(errc::invalid_argument, "left/right do not extend the base");
    return p;
}

} // namespace tropdiff
