#include "tropdiff/zsigma.hpp"

#include <algorithm>

namespace tropdiff {

HahnSeries zs_action(const ZSigmaPoly& p, const HahnSeries& z) {
    if (z.indistinguishable_from_zero())
        fail(errc::zero_argument, "the module action is defined on nonzero elements");
    HahnSeries prod = HahnSeries::one(z.ctx());
    for (const auto& [h, m] : p.coeffs())
        prod = hs_mul(prod, hs_pow(hs_sigma(z, h), m));
    return prod;
}

HahnSeries zs_apply_row(const std::vector<ZSigmaPoly>& row,
                        const std::vector<HahnSeries>& z) {
    if (row.size() != z.size())
        fail(errc::invalid_argument, "row width does not match the point arity");
    if (z.empty()) fail(errc::empty_input, "empty point");
    HahnSeries prod = HahnSeries::one(z.front().ctx());
    for (std::size_t j = 0; j < row.size(); ++j)
        prod = hs_mul(prod, zs_action(row[j], z[j]));
    return prod;
}

namespace {

void check_system(const ZSigmaMatrix& a, const std::vector<HahnSeries>& b) {
    if (a.empty()) fail(errc::empty_input, "empty system matrix");
    if (a.size() != b.size())
        fail(errc::invalid_argument, "need exactly one target per system row");
    const std::size_t n = a.front().size();
    if (n == 0) fail(errc::empty_input, "system matrix with no columns");
    for (const auto& row : a)
        if (row.size() != n)
            fail(errc::invalid_argument, "ragged system matrix");
    for (const auto& t : b)
        if (t.indistinguishable_from_zero())
            fail(errc::zero_argument, "system target must be nonzero");
}

// Raise a series target to an integer power, tolerating negative powers on
// monomials and precision-carrying series.
HahnSeries target_pow(const HahnSeries& b, const Int& e) {
    if (!e.fits_slong_p())
        fail(errc::invalid_argument, "coset transform exponent too large");
    return hs_pow(b, e.get_si());
}

} // namespace

CosetPresentation matrix_to_coset(const Ctx& ctx, const ZSigmaMatrix& a,
                                  const std::vector<HahnSeries>& b) {
    check_system(a, b);
    CosetPresentation out;
    const std::size_t d = a.size();
    const std::size_t n = a.front().size();
    out.nvars = static_cast<int>(n);
    out.shifts.resize(d, 0);
    out.raw_targets = b;

    // Normalize away negative sigma-powers row by row; multiplying a row by
    // sigma^m transforms its equation into sigma^m applied to both sides.
    ZSigmaMatrix rows = a;
    for (std::size_t i = 0; i < d; ++i) {
        long mn = 0;
        for (const auto& p : rows[i])
            if (!p.is_zero()) mn = std::min(mn, p.min_power());
        if (mn < 0) {
            out.shifts[i] = -mn;
            for (auto& p : rows[i]) p = p.shifted(-mn);
            out.raw_targets[i] = hs_sigma(out.raw_targets[i], -mn);
        }
        check_same_context(ctx, out.raw_targets[i].ctx());
    }
    long ell = 0;
    for (const auto& row : rows)
        for (const auto& p : row)
            if (!p.is_zero()) ell = std::max(ell, p.max_power());
    out.ell = ell;
    out.orbit_vars = static_cast<int>(n) * static_cast<int>(ell + 1);

    // Flatten each row into the orbit exponent vector.
    IntMatrix flat(d, IntRow(static_cast<std::size_t>(out.orbit_vars), Int(0)));
    out.C.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        out.C[i].assign(n, std::vector<long>(static_cast<std::size_t>(ell + 1), 0));
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [h, m] : rows[i][j].coeffs()) {
                out.C[i][j][static_cast<std::size_t>(h)] = m;
                flat[i][j * static_cast<std::size_t>(ell + 1) + static_cast<std::size_t>(h)] = m;
            }
    }

    // Canonical HNF basis with multiplicatively transformed targets: the
    // same row operations are applied to the b entries as exponents.
    IntMatrix work = flat;
    std::vector<HahnSeries> targets = out.raw_targets;
    const int width = out.orbit_vars;
    std::size_t r = 0;
    for (int col = 0; col < width && r < work.size(); ++col) {
        std::size_t pivot = work.size();
        for (std::size_t i = r; i < work.size(); ++i)
            if (work[i][static_cast<std::size_t>(col)] != 0) { pivot = i; break; }
        if (pivot == work.size()) continue;
        std::swap(work[r], work[pivot]);
        std::swap(targets[r], targets[pivot]);
        for (std::size_t i = r + 1; i < work.size(); ++i) {
            Int av = work[r][static_cast<std::size_t>(col)];
            Int bv = work[i][static_cast<std::size_t>(col)];
            if (bv == 0) continue;
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), av.get_mpz_t(),
                       bv.get_mpz_t());
            Int af = av / g, bf = bv / g;
            for (int c = 0; c < width; ++c) {
                Int rc = work[r][static_cast<std::size_t>(c)];
                Int ic = work[i][static_cast<std::size_t>(c)];
                work[r][static_cast<std::size_t>(c)] = x * rc + y * ic;
                work[i][static_cast<std::size_t>(c)] = af * ic - bf * rc;
            }
            HahnSeries tr = hs_mul(target_pow(targets[r], x), target_pow(targets[i], y));
            HahnSeries ti = hs_mul(target_pow(targets[i], af),
                                   target_pow(targets[r], -bf));
            targets[r] = std::move(tr);
            targets[i] = std::move(ti);
        }
        if (work[r][static_cast<std::size_t>(col)] < 0) {
            for (int c = 0; c < width; ++c) work[r][static_cast<std::size_t>(c)] = -work[r][static_cast<std::size_t>(c)];
            targets[r] = hs_inv(targets[r]);
        }
        const Int p = work[r][static_cast<std::size_t>(col)];
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), work[i][static_cast<std::size_t>(col)].get_mpz_t(), p.get_mpz_t());
            if (q == 0) continue;
            for (int c = 0; c < width; ++c)
                work[i][static_cast<std::size_t>(c)] -= q * work[r][static_cast<std::size_t>(c)];
            targets[i] = hs_mul(targets[i], target_pow(targets[r], -q));
        }
        ++r;
    }
    // Rows beyond r are zero: their accumulated targets must be trivial,
    // otherwise the original system has no solutions at all.
    for (std::size_t i = r; i < work.size(); ++i) {
        if (!hs_congruent(targets[i], HahnSeries::one(ctx)))
            fail(errc::inconsistent_system,
                 "dependent rows with incompatible targets (row combination "
                 "forces 1 = " +
                     std::to_string(i) + "-th reduced target)");
    }
    work.resize(r);
    targets.resize(r);
    out.coset = make_binomial_coset(IntLattice(width, std::move(work)),
                                    std::move(targets));
    return out;
}

MembershipCheck check_orbit_membership(const ZSigmaMatrix& a,
                                       const std::vector<HahnSeries>& b,
                                       const std::vector<HahnSeries>& z) {
    check_system(a, b);
    if (z.empty()) fail(errc::empty_input, "empty point");
    if (z.size() != a.front().size())
        fail(errc::invalid_argument, "point arity does not match the system");
    const Ctx& ctx = z.front().ctx();

    MembershipCheck out;
    out.direct = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        HahnSeries lhs = zs_apply_row(a[i], z);
        if (!hs_congruent(lhs, b[i])) {
            out.direct = false;
            break;
        }
    }
    CosetPresentation pres;
    try {
        pres = matrix_to_coset(ctx, a, b);
    } catch (const Error& e) {
        // A provably inconsistent system has an empty solution set, so
        // membership fails on both sides.
        if (e.code() != errc::inconsistent_system) throw;
        out.via_coset = false;
        return out;
    }
    // Orbit point y[j*(ell+1)+h] = sigma^h(z_j), then the HNF equations.
    std::vector<HahnSeries> y;
    y.reserve(static_cast<std::size_t>(pres.orbit_vars));
    for (std::size_t j = 0; j < z.size(); ++j)
        for (long h = 0; h <= pres.ell; ++h) y.push_back(hs_sigma(z[j], h));
    out.via_coset = true;
    const auto& rows = pres.coset.lattice.basis();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        HahnSeries prod = HahnSeries::one(ctx);
        for (std::size_t j = 0; j < y.size(); ++j) {
            const Int& e = rows[i][j];
            if (e == 0) continue;
            prod = hs_mul(prod, hs_pow(y[j], e.get_si()));
        }
        if (!hs_congruent(prod, pres.coset.targets[i])) {
            out.via_coset = false;
            break;
        }
    }
    return out;
}

std::vector<HahnSeries> purity_transfer(const ZSigmaMatrix& a,
                                        const std::vector<HahnSeries>& b,
                                        const std::vector<HahnSeries>& z) {
    check_system(a, b);
    for (const auto& t : b)
        if (!hs_v(t).is_zero())
            fail(errc::non_unit_target, "purity transfer needs unit targets");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!hs_congruent(zs_apply_row(a[i], z), b[i]))
            fail(errc::invalid_argument,
                 "the given point does not solve the system");
    std::vector<HahnSeries> u;
    u.reserve(z.size());
    for (const auto& zj : z) u.push_back(hs_unit_part(zj));
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!hs_congruent(zs_apply_row(a[i], u), b[i]))
            fail(errc::invalid_argument,
                 "unit parts failed to solve the system (unexpected)");
    return u;
}

} // namespace tropdiff
