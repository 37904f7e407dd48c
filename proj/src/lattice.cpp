#include "tropdiff/lattice.hpp"

#include <algorithm>

namespace tropdiff {

namespace {

void check_width(int ambient, const IntMatrix& rows) {
    if (ambient < 0)
        fail(errc::invalid_argument, "ambient dimension must be nonnegative");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != ambient)
            fail(errc::invalid_argument, "row width does not match the ambient dimension");
}

// a = q*b + r with 0 <= r < |b|.
Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

IntMatrix hnf_rows(int ambient, IntMatrix rows) {
    check_width(ambient, rows);
    const std::size_t m = rows.size();
    std::size_t r = 0;
    for (int col = 0; col < ambient && r < m; ++col) {
        // Clear the column below position r via gcd row transforms.
        std::size_t pivot = m;
        for (std::size_t i = r; i < m; ++i)
            if (rows[i][static_cast<std::size_t>(col)] != 0) { pivot = i; break; }
        if (pivot == m) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = r + 1; i < m; ++i) {
            Int& a = rows[r][static_cast<std::size_t>(col)];
            Int b = rows[i][static_cast<std::size_t>(col)];
            if (b == 0) continue;
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
                       b.get_mpz_t());
            Int af = a / g, bf = b / g;
            for (int c = 0; c < ambient; ++c) {
                Int rc = rows[r][static_cast<std::size_t>(c)];
                Int ic = rows[i][static_cast<std::size_t>(c)];
                rows[r][static_cast<std::size_t>(c)] = x * rc + y * ic;
                rows[i][static_cast<std::size_t>(c)] = af * ic - bf * rc;
            }
        }
        if (rows[r][static_cast<std::size_t>(col)] < 0)
            for (int c = 0; c < ambient; ++c) rows[r][static_cast<std::size_t>(c)] = -rows[r][static_cast<std::size_t>(c)];
        // Reduce the entries above the pivot into [0, pivot).
        const Int& p = rows[r][static_cast<std::size_t>(col)];
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(rows[i][static_cast<std::size_t>(col)], p);
            if (q == 0) continue;
            for (int c = 0; c < ambient; ++c)
                rows[i][static_cast<std::size_t>(c)] -= q * rows[r][static_cast<std::size_t>(c)];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

IntMatrix integer_kernel(int ambient, const IntMatrix& rows) {
    check_width(ambient, rows);
    const std::size_t m = rows.size();
    // Row-reduce [rows^T | I]; rows whose left block vanishes carry a kernel
    // basis on the right. The kernel of an integer matrix is saturated.
    IntMatrix work(static_cast<std::size_t>(ambient),
                   IntRow(m + static_cast<std::size_t>(ambient), Int(0)));
    for (int i = 0; i < ambient; ++i) {
        for (std::size_t j = 0; j < m; ++j) work[static_cast<std::size_t>(i)][j] = rows[j][static_cast<std::size_t>(i)];
        work[static_cast<std::size_t>(i)][m + static_cast<std::size_t>(i)] = 1;
    }
    IntMatrix reduced = hnf_rows(static_cast<int>(m) + ambient, std::move(work));
    IntMatrix kernel;
    for (const auto& row : reduced) {
        bool left_zero = true;
        for (std::size_t j = 0; j < m; ++j)
            if (row[j] != 0) { left_zero = false; break; }
        if (!left_zero) continue;
        kernel.emplace_back(row.begin() + static_cast<long>(m), row.end());
    }
    // hnf_rows drops nothing here (identity block keeps rows independent),
    // but rows with zero left block may appear in any order; canonicalize.
    return hnf_rows(ambient, std::move(kernel));
}

IntLattice::IntLattice(int ambient, IntMatrix rows) : ambient_(ambient) {
    basis_ = hnf_rows(ambient, std::move(rows));
}

bool IntLattice::contains(const IntRow& v) const {
    if (static_cast<int>(v.size()) != ambient_)
        fail(errc::invalid_argument, "vector width does not match the ambient dimension");
    IntRow x = v;
    for (const auto& row : basis_) {
        // Find the pivot column of this basis row.
        std::size_t pc = 0;
        while (pc < row.size() && row[pc] == 0) ++pc;
        if (pc == row.size()) continue;
        if (x[pc] % row[pc] != 0) {
            // Might still clear later? No: earlier rows have earlier pivots
            // and later rows are zero in this column.
            return false;
        }
        Int q = x[pc] / row[pc];
        if (q != 0)
            for (std::size_t c = 0; c < row.size(); ++c) x[c] -= q * row[c];
    }
    for (const auto& e : x)
        if (e != 0) return false;
    return true;
}

IntLattice saturate(const IntLattice& l) {
    IntMatrix k = integer_kernel(l.ambient(), l.basis());
    IntMatrix kk = integer_kernel(l.ambient(), k);
    return IntLattice(l.ambient(), std::move(kk));
}

bool is_primitive(const IntLattice& l) { return saturate(l) == l; }

namespace {

// Determinant of a square rational matrix by fraction-free-ish elimination.
Rat rat_det(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    Rat det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

} // namespace

Int saturation_index(const IntLattice& l) {
    IntLattice s = saturate(l);
    const auto& lb = l.basis();
    const auto& sb = s.basis();
    const std::size_t k = lb.size();
    if (k != sb.size())
        fail(errc::invalid_argument, "saturation changed the rank"); // impossible
    if (k == 0) return Int(1);
    // Write each row of L over the basis of S: solve x * S = l by rational
    // elimination on S^T, collect the k x k change-of-basis matrix T.
    const int n = l.ambient();
    std::vector<std::vector<Rat>> t(k, std::vector<Rat>(k, Rat(0)));
    for (std::size_t i = 0; i < k; ++i) {
        // Solve sum_j x_j * sb[j] = lb[i].
        std::vector<std::vector<Rat>> aug(static_cast<std::size_t>(n),
                                          std::vector<Rat>(k + 1, Rat(0)));
        for (int c = 0; c < n; ++c) {
            for (std::size_t j = 0; j < k; ++j)
                aug[static_cast<std::size_t>(c)][j] = Rat(sb[j][static_cast<std::size_t>(c)]);
            aug[static_cast<std::size_t>(c)][k] = Rat(lb[i][static_cast<std::size_t>(c)]);
        }
        std::size_t row = 0;
        std::vector<long> pivots;
        for (std::size_t col = 0; col < k && row < aug.size(); ++col) {
            std::size_t piv = aug.size();
            for (std::size_t r = row; r < aug.size(); ++r)
                if (aug[r][col] != 0) { piv = r; break; }
            if (piv == aug.size()) continue;
            std::swap(aug[piv], aug[row]);
            Rat p = aug[row][col];
            for (std::size_t c = col; c <= k; ++c) aug[row][c] /= p;
            for (std::size_t r = 0; r < aug.size(); ++r) {
                if (r == row) continue;
                Rat f = aug[r][col];
                if (f == 0) continue;
                for (std::size_t c = col; c <= k; ++c) aug[r][c] -= f * aug[row][c];
            }
            pivots.push_back(static_cast<long>(col));
            ++row;
        }
        for (std::size_t r = row; r < aug.size(); ++r)
            if (aug[r][k] != 0)
                fail(errc::invalid_argument, "lattice row outside the saturation span");
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            t[i][static_cast<std::size_t>(pivots[pi])] = aug[pi][k];
    }
    Rat d = rat_det(std::move(t));
    if (d < 0) d = -d;
    if (!is_integer(d) || d == 0)
        fail(errc::invalid_argument, "saturation index is not a positive integer");
    return d.get_num();
}

IntMatrix connected_component_map(int ambient, const IntMatrix& psi_rows) {
    IntLattice l(ambient, psi_rows);
    return saturate(l).basis();
}

std::optional<IntRow> express_in_rows(int width, const IntMatrix& rows,
                                      const IntRow& target) {
    check_width(width, rows);
    if (static_cast<int>(target.size()) != width)
        fail(errc::invalid_argument, "target width does not match the rows");
    const std::size_t m = rows.size();
    // HNF of [rows | I_m]: left block H1 = T * rows with T recorded on the
    // right. Reduce the target through the pivots of H1; the combination in
    // terms of H rows is then pushed through T.
    IntMatrix work(m, IntRow(static_cast<std::size_t>(width) + m, Int(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (int c = 0; c < width; ++c) work[i][static_cast<std::size_t>(c)] = rows[i][static_cast<std::size_t>(c)];
        work[i][static_cast<std::size_t>(width) + i] = 1;
    }
    IntMatrix h = hnf_rows(width + static_cast<int>(m), std::move(work));
    IntRow residue = target;
    IntRow x(m, Int(0));
    for (const auto& row : h) {
        std::size_t pc = 0;
        while (pc < static_cast<std::size_t>(width) && row[pc] == 0) ++pc;
        if (pc == static_cast<std::size_t>(width)) continue; // dependent original rows
        if (residue[pc] == 0) continue;
        if (residue[pc] % row[pc] != 0) return std::nullopt;
        Int q = residue[pc] / row[pc];
        for (int c = 0; c < width; ++c) residue[static_cast<std::size_t>(c)] -= q * row[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < m; ++i) x[i] += q * row[static_cast<std::size_t>(width) + i];
    }
    for (const auto& e : residue)
        if (e != 0) return std::nullopt;
    return x;
}

} // namespace tropdiff
