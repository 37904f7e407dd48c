#include "tropdiff/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace tropdiff {

namespace {

// Dense integer polynomials, low degree first, no trailing zeros.
using IPoly = std::vector<Int>;

void itrim(IPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

IPoly imul(const IPoly& a, const IPoly& b) {
    if (a.empty() || b.empty()) return {};
    IPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact division of integer polynomials (remainder known to vanish).
IPoly idiv_exact(IPoly num, const IPoly& den) {
    itrim(num);
    IPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    while (num.size() >= den.size() && !num.empty()) {
        std::size_t shift = num.size() - den.size();
        Int c = num.back() / den.back();
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        itrim(num);
    }
    return q;
}

long mod_pow(long base, long exp, long mod) {
    long r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    for (; exp > 0; exp >>= 1) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
    }
    return r;
}

} // namespace

int euler_phi(int n) {
    int r = 0;
    for (int k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++r;
    return r;
}

std::vector<Int> cyclotomic_polynomial(int n) {
    static std::mutex mu;
    static std::map<int, IPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto compute = [&](auto&& self, int m) -> const IPoly& {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        // x^m - 1 divided by the product of Phi_d over proper divisors d.
        IPoly num(static_cast<std::size_t>(m) + 1, Int(0));
        num[0] = -1;
        num[static_cast<std::size_t>(m)] = 1;
        IPoly den{Int(1)};
        for (int d = 1; d < m; ++d)
            if (m % d == 0) den = imul(den, self(self, d));
        return cache.emplace(m, idiv_exact(std::move(num), den)).first->second;
    };
    return compute(compute, n);
}

CycloField::CycloField(int n, int a) : n_(n) {
    if (n < 1) fail(errc::invalid_argument, "conductor must be >= 1");
    a_ = ((a % n) + n) % n;
    if (n_ == 1) a_ = 1; // the unique residue class mod 1
    if (std::gcd(a_, n_) != 1)
        fail(errc::invalid_argument, "automorphism exponent " + std::to_string(a) +
                                         " is not coprime to " + std::to_string(n));
    phi_ = cyclotomic_polynomial(n_);
    deg_ = static_cast<int>(phi_.size()) - 1;

    // Power table x^k mod Phi_n for k < n, using monic reduction.
    pow_table_.assign(static_cast<std::size_t>(n_), {});
    std::vector<Rat> cur(static_cast<std::size_t>(deg_), Rat(0));
    cur[0] = 1;
    for (int k = 0; k < n_; ++k) {
        pow_table_[static_cast<std::size_t>(k)] = cur;
        // multiply by x
        std::vector<Rat> next(static_cast<std::size_t>(deg_), Rat(0));
        Rat top = cur[static_cast<std::size_t>(deg_ - 1)];
        for (int i = deg_ - 1; i > 0; --i) next[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
        next[0] = 0;
        if (top != 0)
            for (int i = 0; i < deg_; ++i)
                next[static_cast<std::size_t>(i)] -= top * Rat(phi_[static_cast<std::size_t>(i)]);
        cur = std::move(next);
    }

    aut_order_ = 1;
    long p = a_ % n_;
    while (p != 1 % n_) {
        p = (p * a_) % n_;
        ++aut_order_;
    }
}

void CycloField::check_dim(const CycloElement& x) const {
    if (x.dim() != deg_)
        fail(errc::context_mismatch, "cyclotomic element of dimension " +
                                         std::to_string(x.dim()) +
                                         " used in a field of degree " +
                                         std::to_string(deg_));
}

CycloElement CycloField::zero() const {
    return CycloElement(std::vector<Rat>(static_cast<std::size_t>(deg_), Rat(0)));
}

CycloElement CycloField::from_rat(const Rat& q) const {
    std::vector<Rat> c(static_cast<std::size_t>(deg_), Rat(0));
    c[0] = q;
    return CycloElement(std::move(c));
}

CycloElement CycloField::zeta_pow(long k) const {
    long r = ((k % n_) + n_) % n_;
    return CycloElement(pow_table_[static_cast<std::size_t>(r)]);
}

CycloElement CycloField::from_coords(std::vector<Rat> coords) const {
    if (static_cast<int>(coords.size()) != deg_)
        fail(errc::invalid_argument, "expected " + std::to_string(deg_) +
                                         " coordinates, got " +
                                         std::to_string(coords.size()));
    return CycloElement(std::move(coords));
}

CycloElement CycloField::add(const CycloElement& x, const CycloElement& y) const {
    check_dim(x);
    check_dim(y);
    std::vector<Rat> c(static_cast<std::size_t>(deg_));
    for (int i = 0; i < deg_; ++i) c[static_cast<std::size_t>(i)] = x[i] + y[i];
    return CycloElement(std::move(c));
}

CycloElement CycloField::sub(const CycloElement& x, const CycloElement& y) const {
    return add(x, neg(y));
}

CycloElement CycloField::neg(const CycloElement& x) const {
    check_dim(x);
    std::vector<Rat> c(static_cast<std::size_t>(deg_));
    for (int i = 0; i < deg_; ++i) c[static_cast<std::size_t>(i)] = -x[i];
    return CycloElement(std::move(c));
}

CycloElement CycloField::mul(const CycloElement& x, const CycloElement& y) const {
    check_dim(x);
    check_dim(y);
    // Schoolbook product, then reduce powers >= deg via the monic modulus.
    std::vector<Rat> prod(static_cast<std::size_t>(2 * deg_ - 1), Rat(0));
    for (int i = 0; i < deg_; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < deg_; ++j)
            prod[static_cast<std::size_t>(i + j)] += x[i] * y[j];
    }
    for (int d = 2 * deg_ - 2; d >= deg_; --d) {
        Rat c = prod[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        prod[static_cast<std::size_t>(d)] = 0;
        for (int i = 0; i < deg_; ++i)
            prod[static_cast<std::size_t>(d - deg_ + i)] -= c * Rat(phi_[static_cast<std::size_t>(i)]);
    }
    prod.resize(static_cast<std::size_t>(deg_));
    return CycloElement(std::move(prod));
}

CycloElement CycloField::mul_rat(const CycloElement& x, const Rat& q) const {
    check_dim(x);
    std::vector<Rat> c(static_cast<std::size_t>(deg_));
    for (int i = 0; i < deg_; ++i) c[static_cast<std::size_t>(i)] = x[i] * q;
    return CycloElement(std::move(c));
}

namespace {

// Dense rational polynomials, low degree first.
using QPoly = std::vector<Rat>;

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qtrim(a);
    return a;
}

// Quotient of Euclidean division.
QPoly qquot(QPoly num, const QPoly& den) {
    qtrim(num);
    if (num.size() < den.size()) return {};
    QPoly q(num.size() - den.size() + 1, Rat(0));
    while (num.size() >= den.size() && !num.empty()) {
        std::size_t shift = num.size() - den.size();
        Rat c = num.back() / den.back();
        q[shift] = c;
        QPoly shifted(shift, Rat(0));
        shifted.insert(shifted.end(), den.begin(), den.end());
        for (auto& x : shifted) x *= c;
        num = qsub(std::move(num), shifted);
    }
    return q;
}

} // namespace

CycloElement CycloField::inv(const CycloElement& x) const {
    check_dim(x);
    if (x.is_zero()) return zero(); // 0^{-1} = 0 by convention
    // Extended Euclid in Q[x]: u*f + v*Phi = gcd = const, inverse = u/gcd.
    QPoly r0(phi_.size());
    for (std::size_t i = 0; i < phi_.size(); ++i) r0[i] = Rat(phi_[i]);
    QPoly r1(x.coords());
    qtrim(r1);
    QPoly u0{}, u1{Rat(1)}; // coefficients of f in r0 = Phi, r1 = f
    while (true) {
        QPoly q = qquot(r0, r1);
        QPoly r2 = qsub(r0, qmul(q, r1));
        QPoly u2 = qsub(u0, qmul(q, u1));
        if (r2.empty())
            break;
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // r1 is the gcd (a nonzero constant since Phi_n is irreducible).
    if (r1.size() != 1)
        fail(errc::invalid_argument, "element is a zero divisor (non-irreducible modulus?)");
    std::vector<Rat> c(static_cast<std::size_t>(deg_), Rat(0));
    for (std::size_t i = 0; i < u1.size(); ++i) c[i] = u1[i] / r1[0];
    return CycloElement(std::move(c));
}

CycloElement CycloField::pow(const CycloElement& x, long e) const {
    if (e < 0) return pow(inv(x), -e);
    CycloElement r = one();
    CycloElement base = x;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
    }
    return r;
}

CycloElement CycloField::apply_aut(const CycloElement& x, long power) const {
    check_dim(x);
    long m = ((power % aut_order_) + aut_order_) % aut_order_;
    long apow = mod_pow(a_, m, n_);
    CycloElement r = zero();
    for (int j = 0; j < deg_; ++j) {
        if (x[j] == 0) continue;
        long img = (static_cast<long>(j) * apow) % n_;
        r = add(r, mul_rat(zeta_pow(img), x[j]));
    }
    return r;
}

std::string CycloField::str(const CycloElement& x) const {
    check_dim(x);
    auto power_name = [&](int j) -> std::string {
        if (n_ == 4 && j == 1) return "i";
        if (j == 1) return "z";
        return "z^" + std::to_string(j);
    };
    std::ostringstream os;
    int terms = 0;
    for (int j = 0; j < deg_; ++j) {
        if (x[j] == 0) continue;
        Rat c = x[j];
        if (terms == 0) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        if (j == 0) {
            os << rat_str(c);
        } else if (c == 1) {
            os << power_name(j);
        } else {
            os << rat_str(c) << "*" << power_name(j);
        }
        ++terms;
    }
    if (terms == 0) return "0";
    std::string s = os.str();
    if (terms > 1) return "(" + s + ")";
    return s;
}

std::optional<CycloElement> solve_linear_difference(
    const CycloField& k, const std::vector<CycloElement>& coeffs,
    const CycloElement& rhs) {
    if (coeffs.empty())
        fail(errc::empty_input, "no coefficients in linear difference equation");
    bool all_zero = true;
    for (const auto& c : coeffs)
        if (!c.is_zero()) all_zero = false;
    if (all_zero)
        fail(errc::zero_argument, "all-zero coefficient list in linear difference equation");

    int d = k.degree();
    // Column j of M is sum_i coeffs[i] * sigma^i(zeta^j).
    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(d),
                                    std::vector<Rat>(static_cast<std::size_t>(d + 1), Rat(0)));
    for (int j = 0; j < d; ++j) {
        CycloElement col = k.zero();
        CycloElement basis = k.zeta_pow(j);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i].is_zero()) continue;
            col = k.add(col, k.mul(coeffs[i], k.apply_aut(basis, static_cast<long>(i))));
        }
        for (int r = 0; r < d; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = col[r];
    }
    for (int r = 0; r < d; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(d)] = rhs[r];

    // Gauss-Jordan to reduced row echelon; deterministic pivoting (first
    // nonzero row in column order), free variables set to zero.
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < d && row < d; ++col) {
        int sel = -1;
        for (int r = row; r < d; ++r)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(m[static_cast<std::size_t>(sel)], m[static_cast<std::size_t>(row)]);
        Rat p = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        for (int c = col; c <= d; ++c) m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] /= p;
        for (int r = 0; r < d; ++r) {
            if (r == row) continue;
            Rat f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c <= d; ++c)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int r = row; r < d; ++r)
        if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(d)] != 0)
            return std::nullopt;
    std::vector<Rat> x(static_cast<std::size_t>(d), Rat(0));
    for (int r = 0; r < row; ++r)
        x[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] =
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(d)];
    return k.from_coords(std::move(x));
}

} // namespace tropdiff
