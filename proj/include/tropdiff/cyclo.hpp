#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropdiff/rational.hpp"

namespace tropdiff {

// Element of Q(zeta_n), stored as coordinates over the power basis
// 1, zeta, ..., zeta^{d-1} with d = deg Phi_n. Plain data; all arithmetic
// lives on CycloField, which knows the modulus.
class CycloElement {
public:
    CycloElement() = default;
    explicit CycloElement(std::vector<Rat> coords) : c_(std::move(coords)) {}

    int dim() const { return static_cast<int>(c_.size()); }
    const std::vector<Rat>& coords() const { return c_; }
    const Rat& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    // Lies in the prime field Q.
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    bool operator==(const CycloElement& o) const { return c_ == o.c_; }
    bool operator!=(const CycloElement& o) const { return !(*this == o); }

private:
    std::vector<Rat> c_;
};

// The cyclotomic field Q(zeta_n) together with the power automorphism
// sigma: zeta -> zeta^a, gcd(a, n) = 1. Exact arithmetic mod Phi_n.
class CycloField {
public:
    CycloField(int n, int a);

    int n() const { return n_; }
    int a() const { return a_; }
    int degree() const { return deg_; }
    // Multiplicative order of a mod n (order of sigma).
    int aut_order() const { return aut_order_; }
    // Monic integer coefficients of Phi_n, low degree first, size deg+1.
    const std::vector<Int>& phi() const { return phi_; }

    bool operator==(const CycloField& o) const { return n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const CycloField& o) const { return !(*this == o); }

    CycloElement zero() const;
    CycloElement one() const { return from_rat(1); }
    CycloElement from_rat(const Rat& q) const;
    // zeta^k for any integer k (reduced mod n).
    CycloElement zeta_pow(long k) const;
    CycloElement zeta() const { return zeta_pow(1); }
    CycloElement from_coords(std::vector<Rat> coords) const;

    CycloElement add(const CycloElement& x, const CycloElement& y) const;
    CycloElement sub(const CycloElement& x, const CycloElement& y) const;
    CycloElement neg(const CycloElement& x) const;
    CycloElement mul(const CycloElement& x, const CycloElement& y) const;
    CycloElement mul_rat(const CycloElement& x, const Rat& q) const;
    // Multiplicative inverse; inv(0) = 0 by convention.
    CycloElement inv(const CycloElement& x) const;
    CycloElement pow(const CycloElement& x, long e) const;

    // sigma^power, any integer power (sigma has finite order).
    CycloElement apply_aut(const CycloElement& x, long power = 1) const;

    // Debug/canonical rendering, e.g. "1", "-1/2", "z^2", "(1 + z)";
    // in Q(zeta_4) prints "i" for z.
    std::string str(const CycloElement& x) const;

private:
    void check_dim(const CycloElement& x) const;

    int n_;
    int a_;
    int deg_;
    int aut_order_;
    std::vector<Int> phi_;
    // x^k mod Phi_n for k in [0, n): each a coordinate vector of length deg.
    std::vector<std::vector<Rat>> pow_table_;
};

// Euler phi and the n-th cyclotomic polynomial (monic, integer, low first).
int euler_phi(int n);
std::vector<Int> cyclotomic_polynomial(int n);

// Solve sum_i coeffs[i] * sigma^i(x) = rhs for x in Q(zeta_n), viewing the
// left side as a Q-linear operator. Returns the solution with free
// coordinates set to zero, or nullopt if no solution exists.
std::optional<CycloElement> solve_linear_difference(
    const CycloField& k, const std::vector<CycloElement>& coeffs,
    const CycloElement& rhs);

} // namespace tropdiff
