#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropdiff/rational.hpp"

namespace tropdiff {

// Element of the ordered value group Q^r under lexicographic order, or the
// absorbing top element "infinity" (the value of 0). Infinity compares
// greater than every finite vector and absorbs addition.
class GroupVector {
public:
    GroupVector() : inf_(true) {}
    explicit GroupVector(std::vector<Rat> coords)
        : coords_(std::move(coords)), inf_(false) {}

    static GroupVector infinity() { return GroupVector(); }
    static GroupVector zero(int rank) {
        return GroupVector(std::vector<Rat>(static_cast<std::size_t>(rank), Rat(0)));
    }
    // Rank-1 convenience.
    static GroupVector scalar(const Rat& q) { return GroupVector({q}); }

    bool is_infinity() const { return inf_; }
    int rank() const { return static_cast<int>(coords_.size()); }
    const std::vector<Rat>& coords() const { return coords_; }
    const Rat& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

    bool is_zero() const;

    GroupVector operator+(const GroupVector& o) const;
    GroupVector operator-(const GroupVector& o) const;
    GroupVector operator-() const;
    GroupVector scaled(const Rat& c) const;

    // Lexicographic comparison; infinity is the top element.
    // Returns <0, 0, >0. Finite vectors of different rank are an error.
    int compare(const GroupVector& o) const;

    bool operator==(const GroupVector& o) const { return compare(o) == 0; }
    bool operator!=(const GroupVector& o) const { return compare(o) != 0; }
    bool operator<(const GroupVector& o) const { return compare(o) < 0; }
    bool operator<=(const GroupVector& o) const { return compare(o) <= 0; }
    bool operator>(const GroupVector& o) const { return compare(o) > 0; }
    bool operator>=(const GroupVector& o) const { return compare(o) >= 0; }

    std::string str() const;

private:
    std::vector<Rat> coords_;
    bool inf_;
};

inline const GroupVector& min(const GroupVector& a, const GroupVector& b) {
    return b < a ? b : a;
}

inline int lex_compare(const GroupVector& a, const GroupVector& b) {
    return a.compare(b);
}

// Order-preserving automorphism of Q^r: a lower-triangular rational matrix
// with positive diagonal, acting on column vectors (exactly the linear maps
// preserving the lexicographic order). The inverse is again lower triangular
// with positive diagonal, so both directions preserve the order.
class GroupAut {
public:
    // rows: r x r matrix, row major.
    explicit GroupAut(std::vector<std::vector<Rat>> rows);

    static GroupAut identity(int rank);

    int rank() const { return static_cast<int>(mat_.size()); }
    bool is_identity() const;
    const std::vector<std::vector<Rat>>& matrix() const { return mat_; }

    // M^power * gamma; power may be negative. Infinity maps to infinity.
    GroupVector apply(const GroupVector& gamma, long power = 1) const;

    bool operator==(const GroupAut& o) const { return mat_ == o.mat_; }

private:
    GroupVector apply_matrix(const std::vector<std::vector<Rat>>& m,
                             const GroupVector& gamma) const;

    std::vector<std::vector<Rat>> mat_;
    std::vector<std::vector<Rat>> inv_;
};

inline GroupVector apply_group_aut(const GroupAut& m, const GroupVector& gamma,
                                   long power = 1) {
    return m.apply(gamma, power);
}

} // namespace tropdiff
