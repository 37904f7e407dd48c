#include "tropdiff/group.hpp"

#include <sstream>

namespace tropdiff {

bool GroupVector::is_zero() const {
    if (inf_) return false;
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

GroupVector GroupVector::operator+(const GroupVector& o) const {
    if (inf_ || o.inf_) return infinity();
    if (coords_.size() != o.coords_.size())
        fail(errc::rank_mismatch, "adding group vectors of ranks " +
                                      std::to_string(rank()) + " and " +
                                      std::to_string(o.rank()));
    std::vector<Rat> r(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) r[i] = coords_[i] + o.coords_[i];
    return GroupVector(std::move(r));
}

GroupVector GroupVector::operator-(const GroupVector& o) const {
    if (o.inf_)
        fail(errc::invalid_argument, "cannot subtract infinity");
    if (inf_) return infinity();
    return *this + (-o);
}

GroupVector GroupVector::operator-() const {
    if (inf_)
        fail(errc::invalid_argument, "cannot negate infinity");
    std::vector<Rat> r(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) r[i] = -coords_[i];
    return GroupVector(std::move(r));
}

GroupVector GroupVector::scaled(const Rat& c) const {
    if (inf_) {
        if (c == 0)
            fail(errc::invalid_argument, "0 * infinity is undefined");
        return infinity();
    }
    std::vector<Rat> r(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) r[i] = coords_[i] * c;
    return GroupVector(std::move(r));
}

int GroupVector::compare(const GroupVector& o) const {
    if (inf_ && o.inf_) return 0;
    if (inf_) return 1;
    if (o.inf_) return -1;
    if (coords_.size() != o.coords_.size())
        fail(errc::rank_mismatch, "comparing group vectors of ranks " +
                                      std::to_string(rank()) + " and " +
                                      std::to_string(o.rank()));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        int c = cmp(coords_[i], o.coords_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string GroupVector::str() const {
    if (inf_) return "inf";
    if (coords_.size() == 1) return rat_str(coords_[0]);
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ",";
        os << rat_str(coords_[i]);
    }
    os << ")";
    return os.str();
}

namespace {

// Inverse of a lower-triangular matrix with nonzero diagonal by forward
// substitution, column by column. The inverse is again lower triangular
// with positive diagonal when the input is, so both directions of the
// automorphism preserve the lexicographic order.
std::vector<std::vector<Rat>> invert_lower(const std::vector<std::vector<Rat>>& m) {
    std::size_t r = m.size();
    std::vector<std::vector<Rat>> inv(r, std::vector<Rat>(r, Rat(0)));
    for (std::size_t col = 0; col < r; ++col) {
        for (std::size_t i = col; i < r; ++i) {
            Rat sum = (i == col) ? Rat(1) : Rat(0);
            for (std::size_t j = col; j < i; ++j) sum -= m[i][j] * inv[j][col];
            inv[i][col] = sum / m[i][i];
        }
    }
    return inv;
}

} // namespace

GroupAut::GroupAut(std::vector<std::vector<Rat>> rows) : mat_(std::move(rows)) {
    std::size_t r = mat_.size();
    if (r == 0)
        fail(errc::invalid_argument, "empty automorphism matrix");
    // Acting on column vectors, the linear maps preserving the lex order are
    // exactly the lower-triangular ones with positive diagonal: a nonzero
    // entry right of the diagonal lets a large later coordinate overturn an
    // earlier comparison.
    for (std::size_t i = 0; i < r; ++i) {
        if (mat_[i].size() != r)
            fail(errc::invalid_argument, "automorphism matrix is not square");
        for (std::size_t j = i + 1; j < r; ++j)
            if (mat_[i][j] != 0)
                fail(errc::invalid_argument,
                     "automorphism matrix must be lower triangular");
        if (mat_[i][i] <= 0)
            fail(errc::invalid_argument,
                 "automorphism matrix needs a positive diagonal");
    }
    inv_ = invert_lower(mat_);
}

GroupAut GroupAut::identity(int rank) {
    std::vector<std::vector<Rat>> m(static_cast<std::size_t>(rank),
                                    std::vector<Rat>(static_cast<std::size_t>(rank), Rat(0)));
    for (int i = 0; i < rank; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return GroupAut(std::move(m));
}

bool GroupAut::is_identity() const {
    for (std::size_t i = 0; i < mat_.size(); ++i)
        for (std::size_t j = 0; j < mat_.size(); ++j)
            if (mat_[i][j] != ((i == j) ? 1 : 0)) return false;
    return true;
}

GroupVector GroupAut::apply_matrix(const std::vector<std::vector<Rat>>& m,
                                   const GroupVector& gamma) const {
    std::size_t r = m.size();
    std::vector<Rat> out(r, Rat(0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            out[i] += m[i][j] * gamma[static_cast<int>(j)];
    return GroupVector(std::move(out));
}

GroupVector GroupAut::apply(const GroupVector& gamma, long power) const {
    if (gamma.is_infinity()) return GroupVector::infinity();
    if (gamma.rank() != rank())
        fail(errc::rank_mismatch, "automorphism rank " + std::to_string(rank()) +
                                      " applied to vector of rank " +
                                      std::to_string(gamma.rank()));
    GroupVector v = gamma;
    const auto& m = power >= 0 ? mat_ : inv_;
    long n = power >= 0 ? power : -power;
    for (long k = 0; k < n; ++k) v = apply_matrix(m, v);
    return v;
}

} // namespace tropdiff
