#pragma once

#include <gmpxx.h>

#include <array>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bdc
{

using Rational = mpq_class;

/// Error raised on malformed input or violated preconditions.
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Error raised when an internal consistency check fails.
class InternalError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/**
 * GaussRational: exact numbers a + b i with a, b rational.
 */
class GaussRational
{
public:
    GaussRational() = default;
    GaussRational(int n) : re_(n), im_(0) {}
    GaussRational(long n) : re_(n), im_(0) {}
    GaussRational(Rational re, Rational im = 0);

    static GaussRational i() { return GaussRational(0, 1); }

    /// Parses "a/b", "a/b+c/d i", "c/d i", "i" and "-i".
    static GaussRational parse(std::string_view text);

    const Rational &re() const noexcept { return re_; }
    const Rational &im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_imaginary() const { return sgn(re_) == 0; }

    GaussRational conj() const { return GaussRational(re_, -im_); }
    /// Squared modulus a^2 + b^2.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussRational operator-() const { return GaussRational(-re_, -im_); }
    GaussRational &operator+=(const GaussRational &o);
    GaussRational &operator-=(const GaussRational &o);
    GaussRational &operator*=(const GaussRational &o);
    GaussRational &operator/=(const GaussRational &o);

    friend GaussRational operator+(GaussRational a, const GaussRational &b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational &b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational &b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational &b) { return a /= b; }
    friend bool operator==(const GaussRational &a, const GaussRational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational &a, const GaussRational &b) { return !(a == b); }

    /// Canonical text: "a/b", "c/d i" or "a/b+c/d i".
    std::string str() const;
    friend std::ostream &operator<<(std::ostream &os, const GaussRational &z) { return os << z.str(); }

private:
    Rational re_{0};
    Rational im_{0};
};

using Scalar = GaussRational;

/// Parses an exact rational "a/b" (no decimal points, no exponents).
Rational parse_rational(std::string_view text);

/**
 * SparseVec: element of a space with a fixed indexed basis, no stored zeros.
 */
class SparseVec
{
public:
    using Map = std::map<int, Scalar>;

    SparseVec() = default;
    static SparseVec unit(int index, const Scalar &c = 1);

    const Map &entries() const noexcept { return entries_; }
    bool is_zero() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    Scalar get(int index) const;

    /// Adds c at index, dropping the entry if it cancels.
    void add(int index, const Scalar &c);
    void add_scaled(const SparseVec &v, const Scalar &c);

    SparseVec conj() const;
    SparseVec operator-() const;
    SparseVec &operator+=(const SparseVec &o);
    SparseVec &operator-=(const SparseVec &o);
    SparseVec &operator*=(const Scalar &c);
    friend SparseVec operator+(SparseVec a, const SparseVec &b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec &b) { return a -= b; }
    friend SparseVec operator*(SparseVec a, const Scalar &c) { return a *= c; }
    friend SparseVec operator*(const Scalar &c, SparseVec a) { return a *= c; }
    friend bool operator==(const SparseVec &a, const SparseVec &b) { return a.entries_ == b.entries_; }
    friend bool operator!=(const SparseVec &a, const SparseVec &b) { return !(a == b); }

private:
    Map entries_;
};

/**
 * SparseTensor2: element of V ⊗ V stored as (i, j) -> coefficient of e_i ⊗ e_j.
 */
class SparseTensor2
{
public:
    using Key = std::pair<int, int>;
    using Map = std::map<Key, Scalar>;

    SparseTensor2() = default;
    static SparseTensor2 outer(const SparseVec &a, const SparseVec &b);
    /// a ∧ b = a ⊗ b − b ⊗ a.
    static SparseTensor2 wedge(const SparseVec &a, const SparseVec &b);

    const Map &entries() const noexcept { return entries_; }
    bool is_zero() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    Scalar get(int i, int j) const;
    void add(int i, int j, const Scalar &c);
    void add_scaled(const SparseTensor2 &t, const Scalar &c);

    /// r† = Σ b ⊗ a for r = Σ a ⊗ b.
    SparseTensor2 transpose() const;
    SparseTensor2 conj() const;
    SparseTensor2 operator-() const;
    SparseTensor2 &operator+=(const SparseTensor2 &o);
    SparseTensor2 &operator-=(const SparseTensor2 &o);
    SparseTensor2 &operator*=(const Scalar &c);
    friend SparseTensor2 operator+(SparseTensor2 a, const SparseTensor2 &b) { return a += b; }
    friend SparseTensor2 operator-(SparseTensor2 a, const SparseTensor2 &b) { return a -= b; }
    friend SparseTensor2 operator*(SparseTensor2 a, const Scalar &c) { return a *= c; }
    friend SparseTensor2 operator*(const Scalar &c, SparseTensor2 a) { return a *= c; }
    friend bool operator==(const SparseTensor2 &a, const SparseTensor2 &b) { return a.entries_ == b.entries_; }
    friend bool operator!=(const SparseTensor2 &a, const SparseTensor2 &b) { return !(a == b); }

    /// Applies f to the first slot, g to the second; f, g map basis indices to vectors.
    using BasisImage = std::function<SparseVec(int)>;
    SparseTensor2 map_slots(const BasisImage &f, const BasisImage &g) const;

private:
    Map entries_;
};

/// Entrywise complex conjugation of a tensor.
SparseTensor2 conjugate_tensor(const SparseTensor2 &t);

/**
 * SparseTensor3: element of V ⊗ V ⊗ V.
 */
class SparseTensor3
{
public:
    using Key = std::array<int, 3>;
    using Map = std::map<Key, Scalar>;

    const Map &entries() const noexcept { return entries_; }
    bool is_zero() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    Scalar get(int i, int j, int k) const;
    void add(int i, int j, int k, const Scalar &c);
    SparseTensor3 &operator+=(const SparseTensor3 &o);
    SparseTensor3 &operator-=(const SparseTensor3 &o);
    friend bool operator==(const SparseTensor3 &a, const SparseTensor3 &b) { return a.entries_ == b.entries_; }

private:
    Map entries_;
};

/**
 * Subspace: echelonized span of sparse vectors over Q(i).
 *
 * Each stored row has its pivot as its lowest index with coefficient 1, so
 * reduction walks a vector in increasing index order.
 */
class Subspace
{
public:
    Subspace() = default;
    explicit Subspace(const std::vector<SparseVec> &spanning);

    /// Inserts v; returns true when v was independent of the current span.
    bool insert(const SparseVec &v);
    /// Remainder of v modulo the span (zero iff v lies in the span).
    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec &v) const { return reduce(v).is_zero(); }
    bool contains(const Subspace &other) const;
    std::size_t dim() const noexcept { return rows_.size(); }
    std::vector<SparseVec> basis() const;
    std::vector<int> pivots() const;

private:
    std::map<int, SparseVec> rows_;
};

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/**
 * AffineSolutionSpace: particular + span(basis), or empty.
 */
struct AffineSolutionSpace
{
    bool empty = false;
    RationalVector particular;
    std::vector<RationalVector> basis;

    std::size_t dim() const { return empty ? 0 : basis.size(); }
    /// particular + Σ coeffs[k]·basis[k].
    RationalVector point(const RationalVector &coeffs) const;
};

/**
 * Solves A x = b exactly by fraction-free elimination over the integers.
 *
 * Pivots are chosen column by column, taking the lowest-index remaining row
 * with a nonzero entry. Throws InputError on dimension mismatch.
 */
AffineSolutionSpace solve_linear_system(const RationalMatrix &a, const RationalVector &b, std::size_t columns);
AffineSolutionSpace solve_linear_system(const RationalMatrix &a, const RationalVector &b);

/// Rank of a rational matrix.
std::size_t matrix_rank(const RationalMatrix &a, std::size_t columns);

/// A·x for a dense rational matrix.
RationalVector mat_vec(const RationalMatrix &a, const RationalVector &x);

}  // namespace bdc
