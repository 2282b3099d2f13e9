#pragma once

#include "bdc/core.hpp"
#include "bdc/rootsys.hpp"

#include <memory>
#include <vector>

namespace bdc
{

/**
 * Integer Chevalley structure constants M_{alpha,beta} on root indices.
 *
 * Entry (a, b) is M for [E_a, E_b] = M E_{a+b}, zero when alpha_a + alpha_b
 * is not a root. Signs follow the extraspecial-pair convention: for each
 * non-simple positive root xi the pair (alpha_i, xi - alpha_i) with the
 * smallest simple label i gets M = +(p + 1).
 */
class ChevalleyConstants
{
public:
    explicit ChevalleyConstants(const RootSystem &rs);

    int operator()(int a, int b) const { return table_[a * n_ + b]; }
    /// Largest p with alpha_b - p alpha_a a root.
    int string_p(int a, int b) const;
    /// Extraspecial pair (simple index, remainder index) of a non-simple positive root.
    std::pair<int, int> extraspecial(int xi) const { return extraspecial_.at(xi); }

private:
    const RootSystem *rs_;
    int n_;
    std::vector<int> table_;
    std::vector<std::pair<int, int>> extraspecial_;
};

ChevalleyConstants chevalley_constants(const RootSystem &rs);

/**
 * NormalizedBasis: basis {e_alpha, h_{alpha_i}} of g with B(e_alpha, e_{-alpha}) = 1.
 *
 * Basis index a < 2P is the root vector e_alpha for root index a, and index
 * 2P + i is h_{alpha_i}, the element with B(h_{alpha_i}, h) = alpha_i(h).
 */
class NormalizedBasis
{
public:
    /// The normalized basis e_alpha = E_alpha, e_{-alpha} = (B(alpha,alpha)/2) E_{-alpha}.
    NormalizedBasis(std::shared_ptr<const RootSystem> rs, const ChevalleyConstants &m);

    const RootSystem &rs() const noexcept { return *rs_; }
    std::shared_ptr<const RootSystem> rs_ptr() const noexcept { return rs_; }
    int dim() const noexcept { return rs_->dim(); }
    int num_roots() const noexcept { return rs_->num_roots(); }
    int rank() const noexcept { return rs_->rank(); }
    int cartan_index(int i) const noexcept { return num_roots() + i; }
    bool is_cartan(int idx) const noexcept { return idx >= num_roots(); }

    /// N_{alpha_a, alpha_b} (zero when the sum is not a root).
    const Scalar &n(int a, int b) const { return n_[a * num_roots() + b]; }
    /// alpha_a(h_{alpha_i}) = B(alpha_a, alpha_i).
    const Rational &cartan_action(int a, int i) const { return rs_->weight(a, i); }

    /// h_alpha expanded over the h_{alpha_i}.
    SparseVec h_of_root(int a) const;
    SparseVec e(int a) const { return SparseVec::unit(a); }
    SparseVec h(int i) const { return SparseVec::unit(cartan_index(i)); }

    /// Bracket of two basis vectors.
    SparseVec bracket_basis(int x, int y) const;
    SparseVec bracket(const SparseVec &x, const SparseVec &y) const;
    /// (ad u ⊗ id + id ⊗ ad u)(t).
    SparseTensor2 ad_tensor(const SparseVec &u, const SparseTensor2 &t) const;
    /// ad u applied to each basis vector, cached per call site.
    SparseVec ad_basis(const SparseVec &u, int x) const;
    /// Killing form on the basis: B(e_a, e_{-a}) = 1, B(h_i, h_j) = G_ij.
    Scalar killing(const SparseVec &x, const SparseVec &y) const;
    Scalar killing_basis(int x, int y) const;

    /**
     * Rescales e_alpha -> f_alpha e_alpha and e_{-alpha} -> e_{-alpha} / f_alpha
     * for positive roots; factors are indexed by positive root index.
     */
    NormalizedBasis rescaled(const std::vector<Scalar> &factors) const;
    /// Factors of the rescaling relative to the Chevalley-normalized basis (1 unless rescaled).
    const std::vector<Scalar> &frame() const noexcept { return frame_; }

    /// Human-readable basis label, e.g. "e[a1+a2]" or "h[a2]".
    std::string label(int idx) const;

private:
    NormalizedBasis() = default;
    std::shared_ptr<const RootSystem> rs_;
    std::vector<Scalar> n_;
    std::vector<Scalar> frame_;
};

/// Builds the normalized basis of a root system.
NormalizedBasis normalize(std::shared_ptr<const RootSystem> rs, const ChevalleyConstants &m);
/// Convenience: root system, constants and normalized basis in one step.
NormalizedBasis make_basis(DynkinType t);

SparseVec bracket(const NormalizedBasis &b, const SparseVec &x, const SparseVec &y);
SparseTensor2 ad_tensor(const NormalizedBasis &b, const SparseVec &u, const SparseTensor2 &t);

}  // namespace bdc
