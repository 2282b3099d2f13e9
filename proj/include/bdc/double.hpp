#pragma once

#include "bdc/bialgebra.hpp"

#include <functional>
#include <vector>

namespace bdc
{

/**
 * BilinearForm: a bilinear form given by its Gram matrix on the ambient basis.
 */
struct BilinearForm
{
    std::vector<std::vector<Scalar>> gram;

    int dim() const { return static_cast<int>(gram.size()); }
    Scalar operator()(const SparseVec &u, const SparseVec &v) const;
    bool is_nondegenerate() const;
};

/**
 * Elements of g ⊕ g are packed into one vector: the left component at
 * indices [0, n) and the right component at [n, 2n), n = dim g.
 */
SparseVec double_pair(const NormalizedBasis &b, const SparseVec &left, const SparseVec &right);
SparseVec double_left(const NormalizedBasis &b, const SparseVec &u);
SparseVec double_right(const NormalizedBasis &b, const SparseVec &u);
/// Componentwise bracket on g ⊕ g.
SparseVec double_bracket(const NormalizedBasis &b, const SparseVec &u, const SparseVec &v);

/// F((x, x'), (y, y')) = B(x, y) - B(x', y').
BilinearForm double_form(const NormalizedBasis &b);

/// Isotropic under the form and of half the ambient dimension; throws InputError on a degenerate form.
bool is_lagrangian(const std::vector<SparseVec> &spanning, const BilinearForm &form);
/// Every bracket of spanning vectors stays in their span.
bool is_closed_under(const std::vector<SparseVec> &spanning,
                     const std::function<SparseVec(const SparseVec &, const SparseVec &)> &bracket);

struct GraphSubalgebra
{
    std::vector<SparseVec> spanning;
    bool closed = false;
    bool lagrangian = false;
};

/**
 * The graph {(x, rho x)} in g ⊕ g. rho must be a linear Lie automorphism
 * preserving B (checked on all basis pairs); otherwise InputError.
 */
GraphSubalgebra graph_subalgebra(const NormalizedBasis &b, const ConjLinearMap &rho);

/**
 * Real coordinates of a complex vector: Re at index 2k, Im at 2k + 1.
 */
SparseVec realify(const SparseVec &v);
SparseVec complexify(const SparseVec &real);

/// (u|v) = 2 Re(B(u, v) / t) on the realification, as a real Gram matrix.
BilinearForm realified_form(const NormalizedBasis &b, const Scalar &t);

/// Fixed space of a conjugate-linear or linear map on the realification, as real coordinate vectors.
std::vector<SparseVec> real_fixed_space(const ConjLinearMap &phi);

/**
 * RealifiedFixedSpace: m = fixed space of theta ∘ sigma on the realification
 * and the checks that make it a Lagrangian subalgebra of the double of g0.
 * All spans are real coordinate vectors.
 */
struct RealifiedFixedSpace
{
    std::vector<SparseVec> m;
    std::vector<SparseVec> k0;
    std::vector<SparseVec> p0;
    std::size_t real_dim = 0;
    bool isotropic = false;
    bool lagrangian = false;
    /// m ∩ g0 equals k0.
    bool meets_g0_in_k0 = false;
    /// m = k0 ⊕ i p0.
    bool splits_as_k0_ip0 = false;
    bool closed = false;
};

/// Requires an omega-type sigma (imaginary factorizable case); InputError otherwise.
RealifiedFixedSpace realified_fixed_space(const AdaptedForm &form, const Scalar &t);

/// Basis of {xi in g* : xi(v) = 0 for v in the span}, in dual coordinates.
std::vector<SparseVec> annihilator(const Subspace &span, int dim);

/**
 * DualBracket: [xi, eta](x) = (xi ⊗ eta)(delta(x)) with delta = ∂r0,
 * tabulated on the basis of g.
 */
class DualBracket
{
public:
    DualBracket(const NormalizedBasis &b, const SparseTensor2 &r0);
    SparseVec operator()(const SparseVec &xi, const SparseVec &eta) const;
    /// delta(e_x).
    const SparseTensor2 &delta(int x) const { return delta_.at(x); }

private:
    std::vector<SparseTensor2> delta_;
};

/// The annihilator of k is closed under the dual bracket.
bool annihilator_dual_bracket_check(const NormalizedBasis &b, const SparseTensor2 &r0, const Subspace &k);

/**
 * ManinDouble: g ⊕ g* with the bracket of the Drinfeld double of (g, ∂r0)
 * and the canonical form <x + mu | x' + mu'> = mu'(x) + mu(x').
 * Vectors use indices [0, n) for g and [n, 2n) for the dual basis.
 */
class ManinDouble
{
public:
    ManinDouble(const NormalizedBasis &b, const SparseTensor2 &r0);

    int dim() const { return 2 * n_; }
    SparseVec bracket(const SparseVec &u, const SparseVec &v) const;
    BilinearForm form() const;
    /// Jacobi identity on all basis triples.
    bool satisfies_jacobi() const;
    /// <[u, v] | w> = <u | [v, w]> on all basis triples.
    bool form_is_invariant() const;

private:
    int n_;
    DualBracket dual_;
    std::vector<std::vector<SparseVec>> table_;
};

/**
 * Group-type criterion through the double: k ⊕ ann(k) is a Lagrangian
 * subalgebra of the Manin double.
 */
bool lagrangian_decomposition_check(const NormalizedBasis &b, const SparseTensor2 &r0, const Subspace &k);

}  // namespace bdc
