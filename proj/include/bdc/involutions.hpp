#pragma once

#include "bdc/chevalley.hpp"

#include <string>
#include <vector>

namespace bdc
{

enum class SigmaKind
{
    VarSigma,  ///< varsigma_mu: e_alpha -> e_{mu alpha}
    OmegaJ,    ///< omega_{mu,J}: e_alpha -> +-e_{-mu alpha}
};

/**
 * SigmaSpec: descriptor of a conjugate-linear involution of g.
 *
 * J holds 0-based simple-root labels and must be mu-fixed for OmegaJ; it is
 * ignored for VarSigma.
 */
struct SigmaSpec
{
    SigmaKind kind = SigmaKind::VarSigma;
    DiagramAutomorphism mu;
    std::vector<int> J;

    static SigmaSpec varsigma(const RootSystem &rs);
    static SigmaSpec varsigma_mu(const DiagramAutomorphism &mu);
    static SigmaSpec omega(const RootSystem &rs);
    static SigmaSpec omega_J(const RootSystem &rs, std::vector<int> J);
    static SigmaSpec omega_mu_J(const DiagramAutomorphism &mu, std::vector<int> J);

    bool is_omega() const noexcept { return kind == SigmaKind::OmegaJ; }
    bool mu_is_identity() const { return mu.is_identity(); }
    /// One of "varsigma", "varsigma_mu", "omega_J", "omega_mu_J".
    std::string shape() const;
    /// Throws InputError when mu or J do not fit the root system.
    void validate(const RootSystem &rs) const;
    bool in_J(int i) const;
};

/// All specs: varsigma_mu for each mu, then omega_{mu,J} for each mu-fixed J in subset order.
std::vector<SigmaSpec> enumerate_sigma_specs(const RootSystem &rs);

/**
 * ConjLinearMap: a map of g given by the images of the basis vectors.
 *
 * When conjugates_scalars is set the map is conjugate-linear:
 * apply(c x) = conj(c) apply(x).
 */
class ConjLinearMap
{
public:
    ConjLinearMap() = default;
    ConjLinearMap(std::vector<SparseVec> images, bool conjugates_scalars);

    bool conjugates_scalars() const noexcept { return conj_; }
    int dim() const noexcept { return static_cast<int>(images_.size()); }
    const SparseVec &apply_basis(int k) const { return images_.at(k); }
    SparseVec apply(const SparseVec &v) const;
    /// (phi ⊗ phi)(t).
    SparseTensor2 apply_tensor(const SparseTensor2 &t) const;
    /// phi ⊗ id or id ⊗ phi; slot 0 or 1.
    SparseTensor2 apply_slot(const SparseTensor2 &t, int slot) const;
    /// this ∘ inner; conjugation flags combine.
    ConjLinearMap compose(const ConjLinearMap &inner) const;
    bool is_identity() const;
    friend bool operator==(const ConjLinearMap &a, const ConjLinearMap &b)
    {
        return a.conj_ == b.conj_ && a.images_ == b.images_;
    }

private:
    std::vector<SparseVec> images_;
    bool conj_ = false;
};

/// Identity map of g.
ConjLinearMap identity_map(int dim);

/**
 * Extends a (conjugate-)linear automorphism from the images of the simple
 * root vectors e_{alpha_i} and e_{-alpha_i}, using brackets along
 * extraspecial decompositions; h_{alpha_i} maps to [phi e_i, phi e_{-i}].
 */
ConjLinearMap extend_from_generators(const NormalizedBasis &b, const std::vector<SparseVec> &pos_images,
                                     const std::vector<SparseVec> &neg_images, bool conjugates_scalars);

/// phi([x, y]) = [phi x, phi y] on generator-basis pairs, or on all basis pairs when exhaustive.
bool is_lie_map(const NormalizedBasis &b, const ConjLinearMap &phi, bool exhaustive = false);

/// The closed sign formula: parity of chi_{ZJ}(alpha) + height(alpha) + 1 for alpha in Phi.
int chi_tilde(const RootSystem &rs, const SigmaSpec &spec, const Root &alpha);

/**
 * Builds sigma from its generator images in basis b and verifies that it is an
 * involutive conjugate-linear Lie-algebra map (InternalError otherwise).
 *
 * varsigma_mu: e_{+-alpha_i} -> e_{+-mu alpha_i}.
 * omega_{mu,J}: e_{alpha_i} -> s_i (2/B(alpha_i,alpha_i)) e_{-mu alpha_i} and
 * e_{-alpha_i} -> s_i (B(alpha_i,alpha_i)/2) e_{mu alpha_i} with s_i = -1 iff
 * alpha_i lies in J; the factors account for e_{-alpha} being scaled by
 * B(alpha,alpha)/2 relative to the Chevalley vector.
 */
ConjLinearMap build_sigma(const NormalizedBasis &b, const SigmaSpec &spec, bool exhaustive = false);

/// The Chevalley involution omega = omega_{id, Delta}.
ConjLinearMap build_omega(const NormalizedBasis &b);

/// theta = omega ∘ sigma (linear).
ConjLinearMap build_theta(const NormalizedBasis &b, const SigmaSpec &spec, bool exhaustive = false);

/**
 * Subalgebra: a generator list with an echelonized basis of the span.
 */
struct Subalgebra
{
    std::vector<SparseVec> generators;
    Subspace closed_basis;

    std::size_t dim() const { return closed_basis.dim(); }
};

/// Eigenspace of a linear map for the eigenvalue ev (+1 or -1).
Subspace eigenspace(const ConjLinearMap &theta, int ev);

/// Span of vectors over the reals as a real dimension (re/im split).
std::size_t real_rank(const std::vector<SparseVec> &vectors, int dim);

/**
 * AdaptedForm: sigma with its basis rescaled so that sigma takes the normal
 * form e_alpha -> e_{mu alpha} (varsigma) or e_alpha -> (-1)^chi e_{-mu alpha}
 * up to the B(alpha,alpha)/2 factors of the normalized basis (omega types).
 *
 * For omega types, chi holds the sign exponent observed on each positive
 * root. On roots moved by mu the frame enforces the closed formula; on
 * mu-fixed roots the sign cannot be changed by rescaling, and roots where
 * it differs from the closed formula are listed in chi_mismatch.
 */
struct AdaptedForm
{
    SigmaSpec spec;
    NormalizedBasis basis;
    ConjLinearMap sigma;
    ConjLinearMap omega;
    ConjLinearMap theta;
    std::vector<int> chi;
    std::vector<int> chi_mismatch;
    Subalgebra k;
    Subspace p;

    /// Observed chi on any root (negative roots use the positive one).
    int chi_of(int root_index) const;
};

/// Builds the adapted basis, the maps, k = g^theta and p; exhaustive enables all-pairs checks.
AdaptedForm make_adapted_form(const NormalizedBasis &base, const SigmaSpec &spec, bool exhaustive = false);

/// Generator list of k for the four shapes, expressed in the adapted basis.
std::vector<SparseVec> isotropy_generators(const AdaptedForm &form);

/// Returns the isotropy algebra, verified to equal g^theta and to be bracket closed.
Subalgebra isotropy_algebra(const AdaptedForm &form);

/// Checks that the compact real form spanned by i h, e - e_-, i(e + e_-) is fixed by omega and has full real dimension.
bool compact_form_check(const NormalizedBasis &b);

}  // namespace bdc
