#pragma once

#include "bdc/core.hpp"

#include <map>
#include <string>
#include <vector>

namespace bdc
{

/// Dynkin type such as A3 or E6.
struct DynkinType
{
    char family = 'A';
    int rank = 1;

    /// Throws InputError when the rank is not admissible for the family.
    void validate() const;
    std::string name() const { return std::string(1, family) + std::to_string(rank); }
    /// Parses "A3", "e6" and similar.
    static DynkinType parse(const std::string &text);
    friend bool operator==(const DynkinType &a, const DynkinType &b)
    {
        return a.family == b.family && a.rank == b.rank;
    }
};

/// Coordinates of a root-lattice vector in the simple-root basis.
using Root = std::vector<int>;
using IntMatrix = std::vector<std::vector<int>>;

/// Permutation of the simple roots (0-based images).
struct DiagramAutomorphism
{
    std::vector<int> perm;

    bool is_identity() const;
    int operator()(int i) const { return perm[i]; }
    friend bool operator==(const DiagramAutomorphism &a, const DiagramAutomorphism &b)
    {
        return a.perm == b.perm;
    }
};

/**
 * RootSystem: an irreducible reduced root system with its Killing form.
 *
 * Roots are indexed 0..2P-1: index k < P is the k-th positive root in
 * (height, lexicographic) order and index P + k is its negative.
 */
class RootSystem
{
public:
    explicit RootSystem(DynkinType type);

    const DynkinType &type() const noexcept { return type_; }
    int rank() const noexcept { return type_.rank; }
    /// Number of positive roots P.
    int num_positive() const noexcept { return static_cast<int>(positive_.size()); }
    int num_roots() const noexcept { return 2 * num_positive(); }
    /// dim g = 2P + rank.
    int dim() const noexcept { return num_roots() + rank(); }

    /// Cartan matrix a_ij = <alpha_i^vee, alpha_j> (Bourbaki labeling).
    const IntMatrix &cartan_matrix() const noexcept { return cartan_; }
    const std::vector<Root> &positive_roots() const noexcept { return positive_; }
    /// G_ij = B(alpha_i, alpha_j) for the Killing form.
    const RationalMatrix &killing_gram() const noexcept { return gram_; }
    /// Inverse of the Killing Gram matrix.
    const RationalMatrix &killing_gram_inverse() const noexcept { return gram_inv_; }

    /// Root with index k (negative roots have k >= P).
    const Root &root(int k) const { return roots_.at(k); }
    /// Index of the root, or -1 if the vector is not a root.
    int index_of(const Root &r) const;
    /// Index of the simple root alpha_i.
    int simple_index(int i) const { return simple_idx_.at(i); }
    /// Index of -alpha for the root with index k.
    int negate_index(int k) const { return k < num_positive() ? k + num_positive() : k - num_positive(); }
    bool is_positive_index(int k) const { return k < num_positive(); }
    /// Index of alpha_a + alpha_b, -1 if not a root, -2 if the sum is zero.
    int sum_index(int a, int b) const { return sum_[a * num_roots() + b]; }

    /// B(lambda, mu) for root-lattice vectors.
    Rational killing(const Root &a, const Root &b) const;
    /// alpha_a(h_{alpha_i}) = B(alpha_a, alpha_i), cached.
    const Rational &weight(int a, int i) const { return weights_[a * rank() + i]; }
    /// B(alpha, alpha) / 2 for the root with index a, cached.
    const Rational &half_norm(int a) const { return half_norm_[a]; }

private:
    DynkinType type_;
    IntMatrix cartan_;
    std::vector<Root> positive_;
    std::vector<Root> roots_;
    std::map<Root, int> index_;
    std::vector<int> simple_idx_;
    std::vector<int> sum_;
    RationalMatrix gram_;
    RationalMatrix gram_inv_;
    std::vector<Rational> weights_;
    std::vector<Rational> half_norm_;
};

/// Builds the root system of the given type.
RootSystem build_root_system(DynkinType t);

/// B(lambda, mu) on root-lattice vectors.
Rational killing_form(const RootSystem &rs, const Root &lambda, const Root &mu);

/// Sum of coefficients of a positive root; InputError for non-positive vectors.
int height(const Root &alpha);

/// The unique root of maximal height.
Root highest_root(const RootSystem &rs);

/// All Dynkin diagram automorphisms of order dividing 2, identity first.
std::vector<DiagramAutomorphism> diagram_automorphisms(const RootSystem &rs);

/// Linear extension of mu to the root lattice.
Root extend_automorphism(const RootSystem &rs, const DiagramAutomorphism &mu, const Root &alpha);
/// Same, on root indices.
int extend_automorphism_index(const RootSystem &rs, const DiagramAutomorphism &mu, int a);

DiagramAutomorphism identity_automorphism(int rank);

/// Human-readable root, e.g. "a1+2a2".
std::string root_label(const Root &r);

}  // namespace bdc
