#pragma once

#include "bdc/involutions.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bdc
{

/// Raised when a candidate triple fails the isometry or nilpotency condition.
class BDTripleError : public InputError
{
public:
    enum class Kind
    {
        Malformed,
        NotIsometry,
        NilpotencyViolation,
    };
    BDTripleError(Kind kind, const std::string &what) : InputError(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Raised when (sigma, triple, lambda, t) violate the reality constraints of a real form.
class AdmissibilityError : public InputError
{
public:
    using InputError::InputError;
};

/**
 * BDTriple: a bijection T from gamma1 to gamma2 (0-based simple labels).
 *
 * gamma1 is sorted; gamma2[k] = T(gamma1[k]).
 */
struct BDTriple
{
    std::vector<int> gamma1;
    std::vector<int> gamma2;

    bool is_trivial() const noexcept { return gamma1.empty(); }
    /// T(i), or -1 when i is not in gamma1.
    int T(int i) const;
    /// Preimage of j under T, or -1.
    int T_inverse(int j) const;
    bool in_gamma1(int i) const { return T(i) >= 0; }
    bool in_gamma2(int j) const { return T_inverse(j) >= 0; }
    /// "a1->a2,a3->a4" or "trivial".
    std::string str() const;
    friend bool operator==(const BDTriple &a, const BDTriple &b)
    {
        return a.gamma1 == b.gamma1 && a.gamma2 == b.gamma2;
    }
};

/// Validates a candidate map given as (source, target) pairs of simple labels.
BDTriple validate_bd_triple(const RootSystem &rs, std::vector<std::pair<int, int>> mapping);

enum class Stability
{
    All,
    MuStable,
    MuAntistable,
};

bool is_mu_stable(const BDTriple &t, const DiagramAutomorphism &mu);
bool is_mu_antistable(const BDTriple &t, const DiagramAutomorphism &mu);

/// Every valid triple passing the filter, in a fixed canonical order (trivial first).
std::vector<BDTriple> enumerate_bd_triples(const RootSystem &rs, Stability filter = Stability::All,
                                           const DiagramAutomorphism *mu = nullptr);

/**
 * TExtension: T on the positive roots of Z gamma1, the scalars C_alpha with
 * x_alpha = C_alpha e_alpha, and the order alpha ≺ beta.
 *
 * tau[a] is the scalar with T^(e_a) = tau[a] e_{T a} for roots of Z gamma1
 * (both signs); c has one entry per root index.
 */
struct TExtension
{
    BDTriple triple;
    std::vector<int> t_root;
    std::vector<Scalar> tau;
    std::vector<Scalar> c;
    std::vector<std::pair<int, int>> order;

    /// d_{alpha,beta} = C_{-alpha} C_beta for positive root indices.
    Scalar d(const RootSystem &rs, int a, int b) const;
    bool precedes(int a, int b) const;
};

/**
 * Extends T to g_{gamma1} through generator images e_{+-alpha} -> p^{+-1} e_{+-T alpha}
 * (phases p default to 1) and bracket recursion, then derives C and ≺.
 */
TExtension extend_t_hat(const NormalizedBasis &b, const BDTriple &triple,
                        const std::vector<Scalar> &phases = {});

/// T^ applied to a vector supported on g_{gamma1} (throws otherwise).
SparseVec apply_t_hat(const NormalizedBasis &b, const TExtension &ext, const SparseVec &v);

struct Casimir
{
    SparseTensor2 omega;
    SparseTensor2 omega0;
};

/// Omega = Omega_0 + sum_alpha e_alpha ⊗ e_{-alpha}, Omega_0 = sum (G^{-1})_ij h_i ⊗ h_j.
Casimir casimir(const NormalizedBasis &b);

/**
 * ContinuousParameter: lambda = sum L_ij h_{alpha_i} ⊗ h_{alpha_j}.
 */
struct ContinuousParameter
{
    std::vector<std::vector<Scalar>> L;

    int rank() const { return static_cast<int>(L.size()); }
    SparseTensor2 tensor(const NormalizedBasis &b) const;
    /// lambda - lambda^dag = sum_{i,j} lambda_{ij} h_i ∧ h_j (ordered sum, full wedge), so lambda_ij = (L_ij - L_ji)/2.
    Scalar lambda_ab(int i, int j) const;
};

/**
 * Real coordinates of the antisymmetric part A of L = G^{-1}/2 + A:
 * x = (Re A_01, Im A_01, Re A_02, ...) over i < j.
 */
struct LambdaCoordinates
{
    int rank = 0;

    int num_vars() const { return rank * (rank - 1); }
    ContinuousParameter point(const RootSystem &rs, const RationalVector &x) const;
    /// Inverse of point on the antisymmetric part.
    RationalVector coordinates(const ContinuousParameter &lambda) const;
    int re_index(int i, int j) const;
    int im_index(int i, int j) const { return re_index(i, j) + 1; }
};

/// True iff L + L^T = G^{-1} and the T-constraints hold.
bool is_continuous_parameter(const RootSystem &rs, const BDTriple &triple, const ContinuousParameter &lambda);
/// Affine space of x with point(x) a continuous parameter for the triple.
AffineSolutionSpace continuous_parameter_space(const RootSystem &rs, const BDTriple &triple);

/// Default t: 2 for varsigma types, 2i for omega types.
Scalar default_t(const SigmaSpec &spec);
/// Continuous parameters admissible for (sigma, triple): the above plus the reality constraint on lambda_{ab}.
AffineSolutionSpace admissible_lambda_space(const RootSystem &rs, const SigmaSpec &spec, const BDTriple &triple);

struct RMatrix
{
    SparseTensor2 tensor;
    Scalar t;
};

/// r = (t/2)(lambda + sum x_{-alpha} ⊗ x_alpha + sum_{alpha ≺ beta} x_{-alpha} ∧ x_beta).
RMatrix build_r(const NormalizedBasis &b, const TExtension &ext, const ContinuousParameter &lambda, const Scalar &t);

/**
 * r0 = r - r^dag = (t/2)(lambda - lambda^dag + sum e_{-alpha} ∧ e_alpha + 2 sum d e_{-alpha} ∧ e_beta).
 *
 * Checks the admissibility of (sigma, triple, lambda, t) and that r0 is fixed
 * by sigma ⊗ sigma; throws AdmissibilityError naming the first violation.
 */
SparseTensor2 build_r0(const AdaptedForm &form, const TExtension &ext, const ContinuousParameter &lambda,
                       const Scalar &t);

/// First violated admissibility constraint, or empty when admissible.
std::optional<std::string> admissibility_violation(const AdaptedForm &form, const TExtension &ext,
                                                   const ContinuousParameter &lambda, const Scalar &t);

/// delta(x) = (ad x ⊗ 1 + 1 ⊗ ad x)(r).
SparseTensor2 cobracket(const NormalizedBasis &b, const SparseTensor2 &r, const SparseVec &x);

/// [r12, r13] + [r12, r23] + [r13, r23].
SparseTensor3 cybe_residual(const NormalizedBasis &b, const SparseTensor2 &r);

}  // namespace bdc
