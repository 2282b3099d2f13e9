#pragma once

#include "bdc/bialgebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bdc
{

/**
 * CaseSpec: the data (g, sigma, triple, lambda, t) of one Poisson homogeneous candidate.
 *
 * An empty lambda means lambda is solved for; phases select the T-hat
 * generator images (empty means all ones).
 */
struct CaseSpec
{
    DynkinType type;
    SigmaSpec sigma;
    BDTriple triple;
    std::optional<ContinuousParameter> lambda;
    std::optional<Scalar> t;
    std::vector<Scalar> phases;

    Scalar t_or_default() const { return t ? *t : default_t(sigma); }
};

/**
 * CaseContext: everything derived from (g, sigma, triple) that does not depend on lambda or t.
 */
struct CaseContext
{
    AdaptedForm form;
    TExtension ext;

    const NormalizedBasis &basis() const noexcept { return form.basis; }
    const RootSystem &rs() const noexcept { return form.basis.rs(); }
};

CaseContext make_context(const NormalizedBasis &base, const SigmaSpec &spec, const BDTriple &triple,
                         const std::vector<Scalar> &phases = {});
CaseContext make_context(const CaseSpec &c);

/**
 * Phases for the T-hat generators making r0 fixed by sigma ⊗ sigma for some
 * admissible lambda: the default first, then the grid {1, -1, i, -i}.
 * Empty when no admissible lambda exists or no grid point works.
 */
std::optional<std::vector<Scalar>> sigma_compatible_phases(const AdaptedForm &form, const BDTriple &triple,
                                                           const Scalar &t);

enum class RTildeProvenance
{
    Generic,
    ClosedForm,
};

struct RTilde
{
    SparseTensor2 tensor;
    RTildeProvenance provenance = RTildeProvenance::Generic;
};

/// r0 + (theta ⊗ theta) r0 - (theta ⊗ id + id ⊗ theta) r0.
RTilde compute_r_tilde(const ConjLinearMap &theta, const SparseTensor2 &r0);

/// t_{ab} = 2 Re(lambda_{ab} + lambda_{a, mu b}).
Scalar t_coefficient(const ContinuousParameter &lambda, const DiagramAutomorphism &mu, int a, int b);
/// s_{ab} = 2i Im(lambda_{ab} - lambda_{a, mu b}).
Scalar s_coefficient(const ContinuousParameter &lambda, const DiagramAutomorphism &mu, int a, int b);

/// The closed forms for the four shapes of sigma, assembled term by term.
RTilde closed_form_r_tilde(const CaseContext &ctx, const ContinuousParameter &lambda, const Scalar &t);

struct CoidealWitness
{
    std::size_t generator_index = 0;
    SparseVec generator;
    SparseTensor2 tensor;
};

struct CoidealVerdict
{
    bool is_coideal = true;
    std::optional<CoidealWitness> witness;
};

/// ad u(r_tilde) = 0 for every generator u of k; the witness is the first failing generator.
CoidealVerdict coideal_check(const AdaptedForm &form, const SparseTensor2 &r_tilde);
/// Builds r0 (checking admissibility) and r_tilde, then runs the check above.
CoidealVerdict coideal_check(const CaseContext &ctx, const ContinuousParameter &lambda, const Scalar &t);

/// (pi ⊗ pi)(ad u(r0)) = 0 for every generator u, where pi is the quotient map g -> g/k.
bool coideal_check_direct(const CaseContext &ctx, const ContinuousParameter &lambda, const Scalar &t);

/**
 * LambdaSolution: the admissible lambda and the subset that makes k coideal,
 * both as affine spaces in LambdaCoordinates.
 */
struct LambdaSolution
{
    AffineSolutionSpace admissible;
    AffineSolutionSpace solution;
    /// Equations cutting the solution out of the admissible space, e.g. "Re l[1,2] = 0".
    std::vector<std::string> conditions;

    bool nonempty() const { return !admissible.empty && !solution.empty; }
    /// "any admissible lambda", "no admissible lambda", "none", or the joined conditions.
    std::string describe() const;
};

LambdaSolution solve_lambda(const CaseContext &ctx, const Scalar &t);

/// |Delta \ J| = 1 and the missing root has coefficient 1 in the highest root.
bool painted_root_criterion(const RootSystem &rs, const std::vector<int> &J);

/**
 * For omega_J: every positive gamma with chi(gamma) = 1 splits only into
 * positive roots alpha + beta with chi(alpha) = chi(beta) = 1.
 */
bool splitting_criterion(const RootSystem &rs, const SigmaSpec &spec);

enum class TripleFilter
{
    Trivial,
    All,
    Stable,
    Antistable,
};

TripleFilter parse_triple_filter(const std::string &text);
std::string triple_filter_name(TripleFilter f);

/**
 * ClassifyConfig: which cases to run.
 *
 * shapes holds shape names ("varsigma", "varsigma_mu", "omega_J",
 * "omega_mu_J"); empty means all four. The compact form (omega_J with
 * J = Delta) is skipped since G0/K0 is then a point.
 */
struct ClassifyConfig
{
    std::vector<DynkinType> types;
    std::vector<std::string> shapes;
    TripleFilter triples = TripleFilter::Trivial;
    bool exploratory = false;
    std::optional<Scalar> t;
    int jobs = 1;

    /// Ranks up to 6 for A to D (D from 4), plus E6 and E7.
    static ClassifyConfig defaults();
};

struct CaseRecord
{
    DynkinType type;
    SigmaSpec sigma;
    BDTriple triple;
    bool exploratory = false;
    bool admissible = true;
    bool verdict = false;
    std::size_t lambda_admissible_dim = 0;
    std::size_t lambda_solution_dim = 0;
    std::string lambda_condition;
    std::vector<Scalar> phases;
    /// Label of the single root outside J for omega_J, else empty.
    std::string painted_root;
};

/// Enumerated (type, sigma, triple) triples in canonical order.
std::vector<CaseSpec> enumerate_cases(const ClassifyConfig &config);
/// Evaluates one case in solve mode.
CaseRecord evaluate_case(const CaseSpec &c);
/// Evaluates every enumerated case on config.jobs workers; output order is the enumeration order.
std::vector<CaseRecord> classify(const ClassifyConfig &config);

}  // namespace bdc
