#pragma once

#include "bdc/coideal.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace bdc
{

/// Version written to and required from every JSON document.
inline constexpr int kSchemaVersion = 1;

/// Exact scalar strings: "a/b" or "a/b+c/d i". Numbers are rejected.
Scalar scalar_from_json(const nlohmann::json &j, const std::string &what);
nlohmann::json scalar_to_json(const Scalar &z);

/// "varsigma", "varsigma-mu", "omega_J", "omega-mu-j", ... to the canonical shape name.
std::string canonical_shape(const std::string &text);

/**
 * Case files:
 *
 *   {"schema": 1, "type": "A3",
 *    "sigma": {"shape": "omega_mu_J", "mu": [3, 2, 1], "J": [2]},
 *    "triple": [[1, 3]],
 *    "lambda": {"1,2": "1/2", "1,3": "0+1/3 i"},
 *    "t": "0+2 i", "phases": ["1"]}
 *
 * Labels are 1-based. mu lists the images of the simple roots; J and the
 * triple pairs use simple-root labels. lambda gives the antisymmetric part
 * A_ij (i < j) of L = G^{-1}/2 + A; omitted entries are zero and an omitted
 * lambda means "not given". t defaults to 2 (varsigma) or 2i (omega).
 */
CaseSpec case_from_json(const nlohmann::json &j);
nlohmann::json case_to_json(const CaseSpec &c);
/// Reads and parses a case file; InputError on I/O, JSON or schema errors.
CaseSpec load_case_file(const std::string &path);

/**
 * ResolvedCase: a case with its phases, lambda and t filled in. A missing
 * lambda becomes the base point of the admissible space.
 */
struct ResolvedCase
{
    CaseSpec spec;
    CaseContext ctx;
    ContinuousParameter lambda;
    Scalar t;
    bool lambda_given = false;
};

/// InputError when no admissible lambda exists for the sigma and triple.
ResolvedCase resolve_case(const CaseSpec &c);
/// The case file of a resolved case, with lambda, t and phases written out.
nlohmann::json resolved_case_to_json(const ResolvedCase &r);

SigmaSpec sigma_from_json(const RootSystem &rs, const nlohmann::json &j);
nlohmann::json sigma_to_json(const SigmaSpec &s);
BDTriple triple_from_json(const RootSystem &rs, const nlohmann::json &j);
nlohmann::json triple_to_json(const BDTriple &t);
ContinuousParameter lambda_from_json(const RootSystem &rs, const nlohmann::json &j);
nlohmann::json lambda_to_json(const ContinuousParameter &lambda);

/**
 * Classification configs:
 *
 *   {"schema": 1, "types": ["A2", "B3"], "sigma": ["omega_J"],
 *    "triples": "trivial", "exploratory": false, "t": "2", "jobs": 4}
 *
 * Every key but "schema" is optional; missing keys keep the defaults.
 */
ClassifyConfig config_from_json(const nlohmann::json &j);
ClassifyConfig load_config_file(const std::string &path);

/// "omega_mu_J mu=(3,2,1) J={a2}" and friends.
std::string sigma_descriptor(const SigmaSpec &s);

nlohmann::json record_to_json(const CaseRecord &r);
nlohmann::json roots_to_json(const RootSystem &rs);
nlohmann::json tensor_to_json(const NormalizedBasis &b, const SparseTensor2 &t);
nlohmann::json vector_to_json(const NormalizedBasis &b, const SparseVec &v);

/// Columns: algebra, sigma, triple, group type, lambda condition, painted root.
std::string classification_table(const std::vector<CaseRecord> &records);

}  // namespace bdc
