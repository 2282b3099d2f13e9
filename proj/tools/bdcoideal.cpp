// Command-line front end: root data, structure constants, r-matrices,
// coideal checks, lambda solving, classification and double cross-checks.

#include "bdc/double.hpp"
#include "bdc/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

using namespace bdc;
using nlohmann::json;

namespace
{

enum Exit
{
    kOk = 0,
    kFalse = 1,
    kUsage = 2,
};

struct Options
{
    std::string format = "table";
    int jobs = 1;
    std::string config;
    bool exploratory = false;
    std::string sigma;
    std::string triples;
    std::string types;
    std::string t;
    std::vector<std::string> type_args;
    std::string case_file;
    bool all_pairs = false;
};

bool as_json(const Options &o)
{
    return o.format == "json";
}

void print_json(const json &j)
{
    std::cout << j.dump(2) << '\n';
}

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

/// "A2" or "A" "2".
DynkinType type_from_args(const std::vector<std::string> &args)
{
    if (args.size() == 1)
        return DynkinType::parse(args[0]);
    if (args.size() == 2)
        return DynkinType::parse(args[0] + args[1]);
    throw InputError("expected a Dynkin type such as 'A2' or 'A 2'");
}

std::string case_line(const ResolvedCase &r)
{
    return r.spec.type.name() + "  " + sigma_descriptor(r.spec.sigma) + "  triple " + r.spec.triple.str() +
           "  t = " + r.t.str();
}

std::string lambda_line(const ResolvedCase &r)
{
    const std::string entries = lambda_to_json(r.lambda).dump();
    return r.lambda_given ? entries : entries + " (base point of the admissible space)";
}

std::string vector_text(const NormalizedBasis &b, const SparseVec &v)
{
    std::string out;
    for (const auto &[k, c] : v.entries())
        out += (out.empty() ? "" : " + ") + std::string("(") + c.str() + ") " + b.label(k);
    return out.empty() ? "0" : out;
}

std::string tensor_text(const NormalizedBasis &b, const SparseTensor2 &t, std::size_t limit)
{
    std::string out;
    std::size_t shown = 0;
    for (const auto &[k, c] : t.entries()) {
        if (shown++ == limit) {
            out += "\n    ... " + std::to_string(t.size() - limit) + " more terms";
            break;
        }
        out += "\n    (" + c.str() + ") " + b.label(k.first) + " ⊗ " + b.label(k.second);
    }
    return out;
}

int cmd_roots(const Options &o)
{
    const RootSystem rs(type_from_args(o.type_args));
    if (as_json(o)) {
        print_json(roots_to_json(rs));
        return kOk;
    }
    const Root top = highest_root(rs);
    std::cout << rs.type().name() << ": " << rs.num_positive() << " positive roots, dimension " << rs.dim()
              << ", highest root " << root_label(top) << '\n';
    std::cout << "positive roots:\n";
    for (int a = 0; a < rs.num_positive(); ++a)
        std::cout << "  " << root_label(rs.root(a)) << "  height " << height(rs.root(a)) << "  B(a,a)/2 = "
                  << rs.half_norm(a).get_str() << '\n';
    std::cout << "Killing form on simple roots:\n";
    for (const auto &row : rs.killing_gram()) {
        std::cout << " ";
        for (const Rational &q : row)
            std::cout << ' ' << q.get_str();
        std::cout << '\n';
    }
    return kOk;
}

int cmd_constants(const Options &o)
{
    const NormalizedBasis b = make_basis(type_from_args(o.type_args));
    const RootSystem &rs = b.rs();
    const ChevalleyConstants m(rs);
    const int last = o.all_pairs ? rs.num_roots() : rs.num_positive();
    json rows = json::array();
    for (int a = 0; a < last; ++a)
        for (int c = 0; c < last; ++c) {
            if (rs.sum_index(a, c) < 0)
                continue;
            rows.push_back({{"alpha", root_label(rs.root(a))},
                            {"beta", root_label(rs.root(c))},
                            {"chevalley", m(a, c)},
                            {"normalized", b.n(a, c).str()}});
        }
    if (as_json(o)) {
        print_json({{"type", rs.type().name()}, {"constants", rows}});
        return kOk;
    }
    std::cout << rs.type().name() << ": [e_a, e_b] = N e_{a+b}; M is the Chevalley integer\n";
    for (const json &r : rows)
        std::cout << "  " << r["alpha"].get<std::string>() << ", " << r["beta"].get<std::string>() << ":  M = "
                  << r["chevalley"].get<int>() << "  N = " << r["normalized"].get<std::string>() << '\n';
    return kOk;
}

int cmd_rmatrix(const Options &o)
{
    const CaseSpec c = load_case_file(o.case_file);
    const ResolvedCase r = resolve_case(c);
    const RMatrix rm = build_r(r.ctx.basis(), r.ctx.ext, r.lambda, r.t);
    const SparseTensor2 r0 = build_r0(r.ctx.form, r.ctx.ext, r.lambda, r.t);
    const bool cybe = cybe_residual(r.ctx.basis(), rm.tensor).is_zero();
    if (as_json(o)) {
        print_json({{"schema", kSchemaVersion},
                    {"case", resolved_case_to_json(r)},
                    {"r", tensor_to_json(r.ctx.basis(), rm.tensor)},
                    {"r0", tensor_to_json(r.ctx.basis(), r0)},
                    {"cybe_residual_zero", cybe}});
    } else {
        std::cout << "case    " << case_line(r) << '\n';
        std::cout << "lambda  " << lambda_line(r) << '\n';
        std::cout << "r (" << rm.tensor.size() << " terms):" << tensor_text(r.ctx.basis(), rm.tensor, 200) << '\n';
        std::cout << "CYBE residual: " << (cybe ? "zero" : "NONZERO") << '\n';
    }
    return cybe ? kOk : kFalse;
}

int cmd_check(const Options &o)
{
    const CaseSpec c = load_case_file(o.case_file);
    const ResolvedCase r = resolve_case(c);
    const CoidealVerdict v = coideal_check(r.ctx, r.lambda, r.t);
    if (as_json(o)) {
        json j{{"schema", kSchemaVersion}, {"case", resolved_case_to_json(r)}, {"coideal", v.is_coideal}};
        if (v.witness)
            j["witness"] = {{"generator_index", v.witness->generator_index},
                            {"generator", vector_to_json(r.ctx.basis(), v.witness->generator)},
                            {"image", tensor_to_json(r.ctx.basis(), v.witness->tensor)}};
        print_json(j);
    } else {
        std::cout << "case     " << case_line(r) << '\n';
        std::cout << "lambda   " << lambda_line(r) << '\n';
        std::cout << "verdict  " << (v.is_coideal ? "k is a coideal (group type)" : "k is not a coideal") << '\n';
        if (v.witness) {
            std::cout << "witness  generator " << v.witness->generator_index << ": "
                      << vector_text(r.ctx.basis(), v.witness->generator) << '\n';
            std::cout << "         ad u(r~0) has " << v.witness->tensor.size() << " terms:"
                      << tensor_text(r.ctx.basis(), v.witness->tensor, 8) << '\n';
        }
    }
    return v.is_coideal ? kOk : kFalse;
}

int cmd_solve_lambda(const Options &o)
{
    const CaseSpec c = load_case_file(o.case_file);
    const NormalizedBasis base = make_basis(c.type);
    const Scalar t = c.t_or_default();
    std::vector<Scalar> phases = c.phases;
    if (phases.empty() && !c.triple.is_trivial()) {
        auto found = sigma_compatible_phases(make_adapted_form(base, c.sigma), c.triple, t);
        if (found)
            phases = *found;
    }
    const CaseContext ctx = make_context(base, c.sigma, c.triple, phases);
    const LambdaSolution sol = solve_lambda(ctx, t);
    if (as_json(o)) {
        json basis = json::array();
        for (const RationalVector &v : sol.solution.basis) {
            json row = json::array();
            for (const Rational &q : v)
                row.push_back(q.get_str());
            basis.push_back(row);
        }
        json j{{"schema", kSchemaVersion},
               {"type", c.type.name()},
               {"sigma", sigma_to_json(c.sigma)},
               {"triple", triple_to_json(c.triple)},
               {"t", t.str()},
               {"admissible_dim", sol.admissible.dim()},
               {"admissible", !sol.admissible.empty},
               {"solution_dim", sol.solution.dim()},
               {"solution_nonempty", sol.nonempty()},
               {"conditions", sol.conditions},
               {"description", sol.describe()}};
        if (sol.nonempty()) {
            j["example"] = lambda_to_json(LambdaCoordinates{ctx.rs().rank()}.point(ctx.rs(), sol.solution.particular));
            j["solution_basis"] = basis;
        }
        print_json(j);
    } else {
        std::cout << c.type.name() << "  " << sigma_descriptor(c.sigma) << "  triple " << c.triple.str() << "  t = "
                  << t.str() << '\n';
        std::cout << "admissible lambda: real dimension " << sol.admissible.dim()
                  << (sol.admissible.empty ? " (empty)" : "") << '\n';
        std::cout << "coideal lambda:    real dimension " << sol.solution.dim()
                  << (sol.nonempty() ? "" : " (empty)") << '\n';
        std::cout << "condition:         " << sol.describe() << '\n';
        if (sol.nonempty())
            std::cout << "example:           "
                      << lambda_to_json(LambdaCoordinates{ctx.rs().rank()}.point(ctx.rs(), sol.solution.particular))
                             .dump()
                      << '\n';
    }
    return sol.nonempty() ? kOk : kFalse;
}

int cmd_classify(const Options &o)
{
    ClassifyConfig config = o.config.empty() ? ClassifyConfig::defaults() : load_config_file(o.config);
    if (!o.types.empty()) {
        config.types.clear();
        for (const std::string &t : split_list(o.types))
            config.types.push_back(DynkinType::parse(t));
    }
    if (!o.sigma.empty()) {
        config.shapes.clear();
        for (const std::string &s : split_list(o.sigma))
            config.shapes.push_back(canonical_shape(s));
    }
    if (!o.triples.empty())
        config.triples = parse_triple_filter(o.triples);
    if (o.exploratory)
        config.exploratory = true;
    if (!o.t.empty())
        config.t = Scalar::parse(o.t);
    config.jobs = o.jobs;
    const std::vector<CaseRecord> records = classify(config);
    if (as_json(o)) {
        json rows = json::array();
        for (const CaseRecord &r : records)
            rows.push_back(record_to_json(r));
        print_json({{"schema", kSchemaVersion}, {"records", rows}});
    } else {
        std::cout << classification_table(records);
    }
    return kOk;
}

int cmd_double_check(const Options &o)
{
    const CaseSpec c = load_case_file(o.case_file);
    const ResolvedCase r = resolve_case(c);
    const NormalizedBasis &b = r.ctx.basis();
    const SparseTensor2 r0 = build_r0(r.ctx.form, r.ctx.ext, r.lambda, r.t);
    const Subspace &k = r.ctx.form.k.closed_basis;

    const bool coideal = coideal_check(r.ctx, r.lambda, r.t).is_coideal;
    const bool direct = coideal_check_direct(r.ctx, r.lambda, r.t);
    const bool annihilator = annihilator_dual_bracket_check(b, r0, k);
    const bool decomposition = lagrangian_decomposition_check(b, r0, k);
    const GraphSubalgebra graph = graph_subalgebra(b, r.ctx.form.theta);
    std::optional<RealifiedFixedSpace> realified;
    if (r.ctx.form.spec.is_omega())
        realified = realified_fixed_space(r.ctx.form, r.t);

    const bool agree = coideal == direct && coideal == annihilator && coideal == decomposition;
    const bool structural = graph.closed && graph.lagrangian &&
                            (!realified || (realified->lagrangian && realified->closed &&
                                            realified->meets_g0_in_k0 && realified->splits_as_k0_ip0));
    if (as_json(o)) {
        json j{{"schema", kSchemaVersion},
               {"case", resolved_case_to_json(r)},
               {"coideal_r_tilde", coideal},
               {"coideal_projection", direct},
               {"annihilator_subalgebra", annihilator},
               {"lagrangian_decomposition", decomposition},
               {"graph_of_theta", {{"closed", graph.closed}, {"lagrangian", graph.lagrangian}}},
               {"oracles_agree", agree}};
        if (realified)
            j["realified"] = {{"real_dim", realified->real_dim},
                              {"isotropic", realified->isotropic},
                              {"lagrangian", realified->lagrangian},
                              {"closed", realified->closed},
                              {"meets_g0_in_k0", realified->meets_g0_in_k0},
                              {"splits_as_k0_ip0", realified->splits_as_k0_ip0}};
        print_json(j);
    } else {
        auto yn = [](bool v) { return v ? "yes" : "no"; };
        std::cout << "case                          " << case_line(r) << '\n';
        std::cout << "lambda                        " << lambda_line(r) << '\n';
        std::cout << "ad k (r~0) = 0                " << yn(coideal) << '\n';
        std::cout << "(pi ⊗ pi) ad k (r0) = 0       " << yn(direct) << '\n';
        std::cout << "ann(k) is a subalgebra of g*  " << yn(annihilator) << '\n';
        std::cout << "k + ann(k) Lagrangian subalg  " << yn(decomposition) << '\n';
        std::cout << "graph of theta                closed " << yn(graph.closed) << ", Lagrangian "
                  << yn(graph.lagrangian) << '\n';
        if (realified)
            std::cout << "realified m (dim " << realified->real_dim << ")          Lagrangian "
                      << yn(realified->lagrangian) << ", closed " << yn(realified->closed) << ", m ∩ g0 = k0 "
                      << yn(realified->meets_g0_in_k0) << ", m = k0 + i p0 " << yn(realified->splits_as_k0_ip0)
                      << '\n';
        std::cout << "oracles agree                 " << yn(agree) << '\n';
    }
    return agree && structural ? kOk : kFalse;
}

int default_jobs()
{
    const char *env = std::getenv("BD_COIDEAL_JOBS");
    if (env == nullptr || *env == '\0')
        return 1;
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024)
        throw InputError(std::string("BD_COIDEAL_JOBS must be a positive integer, got '") + env + "'");
    return static_cast<int>(v);
}

}  // namespace

int main(int argc, char **argv)
{
    Options o;
    CLI::App app{"Poisson homogeneous symmetric spaces of group type: checks and classification", "bdcoideal"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    auto *jobs_opt = app.add_option("--jobs", o.jobs, "Worker threads for classify")->check(CLI::Range(1, 1024));
    app.add_option("--config", o.config, "JSON classification config (schema 1)")->check(CLI::ExistingFile);
    app.add_flag("--exploratory", o.exploratory, "Include omega_mu_J rows with nontrivial antistable triples");
    app.add_option("--sigma", o.sigma, "Comma-separated sigma shapes for classify");
    app.add_option("--triples", o.triples, "Triple filter: trivial, all, stable or antistable");

    auto *roots = app.add_subcommand("roots", "Root system summary");
    roots->add_option("type", o.type_args, "Dynkin type, e.g. A2 or A 2")->required()->expected(1, 2);
    auto *constants = app.add_subcommand("constants", "Structure constants N_{a,b}");
    constants->add_option("type", o.type_args, "Dynkin type, e.g. A2 or A 2")->required()->expected(1, 2);
    constants->add_flag("--all", o.all_pairs, "Include pairs of negative roots");
    auto *rmatrix = app.add_subcommand("rmatrix", "Build r and r0 for a case file and check the CYBE");
    rmatrix->add_option("case", o.case_file, "Case file")->required();
    auto *check = app.add_subcommand("check", "Coideal check for a case file");
    check->add_option("case", o.case_file, "Case file")->required();
    auto *solve = app.add_subcommand("solve-lambda", "Solve for the lambda making k a coideal");
    solve->add_option("case", o.case_file, "Case file")->required();
    auto *cls = app.add_subcommand("classify", "Classify over families, sigma shapes and triples");
    cls->add_option("--types", o.types, "Comma-separated Dynkin types, e.g. A2,B3,E6");
    cls->add_option("--t", o.t, "Override t with an exact scalar");
    auto *dbl = app.add_subcommand("double-check", "Cross-check the verdict through the Drinfeld double");
    dbl->add_option("case", o.case_file, "Case file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (jobs_opt->count() == 0)
            o.jobs = default_jobs();
        if (*roots)
            return cmd_roots(o);
        if (*constants)
            return cmd_constants(o);
        if (*rmatrix)
            return cmd_rmatrix(o);
        if (*check)
            return cmd_check(o);
        if (*solve)
            return cmd_solve_lambda(o);
        if (*cls)
            return cmd_classify(o);
        if (*dbl)
            return cmd_double_check(o);
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
