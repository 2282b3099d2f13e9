#include "bdc/coideal.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace bdc
{

CaseContext make_context(const NormalizedBasis &base, const SigmaSpec &spec, const BDTriple &triple,
                         const std::vector<Scalar> &phases)
{
    AdaptedForm form = make_adapted_form(base, spec);
    TExtension ext = extend_t_hat(form.basis, triple, phases);
    return CaseContext{std::move(form), std::move(ext)};
}

CaseContext make_context(const CaseSpec &c)
{
    return make_context(make_basis(c.type), c.sigma, c.triple, c.phases);
}

std::optional<std::vector<Scalar>> sigma_compatible_phases(const AdaptedForm &form, const BDTriple &triple,
                                                           const Scalar &t)
{
    const RootSystem &rs = form.basis.rs();
    AffineSolutionSpace space = admissible_lambda_space(rs, form.spec, triple);
    if (space.empty)
        return std::nullopt;
    const ContinuousParameter lam = LambdaCoordinates{rs.rank()}.point(rs, space.particular);
    auto works = [&](const std::vector<Scalar> &phases) {
        return !admissibility_violation(form, extend_t_hat(form.basis, triple, phases), lam, t).has_value();
    };
    if (works({}))
        return std::vector<Scalar>{};
    const std::vector<Scalar> grid{Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()};
    const std::size_t k = triple.gamma1.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i)
        total *= grid.size();
    for (std::size_t code = 1; code < total; ++code) {
        std::vector<Scalar> phases(k);
        std::size_t c = code;
        for (std::size_t i = 0; i < k; ++i, c /= grid.size())
            phases[i] = grid[c % grid.size()];
        if (works(phases))
            return phases;
    }
    return std::nullopt;
}

RTilde compute_r_tilde(const ConjLinearMap &theta, const SparseTensor2 &r0)
{
    if (theta.conjugates_scalars())
        throw InputError("theta must be linear");
    SparseTensor2 out = r0;
    out += theta.apply_tensor(r0);
    out -= theta.apply_slot(r0, 0);
    out -= theta.apply_slot(r0, 1);
    return RTilde{std::move(out), RTildeProvenance::Generic};
}

Scalar t_coefficient(const ContinuousParameter &lambda, const DiagramAutomorphism &mu, int a, int b)
{
    Scalar z = lambda.lambda_ab(a, b) + lambda.lambda_ab(a, mu(b));
    return Scalar(2 * z.re());
}

Scalar s_coefficient(const ContinuousParameter &lambda, const DiagramAutomorphism &mu, int a, int b)
{
    Scalar z = lambda.lambda_ab(a, b) - lambda.lambda_ab(a, mu(b));
    return Scalar(0, 2 * z.im());
}

namespace
{

/**
 * Wedge of two root vectors written in the basis with e_alpha, e_{-alpha}
 * both scaled by sqrt(B(alpha,alpha)/2) relative to ours; the two roots have
 * the same length, so the scale factors multiply to q, 1/q or 1.
 */
SparseTensor2 unit_wedge(const NormalizedBasis &b, int x, int y)
{
    const RootSystem &rs = b.rs();
    if (rs.half_norm(x) != rs.half_norm(y))
        throw InternalError("closed form pairs roots of different lengths");
    Scalar f = 1;
    const bool px = rs.is_positive_index(x), py = rs.is_positive_index(y);
    if (px && py)
        f = Scalar(rs.half_norm(x));
    else if (!px && !py)
        f = Scalar(Rational(1) / rs.half_norm(x));
    return SparseTensor2::wedge(b.e(x), b.e(y)) * f;
}

}  // namespace

RTilde closed_form_r_tilde(const CaseContext &ctx, const ContinuousParameter &lambda, const Scalar &t)
{
    const NormalizedBasis &b = ctx.basis();
    const RootSystem &rs = ctx.rs();
    const SigmaSpec &spec = ctx.form.spec;
    const DiagramAutomorphism &mu = spec.mu;
    const int n = rs.rank();
    auto neg = [&](int a) { return rs.negate_index(a); };
    auto mu_of = [&](int a) { return extend_automorphism_index(rs, mu, a); };
    auto sign = [&](int a) { return ctx.form.chi_of(a) ? Scalar(-1) : Scalar(1); };
    // The ≺ sums carry the factor 2 of r0 = r - r^dag.
    const Scalar two = 2;
    SparseTensor2 inner;

    if (!spec.is_omega()) {
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c)
                inner.add_scaled(SparseTensor2::wedge(b.h(a), b.h(c)), t_coefficient(lambda, mu, a, c));
        for (auto [a, c] : ctx.ext.order) {
            const Scalar d = ctx.ext.d(rs, a, c);
            if (mu.is_identity()) {
                inner.add_scaled(unit_wedge(b, neg(a), c), two * d.conj());
                SparseTensor2 rest = unit_wedge(b, a, neg(c));
                rest += unit_wedge(b, a, c);
                rest += unit_wedge(b, neg(a), neg(c));
                inner.add_scaled(rest, two * d);
            } else {
                inner.add_scaled(unit_wedge(b, a, neg(c)), two * d.conj());
                SparseTensor2 rest = unit_wedge(b, neg(a), c);
                rest += unit_wedge(b, mu_of(a), c);
                rest += unit_wedge(b, neg(a), neg(mu_of(c)));
                inner.add_scaled(rest, two * d);
            }
        }
        return RTilde{inner * (t * Scalar(Rational(1, 2))), RTildeProvenance::ClosedForm};
    }

    if (mu.is_identity()) {
        SparseTensor2 out;
        for (int a = 0; a < rs.num_positive(); ++a)
            out.add_scaled(unit_wedge(b, neg(a), a), t * (Scalar(1) + sign(a)));
        return RTilde{std::move(out), RTildeProvenance::ClosedForm};
    }

    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            inner.add_scaled(SparseTensor2::wedge(b.h(a), b.h(c)), s_coefficient(lambda, mu, a, c));
    for (int a = 0; a < rs.num_positive(); ++a) {
        inner.add_scaled(unit_wedge(b, neg(a), a), two);
        inner.add_scaled(unit_wedge(b, neg(mu_of(a)), a), two * sign(a));
    }
    for (auto [a, c] : ctx.ext.order) {
        const Scalar d = ctx.ext.d(rs, a, c);
        inner.add_scaled(unit_wedge(b, a, neg(c)), -two * d.conj());
        SparseTensor2 rest = unit_wedge(b, neg(a), c);
        rest.add_scaled(unit_wedge(b, neg(mu_of(a)), c), sign(a));
        rest.add_scaled(unit_wedge(b, neg(a), mu_of(c)), sign(c));
        inner.add_scaled(rest, two * d);
    }
    return RTilde{inner * (t * Scalar(Rational(1, 2))), RTildeProvenance::ClosedForm};
}

CoidealVerdict coideal_check(const AdaptedForm &form, const SparseTensor2 &r_tilde)
{
    const auto &gens = form.k.generators;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        SparseTensor2 image = form.basis.ad_tensor(gens[g], r_tilde);
        if (!image.is_zero())
            return CoidealVerdict{false, CoidealWitness{g, gens[g], std::move(image)}};
    }
    return CoidealVerdict{true, std::nullopt};
}

CoidealVerdict coideal_check(const CaseContext &ctx, const ContinuousParameter &lambda, const Scalar &t)
{
    SparseTensor2 r0 = build_r0(ctx.form, ctx.ext, lambda, t);
    return coideal_check(ctx.form, compute_r_tilde(ctx.form.theta, r0).tensor);
}

bool coideal_check_direct(const CaseContext &ctx, const ContinuousParameter &lambda, const Scalar &t)
{
    const NormalizedBasis &b = ctx.basis();
    SparseTensor2 r0 = build_r0(ctx.form, ctx.ext, lambda, t);
    const Subspace &k = ctx.form.k.closed_basis;
    std::vector<SparseVec> pi(b.dim());
    for (int x = 0; x < b.dim(); ++x)
        pi[x] = k.reduce(b.e(x));
    auto project = [&](int x) { return pi[x]; };
    for (const SparseVec &u : ctx.form.k.generators)
        if (!b.ad_tensor(u, r0).map_slots(project, project).is_zero())
            return false;
    return true;
}

namespace
{

RationalVector add_vec(RationalVector a, const RationalVector &b, const Rational &c)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += c * b[i];
    return a;
}

/// Basis of {w : w · v = 0 for every v in vs} inside Q^n.
std::vector<RationalVector> annihilator_of(const std::vector<RationalVector> &vs, std::size_t n)
{
    if (vs.empty()) {
        std::vector<RationalVector> out;
        for (std::size_t i = 0; i < n; ++i) {
            RationalVector e(n, 0);
            e[i] = 1;
            out.push_back(std::move(e));
        }
        return out;
    }
    return solve_linear_system(vs, RationalVector(vs.size(), 0), n).basis;
}

/// Stores coordinate i at index n - 1 - i so that reduction eliminates the highest coordinates first.
SparseVec as_reversed_sparse(const RationalVector &v)
{
    const int n = static_cast<int>(v.size());
    SparseVec out;
    for (int i = 0; i < n; ++i)
        if (sgn(v[i]) != 0)
            out.add(n - 1 - i, Scalar(v[i]));
    return out;
}

std::string coordinate_name(const LambdaCoordinates &lc, int index)
{
    for (int i = 0; i < lc.rank; ++i)
        for (int j = i + 1; j < lc.rank; ++j) {
            if (lc.re_index(i, j) == index)
                return "Re l[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
            if (lc.im_index(i, j) == index)
                return "Im l[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
        }
    throw InternalError("unknown lambda coordinate");
}

/// Equations of the solution space that do not already hold on the admissible space.
std::vector<std::string> extra_conditions(const LambdaCoordinates &lc, const AffineSolutionSpace &admissible,
                                          const AffineSolutionSpace &solution)
{
    const std::size_t n = lc.num_vars();
    Subspace implied;
    for (const auto &w : annihilator_of(admissible.basis, n))
        implied.insert(as_reversed_sparse(w));
    std::vector<std::string> out;
    for (const auto &w : annihilator_of(solution.basis, n)) {
        SparseVec v = implied.reduce(as_reversed_sparse(w));
        if (v.is_zero())
            continue;
        implied.insert(v);
        std::map<int, Rational> terms;
        for (const auto &[rev, c] : v.entries())
            terms[static_cast<int>(n) - 1 - rev] = c.re();
        const Rational lead = terms.begin()->second;
        Rational value = 0;
        std::ostringstream os;
        bool first = true;
        for (auto &[idx, raw] : terms) {
            Rational q = raw / lead;
            q.canonicalize();
            value += q * solution.particular[idx];
            if (first) {
                if (q == -1)
                    os << "-";
                else if (q != 1)
                    os << q << " ";
            } else {
                os << (sgn(q) < 0 ? " - " : " + ");
                if (abs(q) != 1)
                    os << Rational(abs(q)) << " ";
            }
            os << coordinate_name(lc, idx);
            first = false;
        }
        value.canonicalize();
        os << " = " << value;
        out.push_back(os.str());
    }
    return out;
}

}  // namespace

std::string LambdaSolution::describe() const
{
    if (admissible.empty)
        return "no admissible lambda";
    if (solution.empty)
        return "none";
    if (conditions.empty())
        return "any admissible lambda";
    std::string out;
    for (const auto &c : conditions) {
        if (!out.empty())
            out += ", ";
        out += c;
    }
    return out;
}

LambdaSolution solve_lambda(const CaseContext &ctx, const Scalar &t)
{
    const RootSystem &rs = ctx.rs();
    const NormalizedBasis &b = ctx.basis();
    const LambdaCoordinates lc{rs.rank()};
    LambdaSolution out;
    out.admissible = admissible_lambda_space(rs, ctx.form.spec, ctx.ext.triple);
    if (out.admissible.empty) {
        out.solution.empty = true;
        return out;
    }
    const RationalVector &p = out.admissible.particular;
    const ContinuousParameter base = lc.point(rs, p);
    const SparseTensor2 r_base = compute_r_tilde(ctx.form.theta, build_r0(ctx.form, ctx.ext, base, t)).tensor;

    // r_tilde is affine in lambda: only the (t/2)(lambda - lambda^dag) part moves along each direction.
    const std::size_t m = out.admissible.basis.size();
    std::vector<SparseTensor2> r_dir(m);
    for (std::size_t k = 0; k < m; ++k) {
        const ContinuousParameter moved = lc.point(rs, add_vec(p, out.admissible.basis[k], 1));
        SparseTensor2 h;
        for (int i = 0; i < rs.rank(); ++i)
            for (int j = 0; j < rs.rank(); ++j) {
                Scalar delta = moved.lambda_ab(i, j) - base.lambda_ab(i, j);
                if (!delta.is_zero())
                    h.add_scaled(SparseTensor2::wedge(b.h(i), b.h(j)), delta);
            }
        r_dir[k] = compute_r_tilde(ctx.form.theta, h * (t * Scalar(Rational(1, 2)))).tensor;
    }

    RationalMatrix rows;
    RationalVector rhs;
    for (const SparseVec &u : ctx.form.k.generators) {
        const SparseTensor2 constant = b.ad_tensor(u, r_base);
        std::vector<SparseTensor2> linear(m);
        std::map<SparseTensor2::Key, bool> keys;
        for (const auto &[key, c] : constant.entries())
            keys[key] = true;
        for (std::size_t k = 0; k < m; ++k) {
            linear[k] = b.ad_tensor(u, r_dir[k]);
            for (const auto &[key, c] : linear[k].entries())
                keys[key] = true;
        }
        for (const auto &[key, unused] : keys) {
            RationalVector re(m, 0), im(m, 0);
            for (std::size_t k = 0; k < m; ++k) {
                Scalar c = linear[k].get(key.first, key.second);
                re[k] = c.re();
                im[k] = c.im();
            }
            Scalar c0 = constant.get(key.first, key.second);
            rows.push_back(std::move(re));
            rhs.push_back(-c0.re());
            rows.push_back(std::move(im));
            rhs.push_back(-c0.im());
        }
    }

    AffineSolutionSpace coeffs;
    if (rows.empty()) {
        coeffs.particular.assign(m, 0);
        for (std::size_t k = 0; k < m; ++k) {
            RationalVector e(m, 0);
            e[k] = 1;
            coeffs.basis.push_back(std::move(e));
        }
    } else {
        coeffs = solve_linear_system(rows, rhs, m);
    }
    if (coeffs.empty) {
        out.solution.empty = true;
        return out;
    }
    out.solution.particular = p;
    for (std::size_t k = 0; k < m; ++k)
        out.solution.particular = add_vec(out.solution.particular, out.admissible.basis[k], coeffs.particular[k]);
    for (const auto &v : coeffs.basis) {
        RationalVector x(lc.num_vars(), 0);
        for (std::size_t k = 0; k < m; ++k)
            x = add_vec(x, out.admissible.basis[k], v[k]);
        out.solution.basis.push_back(std::move(x));
    }
    out.conditions = extra_conditions(lc, out.admissible, out.solution);
    return out;
}

bool painted_root_criterion(const RootSystem &rs, const std::vector<int> &J)
{
    std::vector<int> missing;
    for (int i = 0; i < rs.rank(); ++i)
        if (std::find(J.begin(), J.end(), i) == J.end())
            missing.push_back(i);
    return missing.size() == 1 && highest_root(rs)[missing[0]] == 1;
}

bool splitting_criterion(const RootSystem &rs, const SigmaSpec &spec)
{
    if (!spec.is_omega() || !spec.mu_is_identity())
        throw InputError("the splitting criterion applies to omega_J only");
    const int np = rs.num_positive();
    std::vector<int> chi(np);
    for (int a = 0; a < np; ++a)
        chi[a] = chi_tilde(rs, spec, rs.root(a));
    for (int a = 0; a < np; ++a)
        for (int c = 0; c < np; ++c) {
            int g = rs.sum_index(a, c);
            if (g < 0 || chi[g] != 1)
                continue;
            if (chi[a] != 1 || chi[c] != 1)
                return false;
        }
    return true;
}

TripleFilter parse_triple_filter(const std::string &text)
{
    if (text == "trivial")
        return TripleFilter::Trivial;
    if (text == "all")
        return TripleFilter::All;
    if (text == "stable")
        return TripleFilter::Stable;
    if (text == "antistable")
        return TripleFilter::Antistable;
    throw InputError("unknown triple filter '" + text + "' (expected trivial, all, stable or antistable)");
}

std::string triple_filter_name(TripleFilter f)
{
    switch (f) {
    case TripleFilter::Trivial:
        return "trivial";
    case TripleFilter::All:
        return "all";
    case TripleFilter::Stable:
        return "stable";
    case TripleFilter::Antistable:
        return "antistable";
    }
    return "trivial";
}

ClassifyConfig ClassifyConfig::defaults()
{
    ClassifyConfig c;
    for (int n = 1; n <= 6; ++n)
        c.types.push_back({'A', n});
    for (int n = 2; n <= 6; ++n)
        c.types.push_back({'B', n});
    for (int n = 3; n <= 6; ++n)
        c.types.push_back({'C', n});
    for (int n = 4; n <= 6; ++n)
        c.types.push_back({'D', n});
    c.types.push_back({'E', 6});
    c.types.push_back({'E', 7});
    return c;
}

std::vector<CaseSpec> enumerate_cases(const ClassifyConfig &config)
{
    std::vector<CaseSpec> out;
    for (const DynkinType &ty : config.types) {
        RootSystem rs(ty);
        for (const SigmaSpec &spec : enumerate_sigma_specs(rs)) {
            const std::string shape = spec.shape();
            if (!config.shapes.empty() &&
                std::find(config.shapes.begin(), config.shapes.end(), shape) == config.shapes.end())
                continue;
            if (shape == "omega_J" && static_cast<int>(spec.J.size()) == rs.rank())
                continue;
            std::vector<BDTriple> triples{BDTriple{}};
            if (config.triples != TripleFilter::Trivial) {
                if (shape == "varsigma")
                    triples = enumerate_bd_triples(rs);
                else if (shape == "varsigma_mu")
                    triples = enumerate_bd_triples(rs, Stability::MuStable, &spec.mu);
                else if (shape == "omega_mu_J" && config.exploratory)
                    triples = enumerate_bd_triples(rs, Stability::MuAntistable, &spec.mu);
            }
            for (const BDTriple &t : triples) {
                CaseSpec c;
                c.type = ty;
                c.sigma = spec;
                c.triple = t;
                c.t = config.t;
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

CaseRecord evaluate_case(const CaseSpec &c)
{
    CaseRecord rec;
    rec.type = c.type;
    rec.sigma = c.sigma;
    rec.triple = c.triple;
    rec.exploratory = c.sigma.shape() == "omega_mu_J" && !c.triple.is_trivial();
    NormalizedBasis base = make_basis(c.type);
    const RootSystem &rs = base.rs();
    if (c.sigma.shape() == "omega_J") {
        std::vector<int> missing;
        for (int i = 0; i < rs.rank(); ++i)
            if (!c.sigma.in_J(i))
                missing.push_back(i);
        if (missing.size() == 1)
            rec.painted_root = "a" + std::to_string(missing[0] + 1);
    }
    const Scalar t = c.t_or_default();
    AdaptedForm form = make_adapted_form(base, c.sigma);
    std::vector<Scalar> phases = c.phases;
    if (phases.empty() && !c.triple.is_trivial()) {
        auto found = sigma_compatible_phases(form, c.triple, t);
        if (!found) {
            rec.admissible = false;
            rec.verdict = false;
            rec.lambda_condition = "no admissible lambda";
            AffineSolutionSpace adm = admissible_lambda_space(rs, c.sigma, c.triple);
            rec.lambda_admissible_dim = adm.dim();
            return rec;
        }
        phases = *found;
    }
    rec.phases = phases;
    TExtension ext = extend_t_hat(form.basis, c.triple, phases);
    CaseContext ctx{std::move(form), std::move(ext)};
    LambdaSolution sol = solve_lambda(ctx, t);
    rec.admissible = !sol.admissible.empty;
    rec.verdict = sol.nonempty();
    rec.lambda_admissible_dim = sol.admissible.dim();
    rec.lambda_solution_dim = sol.solution.dim();
    rec.lambda_condition = sol.describe();
    return rec;
}

std::vector<CaseRecord> classify(const ClassifyConfig &config)
{
    const std::vector<CaseSpec> cases = enumerate_cases(config);
    std::vector<CaseRecord> out(cases.size());
    const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(cases.size())));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cases.size(); ++i)
            out[i] = evaluate_case(cases[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < cases.size(); i = next++)
                    out[i] = evaluate_case(cases[i]);
            } catch (...) {
                errors[w] = std::current_exception();
                next = cases.size();
            }
        });
    for (auto &th : workers)
        th.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

}  // namespace bdc
