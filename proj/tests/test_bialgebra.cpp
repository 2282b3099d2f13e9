#include "doctest.h"

#include "bdc/bialgebra.hpp"

#include <set>

using namespace bdc;

namespace
{

using Mapping = std::vector<std::pair<int, int>>;

struct Config
{
    const char *type;
    Mapping mapping;
};

std::vector<Config> cybe_configs()
{
    return {
        {"A1", {}},
        {"A2", {}},
        {"A2", {{0, 1}}},
        {"A3", {{0, 2}}},
        {"A3", {{0, 1}, {1, 2}}},
        {"A4", {{0, 1}, {1, 2}, {2, 3}}},
        {"A4", {{0, 3}}},
        {"B2", {}},
        {"B3", {{0, 1}}},
        {"C3", {{0, 1}}},
        {"D4", {{0, 2}, {2, 3}}},
        {"G2", {}},
    };
}

/// Sample coefficient vector k -> (k + 1)/(seed + 2) with alternating signs.
RationalVector sample(std::size_t n, int seed)
{
    RationalVector c(n);
    for (std::size_t k = 0; k < n; ++k)
        c[k] = Rational(static_cast<long>((k % 2 ? -1 : 1) * static_cast<long>(k + 1 + seed)), seed + 2);
    return c;
}

ContinuousParameter sample_lambda(const RootSystem &rs, const AffineSolutionSpace &space, int seed)
{
    REQUIRE_FALSE(space.empty);
    return LambdaCoordinates{rs.rank()}.point(rs, space.point(sample(space.dim(), seed)));
}

/// Dense triple loop over all index quadruples; shares only bracket_basis with the engine.
std::vector<Scalar> dense_cybe(const NormalizedBasis &b, const SparseTensor2 &r)
{
    const int n = b.dim();
    std::vector<Scalar> R(n * n);
    for (const auto &[k, c] : r.entries())
        R[k.first * n + k.second] = c;
    std::vector<std::vector<SparseVec>> f(n, std::vector<SparseVec>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            f[x][y] = b.bracket_basis(x, y);
    std::vector<Scalar> out(n * n * n);
    auto at = [&](int p, int q, int s) -> Scalar & { return out[(p * n + q) * n + s]; };
    for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb) {
            const Scalar &r1 = R[a * n + bb];
            if (r1.is_zero())
                continue;
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const Scalar &r2 = R[c * n + d];
                    if (r2.is_zero())
                        continue;
                    Scalar w = r1 * r2;
                    for (const auto &[z, v] : f[a][c].entries())
                        at(z, bb, d) += w * v;
                    for (const auto &[z, v] : f[bb][c].entries())
                        at(a, z, d) += w * v;
                    for (const auto &[z, v] : f[bb][d].entries())
                        at(a, c, z) += w * v;
                }
        }
    return out;
}

std::vector<Scalar> densify(const SparseTensor3 &t, int n)
{
    std::vector<Scalar> out(n * n * n);
    for (const auto &[k, c] : t.entries())
        out[(k[0] * n + k[1]) * n + k[2]] = c;
    return out;
}

}  // namespace

TEST_CASE("BD triple validation")
{
    RootSystem a2({'A', 2});
    BDTriple t = validate_bd_triple(a2, {{0, 1}});
    CHECK(t.T(0) == 1);
    CHECK(t.T(1) == -1);
    CHECK(t.T_inverse(1) == 0);
    CHECK(t.str() == "a1->a2");
    CHECK(validate_bd_triple(a2, {}).str() == "trivial");

    auto kind_of = [](const RootSystem &rs, const Mapping &m) {
        try {
            validate_bd_triple(rs, m);
        } catch (const BDTripleError &e) {
            return e.kind();
        }
        FAIL("expected a BDTripleError");
        return BDTripleError::Kind::Malformed;
    };
    CHECK(kind_of(a2, {{0, 1}, {1, 0}}) == BDTripleError::Kind::NilpotencyViolation);
    CHECK(kind_of(a2, {{0, 0}}) == BDTripleError::Kind::NilpotencyViolation);
    RootSystem b2({'B', 2});
    CHECK(kind_of(b2, {{0, 1}}) == BDTripleError::Kind::NotIsometry);
    RootSystem a3({'A', 3});
    // alpha1, alpha3 are orthogonal but alpha2, alpha3 are not.
    CHECK(kind_of(a3, {{0, 1}, {2, 2}}) == BDTripleError::Kind::NotIsometry);
    CHECK(kind_of(a3, {{0, 1}, {0, 2}}) == BDTripleError::Kind::Malformed);
    CHECK(kind_of(a3, {{0, 1}, {2, 1}}) == BDTripleError::Kind::Malformed);
    CHECK(kind_of(a3, {{0, 5}}) == BDTripleError::Kind::Malformed);
}

TEST_CASE("triple enumeration: hand counts and brute-force oracle")
{
    CHECK(enumerate_bd_triples(RootSystem({'A', 1})).size() == 1);
    CHECK(enumerate_bd_triples(RootSystem({'A', 2})).size() == 3);
    // Trivial, six single arrows, and the two chains a1->a2->a3, a3->a2->a1.
    CHECK(enumerate_bd_triples(RootSystem({'A', 3})).size() == 9);
    CHECK(enumerate_bd_triples(RootSystem({'B', 2})).size() == 1);
    CHECK(enumerate_bd_triples(RootSystem({'G', 2})).size() == 1);

    for (DynkinType ty : {DynkinType{'A', 4}, DynkinType{'B', 3}, DynkinType{'C', 3}, DynkinType{'D', 4}}) {
        RootSystem rs(ty);
        const int n = rs.rank();
        // Every partial map, encoded base n + 1 with n meaning "not in gamma1".
        std::set<std::pair<std::vector<int>, std::vector<int>>> valid;
        int total = 1;
        for (int i = 0; i < n; ++i)
            total *= n + 1;
        for (int code = 0; code < total; ++code) {
            Mapping m;
            int c = code;
            for (int i = 0; i < n; ++i, c /= n + 1)
                if (c % (n + 1) < n)
                    m.emplace_back(i, c % (n + 1));
            try {
                BDTriple t = validate_bd_triple(rs, m);
                valid.insert({t.gamma1, t.gamma2});
            } catch (const BDTripleError &) {
            }
        }
        auto all = enumerate_bd_triples(rs);
        CHECK(all.size() == valid.size());
        for (const BDTriple &t : all)
            CHECK(valid.count({t.gamma1, t.gamma2}) == 1);
        CHECK(all.front().is_trivial());
    }
}

TEST_CASE("mu-stable and mu-antistable triples of A3")
{
    RootSystem a3({'A', 3});
    auto mu = diagram_automorphisms(a3).at(1);
    REQUIRE(mu.perm == std::vector<int>{2, 1, 0});
    auto stable = enumerate_bd_triples(a3, Stability::MuStable, &mu);
    REQUIRE(stable.size() == 1);
    CHECK(stable[0].is_trivial());
    auto anti = enumerate_bd_triples(a3, Stability::MuAntistable, &mu);
    std::set<std::string> names;
    for (const auto &t : anti)
        names.insert(t.str());
    CHECK(names == std::set<std::string>{"trivial", "a1->a3", "a3->a1", "a1->a2,a2->a3", "a2->a1,a3->a2"});
    CHECK_THROWS_AS(enumerate_bd_triples(a3, Stability::MuStable, nullptr), InputError);

    RootSystem d4({'D', 4});
    for (const auto &m : diagram_automorphisms(d4))
        for (const auto &t : enumerate_bd_triples(d4, Stability::MuStable, &m))
            CHECK(is_mu_stable(t, m));
}

TEST_CASE("T-hat is a Lie map on the gamma1 subalgebra")
{
    for (const Config &cfg : cybe_configs()) {
        NormalizedBasis b = make_basis(DynkinType::parse(cfg.type));
        const RootSystem &rs = b.rs();
        BDTriple t = validate_bd_triple(rs, cfg.mapping);
        for (const std::vector<Scalar> &phases :
             {std::vector<Scalar>{}, std::vector<Scalar>(t.gamma1.size(), Scalar::i())}) {
            TExtension ext = extend_t_hat(b, t, phases);
            std::vector<int> domain;
            for (int a = 0; a < rs.num_roots(); ++a)
                if (ext.t_root[a] >= 0)
                    domain.push_back(a);
            for (int i : t.gamma1)
                domain.push_back(b.cartan_index(i));
            for (int x : domain)
                for (int y : domain) {
                    SparseVec lhs = apply_t_hat(b, ext, b.bracket_basis(x, y));
                    SparseVec rhs = b.bracket(apply_t_hat(b, ext, b.e(x)), apply_t_hat(b, ext, b.e(y)));
                    CHECK_MESSAGE(lhs == rhs, cfg.type << " " << t.str() << " " << b.label(x) << " " << b.label(y));
                }
            for (int a = 0; a < rs.num_roots(); ++a)
                if (ext.t_root[a] >= 0)
                    CHECK(ext.tau[a] * ext.tau[rs.negate_index(a)] == Scalar(1));
        }
    }
}

TEST_CASE("chains: C maps x_alpha to x_{T alpha} and the order follows T")
{
    NormalizedBasis b = make_basis({'A', 3});
    const RootSystem &rs = b.rs();
    BDTriple t = validate_bd_triple(rs, {{0, 1}, {1, 2}});
    TExtension ext = extend_t_hat(b, t, {Scalar(3), Scalar(0, 1)});
    int a1 = rs.index_of({1, 0, 0}), a2 = rs.index_of({0, 1, 0}), a3 = rs.index_of({0, 0, 1});
    int a12 = rs.index_of({1, 1, 0}), a23 = rs.index_of({0, 1, 1});
    std::set<std::pair<int, int>> expected{{a1, a2}, {a1, a3}, {a2, a3}, {a12, a23}};
    CHECK(std::set<std::pair<int, int>>(ext.order.begin(), ext.order.end()) == expected);
    CHECK(ext.precedes(a1, a3));
    CHECK_FALSE(ext.precedes(a3, a1));
    CHECK(ext.c[a1] == Scalar(1));
    CHECK(ext.c[a2] == Scalar(3));
    CHECK(ext.c[a3] == Scalar(0, 3));
    CHECK(ext.d(rs, a1, a3) == Scalar(0, 3));
    for (int a = 0; a < rs.num_roots(); ++a) {
        CHECK(ext.c[a] * ext.c[rs.negate_index(a)] == Scalar(1));
        if (ext.t_root[a] < 0)
            continue;
        SparseVec x = b.e(a) * ext.c[a];
        CHECK(apply_t_hat(b, ext, x) == b.e(ext.t_root[a]) * ext.c[ext.t_root[a]]);
    }
    CHECK_THROWS_AS(apply_t_hat(b, ext, b.e(rs.index_of({1, 1, 1}))), InputError);
}

TEST_CASE("Casimir: A1 value and ad-invariance")
{
    NormalizedBasis a1 = make_basis({'A', 1});
    Casimir c1 = casimir(a1);
    CHECK(c1.omega0.get(a1.cartan_index(0), a1.cartan_index(0)) == Scalar(2));
    CHECK(c1.omega0.size() == 1);
    for (DynkinType ty : {DynkinType{'A', 3}, DynkinType{'B', 2}, DynkinType{'G', 2}, DynkinType{'C', 3}}) {
        NormalizedBasis b = make_basis(ty);
        Casimir c = casimir(b);
        CHECK(c.omega.transpose() == c.omega);
        for (int x = 0; x < b.dim(); ++x)
            CHECK(b.ad_tensor(b.e(x), c.omega).is_zero());
    }
}

TEST_CASE("continuous parameter spaces")
{
    struct Case
    {
        const char *type;
        Mapping mapping;
        std::size_t real_dim;
    };
    // Complex dimension (n - k)(n - k - 1)/2 for |gamma1| = k.
    for (const Case &c : std::vector<Case>{{"A1", {}, 0},
                                           {"A2", {}, 2},
                                           {"A2", {{0, 1}}, 0},
                                           {"A3", {}, 6},
                                           {"A3", {{0, 2}}, 2},
                                           {"A3", {{0, 1}, {1, 2}}, 0},
                                           {"D4", {{0, 2}}, 6},
                                           {"D4", {{0, 2}, {2, 3}}, 2}}) {
        RootSystem rs(DynkinType::parse(c.type));
        BDTriple t = validate_bd_triple(rs, c.mapping);
        AffineSolutionSpace s = continuous_parameter_space(rs, t);
        REQUIRE_FALSE(s.empty);
        CHECK_MESSAGE(s.dim() == c.real_dim, c.type << " " << t.str());
        for (int seed = 0; seed < 3; ++seed)
            CHECK(is_continuous_parameter(rs, t, sample_lambda(rs, s, seed)));
    }
    RootSystem a2({'A', 2});
    LambdaCoordinates lc{2};
    ContinuousParameter p = lc.point(a2, {Rational(1, 3), Rational(-2)});
    CHECK(p.lambda_ab(0, 1) == Scalar(Rational(1, 3), -2));
    CHECK(p.lambda_ab(1, 0) == Scalar(Rational(-1, 3), 2));
    CHECK(lc.coordinates(p) == RationalVector{Rational(1, 3), Rational(-2)});
    CHECK_FALSE(is_continuous_parameter(a2, validate_bd_triple(a2, {{0, 1}}), p));
}

TEST_CASE("r + r^dag = (t/2) Omega and r0 = r - r^dag")
{
    for (const Config &cfg : cybe_configs()) {
        NormalizedBasis b = make_basis(DynkinType::parse(cfg.type));
        const RootSystem &rs = b.rs();
        BDTriple t = validate_bd_triple(rs, cfg.mapping);
        TExtension ext = extend_t_hat(b, t);
        SigmaSpec spec = SigmaSpec::varsigma(rs);
        AdaptedForm form = make_adapted_form(b, spec);
        AffineSolutionSpace space = admissible_lambda_space(rs, spec, t);
        for (int seed = 0; seed < 3; ++seed) {
            ContinuousParameter lam = sample_lambda(rs, space, seed);
            Scalar tt(Rational(seed + 1, 2));
            RMatrix r = build_r(b, ext, lam, tt);
            CHECK(r.tensor + r.tensor.transpose() == casimir(b).omega * (tt * Scalar(Rational(1, 2))));
            CHECK(build_r0(form, ext, lam, tt) == r.tensor - r.tensor.transpose());
        }
    }
}

TEST_CASE("CYBE holds for BD r-matrices and matches the dense oracle")
{
    for (const Config &cfg : cybe_configs()) {
        NormalizedBasis b = make_basis(DynkinType::parse(cfg.type));
        const RootSystem &rs = b.rs();
        BDTriple t = validate_bd_triple(rs, cfg.mapping);
        AffineSolutionSpace space = continuous_parameter_space(rs, t);
        for (const std::vector<Scalar> &phases :
             {std::vector<Scalar>{}, std::vector<Scalar>(t.gamma1.size(), Scalar(-1, 1))}) {
            TExtension ext = extend_t_hat(b, t, phases);
            RMatrix r = build_r(b, ext, sample_lambda(rs, space, 1), Scalar(0, 2));
            SparseTensor3 res = cybe_residual(b, r.tensor);
            CHECK_MESSAGE(res.is_zero(), cfg.type << " " << t.str());
            if (b.dim() <= 24)
                CHECK(dense_cybe(b, r.tensor) == densify(res, b.dim()));
        }
    }
}

TEST_CASE("CYBE fails when lambda violates the T-constraint")
{
    NormalizedBasis b = make_basis({'A', 2});
    const RootSystem &rs = b.rs();
    BDTriple t = validate_bd_triple(rs, {{0, 1}});
    TExtension ext = extend_t_hat(b, t);
    ContinuousParameter bad = LambdaCoordinates{2}.point(rs, {Rational(5), Rational(0)});
    CHECK_THROWS_AS(build_r(b, ext, bad, 2), AdmissibilityError);
    // Assemble the same tensor by hand to see the residual.
    SparseTensor2 r = bad.tensor(b);
    for (int a = 0; a < rs.num_positive(); ++a)
        r.add(rs.negate_index(a), a, 1);
    for (auto [a, c] : ext.order)
        r.add_scaled(SparseTensor2::wedge(b.e(rs.negate_index(a)), b.e(c)), ext.d(rs, a, c));
    SparseTensor3 res = cybe_residual(b, r);
    CHECK_FALSE(res.is_zero());
    CHECK(dense_cybe(b, r) == densify(res, b.dim()));
}

TEST_CASE("cobracket is a 1-cocycle")
{
    NormalizedBasis b = make_basis({'A', 3});
    const RootSystem &rs = b.rs();
    BDTriple t = validate_bd_triple(rs, {{0, 1}, {1, 2}});
    TExtension ext = extend_t_hat(b, t);
    RMatrix r = build_r(b, ext, sample_lambda(rs, continuous_parameter_space(rs, t), 0), 2);
    for (int x = 0; x < b.dim(); ++x)
        for (int y = x; y < b.dim(); ++y) {
            SparseTensor2 lhs = cobracket(b, r.tensor, b.bracket_basis(x, y));
            SparseTensor2 rhs = b.ad_tensor(b.e(x), cobracket(b, r.tensor, b.e(y))) -
                                b.ad_tensor(b.e(y), cobracket(b, r.tensor, b.e(x)));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("admissibility violations are named")
{
    NormalizedBasis b = make_basis({'A', 3});
    const RootSystem &rs = b.rs();
    BDTriple trivial;
    BDTriple arrow = validate_bd_triple(rs, {{0, 2}});
    BDTriple chain = validate_bd_triple(rs, {{0, 1}, {1, 2}});
    auto mu = diagram_automorphisms(rs).at(1);

    AdaptedForm vs = make_adapted_form(b, SigmaSpec::varsigma(rs));
    TExtension ext_chain = extend_t_hat(vs.basis, chain);
    ContinuousParameter lam_chain = sample_lambda(rs, admissible_lambda_space(rs, vs.spec, chain), 0);
    CHECK_FALSE(admissibility_violation(vs, ext_chain, lam_chain, 2).has_value());
    CHECK(*admissibility_violation(vs, ext_chain, lam_chain, Scalar(0, 2)) ==
          "t must be real for varsigma-type involutions");
    CHECK(*admissibility_violation(vs, ext_chain, lam_chain, 0) == "t must be nonzero");

    AdaptedForm oj = make_adapted_form(b, SigmaSpec::omega_J(rs, {1}));
    TExtension ext_arrow = extend_t_hat(oj.basis, arrow);
    // The T-constraint forces real parts that the omega reality condition forbids.
    CHECK(admissible_lambda_space(rs, oj.spec, arrow).empty);
    ContinuousParameter lam_arrow = sample_lambda(rs, continuous_parameter_space(rs, arrow), 0);
    CHECK(*admissibility_violation(oj, ext_arrow, lam_arrow, Scalar(0, 2)) == "omega_J requires the trivial triple");
    CHECK_THROWS_AS(build_r0(oj, ext_arrow, lam_arrow, Scalar(0, 2)), AdmissibilityError);

    AdaptedForm vm = make_adapted_form(b, SigmaSpec::varsigma_mu(mu));
    TExtension ext_vm = extend_t_hat(vm.basis, arrow);
    CHECK(*admissibility_violation(vm, ext_vm, sample_lambda(rs, continuous_parameter_space(rs, arrow), 0),
                                   2) == "the triple is not mu-stable");

    AdaptedForm om = make_adapted_form(b, SigmaSpec::omega_mu_J(mu, {}));
    TExtension ext_om = extend_t_hat(om.basis, trivial);
    // A real antisymmetric part breaks the omega reality condition.
    ContinuousParameter real_lam = LambdaCoordinates{3}.point(rs, {1, 0, 0, 0, 0, 0});
    CHECK(*admissibility_violation(om, ext_om, real_lam, Scalar(0, 2)) ==
          "lambda violates the reality condition of sigma");
    ContinuousParameter ok = sample_lambda(rs, admissible_lambda_space(rs, om.spec, trivial), 2);
    CHECK_FALSE(admissibility_violation(om, ext_om, ok, Scalar(0, 2)).has_value());
}

TEST_CASE("admissible lambda spaces keep r0 fixed by sigma")
{
    for (DynkinType ty : {DynkinType{'A', 2}, DynkinType{'A', 3}, DynkinType{'B', 2}, DynkinType{'D', 4}}) {
        NormalizedBasis b = make_basis(ty);
        const RootSystem &rs = b.rs();
        for (const SigmaSpec &spec : enumerate_sigma_specs(rs)) {
            AdaptedForm form = make_adapted_form(b, spec);
            std::vector<BDTriple> triples;
            if (spec.shape() == "varsigma")
                triples = enumerate_bd_triples(rs);
            else if (spec.shape() == "varsigma_mu")
                triples = enumerate_bd_triples(rs, Stability::MuStable, &spec.mu);
            else
                triples = {BDTriple{}};
            for (const BDTriple &t : triples) {
                AffineSolutionSpace space = admissible_lambda_space(rs, spec, t);
                REQUIRE_FALSE(space.empty);
                TExtension ext = extend_t_hat(form.basis, t);
                for (int seed = 0; seed < 2; ++seed) {
                    auto why = admissibility_violation(form, ext, sample_lambda(rs, space, seed), default_t(spec));
                    CHECK_MESSAGE(!why.has_value(), ty.name() << " " << spec.shape() << " " << t.str() << ": "
                                                              << why.value_or(""));
                }
            }
        }
    }
}
