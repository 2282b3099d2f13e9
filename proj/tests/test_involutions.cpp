#include "doctest.h"

#include "bdc/involutions.hpp"

using namespace bdc;

namespace
{

std::vector<DynkinType> types_up_to_rank4()
{
    return {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'B', 4}, {'C', 3},
            {'C', 4}, {'D', 4}, {'F', 4}, {'G', 2}};
}

/// sigma(e_a) read as (target index, coefficient).
std::pair<int, Scalar> image_of(const ConjLinearMap &m, int k)
{
    const SparseVec &v = m.apply_basis(k);
    REQUIRE(v.size() == 1);
    return *v.entries().begin();
}

std::string spec_name(const SigmaSpec &s)
{
    std::string out = s.shape() + " mu=";
    for (int p : s.mu.perm)
        out += std::to_string(p);
    out += " J=";
    for (int j : s.J)
        out += std::to_string(j);
    return out;
}

}  // namespace

TEST_CASE("chi_tilde closed formula examples")
{
    RootSystem a2({'A', 2});
    CHECK(chi_tilde(a2, SigmaSpec::omega_J(a2, {0}), {1, 0}) == 1);
    CHECK(chi_tilde(a2, SigmaSpec::omega_J(a2, {0}), {0, 1}) == 0);
    CHECK(chi_tilde(a2, SigmaSpec::omega_J(a2, {0}), {1, 1}) == 0);
    CHECK(chi_tilde(a2, SigmaSpec::omega_J(a2, {0}), {-1, -1}) == 0);
    RootSystem a3({'A', 3});
    auto mu = diagram_automorphisms(a3).at(1);
    CHECK(chi_tilde(a3, SigmaSpec::omega_mu_J(mu, {1}), {1, 1, 1}) == 1);
    CHECK_THROWS_AS(chi_tilde(a2, SigmaSpec::varsigma(a2), {1, 0}), InputError);
}

TEST_CASE("chi_tilde is invariant under negation and mu")
{
    for (const DynkinType &t : types_up_to_rank4()) {
        RootSystem rs(t);
        for (const SigmaSpec &spec : enumerate_sigma_specs(rs)) {
            if (!spec.is_omega())
                continue;
            for (int a = 0; a < rs.num_roots(); ++a) {
                int x = chi_tilde(rs, spec, rs.root(a));
                CHECK(x == chi_tilde(rs, spec, rs.root(rs.negate_index(a))));
                CHECK(x == chi_tilde(rs, spec, extend_automorphism(rs, spec.mu, rs.root(a))));
            }
        }
    }
}

TEST_CASE("spec validation")
{
    RootSystem a3({'A', 3});
    auto mu = diagram_automorphisms(a3).at(1);
    CHECK_THROWS_AS(SigmaSpec::omega_mu_J(mu, {0}).validate(a3), InputError);
    CHECK_NOTHROW(SigmaSpec::omega_mu_J(mu, {1}).validate(a3));
    CHECK_THROWS_AS(SigmaSpec::varsigma_mu(DiagramAutomorphism{{1, 0, 2}}).validate(a3), InputError);
    CHECK_THROWS_AS(SigmaSpec::omega_J(a3, {5}).validate(a3), InputError);
    CHECK(SigmaSpec::varsigma(a3).shape() == "varsigma");
    CHECK(SigmaSpec::omega_mu_J(mu, {}).shape() == "omega_mu_J");
    // A3: 2 varsigma specs, 2^3 omega_J and 2^1 omega_mu_J.
    CHECK(enumerate_sigma_specs(a3).size() == 12);
}

TEST_CASE("varsigma fixes root vectors and conjugates scalars")
{
    NormalizedBasis b = make_basis({'A', 2});
    ConjLinearMap s = build_sigma(b, SigmaSpec::varsigma(b.rs()));
    for (int a = 0; a < b.num_roots(); ++a) {
        CHECK(s.apply(b.e(a)) == b.e(a));
        CHECK(s.apply(b.e(a) * Scalar::i()) == b.e(a) * -Scalar::i());
    }
}

TEST_CASE("omega sends every e_alpha to -e_{-alpha} in the Chevalley scaling")
{
    for (const DynkinType &t : types_up_to_rank4()) {
        NormalizedBasis b = make_basis(t);
        const RootSystem &rs = b.rs();
        ConjLinearMap w = build_omega(b);
        for (int a = 0; a < rs.num_positive(); ++a) {
            // Chevalley vectors E_a = e_a and E_{-a} = e_{-a} / q.
            const Scalar q(rs.half_norm(a));
            CHECK(w.apply(b.e(a)) == b.e(rs.negate_index(a)) * (Scalar(-1) / q));
            CHECK(w.apply(b.e(rs.negate_index(a))) == b.e(a) * -q);
        }
        for (int i = 0; i < rs.rank(); ++i)
            CHECK(w.apply(b.h(i)) == -b.h(i));
    }
}

TEST_CASE("sigma and theta are involutive Lie maps for every spec up to rank 4")
{
    for (const DynkinType &t : types_up_to_rank4()) {
        NormalizedBasis base = make_basis(t);
        for (const SigmaSpec &spec : enumerate_sigma_specs(base.rs())) {
            CAPTURE(t.name());
            CAPTURE(spec_name(spec));
            AdaptedForm f = make_adapted_form(base, spec);
            CHECK(f.sigma.conjugates_scalars());
            CHECK_FALSE(f.theta.conjugates_scalars());
            CHECK(f.sigma.compose(f.sigma).is_identity());
            CHECK(f.theta.compose(f.theta).is_identity());
            CHECK(f.theta.compose(f.sigma) == f.sigma.compose(f.theta));
            CHECK(f.omega.compose(f.sigma) == f.sigma.compose(f.omega));
            CHECK(is_lie_map(f.basis, f.sigma, true));
            CHECK(is_lie_map(f.basis, f.theta, true));
            CHECK(f.k.dim() + f.p.dim() == static_cast<std::size_t>(f.basis.dim()));
        }
    }
}

TEST_CASE("adapted varsigma_mu maps e_alpha to e_{mu alpha} and h to h_mu")
{
    for (DynkinType t : {DynkinType{'A', 2}, DynkinType{'A', 3}, DynkinType{'A', 4}, DynkinType{'D', 4},
                         DynkinType{'E', 6}}) {
        NormalizedBasis base = make_basis(t);
        const RootSystem &rs = base.rs();
        for (const auto &mu : diagram_automorphisms(rs)) {
            AdaptedForm f = make_adapted_form(base, SigmaSpec::varsigma_mu(mu));
            for (int a = 0; a < rs.num_roots(); ++a)
                CHECK(f.sigma.apply(f.basis.e(a)) == f.basis.e(extend_automorphism_index(rs, mu, a)));
            for (int i = 0; i < rs.rank(); ++i)
                CHECK(f.sigma.apply(f.basis.h(i)) == f.basis.h(mu(i)));
        }
    }
}

TEST_CASE("A2 swap: the adapted basis needs an imaginary phase on the highest root")
{
    NormalizedBasis base = make_basis({'A', 2});
    auto mu = diagram_automorphisms(base.rs()).at(1);
    AdaptedForm f = make_adapted_form(base, SigmaSpec::varsigma_mu(mu));
    CHECK(f.basis.frame().at(2) == Scalar::i());
    CHECK_FALSE(f.basis.n(0, 1).is_real());
}

TEST_CASE("omega-type normal form: signs on root vectors and conjugated structure constants")
{
    for (const DynkinType &t : types_up_to_rank4()) {
        NormalizedBasis base = make_basis(t);
        const RootSystem &rs = base.rs();
        for (const SigmaSpec &spec : enumerate_sigma_specs(rs)) {
            if (!spec.is_omega())
                continue;
            CAPTURE(t.name());
            CAPTURE(spec_name(spec));
            AdaptedForm f = make_adapted_form(base, spec);
            const NormalizedBasis &b = f.basis;
            for (int a = 0; a < rs.num_roots(); ++a) {
                const int ma = extend_automorphism_index(rs, spec.mu, a);
                auto [target, c] = image_of(f.sigma, a);
                CHECK(target == rs.negate_index(ma));
                // sigma(e_alpha) = (-1)^chi e_{-mu alpha} up to the Chevalley scale q^{-1} or q.
                Scalar q(rs.half_norm(a));
                Scalar expected = rs.is_positive_index(a) ? Scalar(1) / q : q;
                CHECK(c == (f.chi_of(a) ? -expected : expected));
                CHECK(f.chi_of(a) == f.chi_of(rs.negate_index(a)));
                CHECK(f.chi_of(a) == f.chi_of(ma));
            }
            for (int i = 0; i < rs.rank(); ++i)
                CHECK(f.sigma.apply(b.h(i)) == -b.h(spec.mu(i)));
            // Conjugated structure constants: sign * N_{-mu a,-mu b} = sign' * conj(N_{a,b}) * F with F the Chevalley rescaling.
            for (int a = 0; a < rs.num_roots(); ++a)
                for (int c = 0; c < rs.num_roots(); ++c) {
                    const int s = rs.sum_index(a, c);
                    if (s < 0)
                        continue;
                    const int na = rs.negate_index(extend_automorphism_index(rs, spec.mu, a));
                    const int nc = rs.negate_index(extend_automorphism_index(rs, spec.mu, c));
                    auto scale = [&](int x) {
                        Scalar q(rs.half_norm(x));
                        return rs.is_positive_index(x) ? Scalar(1) / q : q;
                    };
                    Scalar lhs = b.n(na, nc) * scale(a) * scale(c);
                    Scalar rhs = b.n(a, c).conj() * scale(s);
                    int sign = (f.chi_of(a) + f.chi_of(c) + f.chi_of(s)) % 2 ? -1 : 1;
                    CHECK(lhs == rhs * Scalar(sign));
                }
        }
    }
}

TEST_CASE("closed sign formula agrees with sigma whenever mu is the identity")
{
    for (const DynkinType &t : types_up_to_rank4()) {
        NormalizedBasis base = make_basis(t);
        for (const SigmaSpec &spec : enumerate_sigma_specs(base.rs())) {
            if (!spec.is_omega() || !spec.mu.is_identity())
                continue;
            CAPTURE(t.name());
            CAPTURE(spec_name(spec));
            CHECK(make_adapted_form(base, spec).chi_mismatch.empty());
        }
    }
}

TEST_CASE("theta examples")
{
    NormalizedBasis base = make_basis({'A', 2});
    const RootSystem &rs = base.rs();
    SUBCASE("varsigma: theta coincides with omega")
    {
        AdaptedForm f = make_adapted_form(base, SigmaSpec::varsigma(rs));
        for (int k = 0; k < f.basis.dim(); ++k)
            CHECK(f.theta.apply_basis(k) == f.omega.apply_basis(k));
    }
    SUBCASE("omega_J fixes e_gamma when chi = 1")
    {
        AdaptedForm f = make_adapted_form(base, SigmaSpec::omega_J(rs, {1}));
        for (int a = 0; a < rs.num_roots(); ++a) {
            const int sign = f.chi_of(a) ? 1 : -1;
            CHECK(f.theta.apply(f.basis.e(a)) == f.basis.e(a) * Scalar(sign));
        }
        for (int i = 0; i < rs.rank(); ++i)
            CHECK(f.theta.apply(f.basis.h(i)) == f.basis.h(i));
    }
}

TEST_CASE("isotropy algebra dimensions")
{
    NormalizedBasis a2 = make_basis({'A', 2});
    const RootSystem &rs = a2.rs();
    CHECK(make_adapted_form(a2, SigmaSpec::varsigma(rs)).k.dim() == 3);
    CHECK(make_adapted_form(a2, SigmaSpec::omega_J(rs, {1})).k.dim() == 4);
    // Compact form: omega = omega_{id, Delta} gives theta = id.
    CHECK(make_adapted_form(a2, SigmaSpec::omega(rs)).k.dim() == 8);
    auto mu = diagram_automorphisms(rs).at(1);
    // varsigma_mu gives su(2,1) with isotropy u(2).
    CHECK(make_adapted_form(a2, SigmaSpec::varsigma_mu(mu)).k.dim() == 4);
    // omega_{mu, empty} gives sl(3, R) with isotropy so(3).
    AdaptedForm w = make_adapted_form(a2, SigmaSpec::omega_mu_J(mu, {}));
    CHECK(w.k.dim() == 3);
}

TEST_CASE("isotropy generator span equals the fixed space of theta and is closed")
{
    for (const DynkinType &t : types_up_to_rank4()) {
        NormalizedBasis base = make_basis(t);
        for (const SigmaSpec &spec : enumerate_sigma_specs(base.rs())) {
            CAPTURE(t.name());
            CAPTURE(spec_name(spec));
            AdaptedForm f = make_adapted_form(base, spec);
            const Subspace fixed = eigenspace(f.theta, 1);
            CHECK(f.k.closed_basis.contains(fixed));
            CHECK(fixed.contains(f.k.closed_basis));
            const auto basis = f.k.closed_basis.basis();
            for (std::size_t x = 0; x < basis.size(); ++x)
                for (std::size_t y = x + 1; y < basis.size(); ++y)
                    CHECK(f.k.closed_basis.contains(f.basis.bracket(basis[x], basis[y])));
        }
    }
}

TEST_CASE("compact real form spanned by i h, e - e_-, i(e + e_-)")
{
    for (const DynkinType &t : types_up_to_rank4())
        CHECK(compact_form_check(make_basis(t)));
    NormalizedBasis a2 = make_basis({'A', 2});
    ConjLinearMap w = build_omega(a2);
    CHECK(w.apply(a2.h(0) * Scalar::i()) == a2.h(0) * Scalar::i());
}

TEST_CASE("linear maps on tensor slots; conjugate-linear ones are rejected")
{
    NormalizedBasis b = make_basis({'A', 2});
    AdaptedForm f = make_adapted_form(b, SigmaSpec::omega_J(b.rs(), {0}));
    SparseTensor2 t = SparseTensor2::wedge(b.e(0), b.e(3)) * Scalar::i();
    CHECK(f.theta.apply_slot(f.theta.apply_slot(t, 0), 1) == f.theta.apply_tensor(t));
    CHECK_THROWS_AS(f.sigma.apply_slot(t, 0), InputError);
    CHECK(f.sigma.apply_tensor(f.sigma.apply_tensor(t)) == t);
}

TEST_CASE("A2 omega_{mu, empty}: the closed sign formula disagrees on the highest root")
{
    NormalizedBasis a2 = make_basis({'A', 2});
    const RootSystem &rs = a2.rs();
    auto mu = diagram_automorphisms(rs).at(1);
    SigmaSpec spec = SigmaSpec::omega_mu_J(mu, {});
    AdaptedForm w = make_adapted_form(a2, spec);
    const int top = rs.index_of({1, 1});
    CHECK(chi_tilde(rs, spec, rs.root(top)) == 1);
    CHECK(w.chi_of(top) == 0);
    CHECK(w.chi_mismatch == std::vector<int>{top});
    // With the formula's sign, e_{+-theta} would join k and give dim 5, which is not a compact subalgebra of sl(3).
    CHECK(w.k.dim() == 3);
}
