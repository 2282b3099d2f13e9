#include "bdc/involutions.hpp"

#include <algorithm>
#include <set>

namespace bdc
{

SigmaSpec SigmaSpec::varsigma(const RootSystem &rs)
{
    return varsigma_mu(identity_automorphism(rs.rank()));
}

SigmaSpec SigmaSpec::varsigma_mu(const DiagramAutomorphism &mu)
{
    SigmaSpec s;
    s.kind = SigmaKind::VarSigma;
    s.mu = mu;
    return s;
}

SigmaSpec SigmaSpec::omega(const RootSystem &rs)
{
    std::vector<int> all(rs.rank());
    for (int i = 0; i < rs.rank(); ++i)
        all[i] = i;
    return omega_J(rs, all);
}

SigmaSpec SigmaSpec::omega_J(const RootSystem &rs, std::vector<int> J)
{
    return omega_mu_J(identity_automorphism(rs.rank()), std::move(J));
}

SigmaSpec SigmaSpec::omega_mu_J(const DiagramAutomorphism &mu, std::vector<int> J)
{
    SigmaSpec s;
    s.kind = SigmaKind::OmegaJ;
    s.mu = mu;
    std::sort(J.begin(), J.end());
    J.erase(std::unique(J.begin(), J.end()), J.end());
    s.J = std::move(J);
    return s;
}

std::string SigmaSpec::shape() const
{
    const bool id = mu.is_identity();
    if (kind == SigmaKind::VarSigma)
        return id ? "varsigma" : "varsigma_mu";
    return id ? "omega_J" : "omega_mu_J";
}

bool SigmaSpec::in_J(int i) const
{
    return std::binary_search(J.begin(), J.end(), i);
}

void SigmaSpec::validate(const RootSystem &rs) const
{
    if (static_cast<int>(mu.perm.size()) != rs.rank())
        throw InputError("diagram automorphism has the wrong size for " + rs.type().name());
    const auto autos = diagram_automorphisms(rs);
    if (std::find(autos.begin(), autos.end(), mu) == autos.end())
        throw InputError("permutation is not an involutive diagram automorphism of " + rs.type().name());
    if (kind != SigmaKind::OmegaJ)
        return;
    for (int j : J) {
        if (j < 0 || j >= rs.rank())
            throw InputError("painted root label out of range");
        if (mu(j) != j)
            throw InputError("painted roots must be fixed by the diagram automorphism");
    }
}

std::vector<SigmaSpec> enumerate_sigma_specs(const RootSystem &rs)
{
    const auto autos = diagram_automorphisms(rs);
    std::vector<SigmaSpec> out;
    for (const auto &mu : autos)
        out.push_back(SigmaSpec::varsigma_mu(mu));
    for (const auto &mu : autos) {
        std::vector<int> fixed;
        for (int i = 0; i < rs.rank(); ++i)
            if (mu(i) == i)
                fixed.push_back(i);
        for (unsigned mask = 0; mask < (1u << fixed.size()); ++mask) {
            std::vector<int> J;
            for (std::size_t k = 0; k < fixed.size(); ++k)
                if (mask & (1u << k))
                    J.push_back(fixed[k]);
            out.push_back(SigmaSpec::omega_mu_J(mu, J));
        }
    }
    return out;
}

ConjLinearMap::ConjLinearMap(std::vector<SparseVec> images, bool conjugates_scalars)
    : images_(std::move(images)), conj_(conjugates_scalars)
{
}

SparseVec ConjLinearMap::apply(const SparseVec &v) const
{
    SparseVec out;
    for (const auto &[k, c] : v.entries())
        out.add_scaled(images_.at(k), conj_ ? c.conj() : c);
    return out;
}

SparseTensor2 ConjLinearMap::apply_tensor(const SparseTensor2 &t) const
{
    auto img = [this](int k) { return images_.at(k); };
    return (conj_ ? t.conj() : t).map_slots(img, img);
}

SparseTensor2 ConjLinearMap::apply_slot(const SparseTensor2 &t, int slot) const
{
    if (conj_)
        throw InputError("a conjugate-linear map cannot act on a single tensor slot");
    auto img = [this](int k) { return images_.at(k); };
    auto id = [](int k) { return SparseVec::unit(k); };
    return slot == 0 ? t.map_slots(img, id) : t.map_slots(id, img);
}

ConjLinearMap ConjLinearMap::compose(const ConjLinearMap &inner) const
{
    std::vector<SparseVec> out(inner.images_.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = apply(inner.images_[k]);
    return ConjLinearMap(std::move(out), conj_ != inner.conj_);
}

bool ConjLinearMap::is_identity() const
{
    if (conj_)
        return false;
    for (int k = 0; k < dim(); ++k)
        if (images_[k] != SparseVec::unit(k))
            return false;
    return true;
}

ConjLinearMap identity_map(int dim)
{
    std::vector<SparseVec> images(dim);
    for (int k = 0; k < dim; ++k)
        images[k] = SparseVec::unit(k);
    return ConjLinearMap(std::move(images), false);
}

namespace
{

/// Smallest simple label i with xi - alpha_i a positive root, and that remainder.
std::pair<int, int> simple_split(const RootSystem &rs, int xi)
{
    for (int i = 0; i < rs.rank(); ++i) {
        int rest = rs.sum_index(xi, rs.negate_index(rs.simple_index(i)));
        if (rest >= 0 && rs.is_positive_index(rest))
            return {rs.simple_index(i), rest};
    }
    throw InternalError("positive root has no simple decomposition");
}

/// The single basis index and coefficient of a one-term vector.
std::pair<int, Scalar> single_term(const SparseVec &v)
{
    if (v.size() != 1)
        throw InternalError("expected an image proportional to a basis vector");
    const auto &[k, c] = *v.entries().begin();
    return {k, c};
}

}  // namespace

ConjLinearMap extend_from_generators(const NormalizedBasis &b, const std::vector<SparseVec> &pos_images,
                                     const std::vector<SparseVec> &neg_images, bool conjugates_scalars)
{
    const RootSystem &rs = b.rs();
    const int np = rs.num_positive();
    if (static_cast<int>(pos_images.size()) != rs.rank() || static_cast<int>(neg_images.size()) != rs.rank())
        throw InputError("one image per simple root is required");
    std::vector<SparseVec> img(b.dim());
    for (int i = 0; i < rs.rank(); ++i) {
        img[rs.simple_index(i)] = pos_images[i];
        img[rs.negate_index(rs.simple_index(i))] = neg_images[i];
        img[b.cartan_index(i)] = b.bracket(pos_images[i], neg_images[i]);
    }
    auto scale = [&](const Scalar &n) {
        Scalar s = Scalar(1) / n;
        return conjugates_scalars ? s.conj() : s;
    };
    // Positive roots are stored by increasing height, so both factors are known.
    for (int xi = 0; xi < np; ++xi) {
        if (height(rs.root(xi)) == 1)
            continue;
        auto [a, rest] = simple_split(rs, xi);
        img[xi] = b.bracket(img[a], img[rest]) * scale(b.n(a, rest));
        const int na = rs.negate_index(a), nr = rs.negate_index(rest);
        img[rs.negate_index(xi)] = b.bracket(img[na], img[nr]) * scale(b.n(na, nr));
    }
    return ConjLinearMap(std::move(img), conjugates_scalars);
}

bool is_lie_map(const NormalizedBasis &b, const ConjLinearMap &phi, bool exhaustive)
{
    const RootSystem &rs = b.rs();
    std::vector<int> left;
    if (exhaustive) {
        for (int x = 0; x < b.dim(); ++x)
            left.push_back(x);
    } else {
        for (int i = 0; i < rs.rank(); ++i) {
            left.push_back(rs.simple_index(i));
            left.push_back(rs.negate_index(rs.simple_index(i)));
        }
    }
    for (int x : left)
        for (int y = 0; y < b.dim(); ++y)
            if (phi.apply(b.bracket_basis(x, y)) != b.bracket(phi.apply_basis(x), phi.apply_basis(y)))
                return false;
    return true;
}

int chi_tilde(const RootSystem &rs, const SigmaSpec &spec, const Root &alpha)
{
    if (!spec.is_omega())
        throw InputError("the sign function is defined only for omega-type involutions");
    if (rs.index_of(alpha) < 0)
        throw InputError("chi_tilde needs a root");
    int in_j = 0, len = 0;
    for (int i = 0; i < rs.rank(); ++i) {
        const int c = std::abs(alpha[i]);
        len += c;
        if (spec.in_J(i))
            in_j += c;
    }
    return (in_j + len + 1) % 2;
}

ConjLinearMap build_sigma(const NormalizedBasis &b, const SigmaSpec &spec, bool exhaustive)
{
    const RootSystem &rs = b.rs();
    spec.validate(rs);
    std::vector<SparseVec> pos(rs.rank()), neg(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) {
        const int target = rs.simple_index(spec.mu(i));
        if (spec.kind == SigmaKind::VarSigma) {
            pos[i] = SparseVec::unit(target);
            neg[i] = SparseVec::unit(rs.negate_index(target));
        } else {
            const Rational q = rs.half_norm(rs.simple_index(i));
            const int s = spec.in_J(i) ? -1 : 1;
            pos[i] = SparseVec::unit(rs.negate_index(target), Scalar(Rational(s) / q));
            neg[i] = SparseVec::unit(target, Scalar(Rational(s) * q));
        }
    }
    ConjLinearMap sigma = extend_from_generators(b, pos, neg, true);
    if (!sigma.compose(sigma).is_identity())
        throw InternalError("constructed sigma is not an involution");
    if (!is_lie_map(b, sigma, exhaustive))
        throw InternalError("constructed sigma does not respect brackets");
    return sigma;
}

ConjLinearMap build_omega(const NormalizedBasis &b)
{
    return build_sigma(b, SigmaSpec::omega(b.rs()));
}

ConjLinearMap build_theta(const NormalizedBasis &b, const SigmaSpec &spec, bool exhaustive)
{
    return build_omega(b).compose(build_sigma(b, spec, exhaustive));
}

Subspace eigenspace(const ConjLinearMap &theta, int ev)
{
    if (theta.conjugates_scalars())
        throw InputError("eigenspaces are taken for linear maps only");
    if (ev != 1 && ev != -1)
        throw InputError("involution eigenvalues are +1 and -1");
    // For an involution the eigenspace is the image of id + ev * theta.
    Subspace s;
    for (int k = 0; k < theta.dim(); ++k)
        s.insert(SparseVec::unit(k) + theta.apply_basis(k) * Scalar(ev));
    return s;
}

std::size_t real_rank(const std::vector<SparseVec> &vectors, int dim)
{
    RationalMatrix rows;
    rows.reserve(vectors.size());
    for (const SparseVec &v : vectors) {
        RationalVector row(2 * dim, 0);
        for (const auto &[k, c] : v.entries()) {
            row.at(k) = c.re();
            row.at(dim + k) = c.im();
        }
        rows.push_back(std::move(row));
    }
    return matrix_rank(rows, 2 * dim);
}

int AdaptedForm::chi_of(int root_index) const
{
    if (chi.empty())
        throw InputError("sign function requested for a varsigma-type involution");
    const int np = basis.rs().num_positive();
    return chi.at(root_index < np ? root_index : root_index - np);
}

namespace
{

/// Factors f with conj(f)/f = target for a unimodular Gaussian target.
Scalar unimodular_phase(const Scalar &target)
{
    for (Scalar f : {Scalar(1), Scalar::i(), Scalar(1, 1), Scalar(1, -1)})
        if (f.conj() / f == target)
            return f;
    throw InternalError("no Gaussian phase solves the fixed-root normalization");
}

std::vector<Scalar> frame_factors(const NormalizedBasis &b, const SigmaSpec &spec, const ConjLinearMap &sigma)
{
    const RootSystem &rs = b.rs();
    const int np = rs.num_positive();
    std::vector<Scalar> f(np);
    std::vector<bool> done(np, false);
    for (int a = 0; a < np; ++a) {
        if (done[a])
            continue;
        auto [target, c] = single_term(sigma.apply_basis(a));
        const int ma = extend_automorphism_index(rs, spec.mu, a);
        const Rational q = rs.half_norm(a);
        if (spec.kind == SigmaKind::VarSigma) {
            // sigma(f_a e_a) = conj(f_a) c / f_{mu a} e'_{mu a}
            if (ma == a)
                f[a] = unimodular_phase(Scalar(1) / c);
            else {
                f[a] = Scalar(1);
                f[ma] = c;
            }
        } else {
            // sigma(f_a e_a) = conj(f_a) c f_{mu a} e'_{-mu a}
            if (ma == a)
                f[a] = Scalar(1);
            else {
                const int sign = chi_tilde(rs, spec, rs.root(a)) ? -1 : 1;
                f[a] = Scalar(1);
                f[ma] = Scalar(Rational(sign) / q) / c;
            }
        }
        (void)target;
        done[a] = done[ma] = true;
    }
    for (const Scalar &x : f)
        if (x.norm() != 1)
            throw InternalError("adapted frame is not unimodular");
    return f;
}

}  // namespace

std::vector<SparseVec> isotropy_generators(const AdaptedForm &form)
{
    const NormalizedBasis &b = form.basis;
    const RootSystem &rs = b.rs();
    const SigmaSpec &spec = form.spec;
    const int np = rs.num_positive();
    std::vector<SparseVec> gens;
    auto push = [&](const SparseVec &v) {
        if (!v.is_zero())
            gens.push_back(v);
    };
    if (spec.kind == SigmaKind::VarSigma) {
        for (int i = 0; i < rs.rank(); ++i)
            push(b.h(i) - b.h(spec.mu(i)));
        // e_alpha - e_{-mu alpha} in the Chevalley-scaled form q e_alpha - e_{-mu alpha}.
        for (int a = 0; a < np; ++a) {
            const int ma = extend_automorphism_index(rs, spec.mu, a);
            push(b.e(a) * Scalar(rs.half_norm(a)) - b.e(rs.negate_index(ma)));
        }
        return gens;
    }
    if (spec.mu.is_identity()) {
        for (int i = 0; i < rs.rank(); ++i)
            push(b.h(i));
        for (int a = 0; a < rs.num_roots(); ++a)
            if (form.chi_of(a) == 1)
                push(b.e(a));
        return gens;
    }
    for (int i = 0; i < rs.rank(); ++i)
        push(b.h(i) + b.h(spec.mu(i)));
    for (int a = 0; a < rs.num_roots(); ++a) {
        const int ma = extend_automorphism_index(rs, spec.mu, a);
        const int sign = form.chi_of(a) ? -1 : 1;
        push(b.e(a) - b.e(ma) * Scalar(sign));
    }
    return gens;
}

Subalgebra isotropy_algebra(const AdaptedForm &form)
{
    Subalgebra k;
    k.generators = isotropy_generators(form);
    k.closed_basis = Subspace(k.generators);
    const Subspace fixed = eigenspace(form.theta, 1);
    if (!k.closed_basis.contains(fixed) || !fixed.contains(k.closed_basis))
        throw InternalError("isotropy generators do not span the fixed space of theta");
    for (std::size_t x = 0; x < k.generators.size(); ++x)
        for (std::size_t y = x + 1; y < k.generators.size(); ++y)
            if (!k.closed_basis.contains(form.basis.bracket(k.generators[x], k.generators[y])))
                throw InternalError("isotropy algebra is not closed under brackets");
    return k;
}

AdaptedForm make_adapted_form(const NormalizedBasis &base, const SigmaSpec &spec, bool exhaustive)
{
    const RootSystem &rs = base.rs();
    spec.validate(rs);
    const ConjLinearMap raw = build_sigma(base, spec);
    AdaptedForm form{spec, base.rescaled(frame_factors(base, spec, raw)), {}, {}, {}, {}, {}, {}, {}};
    form.sigma = build_sigma(form.basis, spec, exhaustive);
    form.omega = build_omega(form.basis);
    form.theta = form.omega.compose(form.sigma);

    const int np = rs.num_positive();
    for (int a = 0; a < np; ++a) {
        const int ma = extend_automorphism_index(rs, spec.mu, a);
        auto [target, c] = single_term(form.sigma.apply_basis(a));
        if (spec.kind == SigmaKind::VarSigma) {
            if (target != ma || c != Scalar(1))
                throw InternalError("adapted varsigma is not in normal form");
            continue;
        }
        const Rational q = rs.half_norm(a);
        if (target != rs.negate_index(ma) || (c != Scalar(Rational(1) / q) && c != Scalar(Rational(-1) / q)))
            throw InternalError("adapted omega-type involution is not in normal form");
        const int observed = c.re() < 0 ? 1 : 0;
        form.chi.push_back(observed);
        if (observed != chi_tilde(rs, spec, rs.root(a)))
            form.chi_mismatch.push_back(a);
    }
    if (exhaustive) {
        if (!form.theta.compose(form.theta).is_identity())
            throw InternalError("theta is not an involution");
        if (!(form.theta.compose(form.sigma) == form.sigma.compose(form.theta)))
            throw InternalError("theta and sigma do not commute");
        if (!is_lie_map(form.basis, form.theta, true))
            throw InternalError("theta does not respect brackets");
    }
    form.k = isotropy_algebra(form);
    form.p = eigenspace(form.theta, -1);
    return form;
}

bool compact_form_check(const NormalizedBasis &b)
{
    const RootSystem &rs = b.rs();
    const ConjLinearMap omega = build_omega(b);
    std::vector<SparseVec> span;
    for (int i = 0; i < rs.rank(); ++i)
        span.push_back(b.h(i) * Scalar::i());
    // With e_{-alpha} scaled by q relative to the Chevalley vector, e_alpha - e_{-alpha} reads q e_alpha - e_{-alpha}.
    for (int a = 0; a < rs.num_positive(); ++a) {
        const Scalar q(rs.half_norm(a));
        const SparseVec e = b.e(a) * q, f = b.e(rs.negate_index(a));
        span.push_back(e - f);
        span.push_back((e + f) * Scalar::i());
    }
    for (const SparseVec &v : span)
        if (omega.apply(v) != v)
            return false;
    std::vector<SparseVec> doubled = span;
    for (const SparseVec &v : span)
        doubled.push_back(v * Scalar::i());
    const auto n = static_cast<std::size_t>(b.dim());
    return real_rank(span, b.dim()) == n && real_rank(doubled, b.dim()) == 2 * n;
}

}  // namespace bdc
