#include "bdc/double.hpp"

namespace bdc
{

Scalar BilinearForm::operator()(const SparseVec &u, const SparseVec &v) const
{
    Scalar s;
    for (const auto &[i, a] : u.entries())
        for (const auto &[j, c] : v.entries()) {
            const Scalar &g = gram.at(i).at(j);
            if (!g.is_zero())
                s += a * c * g;
        }
    return s;
}

bool BilinearForm::is_nondegenerate() const
{
    Subspace rows;
    for (const auto &row : gram) {
        SparseVec v;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero())
                v.add(static_cast<int>(j), row[j]);
        rows.insert(v);
    }
    return static_cast<int>(rows.dim()) == dim();
}

SparseVec double_pair(const NormalizedBasis &b, const SparseVec &left, const SparseVec &right)
{
    SparseVec out = left;
    for (const auto &[k, c] : right.entries())
        out.add(k + b.dim(), c);
    return out;
}

SparseVec double_left(const NormalizedBasis &b, const SparseVec &u)
{
    SparseVec out;
    for (const auto &[k, c] : u.entries())
        if (k < b.dim())
            out.add(k, c);
    return out;
}

SparseVec double_right(const NormalizedBasis &b, const SparseVec &u)
{
    SparseVec out;
    for (const auto &[k, c] : u.entries())
        if (k >= b.dim())
            out.add(k - b.dim(), c);
    return out;
}

SparseVec double_bracket(const NormalizedBasis &b, const SparseVec &u, const SparseVec &v)
{
    return double_pair(b, b.bracket(double_left(b, u), double_left(b, v)),
                       b.bracket(double_right(b, u), double_right(b, v)));
}

BilinearForm double_form(const NormalizedBasis &b)
{
    const int n = b.dim();
    BilinearForm f{std::vector<std::vector<Scalar>>(2 * n, std::vector<Scalar>(2 * n))};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Scalar k = b.killing_basis(x, y);
            f.gram[x][y] = k;
            f.gram[n + x][n + y] = -k;
        }
    return f;
}

bool is_lagrangian(const std::vector<SparseVec> &spanning, const BilinearForm &form)
{
    if (!form.is_nondegenerate())
        throw InputError("the ambient bilinear form is degenerate");
    const Subspace span(spanning);
    if (2 * static_cast<int>(span.dim()) != form.dim())
        return false;
    const std::vector<SparseVec> basis = span.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j)
            if (!form(basis[i], basis[j]).is_zero())
                return false;
    return true;
}

bool is_closed_under(const std::vector<SparseVec> &spanning,
                     const std::function<SparseVec(const SparseVec &, const SparseVec &)> &bracket)
{
    const Subspace span(spanning);
    const std::vector<SparseVec> basis = span.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!span.contains(bracket(basis[i], basis[j])))
                return false;
    return true;
}

GraphSubalgebra graph_subalgebra(const NormalizedBasis &b, const ConjLinearMap &rho)
{
    if (rho.conjugates_scalars())
        throw InputError("rho must be linear");
    if (rho.dim() != b.dim())
        throw InputError("rho does not act on this Lie algebra");
    if (!is_lie_map(b, rho, true))
        throw InputError("rho is not a Lie algebra automorphism");
    for (int x = 0; x < b.dim(); ++x)
        for (int y = x; y < b.dim(); ++y)
            if (b.killing(rho.apply_basis(x), rho.apply_basis(y)) != b.killing_basis(x, y))
                throw InputError("rho does not preserve the Killing form");
    GraphSubalgebra g;
    for (int x = 0; x < b.dim(); ++x)
        g.spanning.push_back(double_pair(b, b.e(x), rho.apply_basis(x)));
    g.closed = is_closed_under(g.spanning, [&](const SparseVec &u, const SparseVec &v) {
        return double_bracket(b, u, v);
    });
    g.lagrangian = is_lagrangian(g.spanning, double_form(b));
    return g;
}

SparseVec realify(const SparseVec &v)
{
    SparseVec out;
    for (const auto &[k, c] : v.entries()) {
        if (sgn(c.re()) != 0)
            out.add(2 * k, Scalar(c.re()));
        if (sgn(c.im()) != 0)
            out.add(2 * k + 1, Scalar(c.im()));
    }
    return out;
}

SparseVec complexify(const SparseVec &real)
{
    SparseVec out;
    for (const auto &[k, c] : real.entries())
        out.add(k / 2, k % 2 == 0 ? c : c * Scalar::i());
    return out;
}

BilinearForm realified_form(const NormalizedBasis &b, const Scalar &t)
{
    if (t.is_zero())
        throw InputError("t must be nonzero");
    const int n = b.dim();
    const Scalar inv_t = Scalar(1) / t;
    const Scalar units[2] = {Scalar(1), Scalar::i()};
    BilinearForm f{std::vector<std::vector<Scalar>>(2 * n, std::vector<Scalar>(2 * n))};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Scalar k = b.killing_basis(x, y);
            if (k.is_zero())
                continue;
            for (int a = 0; a < 2; ++a)
                for (int c = 0; c < 2; ++c)
                    f.gram[2 * x + a][2 * y + c] = Scalar(2 * (units[a] * units[c] * k * inv_t).re());
        }
    return f;
}

namespace
{

/// Real matrix of phi on the coordinates of realify.
RationalMatrix real_matrix(const ConjLinearMap &phi)
{
    const int n = phi.dim();
    RationalMatrix m(2 * n, RationalVector(2 * n, 0));
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < 2; ++a) {
            const SparseVec image = realify(phi.apply(SparseVec::unit(k, a == 0 ? Scalar(1) : Scalar::i())));
            for (const auto &[row, c] : image.entries())
                m[row][2 * k + a] = c.re();
        }
    return m;
}

/// Real vectors x with phi_j x = sign_j x for every constraint j.
std::vector<SparseVec> real_joint_eigenspace(const std::vector<std::pair<const ConjLinearMap *, int>> &constraints)
{
    const int dim = 2 * constraints.front().first->dim();
    RationalMatrix rows;
    for (const auto &[phi, sign] : constraints) {
        RationalMatrix m = real_matrix(*phi);
        for (int i = 0; i < dim; ++i) {
            m[i][i] -= sign;
            rows.push_back(std::move(m[i]));
        }
    }
    const AffineSolutionSpace sol = solve_linear_system(rows, RationalVector(rows.size(), 0), dim);
    std::vector<SparseVec> out;
    for (const RationalVector &v : sol.basis) {
        SparseVec s;
        for (int i = 0; i < dim; ++i)
            if (sgn(v[i]) != 0)
                s.add(i, Scalar(v[i]));
        out.push_back(std::move(s));
    }
    return out;
}

bool same_span(const std::vector<SparseVec> &a, const std::vector<SparseVec> &b)
{
    const Subspace sa(a), sb(b);
    return sa.dim() == sb.dim() && sa.contains(sb);
}

}  // namespace

std::vector<SparseVec> real_fixed_space(const ConjLinearMap &phi)
{
    return real_joint_eigenspace({{&phi, 1}});
}

RealifiedFixedSpace realified_fixed_space(const AdaptedForm &form, const Scalar &t)
{
    if (!form.spec.is_omega())
        throw InputError("the realified double needs an omega-type real form");
    if (t.is_zero() || !t.is_imaginary())
        throw InputError("t must be purely imaginary for omega-type involutions");
    const NormalizedBasis &b = form.basis;
    const ConjLinearMap mu = form.theta.compose(form.sigma);

    RealifiedFixedSpace out;
    out.m = real_joint_eigenspace({{&mu, 1}});
    out.k0 = real_joint_eigenspace({{&form.sigma, 1}, {&form.theta, 1}});
    out.p0 = real_joint_eigenspace({{&form.sigma, 1}, {&form.theta, -1}});
    out.real_dim = out.m.size();

    const BilinearForm pairing = realified_form(b, t);
    out.isotropic = true;
    for (std::size_t i = 0; i < out.m.size() && out.isotropic; ++i)
        for (std::size_t j = i; j < out.m.size(); ++j)
            if (!pairing(out.m[i], out.m[j]).is_zero()) {
                out.isotropic = false;
                break;
            }
    out.lagrangian = is_lagrangian(out.m, pairing);

    out.meets_g0_in_k0 = same_span(real_joint_eigenspace({{&mu, 1}, {&form.sigma, 1}}), out.k0);

    std::vector<SparseVec> split = out.k0;
    for (const SparseVec &p : out.p0)
        split.push_back(realify(complexify(p) * Scalar::i()));
    out.splits_as_k0_ip0 = split.size() == out.m.size() && same_span(split, out.m);

    out.closed = is_closed_under(out.m, [&](const SparseVec &u, const SparseVec &v) {
        return realify(b.bracket(complexify(u), complexify(v)));
    });
    return out;
}

std::vector<SparseVec> annihilator(const Subspace &span, int dim)
{
    std::vector<int> pivots = span.pivots();
    std::vector<SparseVec> rows = span.basis();
    // Back substitution to reduced echelon form.
    for (std::size_t q = rows.size(); q-- > 0;)
        for (std::size_t p = 0; p < q; ++p) {
            const Scalar c = rows[p].get(pivots[q]);
            if (!c.is_zero())
                rows[p].add_scaled(rows[q], -c);
        }
    std::vector<bool> is_pivot(dim, false);
    for (int p : pivots)
        is_pivot[p] = true;
    std::vector<SparseVec> out;
    for (int j = 0; j < dim; ++j) {
        if (is_pivot[j])
            continue;
        SparseVec xi = SparseVec::unit(j);
        for (std::size_t p = 0; p < rows.size(); ++p) {
            const Scalar c = rows[p].get(j);
            if (!c.is_zero())
                xi.add(pivots[p], -c);
        }
        out.push_back(std::move(xi));
    }
    return out;
}

DualBracket::DualBracket(const NormalizedBasis &b, const SparseTensor2 &r0)
{
    delta_.reserve(b.dim());
    for (int x = 0; x < b.dim(); ++x)
        delta_.push_back(cobracket(b, r0, b.e(x)));
}

SparseVec DualBracket::operator()(const SparseVec &xi, const SparseVec &eta) const
{
    SparseVec out;
    for (std::size_t x = 0; x < delta_.size(); ++x) {
        Scalar s;
        for (const auto &[k, c] : delta_[x].entries()) {
            const Scalar a = xi.get(k.first);
            if (a.is_zero())
                continue;
            const Scalar e = eta.get(k.second);
            if (!e.is_zero())
                s += a * e * c;
        }
        if (!s.is_zero())
            out.add(static_cast<int>(x), s);
    }
    return out;
}

bool annihilator_dual_bracket_check(const NormalizedBasis &b, const SparseTensor2 &r0, const Subspace &k)
{
    const DualBracket bracket(b, r0);
    const std::vector<SparseVec> ann = annihilator(k, b.dim());
    return is_closed_under(ann, [&](const SparseVec &xi, const SparseVec &eta) { return bracket(xi, eta); });
}

ManinDouble::ManinDouble(const NormalizedBasis &b, const SparseTensor2 &r0) : n_(b.dim()), dual_(b, r0)
{
    const int n = n_;
    table_.assign(2 * n, std::vector<SparseVec>(2 * n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            table_[x][y] = b.bracket_basis(x, y);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            SparseVec v;
            const SparseVec image = dual_(SparseVec::unit(a), SparseVec::unit(c));
            for (const auto &[z, s] : image.entries())
                v.add(n + z, s);
            table_[n + a][n + c] = std::move(v);
        }
    // [e_x, xi_a] = -sum_y [e_x, e_y]_a xi_y + sum_y delta(e_x)_{a y} e_y.
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < n; ++a) {
            SparseVec v;
            for (int y = 0; y < n; ++y) {
                const Scalar c = table_[x][y].get(a);
                if (!c.is_zero())
                    v.add(n + y, -c);
            }
            for (const auto &[k, c] : dual_.delta(x).entries())
                if (k.first == a)
                    v.add(k.second, c);
            table_[x][n + a] = v;
            table_[n + a][x] = -v;
        }
}

SparseVec ManinDouble::bracket(const SparseVec &u, const SparseVec &v) const
{
    SparseVec out;
    for (const auto &[i, a] : u.entries())
        for (const auto &[j, c] : v.entries())
            out.add_scaled(table_[i][j], a * c);
    return out;
}

BilinearForm ManinDouble::form() const
{
    BilinearForm f{std::vector<std::vector<Scalar>>(2 * n_, std::vector<Scalar>(2 * n_))};
    for (int x = 0; x < n_; ++x) {
        f.gram[x][n_ + x] = 1;
        f.gram[n_ + x][x] = 1;
    }
    return f;
}

bool ManinDouble::satisfies_jacobi() const
{
    const int d = dim();
    for (int x = 0; x < d; ++x)
        for (int y = x + 1; y < d; ++y)
            for (int z = y + 1; z < d; ++z) {
                SparseVec s = bracket(SparseVec::unit(x), table_[y][z]);
                s += bracket(SparseVec::unit(y), table_[z][x]);
                s += bracket(SparseVec::unit(z), table_[x][y]);
                if (!s.is_zero())
                    return false;
            }
    return true;
}

bool ManinDouble::form_is_invariant() const
{
    const BilinearForm f = form();
    const int d = dim();
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z)
                if (f(table_[x][y], SparseVec::unit(z)) != f(SparseVec::unit(x), table_[y][z]))
                    return false;
    return true;
}

bool lagrangian_decomposition_check(const NormalizedBasis &b, const SparseTensor2 &r0, const Subspace &k)
{
    const ManinDouble d(b, r0);
    std::vector<SparseVec> span = k.basis();
    for (const SparseVec &xi : annihilator(k, b.dim())) {
        SparseVec v;
        for (const auto &[j, c] : xi.entries())
            v.add(b.dim() + j, c);
        span.push_back(std::move(v));
    }
    return is_lagrangian(span, d.form()) &&
           is_closed_under(span, [&](const SparseVec &u, const SparseVec &v) { return d.bracket(u, v); });
}

}  // namespace bdc
