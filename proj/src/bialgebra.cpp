#include "bdc/bialgebra.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

namespace bdc
{

int BDTriple::T(int i) const
{
    for (std::size_t k = 0; k < gamma1.size(); ++k)
        if (gamma1[k] == i)
            return gamma2[k];
    return -1;
}

int BDTriple::T_inverse(int j) const
{
    for (std::size_t k = 0; k < gamma2.size(); ++k)
        if (gamma2[k] == j)
            return gamma1[k];
    return -1;
}

std::string BDTriple::str() const
{
    if (is_trivial())
        return "trivial";
    std::ostringstream os;
    for (std::size_t k = 0; k < gamma1.size(); ++k) {
        if (k)
            os << ",";
        os << "a" << gamma1[k] + 1 << "->a" << gamma2[k] + 1;
    }
    return os.str();
}

namespace
{

/// Follows T from i; returns false when the orbit returns to gamma1 forever.
bool orbit_leaves(const BDTriple &t, int i)
{
    int steps = 0;
    const int limit = static_cast<int>(t.gamma1.size()) + 1;
    while (i >= 0 && t.in_gamma1(i)) {
        i = t.T(i);
        if (++steps > limit)
            return false;
    }
    return true;
}

const Rational &gram(const RootSystem &rs, int i, int j)
{
    return rs.killing_gram()[i][j];
}

}  // namespace

BDTriple validate_bd_triple(const RootSystem &rs, std::vector<std::pair<int, int>> mapping)
{
    std::sort(mapping.begin(), mapping.end());
    BDTriple t;
    std::set<int> targets;
    for (std::size_t k = 0; k < mapping.size(); ++k) {
        auto [s, d] = mapping[k];
        if (s < 0 || s >= rs.rank() || d < 0 || d >= rs.rank())
            throw BDTripleError(BDTripleError::Kind::Malformed, "triple refers to a simple root outside the diagram");
        if (k && mapping[k - 1].first == s)
            throw BDTripleError(BDTripleError::Kind::Malformed,
                                "simple root a" + std::to_string(s + 1) + " has two images");
        if (!targets.insert(d).second)
            throw BDTripleError(BDTripleError::Kind::Malformed, "T is not injective");
        t.gamma1.push_back(s);
        t.gamma2.push_back(d);
    }
    for (std::size_t a = 0; a < t.gamma1.size(); ++a)
        for (std::size_t b = a; b < t.gamma1.size(); ++b)
            if (gram(rs, t.gamma2[a], t.gamma2[b]) != gram(rs, t.gamma1[a], t.gamma1[b]))
                throw BDTripleError(BDTripleError::Kind::NotIsometry,
                                    "T does not preserve the inner product of a" + std::to_string(t.gamma1[a] + 1) +
                                        " and a" + std::to_string(t.gamma1[b] + 1));
    for (int i : t.gamma1)
        if (!orbit_leaves(t, i))
            throw BDTripleError(BDTripleError::Kind::NilpotencyViolation,
                                "T is not nilpotent: the orbit of a" + std::to_string(i + 1) + " stays in gamma1");
    return t;
}

bool is_mu_stable(const BDTriple &t, const DiagramAutomorphism &mu)
{
    for (std::size_t k = 0; k < t.gamma1.size(); ++k) {
        int a = t.gamma1[k];
        if (t.T(mu(a)) != mu(t.gamma2[k]))
            return false;
    }
    return true;
}

bool is_mu_antistable(const BDTriple &t, const DiagramAutomorphism &mu)
{
    // mu swaps gamma1 and gamma2 and T^{-1} mu = mu T, i.e. T(mu(T a)) = mu(a).
    for (std::size_t k = 0; k < t.gamma1.size(); ++k) {
        int a = t.gamma1[k];
        int b = t.gamma2[k];
        if (!t.in_gamma2(mu(a)) || !t.in_gamma1(mu(b)))
            return false;
        if (t.T(mu(b)) != mu(a))
            return false;
    }
    return true;
}

std::vector<BDTriple> enumerate_bd_triples(const RootSystem &rs, Stability filter, const DiagramAutomorphism *mu)
{
    if (filter != Stability::All && mu == nullptr)
        throw InputError("a stability filter needs a diagram automorphism");
    const int n = rs.rank();
    std::vector<BDTriple> out;
    std::vector<int> image(n, -1);
    std::vector<bool> used(n, false);

    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            BDTriple t;
            for (int k = 0; k < n; ++k)
                if (image[k] >= 0) {
                    t.gamma1.push_back(k);
                    t.gamma2.push_back(image[k]);
                }
            for (int k : t.gamma1)
                if (!orbit_leaves(t, k))
                    return;
            if (filter == Stability::MuStable && !is_mu_stable(t, *mu))
                return;
            if (filter == Stability::MuAntistable && !is_mu_antistable(t, *mu))
                return;
            out.push_back(std::move(t));
            return;
        }
        rec(i + 1);
        for (int j = 0; j < n; ++j) {
            if (used[j] || j == i || gram(rs, i, i) != gram(rs, j, j))
                continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k)
                if (image[k] >= 0 && gram(rs, image[k], j) != gram(rs, k, i))
                    ok = false;
            if (!ok)
                continue;
            image[i] = j;
            used[j] = true;
            rec(i + 1);
            used[j] = false;
            image[i] = -1;
        }
    };
    rec(0);
    std::stable_sort(out.begin(), out.end(), [](const BDTriple &a, const BDTriple &b) {
        if (a.gamma1.size() != b.gamma1.size())
            return a.gamma1.size() < b.gamma1.size();
        if (a.gamma1 != b.gamma1)
            return a.gamma1 < b.gamma1;
        return a.gamma2 < b.gamma2;
    });
    return out;
}

Scalar TExtension::d(const RootSystem &rs, int a, int b) const
{
    return c[rs.negate_index(a)] * c[b];
}

bool TExtension::precedes(int a, int b) const
{
    return std::binary_search(order.begin(), order.end(), std::make_pair(a, b));
}

namespace
{

/// T on a root-lattice vector supported on gamma1.
Root apply_t_lattice(const BDTriple &triple, const Root &alpha)
{
    Root out(alpha.size(), 0);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] == 0)
            continue;
        int j = triple.T(static_cast<int>(i));
        if (j < 0)
            return {};
        out[j] += alpha[i];
    }
    return out;
}

/// Smallest simple i with xi - alpha_i a positive root; returns (simple root index, remainder index).
std::pair<int, int> smallest_split(const RootSystem &rs, int xi)
{
    const Root &r = rs.root(xi);
    for (int i = 0; i < rs.rank(); ++i) {
        if (r[i] == 0)
            continue;
        Root rest = r;
        rest[i] -= 1;
        int idx = rs.index_of(rest);
        if (idx >= 0 && rs.is_positive_index(idx))
            return {rs.simple_index(i), idx};
    }
    throw InternalError("root has no simple split");
}

}  // namespace

TExtension extend_t_hat(const NormalizedBasis &b, const BDTriple &triple, const std::vector<Scalar> &phases)
{
    const RootSystem &rs = b.rs();
    const int P = rs.num_positive();
    if (!phases.empty() && phases.size() != triple.gamma1.size())
        throw InputError("one phase per element of gamma1 is required");
    TExtension ext;
    ext.triple = triple;
    ext.t_root.assign(rs.num_roots(), -1);
    ext.tau.assign(rs.num_roots(), Scalar(0));
    ext.c.assign(rs.num_roots(), Scalar(1));

    for (int a = 0; a < P; ++a) {
        Root image = apply_t_lattice(triple, rs.root(a));
        if (image.empty())
            continue;
        int idx = rs.index_of(image);
        if (idx < 0)
            throw InternalError("T maps a root of Z gamma1 outside the root system");
        ext.t_root[a] = idx;
        ext.t_root[rs.negate_index(a)] = rs.negate_index(idx);
    }
    // Roots are ordered by height, so remainders are processed before the roots that use them.
    for (int a = 0; a < P; ++a) {
        if (ext.t_root[a] < 0)
            continue;
        const Root &r = rs.root(a);
        int h = height(r);
        int na = rs.negate_index(a);
        if (h == 1) {
            int i = static_cast<int>(std::find(r.begin(), r.end(), 1) - r.begin());
            Scalar p = 1;
            for (std::size_t k = 0; k < triple.gamma1.size(); ++k)
                if (triple.gamma1[k] == i && !phases.empty())
                    p = phases[k];
            if (p.is_zero())
                throw InputError("phases must be nonzero");
            ext.tau[a] = p;
            ext.tau[na] = Scalar(1) / p;
            continue;
        }
        auto [s, rest] = smallest_split(rs, a);
        int ts = ext.t_root[s];
        int tr = ext.t_root[rest];
        ext.tau[a] = ext.tau[s] * ext.tau[rest] * b.n(ts, tr) / b.n(s, rest);
        int ns = rs.negate_index(s);
        int nr = rs.negate_index(rest);
        ext.tau[na] = ext.tau[ns] * ext.tau[nr] * b.n(rs.negate_index(ts), rs.negate_index(tr)) / b.n(ns, nr);
    }
    std::vector<bool> is_image(P, false);
    for (int a = 0; a < P; ++a)
        if (ext.t_root[a] >= 0)
            is_image[ext.t_root[a]] = true;
    for (int start = 0; start < P; ++start) {
        if (is_image[start])
            continue;
        int a = start;
        while (ext.t_root[a] >= 0) {
            int next = ext.t_root[a];
            ext.c[next] = ext.c[a] * ext.tau[a];
            a = next;
        }
    }
    for (int a = 0; a < P; ++a)
        ext.c[rs.negate_index(a)] = Scalar(1) / ext.c[a];
    for (int a = 0; a < P; ++a)
        for (int next = ext.t_root[a]; next >= 0; next = ext.t_root[next])
            ext.order.emplace_back(a, next);
    std::sort(ext.order.begin(), ext.order.end());
    return ext;
}

SparseVec apply_t_hat(const NormalizedBasis &b, const TExtension &ext, const SparseVec &v)
{
    SparseVec out;
    for (const auto &[k, c] : v.entries()) {
        if (b.is_cartan(k)) {
            int i = k - b.num_roots();
            int j = ext.triple.T(i);
            if (j < 0)
                throw InputError("vector is not supported on the gamma1 subalgebra");
            out.add(b.cartan_index(j), c);
            continue;
        }
        if (ext.t_root[k] < 0)
            throw InputError("vector is not supported on the gamma1 subalgebra");
        out.add(ext.t_root[k], c * ext.tau[k]);
    }
    return out;
}

Casimir casimir(const NormalizedBasis &b)
{
    const RootSystem &rs = b.rs();
    Casimir out;
    const auto &ginv = rs.killing_gram_inverse();
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j)
            if (sgn(ginv[i][j]) != 0)
                out.omega0.add(b.cartan_index(i), b.cartan_index(j), Scalar(ginv[i][j]));
    out.omega = out.omega0;
    for (int a = 0; a < b.num_roots(); ++a)
        out.omega.add(a, rs.negate_index(a), 1);
    return out;
}

SparseTensor2 ContinuousParameter::tensor(const NormalizedBasis &b) const
{
    if (rank() != b.rank())
        throw InputError("continuous parameter has the wrong rank");
    SparseTensor2 out;
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j)
            out.add(b.cartan_index(i), b.cartan_index(j), L[i][j]);
    return out;
}

Scalar ContinuousParameter::lambda_ab(int i, int j) const
{
    return (L[i][j] - L[j][i]) * Scalar(Rational(1, 2));
}

int LambdaCoordinates::re_index(int i, int j) const
{
    if (!(0 <= i && i < j && j < rank))
        throw InputError("lambda coordinate needs 0 <= i < j < rank");
    // Pairs (i, j) with i < j in row-major order, two reals each.
    int before = i * rank - i * (i + 1) / 2;
    return 2 * (before + (j - i - 1));
}

ContinuousParameter LambdaCoordinates::point(const RootSystem &rs, const RationalVector &x) const
{
    if (static_cast<int>(x.size()) != num_vars())
        throw InputError("lambda coordinate vector has the wrong length");
    const auto &ginv = rs.killing_gram_inverse();
    ContinuousParameter p;
    p.L.assign(rank, std::vector<Scalar>(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            p.L[i][j] = Scalar(ginv[i][j] / 2);
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
            Scalar a(x[re_index(i, j)], x[im_index(i, j)]);
            p.L[i][j] += a;
            p.L[j][i] -= a;
        }
    return p;
}

RationalVector LambdaCoordinates::coordinates(const ContinuousParameter &lambda) const
{
    RationalVector x(num_vars(), 0);
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
            Scalar a = lambda.lambda_ab(i, j);
            x[re_index(i, j)] = a.re();
            x[im_index(i, j)] = a.im();
        }
    return x;
}

namespace
{

/// Coefficient of h_k in (T alpha ⊗ 1 + 1 ⊗ alpha)(lambda) for alpha = alpha_a, T alpha = alpha_b.
Scalar t_constraint(const RootSystem &rs, const ContinuousParameter &lam, int a, int b, int k)
{
    Scalar s;
    for (int i = 0; i < lam.rank(); ++i)
        s += lam.L[i][k] * Scalar(gram(rs, b, i));
    for (int j = 0; j < lam.rank(); ++j)
        s += lam.L[k][j] * Scalar(gram(rs, a, j));
    return s;
}

/// Rows and right-hand sides of the real linear system on lambda coordinates.
struct LinearRows
{
    RationalMatrix a;
    RationalVector b;
};

void add_t_constraints(const RootSystem &rs, const BDTriple &triple, LinearRows &sys)
{
    const int n = rs.rank();
    LambdaCoordinates lc{n};
    for (std::size_t m = 0; m < triple.gamma1.size(); ++m) {
        int a = triple.gamma1[m];
        int b = triple.gamma2[m];
        for (int k = 0; k < n; ++k) {
            RationalVector re(lc.num_vars(), 0), im(lc.num_vars(), 0);
            // A_ik contributes G[b][i], A_kj contributes G[a][j]; A is antisymmetric.
            auto add_a = [&](int i, int j, const Rational &w) {
                if (i == j)
                    return;
                Rational sign = 1;
                if (i > j) {
                    std::swap(i, j);
                    sign = -1;
                }
                re[lc.re_index(i, j)] += sign * w;
                im[lc.im_index(i, j)] += sign * w;
            };
            for (int i = 0; i < n; ++i)
                add_a(i, k, gram(rs, b, i));
            for (int j = 0; j < n; ++j)
                add_a(k, j, gram(rs, a, j));
            Rational rhs = 0;
            if (b == k)
                rhs -= Rational(1, 2);
            if (a == k)
                rhs -= Rational(1, 2);
            sys.a.push_back(std::move(re));
            sys.b.push_back(rhs);
            sys.a.push_back(std::move(im));
            sys.b.push_back(0);
        }
    }
}

AffineSolutionSpace solve_rows(const LinearRows &sys, int columns)
{
    if (sys.a.empty()) {
        AffineSolutionSpace out;
        out.particular.assign(columns, 0);
        for (int k = 0; k < columns; ++k) {
            RationalVector v(columns, 0);
            v[k] = 1;
            out.basis.push_back(std::move(v));
        }
        return out;
    }
    return solve_linear_system(sys.a, sys.b, columns);
}

}  // namespace

bool is_continuous_parameter(const RootSystem &rs, const BDTriple &triple, const ContinuousParameter &lambda)
{
    const int n = rs.rank();
    if (lambda.rank() != n)
        return false;
    const auto &ginv = rs.killing_gram_inverse();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (lambda.L[i][j] + lambda.L[j][i] != Scalar(ginv[i][j]))
                return false;
    for (std::size_t m = 0; m < triple.gamma1.size(); ++m)
        for (int k = 0; k < n; ++k)
            if (!t_constraint(rs, lambda, triple.gamma1[m], triple.gamma2[m], k).is_zero())
                return false;
    return true;
}

AffineSolutionSpace continuous_parameter_space(const RootSystem &rs, const BDTriple &triple)
{
    LinearRows sys;
    add_t_constraints(rs, triple, sys);
    return solve_rows(sys, LambdaCoordinates{rs.rank()}.num_vars());
}

Scalar default_t(const SigmaSpec &spec)
{
    return spec.is_omega() ? Scalar(0, 2) : Scalar(2);
}

AffineSolutionSpace admissible_lambda_space(const RootSystem &rs, const SigmaSpec &spec, const BDTriple &triple)
{
    const int n = rs.rank();
    LambdaCoordinates lc{n};
    LinearRows sys;
    add_t_constraints(rs, triple, sys);
    // sigma-invariance of (t/2)(lambda - lambda^dag): A_{mu i, mu j} = eps conj(A_ij).
    const Rational eps = spec.is_omega() ? -1 : 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int p = spec.mu(i), q = spec.mu(j);
            Rational flip = 1;
            if (p > q) {
                std::swap(p, q);
                flip = -1;
            }
            RationalVector re(lc.num_vars(), 0), im(lc.num_vars(), 0);
            re[lc.re_index(p, q)] += flip;
            re[lc.re_index(i, j)] -= eps;
            im[lc.im_index(p, q)] += flip;
            im[lc.im_index(i, j)] += eps;
            sys.a.push_back(std::move(re));
            sys.b.push_back(0);
            sys.a.push_back(std::move(im));
            sys.b.push_back(0);
        }
    return solve_rows(sys, lc.num_vars());
}

RMatrix build_r(const NormalizedBasis &b, const TExtension &ext, const ContinuousParameter &lambda, const Scalar &t)
{
    const RootSystem &rs = b.rs();
    if (!is_continuous_parameter(rs, ext.triple, lambda))
        throw AdmissibilityError("lambda is not a continuous parameter for the triple");
    SparseTensor2 inner = lambda.tensor(b);
    for (int a = 0; a < rs.num_positive(); ++a) {
        int na = rs.negate_index(a);
        inner.add(na, a, ext.c[na] * ext.c[a]);
    }
    for (auto [a, bb] : ext.order) {
        int na = rs.negate_index(a);
        inner.add_scaled(SparseTensor2::wedge(b.e(na), b.e(bb)), ext.c[na] * ext.c[bb]);
    }
    return RMatrix{inner * (t * Scalar(Rational(1, 2))), t};
}

namespace
{

SparseTensor2 r0_formula(const NormalizedBasis &b, const TExtension &ext, const ContinuousParameter &lambda,
                         const Scalar &t)
{
    const RootSystem &rs = b.rs();
    SparseTensor2 inner;
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j)
            inner.add_scaled(SparseTensor2::wedge(b.h(i), b.h(j)), lambda.lambda_ab(i, j));
    for (int a = 0; a < rs.num_positive(); ++a)
        inner.add_scaled(SparseTensor2::wedge(b.e(rs.negate_index(a)), b.e(a)), 1);
    for (auto [a, bb] : ext.order)
        inner.add_scaled(SparseTensor2::wedge(b.e(rs.negate_index(a)), b.e(bb)), Scalar(2) * ext.d(rs, a, bb));
    return inner * (t * Scalar(Rational(1, 2)));
}

}  // namespace

std::optional<std::string> admissibility_violation(const AdaptedForm &form, const TExtension &ext,
                                                   const ContinuousParameter &lambda, const Scalar &t)
{
    const SigmaSpec &spec = form.spec;
    const RootSystem &rs = form.basis.rs();
    if (t.is_zero())
        return std::string("t must be nonzero");
    if (spec.is_omega() && !t.is_imaginary())
        return std::string("t must be purely imaginary for omega-type involutions");
    if (!spec.is_omega() && !t.is_real())
        return std::string("t must be real for varsigma-type involutions");
    if (!is_continuous_parameter(rs, ext.triple, lambda))
        return std::string("lambda is not a continuous parameter for the triple");
    const bool id = spec.mu_is_identity();
    if (spec.is_omega() && id && !ext.triple.is_trivial())
        return std::string("omega_J requires the trivial triple");
    if (!spec.is_omega() && !id && !is_mu_stable(ext.triple, spec.mu))
        return std::string("the triple is not mu-stable");
    if (spec.is_omega() && !id && !is_mu_antistable(ext.triple, spec.mu))
        return std::string("the triple is not mu-antistable");
    const Scalar eps = spec.is_omega() ? Scalar(-1) : Scalar(1);
    for (int i = 0; i < rs.rank(); ++i)
        for (int j = 0; j < rs.rank(); ++j)
            if (lambda.lambda_ab(spec.mu(i), spec.mu(j)) != eps * lambda.lambda_ab(i, j).conj())
                return std::string("lambda violates the reality condition of sigma");
    SparseTensor2 r0 = r0_formula(form.basis, ext, lambda, t);
    if (form.sigma.apply_tensor(r0) != r0)
        return std::string("r0 is not fixed by sigma ⊗ sigma");
    return std::nullopt;
}

SparseTensor2 build_r0(const AdaptedForm &form, const TExtension &ext, const ContinuousParameter &lambda,
                       const Scalar &t)
{
    if (auto why = admissibility_violation(form, ext, lambda, t))
        throw AdmissibilityError(*why);
    return r0_formula(form.basis, ext, lambda, t);
}

SparseTensor2 cobracket(const NormalizedBasis &b, const SparseTensor2 &r, const SparseVec &x)
{
    return b.ad_tensor(x, r);
}

SparseTensor3 cybe_residual(const NormalizedBasis &b, const SparseTensor2 &r)
{
    std::vector<std::tuple<int, int, Scalar>> terms;
    terms.reserve(r.size());
    for (const auto &[k, c] : r.entries())
        terms.emplace_back(k.first, k.second, c);
    SparseTensor3 out;
    for (const auto &[a, bb, c1] : terms)
        for (const auto &[c, d, c2] : terms) {
            Scalar w = c1 * c2;
            const SparseVec ac = b.bracket_basis(a, c);
            for (const auto &[z, v] : ac.entries())
                out.add(z, bb, d, w * v);
            const SparseVec bc = b.bracket_basis(bb, c);
            for (const auto &[z, v] : bc.entries())
                out.add(a, z, d, w * v);
            const SparseVec bd = b.bracket_basis(bb, d);
            for (const auto &[z, v] : bd.entries())
                out.add(a, c, z, w * v);
        }
    return out;
}

}  // namespace bdc
