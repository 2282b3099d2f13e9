#include "bdc/chevalley.hpp"

#include <map>

namespace bdc
{

namespace
{

class CarterSolver
{
public:
    CarterSolver(const RootSystem &rs, const std::vector<std::pair<int, int>> &extraspecial)
        : rs_(rs), es_(extraspecial)
    {
    }

    int string_p(int a, int b) const
    {
        Root r = rs_.root(b);
        const Root &s = rs_.root(a);
        int p = 0;
        while (true) {
            for (int i = 0; i < rs_.rank(); ++i)
                r[i] -= s[i];
            if (rs_.index_of(r) < 0)
                return p;
            ++p;
        }
    }

    Rational norm(int a) const { return rs_.half_norm(a) * 2; }

    /// N for any pair of roots whose sum is a root.
    Rational general(int a, int b)
    {
        const int c = rs_.sum_index(a, b);
        if (c < 0)
            throw InternalError("structure constant requested for a non-root sum");
        const bool pa = rs_.is_positive_index(a), pb = rs_.is_positive_index(b);
        if (pa && pb)
            return positive_pair(a, b);
        if (!pa && !pb)
            return -general(rs_.negate_index(a), rs_.negate_index(b));
        if (!pa)
            return -general(b, a);
        // a positive, b negative; use N_{a,b}/|g|^2 = N_{b,g}/|a|^2 = N_{g,a}/|b|^2 with g = -(a+b).
        if (rs_.is_positive_index(c))
            return norm(c) / norm(a) * -general(rs_.negate_index(b), c);
        return norm(c) / norm(b) * general(rs_.negate_index(c), a);
    }

    Rational positive_pair(int a, int b)
    {
        auto key = std::make_pair(a, b);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        const int xi = rs_.sum_index(a, b);
        auto [g, d] = es_.at(xi);
        Rational value;
        if (a == g && b == d) {
            value = string_p(g, d) + 1;
        } else if (a == d && b == g) {
            value = -(string_p(g, d) + 1);
        } else {
            // Four-term identity on (alpha, beta, -gamma, -delta), which sum to zero.
            const int mg = rs_.negate_index(g), md = rs_.negate_index(d);
            Rational rest = 0;
            int bg = rs_.sum_index(b, mg);
            if (bg >= 0)
                rest += general(b, mg) * general(a, md) / norm(bg);
            int ag = rs_.sum_index(a, mg);
            if (ag >= 0)
                rest += general(mg, a) * general(b, md) / norm(ag);
            Rational n_neg = -(string_p(g, d) + 1);
            value = -norm(xi) * rest / n_neg;
        }
        memo_.emplace(key, value);
        return value;
    }

private:
    const RootSystem &rs_;
    const std::vector<std::pair<int, int>> &es_;
    std::map<std::pair<int, int>, Rational> memo_;
};

}  // namespace

ChevalleyConstants::ChevalleyConstants(const RootSystem &rs) : rs_(&rs), n_(rs.num_roots())
{
    const int np = rs.num_positive();
    extraspecial_.assign(np, {-1, -1});
    for (int xi = 0; xi < np; ++xi) {
        for (int i = 0; i < rs.rank(); ++i) {
            Root rest = rs.root(xi);
            rest[i] -= 1;
            int k = rs.index_of(rest);
            if (k >= 0 && rs.is_positive_index(k)) {
                extraspecial_[xi] = {rs.simple_index(i), k};
                break;
            }
        }
    }
    CarterSolver solver(rs, extraspecial_);
    table_.assign(static_cast<std::size_t>(n_ * n_), 0);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            if (rs.sum_index(a, b) < 0)
                continue;
            Rational v = solver.general(a, b);
            if (v.get_den() != 1)
                throw InternalError("non-integral Chevalley constant");
            table_[a * n_ + b] = static_cast<int>(v.get_num().get_si());
        }
}

int ChevalleyConstants::string_p(int a, int b) const
{
    Root r = rs_->root(b);
    const Root &s = rs_->root(a);
    int p = 0;
    while (true) {
        for (int i = 0; i < rs_->rank(); ++i)
            r[i] -= s[i];
        if (rs_->index_of(r) < 0)
            return p;
        ++p;
    }
}

ChevalleyConstants chevalley_constants(const RootSystem &rs)
{
    return ChevalleyConstants(rs);
}

// ------------------------------------------------------------------ basis

NormalizedBasis::NormalizedBasis(std::shared_ptr<const RootSystem> rs, const ChevalleyConstants &m)
    : rs_(std::move(rs))
{
    const int nr = rs_->num_roots();
    // kappa = 1 on positive roots, B(alpha,alpha)/2 on negative roots.
    auto kappa = [&](int a) -> Rational { return rs_->is_positive_index(a) ? Rational(1) : rs_->half_norm(a); };
    n_.assign(static_cast<std::size_t>(nr * nr), Scalar());
    for (int a = 0; a < nr; ++a)
        for (int b = 0; b < nr; ++b) {
            int c = rs_->sum_index(a, b);
            if (c < 0)
                continue;
            Rational v = kappa(a) * kappa(b) / kappa(c) * m(a, b);
            n_[a * nr + b] = Scalar(v);
        }
    frame_.assign(rs_->num_positive(), Scalar(1));
}

NormalizedBasis normalize(std::shared_ptr<const RootSystem> rs, const ChevalleyConstants &m)
{
    return NormalizedBasis(std::move(rs), m);
}

NormalizedBasis make_basis(DynkinType t)
{
    auto rs = std::make_shared<const RootSystem>(t);
    ChevalleyConstants m(*rs);
    return NormalizedBasis(rs, m);
}

SparseVec NormalizedBasis::h_of_root(int a) const
{
    SparseVec v;
    const Root &r = rs_->root(a);
    for (int i = 0; i < rank(); ++i)
        if (r[i] != 0)
            v.add(cartan_index(i), Scalar(r[i]));
    return v;
}

SparseVec NormalizedBasis::bracket_basis(int x, int y) const
{
    const int nr = num_roots();
    if (x >= nr && y >= nr)
        return {};
    if (x >= nr)
        return SparseVec::unit(y, Scalar(cartan_action(y, x - nr)));
    if (y >= nr)
        return SparseVec::unit(x, Scalar(-cartan_action(x, y - nr)));
    int c = rs_->sum_index(x, y);
    if (c == -2)
        return h_of_root(x);
    if (c < 0)
        return {};
    return SparseVec::unit(c, n(x, y));
}

SparseVec NormalizedBasis::bracket(const SparseVec &x, const SparseVec &y) const
{
    SparseVec out;
    for (const auto &[i, a] : x.entries())
        for (const auto &[j, b] : y.entries()) {
            SparseVec z = bracket_basis(i, j);
            if (!z.is_zero())
                out.add_scaled(z, a * b);
        }
    return out;
}

SparseVec NormalizedBasis::ad_basis(const SparseVec &u, int x) const
{
    SparseVec out;
    for (const auto &[i, a] : u.entries()) {
        SparseVec z = bracket_basis(i, x);
        if (!z.is_zero())
            out.add_scaled(z, a);
    }
    return out;
}

SparseTensor2 NormalizedBasis::ad_tensor(const SparseVec &u, const SparseTensor2 &t) const
{
    std::map<int, SparseVec> cache;
    auto ad = [&](int x) -> const SparseVec & {
        auto it = cache.find(x);
        if (it == cache.end())
            it = cache.emplace(x, ad_basis(u, x)).first;
        return it->second;
    };
    SparseTensor2 out;
    for (const auto &[k, c] : t.entries()) {
        for (const auto &[i, a] : ad(k.first).entries())
            out.add(i, k.second, c * a);
        for (const auto &[j, a] : ad(k.second).entries())
            out.add(k.first, j, c * a);
    }
    return out;
}

Scalar NormalizedBasis::killing_basis(int x, int y) const
{
    const int nr = num_roots();
    if (x >= nr && y >= nr)
        return Scalar(rs_->killing_gram()[x - nr][y - nr]);
    if (x >= nr || y >= nr)
        return Scalar();
    return rs_->sum_index(x, y) == -2 ? Scalar(1) : Scalar();
}

Scalar NormalizedBasis::killing(const SparseVec &x, const SparseVec &y) const
{
    Scalar s;
    for (const auto &[i, a] : x.entries())
        for (const auto &[j, b] : y.entries()) {
            Scalar k = killing_basis(i, j);
            if (!k.is_zero())
                s += a * b * k;
        }
    return s;
}

NormalizedBasis NormalizedBasis::rescaled(const std::vector<Scalar> &factors) const
{
    const int np = rs_->num_positive();
    if (static_cast<int>(factors.size()) != np)
        throw InputError("rescaling needs one factor per positive root");
    std::vector<Scalar> f(2 * np);
    for (int a = 0; a < np; ++a) {
        if (factors[a].is_zero())
            throw InputError("rescaling factor must be nonzero");
        f[a] = factors[a];
        f[a + np] = Scalar(1) / factors[a];
    }
    NormalizedBasis out;
    out.rs_ = rs_;
    const int nr = num_roots();
    out.n_.assign(n_.size(), Scalar());
    for (int a = 0; a < nr; ++a)
        for (int b = 0; b < nr; ++b) {
            int c = rs_->sum_index(a, b);
            if (c < 0)
                continue;
            out.n_[a * nr + b] = n(a, b) * f[a] * f[b] / f[c];
        }
    out.frame_.resize(np);
    for (int a = 0; a < np; ++a)
        out.frame_[a] = frame_[a] * factors[a];
    return out;
}

std::string NormalizedBasis::label(int idx) const
{
    if (idx >= num_roots())
        return "h[a" + std::to_string(idx - num_roots() + 1) + "]";
    return "e[" + root_label(rs_->root(idx)) + "]";
}

SparseVec bracket(const NormalizedBasis &b, const SparseVec &x, const SparseVec &y)
{
    return b.bracket(x, y);
}

SparseTensor2 ad_tensor(const NormalizedBasis &b, const SparseVec &u, const SparseTensor2 &t)
{
    return b.ad_tensor(u, t);
}

}  // namespace bdc
