#include "bdc/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace bdc
{

void DynkinType::validate() const
{
    bool ok = false;
    switch (family) {
    case 'A': ok = rank >= 1 && rank <= 8; break;
    case 'B': ok = rank >= 2 && rank <= 8; break;
    case 'C': ok = rank >= 2 && rank <= 8; break;
    case 'D': ok = rank >= 3 && rank <= 8; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default:
        throw InputError(std::string("unknown Dynkin family '") + family + "'");
    }
    if (!ok)
        throw InputError("rank " + std::to_string(rank) + " is not admissible for family " + family);
}

DynkinType DynkinType::parse(const std::string &text)
{
    if (text.size() < 2)
        throw InputError("malformed Dynkin type '" + text + "'");
    DynkinType t;
    t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    std::string digits = text.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        digits.size() > 2)
        throw InputError("malformed Dynkin type '" + text + "'");
    t.rank = std::stoi(digits);
    t.validate();
    return t;
}

bool DiagramAutomorphism::is_identity() const
{
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != static_cast<int>(i))
            return false;
    return true;
}

DiagramAutomorphism identity_automorphism(int rank)
{
    DiagramAutomorphism mu;
    mu.perm.resize(rank);
    std::iota(mu.perm.begin(), mu.perm.end(), 0);
    return mu;
}

namespace
{

/// Symmetric invariant form on simple roots, scaled to integers.
IntMatrix symmetric_form(const DynkinType &t)
{
    int n = t.rank;
    IntMatrix s(n, std::vector<int>(n, 0));
    auto edge = [&](int i, int j, int v) { s[i][j] = s[j][i] = v; };
    for (int i = 0; i < n; ++i)
        s[i][i] = 2;
    switch (t.family) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i)
            edge(i, i + 1, -1);
        break;
    case 'B':
        // Long roots have squared length 4, alpha_n is short with 2.
        for (int i = 0; i < n; ++i)
            s[i][i] = 4;
        s[n - 1][n - 1] = 2;
        for (int i = 0; i + 1 < n; ++i)
            edge(i, i + 1, -2);
        break;
    case 'C':
        // Short roots have squared length 2, alpha_n is long with 4.
        s[n - 1][n - 1] = 4;
        for (int i = 0; i + 2 < n; ++i)
            edge(i, i + 1, -1);
        edge(n - 2, n - 1, -2);
        break;
    case 'D':
        for (int i = 0; i + 2 < n; ++i)
            edge(i, i + 1, -1);
        edge(n - 3, n - 1, -1);
        break;
    case 'E':
        edge(0, 2, -1);
        edge(2, 3, -1);
        edge(1, 3, -1);
        for (int i = 3; i + 1 < n; ++i)
            edge(i, i + 1, -1);
        break;
    case 'F':
        s[0][0] = s[1][1] = 4;
        edge(0, 1, -2);
        edge(1, 2, -2);
        edge(2, 3, -1);
        break;
    case 'G':
        // alpha_1 short, alpha_2 long.
        s[1][1] = 6;
        edge(0, 1, -3);
        break;
    default:
        break;
    }
    return s;
}

RationalMatrix invert(const RationalMatrix &m)
{
    std::size_t n = m.size();
    RationalMatrix inv(n, RationalVector(n));
    for (std::size_t c = 0; c < n; ++c) {
        RationalVector e(n, 0);
        e[c] = 1;
        AffineSolutionSpace s = solve_linear_system(m, e, n);
        if (s.empty || !s.basis.empty())
            throw InternalError("singular Gram matrix");
        for (std::size_t r = 0; r < n; ++r)
            inv[r][c] = s.particular[r];
    }
    return inv;
}

}  // namespace

RootSystem::RootSystem(DynkinType type) : type_(type)
{
    type_.validate();
    const int n = type_.rank;
    IntMatrix s = symmetric_form(type_);
    cartan_.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cartan_[i][j] = 2 * s[i][j] / s[i][i];

    // Positive roots by root strings, layer by layer in height.
    std::set<Root> known;
    std::vector<Root> layer;
    for (int i = 0; i < n; ++i) {
        Root r(n, 0);
        r[i] = 1;
        layer.push_back(r);
        known.insert(r);
    }
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end());
        positive_.insert(positive_.end(), layer.begin(), layer.end());
        std::set<Root> next;
        for (const Root &beta : layer) {
            for (int i = 0; i < n; ++i) {
                // <beta, alpha_i^vee> = sum_j beta_j a_ij.
                int pairing = 0;
                for (int j = 0; j < n; ++j)
                    pairing += beta[j] * cartan_[i][j];
                int p = 0;
                Root down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!known.count(down))
                        break;
                    ++p;
                }
                if (p - pairing > 0) {
                    Root up = beta;
                    up[i] += 1;
                    if (!known.count(up))
                        next.insert(up);
                }
            }
        }
        layer.assign(next.begin(), next.end());
        known.insert(next.begin(), next.end());
    }
    // Sorting each layer gives lexicographic order within a height.
    const int np = num_positive();
    roots_ = positive_;
    for (const Root &r : positive_) {
        Root neg = r;
        for (int &x : neg)
            x = -x;
        roots_.push_back(neg);
    }
    for (int k = 0; k < 2 * np; ++k)
        index_.emplace(roots_[k], k);
    simple_idx_.resize(n);
    for (int i = 0; i < n; ++i) {
        Root r(n, 0);
        r[i] = 1;
        simple_idx_[i] = index_.at(r);
    }
    sum_.assign(static_cast<std::size_t>(4 * np * np), -1);
    for (int a = 0; a < 2 * np; ++a)
        for (int b = 0; b < 2 * np; ++b) {
            Root r(n);
            bool zero = true;
            for (int i = 0; i < n; ++i) {
                r[i] = roots_[a][i] + roots_[b][i];
                zero = zero && r[i] == 0;
            }
            sum_[a * 2 * np + b] = zero ? -2 : index_of(r);
        }

    // Killing form from B(h, h') = sum over roots gamma(h) gamma(h').
    // With B = c S on simple roots this reads c S = c^2 M, M = sum (S g)(S g)^T.
    RationalMatrix m(n, RationalVector(n, 0));
    for (const Root &g : roots_) {
        std::vector<long> sg(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                sg[i] += static_cast<long>(s[i][j]) * g[j];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[i][j] += sg[i] * sg[j];
    }
    Rational c = Rational(s[0][0]) / m[0][0];
    gram_.assign(n, RationalVector(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            gram_[i][j] = c * s[i][j];
            if (gram_[i][j] != c * c * m[i][j])
                throw InternalError("root-sum form is not proportional to the invariant form");
        }
    gram_inv_ = invert(gram_);

    weights_.resize(static_cast<std::size_t>(2 * np * n));
    half_norm_.resize(2 * np);
    for (int a = 0; a < 2 * np; ++a) {
        for (int i = 0; i < n; ++i) {
            Rational w = 0;
            for (int j = 0; j < n; ++j)
                w += roots_[a][j] * gram_[j][i];
            weights_[a * n + i] = w;
        }
        half_norm_[a] = killing(roots_[a], roots_[a]) / 2;
    }
}

int RootSystem::index_of(const Root &r) const
{
    auto it = index_.find(r);
    return it == index_.end() ? -1 : it->second;
}

Rational RootSystem::killing(const Root &a, const Root &b) const
{
    if (static_cast<int>(a.size()) != rank() || static_cast<int>(b.size()) != rank())
        throw InputError("root-lattice vector has the wrong length");
    Rational v = 0;
    for (int i = 0; i < rank(); ++i) {
        if (a[i] == 0)
            continue;
        for (int j = 0; j < rank(); ++j)
            if (b[j] != 0)
                v += gram_[i][j] * (a[i] * b[j]);
    }
    return v;
}

RootSystem build_root_system(DynkinType t)
{
    return RootSystem(t);
}

Rational killing_form(const RootSystem &rs, const Root &lambda, const Root &mu)
{
    return rs.killing(lambda, mu);
}

int height(const Root &alpha)
{
    int h = 0;
    bool positive = false;
    for (int x : alpha) {
        if (x < 0)
            throw InputError("height is defined for positive roots only");
        positive = positive || x > 0;
        h += x;
    }
    if (!positive)
        throw InputError("height is defined for positive roots only");
    return h;
}

Root highest_root(const RootSystem &rs)
{
    // Positive roots are sorted by height, and the highest root is unique.
    return rs.positive_roots().back();
}

std::vector<DiagramAutomorphism> diagram_automorphisms(const RootSystem &rs)
{
    const int n = rs.rank();
    const IntMatrix &a = rs.cartan_matrix();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<DiagramAutomorphism> out;
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (p[p[i]] != i)
                ok = false;
            for (int j = 0; j < n && ok; ++j)
                if (a[p[i]][p[j]] != a[i][j])
                    ok = false;
        }
        if (ok)
            out.push_back(DiagramAutomorphism{p});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Root extend_automorphism(const RootSystem &rs, const DiagramAutomorphism &mu, const Root &alpha)
{
    if (static_cast<int>(alpha.size()) != rs.rank() || static_cast<int>(mu.perm.size()) != rs.rank())
        throw InputError("dimension mismatch in extend_automorphism");
    Root out(rs.rank(), 0);
    for (int i = 0; i < rs.rank(); ++i)
        out[mu(i)] += alpha[i];
    if (rs.index_of(alpha) >= 0 && rs.index_of(out) < 0)
        throw InternalError("diagram automorphism does not preserve the root system");
    return out;
}

int extend_automorphism_index(const RootSystem &rs, const DiagramAutomorphism &mu, int a)
{
    return rs.index_of(extend_automorphism(rs, mu, rs.root(a)));
}

std::string root_label(const Root &r)
{
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        int c = r[i];
        if (c == 0)
            continue;
        if (c < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        if (std::abs(c) != 1)
            out += std::to_string(std::abs(c));
        out += "a" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

}  // namespace bdc
