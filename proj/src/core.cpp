#include "bdc/core.hpp"

#include <algorithm>
#include <cctype>

namespace bdc
{

// ---------------------------------------------------------------- scalars

GaussRational::GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
{
    re_.canonicalize();
    im_.canonicalize();
}

GaussRational &GaussRational::operator+=(const GaussRational &o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational &GaussRational::operator-=(const GaussRational &o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational &GaussRational::operator*=(const GaussRational &o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRational &GaussRational::operator/=(const GaussRational &o)
{
    if (o.is_zero())
        throw InputError("division by zero");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    Rational n = o.norm();
    Rational re = (re_ * o.re_ + im_ * o.im_) / n;
    Rational im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string GaussRational::str() const
{
    if (sgn(im_) == 0)
        return re_.get_str();
    std::string imag = im_.get_str() + " i";
    if (sgn(re_) == 0)
        return imag;
    return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag;
}

Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw InputError("empty rational");
    std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false, digit_after = false;
    for (std::size_t k = start; k < s.size(); ++k) {
        char c = s[k];
        if (c == '/') {
            if (seen_slash)
                throw InputError("malformed rational '" + std::string(text) + "'");
            seen_slash = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw InputError("malformed rational '" + std::string(text) + "'");
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw InputError("malformed rational '" + std::string(text) + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw InputError("malformed rational '" + std::string(text) + "'");
    if (seen_slash && sgn(q.get_den()) == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

GaussRational GaussRational::parse(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw InputError("empty scalar");
    if (s.back() != 'i')
        return GaussRational(parse_rational(s));
    s.pop_back();
    // Split at the last sign that is not the leading character.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    std::string real_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string imag_part = split == std::string::npos ? s : s.substr(split);
    Rational im;
    if (imag_part.empty() || imag_part == "+")
        im = 1;
    else if (imag_part == "-")
        im = -1;
    else
        im = parse_rational(imag_part);
    Rational re = real_part.empty() ? Rational(0) : parse_rational(real_part);
    return GaussRational(re, im);
}

// ----------------------------------------------------------------- vectors

SparseVec SparseVec::unit(int index, const Scalar &c)
{
    SparseVec v;
    v.add(index, c);
    return v;
}

Scalar SparseVec::get(int index) const
{
    auto it = entries_.find(index);
    return it == entries_.end() ? Scalar() : it->second;
}

void SparseVec::add(int index, const Scalar &c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = entries_.try_emplace(index, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            entries_.erase(it);
    }
}

void SparseVec::add_scaled(const SparseVec &v, const Scalar &c)
{
    if (c.is_zero())
        return;
    for (const auto &[k, x] : v.entries_)
        add(k, x * c);
}

SparseVec SparseVec::conj() const
{
    SparseVec r;
    for (const auto &[k, x] : entries_)
        r.entries_.emplace_hint(r.entries_.end(), k, x.conj());
    return r;
}

SparseVec SparseVec::operator-() const
{
    SparseVec r;
    for (const auto &[k, x] : entries_)
        r.entries_.emplace_hint(r.entries_.end(), k, -x);
    return r;
}

SparseVec &SparseVec::operator+=(const SparseVec &o)
{
    for (const auto &[k, x] : o.entries_)
        add(k, x);
    return *this;
}

SparseVec &SparseVec::operator-=(const SparseVec &o)
{
    for (const auto &[k, x] : o.entries_)
        add(k, -x);
    return *this;
}

SparseVec &SparseVec::operator*=(const Scalar &c)
{
    if (c.is_zero()) {
        entries_.clear();
        return *this;
    }
    for (auto &[k, x] : entries_)
        x *= c;
    return *this;
}

// ----------------------------------------------------------------- tensors

SparseTensor2 SparseTensor2::outer(const SparseVec &a, const SparseVec &b)
{
    SparseTensor2 t;
    for (const auto &[i, x] : a.entries())
        for (const auto &[j, y] : b.entries())
            t.add(i, j, x * y);
    return t;
}

SparseTensor2 SparseTensor2::wedge(const SparseVec &a, const SparseVec &b)
{
    SparseTensor2 t = outer(a, b);
    t -= outer(b, a);
    return t;
}

Scalar SparseTensor2::get(int i, int j) const
{
    auto it = entries_.find({i, j});
    return it == entries_.end() ? Scalar() : it->second;
}

void SparseTensor2::add(int i, int j, const Scalar &c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = entries_.try_emplace({i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            entries_.erase(it);
    }
}

void SparseTensor2::add_scaled(const SparseTensor2 &t, const Scalar &c)
{
    if (c.is_zero())
        return;
    for (const auto &[k, x] : t.entries_)
        add(k.first, k.second, x * c);
}

SparseTensor2 SparseTensor2::transpose() const
{
    SparseTensor2 r;
    for (const auto &[k, x] : entries_)
        r.entries_.emplace(Key{k.second, k.first}, x);
    return r;
}

SparseTensor2 SparseTensor2::conj() const
{
    SparseTensor2 r;
    for (const auto &[k, x] : entries_)
        r.entries_.emplace_hint(r.entries_.end(), k, x.conj());
    return r;
}

SparseTensor2 SparseTensor2::operator-() const
{
    SparseTensor2 r;
    for (const auto &[k, x] : entries_)
        r.entries_.emplace_hint(r.entries_.end(), k, -x);
    return r;
}

SparseTensor2 &SparseTensor2::operator+=(const SparseTensor2 &o)
{
    for (const auto &[k, x] : o.entries_)
        add(k.first, k.second, x);
    return *this;
}

SparseTensor2 &SparseTensor2::operator-=(const SparseTensor2 &o)
{
    for (const auto &[k, x] : o.entries_)
        add(k.first, k.second, -x);
    return *this;
}

SparseTensor2 &SparseTensor2::operator*=(const Scalar &c)
{
    if (c.is_zero()) {
        entries_.clear();
        return *this;
    }
    for (auto &[k, x] : entries_)
        x *= c;
    return *this;
}

SparseTensor2 SparseTensor2::map_slots(const BasisImage &f, const BasisImage &g) const
{
    std::map<int, SparseVec> fcache, gcache;
    auto image = [](std::map<int, SparseVec> &cache, const BasisImage &h, int k) -> const SparseVec & {
        auto it = cache.find(k);
        if (it == cache.end())
            it = cache.emplace(k, h(k)).first;
        return it->second;
    };
    SparseTensor2 r;
    for (const auto &[k, x] : entries_) {
        const SparseVec &a = image(fcache, f, k.first);
        const SparseVec &b = image(gcache, g, k.second);
        for (const auto &[i, y] : a.entries())
            for (const auto &[j, z] : b.entries())
                r.add(i, j, x * y * z);
    }
    return r;
}

SparseTensor2 conjugate_tensor(const SparseTensor2 &t)
{
    return t.conj();
}

Scalar SparseTensor3::get(int i, int j, int k) const
{
    auto it = entries_.find({i, j, k});
    return it == entries_.end() ? Scalar() : it->second;
}

void SparseTensor3::add(int i, int j, int k, const Scalar &c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = entries_.try_emplace({i, j, k}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            entries_.erase(it);
    }
}

SparseTensor3 &SparseTensor3::operator+=(const SparseTensor3 &o)
{
    for (const auto &[k, x] : o.entries_)
        add(k[0], k[1], k[2], x);
    return *this;
}

SparseTensor3 &SparseTensor3::operator-=(const SparseTensor3 &o)
{
    for (const auto &[k, x] : o.entries_)
        add(k[0], k[1], k[2], -x);
    return *this;
}

// --------------------------------------------------------------- subspaces

Subspace::Subspace(const std::vector<SparseVec> &spanning)
{
    for (const auto &v : spanning)
        insert(v);
}

SparseVec Subspace::reduce(SparseVec v) const
{
    auto it = v.entries().begin();
    while (it != v.entries().end()) {
        int k = it->first;
        auto row = rows_.find(k);
        if (row == rows_.end()) {
            ++it;
            continue;
        }
        Scalar c = it->second;
        v.add_scaled(row->second, -c);
        it = v.entries().upper_bound(k);
    }
    return v;
}

bool Subspace::insert(const SparseVec &v)
{
    SparseVec r = reduce(v);
    if (r.is_zero())
        return false;
    auto lead = r.entries().begin();
    int pivot = lead->first;
    Scalar inv = Scalar(1) / lead->second;
    r *= inv;
    rows_.emplace(pivot, std::move(r));
    return true;
}

bool Subspace::contains(const Subspace &other) const
{
    for (const auto &[p, row] : other.rows_)
        if (!contains(row))
            return false;
    return true;
}

std::vector<SparseVec> Subspace::basis() const
{
    std::vector<SparseVec> out;
    out.reserve(rows_.size());
    for (const auto &[p, row] : rows_)
        out.push_back(row);
    return out;
}

std::vector<int> Subspace::pivots() const
{
    std::vector<int> out;
    for (const auto &[p, row] : rows_)
        out.push_back(p);
    return out;
}

// ---------------------------------------------------------- linear systems

RationalVector AffineSolutionSpace::point(const RationalVector &coeffs) const
{
    if (empty)
        throw InputError("empty solution space has no points");
    if (coeffs.size() != basis.size())
        throw InputError("coefficient count does not match solution dimension");
    RationalVector x = particular;
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] += coeffs[k] * basis[k][j];
    return x;
}

namespace
{

using IntRow = std::vector<mpz_class>;

/// Scales a rational row to a primitive integer row.
IntRow integer_row(const RationalVector &row)
{
    mpz_class l = 1;
    for (const auto &q : row)
        if (sgn(q) != 0)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    IntRow out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        out[j] = row[j].get_num() * (l / row[j].get_den());
    return out;
}

void make_primitive(IntRow &row)
{
    mpz_class g = 0;
    for (const auto &x : row)
        if (sgn(x) != 0)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto &x : row)
            if (sgn(x) != 0)
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

struct Echelon
{
    std::vector<IntRow> rows;
    std::vector<std::size_t> pivot_cols;
    bool inconsistent = false;
};

/// Fraction-free row reduction of the augmented matrix [A | b] (b optional).
Echelon eliminate(std::vector<IntRow> rows, std::size_t columns)
{
    Echelon e;
    std::vector<bool> used(rows.size(), false);
    std::vector<std::size_t> pivot_rows;
    for (std::size_t c = 0; c < columns; ++c) {
        std::size_t piv = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (!used[r] && sgn(rows[r][c]) != 0) {
                piv = r;
                break;
            }
        if (piv == rows.size())
            continue;
        used[piv] = true;
        const IntRow &p = rows[piv];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == piv || sgn(rows[r][c]) == 0)
                continue;
            mpz_class a = p[c], f = rows[r][c];
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), f.get_mpz_t());
            a /= g;
            f /= g;
            for (std::size_t j = 0; j < rows[r].size(); ++j)
                rows[r][j] = a * rows[r][j] - f * p[j];
            make_primitive(rows[r]);
        }
        e.pivot_cols.push_back(c);
        pivot_rows.push_back(piv);
    }
    for (std::size_t r : pivot_rows)
        e.rows.push_back(rows[r]);
    // Remaining unused rows are zero in the coefficient part.
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!used[r] && rows[r].size() > columns && sgn(rows[r][columns]) != 0)
            e.inconsistent = true;
    return e;
}

}  // namespace

AffineSolutionSpace solve_linear_system(const RationalMatrix &a, const RationalVector &b, std::size_t columns)
{
    if (a.size() != b.size())
        throw InputError("row count of A does not match length of b");
    std::vector<IntRow> rows;
    rows.reserve(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r].size() != columns)
            throw InputError("row " + std::to_string(r) + " of A has the wrong length");
        RationalVector aug = a[r];
        aug.push_back(b[r]);
        rows.push_back(integer_row(aug));
    }
    Echelon e = eliminate(std::move(rows), columns);
    AffineSolutionSpace out;
    if (e.inconsistent) {
        out.empty = true;
        return out;
    }
    std::vector<int> pivot_row_of(columns, -1);
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k)
        pivot_row_of[e.pivot_cols[k]] = static_cast<int>(k);
    out.particular.assign(columns, 0);
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) {
        const IntRow &row = e.rows[k];
        out.particular[e.pivot_cols[k]] = Rational(row[columns], row[e.pivot_cols[k]]);
        out.particular[e.pivot_cols[k]].canonicalize();
    }
    for (std::size_t f = 0; f < columns; ++f) {
        if (pivot_row_of[f] >= 0)
            continue;
        RationalVector v(columns, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) {
            const IntRow &row = e.rows[k];
            if (sgn(row[f]) == 0)
                continue;
            v[e.pivot_cols[k]] = Rational(-row[f], row[e.pivot_cols[k]]);
            v[e.pivot_cols[k]].canonicalize();
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

AffineSolutionSpace solve_linear_system(const RationalMatrix &a, const RationalVector &b)
{
    if (a.empty())
        throw InputError("cannot infer the column count of an empty system");
    return solve_linear_system(a, b, a.front().size());
}

std::size_t matrix_rank(const RationalMatrix &a, std::size_t columns)
{
    std::vector<IntRow> rows;
    for (const auto &r : a) {
        if (r.size() != columns)
            throw InputError("matrix row has the wrong length");
        rows.push_back(integer_row(r));
    }
    return eliminate(std::move(rows), columns).pivot_cols.size();
}

RationalVector mat_vec(const RationalMatrix &a, const RationalVector &x)
{
    RationalVector y(a.size(), 0);
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r].size() != x.size())
            throw InputError("matrix-vector dimension mismatch");
        for (std::size_t j = 0; j < x.size(); ++j)
            y[r] += a[r][j] * x[j];
    }
    return y;
}

}  // namespace bdc
