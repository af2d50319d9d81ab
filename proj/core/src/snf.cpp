#include "biell/snf.hpp"

#include <algorithm>
#include <sstream>

#include "biell/errors.hpp"

namespace biell {

IntMat IntMat::identity(std::size_t n)
{
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const
{
    if (cols_ != o.rows_)
        throw input_error("matrix product: shape mismatch");
    IntMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

std::vector<Int> IntMat::row(std::size_t r) const
{
    std::vector<Int> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        out[j] = at(r, j);
    return out;
}

std::string IntMat::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j)
            os << at(i, j).get_str() << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? ";\n" : "]");
    }
    return os.str();
}

Int determinant(const IntMat& m)
{
    if (m.rows() != m.cols())
        throw input_error("determinant: matrix not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss: division-free up to exact divisions, keeps entries integral.
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a.at(swap_row, k) == 0)
                ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a.at(k, j), a.at(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(),
                             prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

namespace {

// Pivot selection contract: minimal |value| among nonzero entries of the
// trailing submatrix, ties by lowest row then lowest column.  This is what
// makes the decomposition reproducible across runs and platforms.
bool find_pivot(const IntMat& a, std::size_t t, std::size_t& pi, std::size_t& pj)
{
    bool found = false;
    Int best;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            const Int& v = a.at(i, j);
            if (v == 0) continue;
            Int av = abs(v);
            if (!found || av < best) {
                found = true;
                best = av;
                pi = i;
                pj = j;
            }
        }
    return found;
}

void swap_rows(IntMat& a, IntMat& u, std::size_t r1, std::size_t r2)
{
    if (r1 == r2) return;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r1, j), a.at(r2, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(r1, j), u.at(r2, j));
}

void swap_cols(IntMat& a, IntMat& v, std::size_t c1, std::size_t c2)
{
    if (c1 == c2) return;
    for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, c1), a.at(i, c2));
    for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, c1), v.at(i, c2));
}

// row r1 -= q * row r2
void add_row(IntMat& a, IntMat& u, std::size_t r1, std::size_t r2, const Int& q)
{
    if (q == 0) return;
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(r1, j) -= q * a.at(r2, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(r1, j) -= q * u.at(r2, j);
}

void add_col(IntMat& a, IntMat& v, std::size_t c1, std::size_t c2, const Int& q)
{
    if (q == 0) return;
    for (std::size_t i = 0; i < a.rows(); ++i) a.at(i, c1) -= q * a.at(i, c2);
    for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, c1) -= q * v.at(i, c2);
}

// Quotient rounded to nearest, so the remainder n - q*d satisfies
// |r| <= |d| / 2.  Balanced remainders halve the pivot between rounds,
// which is what keeps intermediate entries from exploding.
Int nearest_quotient(const Int& n, const Int& d)
{
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Int r2 = r * 2;
    if (mpz_cmpabs(r2.get_mpz_t(), d.get_mpz_t()) > 0)
        q += sgn(r) == sgn(d) ? 1 : -1;
    return q;
}

} // namespace

SnfResult smith_normal_form(const IntMat& m)
{
    SnfResult res;
    res.D = m;
    res.U = IntMat::identity(m.rows());
    res.V = IntMat::identity(m.cols());
    IntMat& a = res.D;
    std::size_t t = 0;
    const std::size_t limit = std::min(m.rows(), m.cols());

    while (t < limit) {
        std::size_t pi = 0, pj = 0;
        if (!find_pivot(a, t, pi, pj))
            break; // trailing submatrix is zero

        // Clear row and column t.  The pivot is re-selected globally every
        // round, so elimination always runs against the smallest entry of
        // the whole trailing submatrix; together with balanced remainders
        // (|r| <= |pivot| / 2) this keeps intermediate entries tame, where
        // clearing against a stale pivot lets them grow without bound.
        // Every repeat strictly shrinks the submatrix minimum, so the loop
        // terminates.
        for (;;) {
            swap_rows(a, res.U, t, pi);
            swap_cols(a, res.V, t, pj);

            bool reduced = true;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a.at(i, t) == 0) continue;
                add_row(a, res.U, i, t,
                        nearest_quotient(a.at(i, t), a.at(t, t)));
                if (a.at(i, t) != 0) reduced = false;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a.at(t, j) == 0) continue;
                add_col(a, res.V, j, t,
                        nearest_quotient(a.at(t, j), a.at(t, t)));
                if (a.at(t, j) != 0) reduced = false;
            }
            if (!reduced) {
                find_pivot(a, t, pi, pj); // some remainder is strictly smaller
                continue;
            }
            // Divisibility sweep: the pivot must divide every remaining
            // entry; fold a bad row in and redo the elimination.
            bool divides = true;
            for (std::size_t i = t + 1; i < a.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < a.cols() && divides; ++j)
                    if (!mpz_divisible_p(a.at(i, j).get_mpz_t(),
                                         a.at(t, t).get_mpz_t())) {
                        add_row(a, res.U, t, i, Int(-1));
                        divides = false;
                    }
            if (divides) break;
            find_pivot(a, t, pi, pj);
        }
        if (sgn(a.at(t, t)) < 0) {
            for (std::size_t j = 0; j < a.cols(); ++j) a.at(t, j) = -a.at(t, j);
            for (std::size_t j = 0; j < res.U.cols(); ++j)
                res.U.at(t, j) = -res.U.at(t, j);
        }
        ++t;
    }

    res.rank = t;
    res.diag.reserve(t);
    for (std::size_t i = 0; i < t; ++i)
        res.diag.push_back(a.at(i, i));
    return res;
}

Int FinAbGroup::exponent() const
{
    if (free_rank > 0) return 0;
    if (invariant_factors.empty()) return 1;
    return invariant_factors.back();
}

Int FinAbGroup::order() const
{
    if (free_rank > 0) return 0;
    Int o = 1;
    for (const Int& d : invariant_factors) o *= d;
    return o;
}

std::string FinAbGroup::to_string() const
{
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank.get_str();
        first = false;
    }
    for (const Int& d : invariant_factors) {
        if (!first) os << " x ";
        os << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

GroupQuotient::GroupQuotient(std::size_t n,
                             const std::vector<std::vector<Int>>& relations)
    : n_(n)
{
    for (const auto& r : relations)
        if (r.size() != n)
            throw input_error("quotient_group: relation length mismatch");

    IntMat rel(relations.size(), n);
    for (std::size_t i = 0; i < relations.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            rel.at(i, j) = relations[i][j];

    SnfResult snf = smith_normal_form(rel);
    V_ = snf.V;
    full_diag_.assign(n, Int(0));
    for (std::size_t i = 0; i < snf.rank; ++i)
        full_diag_[i] = snf.diag[i];

    group_.free_rank = Int(static_cast<unsigned long>(n - snf.rank));
    for (const Int& d : snf.diag)
        if (d >= 2)
            group_.invariant_factors.push_back(d);
}

std::vector<Int>
GroupQuotient::canonical_coordinates(const std::vector<Int>& element) const
{
    if (element.size() != n_)
        throw input_error("quotient element length mismatch");
    // The SNF gives U*R*V = D; row lattices satisfy span(R) * V = span(D),
    // so x -> x*V carries Z^n/span(R) isomorphically onto Z^n/span(D).
    std::vector<Int> c(n_, Int(0));
    for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t i = 0; i < n_; ++i)
            c[j] += element[i] * V_.at(i, j);
    }
    for (std::size_t j = 0; j < n_; ++j) {
        if (full_diag_[j] != 0) {
            c[j] %= full_diag_[j];
            if (c[j] < 0) c[j] += full_diag_[j];
        }
    }
    return c;
}

std::optional<Int> GroupQuotient::image_order(const std::vector<Int>& element) const
{
    std::vector<Int> c = canonical_coordinates(element);
    Int ord = 1;
    for (std::size_t j = 0; j < n_; ++j) {
        if (full_diag_[j] == 0) {
            if (c[j] != 0) return std::nullopt; // free coordinate: infinite
            continue;
        }
        if (c[j] == 0) continue;
        Int g = gcd(full_diag_[j], c[j]);
        Int part = full_diag_[j] / g;
        ord = lcm(ord, part);
    }
    return ord;
}

bool in_row_span(const std::vector<std::vector<Int>>& rows,
                 const std::vector<Int>& target)
{
    if (rows.empty()) {
        for (const Int& t : target)
            if (t != 0) return false;
        return true;
    }
    const std::size_t n = rows.front().size();
    if (target.size() != n)
        throw input_error("in_row_span: length mismatch");

    IntMat m(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n)
            throw input_error("in_row_span: ragged rows");
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = rows[i][j];
    }
    SnfResult snf = smith_normal_form(m);
    // target in rowspan(M)  <=>  target*V is componentwise divisible by the
    // diagonal (and zero beyond the rank).
    std::vector<Int> tv(n, Int(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            tv[j] += target[i] * snf.V.at(i, j);
    for (std::size_t j = 0; j < n; ++j) {
        if (j < snf.rank) {
            if (!mpz_divisible_p(tv[j].get_mpz_t(), snf.diag[j].get_mpz_t()))
                return false;
        } else if (tv[j] != 0) {
            return false;
        }
    }
    return true;
}

} // namespace biell
