#include "oddarc/integer_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace oddarc {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    IntegerMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t l = 0; l < cols_; ++l) {
            const Integer& a = (*this)(i, l);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (o(l, j) != 0) out(i, j) += a * o(l, j);
        }
    return out;
}

IntegerMatrix IntegerMatrix::operator+(const IntegerMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    IntegerMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
}

IntegerMatrix IntegerMatrix::operator-(const IntegerMatrix& o) const {
    return *this + o.scaled(-1);
}

IntegerMatrix IntegerMatrix::scaled(const Integer& s) const {
    IntegerMatrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

bool IntegerMatrix::operator==(const IntegerMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntegerMatrix IntegerMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    IntegerMatrix out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
    return out;
}

IntegerMatrix IntegerMatrix::hstack(const IntegerMatrix& right) const {
    if (rows_ != right.rows_) throw std::invalid_argument("hstack: row mismatch");
    IntegerMatrix out(rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) out(i, cols_ + j) = right(i, j);
    }
    return out;
}

std::vector<Integer> IntegerMatrix::row(std::size_t r) const {
    return std::vector<Integer>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

std::vector<Integer> IntegerMatrix::column(std::size_t c) const {
    std::vector<Integer> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

std::vector<Integer> IntegerMatrix::apply(const std::vector<Integer>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: size mismatch");
    std::vector<Integer> out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool IntegerMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
        os << "]\n";
    }
    return os.str();
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0) (*this)(dst, j) += f * (*this)(src, j);
}

void IntegerMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0) (*this)(i, dst) += f * (*this)(i, src);
}

void IntegerMatrix::negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

HermiteForm hermite_impl(const IntegerMatrix& m, bool track) {
    HermiteForm res;
    res.h = m;
    if (track) res.u = IntegerMatrix::identity(m.rows());
    IntegerMatrix& h = res.h;
    std::size_t row = 0;
    for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
        while (true) {
            std::size_t best = h.rows();
            for (std::size_t r = row; r < h.rows(); ++r) {
                if (h(r, col) == 0) continue;
                if (best == h.rows() || abs(h(r, col)) < abs(h(best, col))) best = r;
            }
            if (best == h.rows()) break;
            h.swap_rows(row, best);
            if (track) res.u.swap_rows(row, best);
            bool clean = true;
            for (std::size_t r = row + 1; r < h.rows(); ++r) {
                if (h(r, col) == 0) continue;
                Integer q = floor_div(h(r, col), h(row, col));
                h.add_row_multiple(r, row, -q);
                if (track) res.u.add_row_multiple(r, row, -q);
                if (h(r, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (row < h.rows() && h(row, col) != 0) {
            if (h(row, col) < 0) {
                h.negate_row(row);
                if (track) res.u.negate_row(row);
            }
            for (std::size_t r = 0; r < row; ++r) {
                Integer q = floor_div(h(r, col), h(row, col));
                h.add_row_multiple(r, row, -q);
                if (track) res.u.add_row_multiple(r, row, -q);
            }
            res.pivot_cols.push_back(col);
            ++row;
        }
    }
    return res;
}

}  // namespace

HermiteForm hermite_rows(const IntegerMatrix& m) { return hermite_impl(m, true); }

std::size_t rank(const IntegerMatrix& m) {
    return hermite_impl(m, false).pivot_cols.size();
}

std::size_t rank_mod(const IntegerMatrix& m, unsigned long p) {
    std::vector<std::vector<unsigned long>> a(m.rows(), std::vector<unsigned long>(m.cols()));
    Integer pp(p);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), m(i, j).get_mpz_t(), pp.get_mpz_t());
            a[i][j] = r.get_ui();
        }
    auto inv = [p](unsigned long x) {
        unsigned long r = 1, e = p - 2;
        unsigned long b = x % p;
        while (e) {
            if (e & 1) r = static_cast<unsigned long>((static_cast<unsigned __int128>(r) * b) % p);
            b = static_cast<unsigned long>((static_cast<unsigned __int128>(b) * b) % p);
            e >>= 1;
        }
        return r;
    };
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && a[piv][col] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[row]);
        unsigned long iv = inv(a[row][col]);
        for (std::size_t r = row + 1; r < m.rows(); ++r) {
            if (a[r][col] == 0) continue;
            unsigned long f = static_cast<unsigned long>((static_cast<unsigned __int128>(a[r][col]) * iv) % p);
            for (std::size_t j = col; j < m.cols(); ++j) {
                unsigned long sub = static_cast<unsigned long>((static_cast<unsigned __int128>(f) * a[row][j]) % p);
                a[r][j] = (a[r][j] + p - sub) % p;
            }
        }
        ++row;
    }
    return row;
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
    SmithForm s;
    s.d = m;
    s.u = IntegerMatrix::identity(m.rows());
    s.v = IntegerMatrix::identity(m.cols());
    IntegerMatrix& d = s.d;
    const std::size_t R = d.rows(), C = d.cols();
    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block goes to (t, t)
            std::size_t br = R, bc = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (d(i, j) != 0 && (br == R || abs(d(i, j)) < abs(d(br, bc)))) {
                        br = i;
                        bc = j;
                    }
            if (br == R) goto done;
            d.swap_rows(t, br);
            s.u.swap_rows(t, br);
            d.swap_cols(t, bc);
            s.v.swap_cols(t, bc);
            bool dirty = false;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (d(i, t) == 0) continue;
                Integer q = floor_div(d(i, t), d(t, t));
                d.add_row_multiple(i, t, -q);
                s.u.add_row_multiple(i, t, -q);
                if (d(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (d(t, j) == 0) continue;
                Integer q = floor_div(d(t, j), d(t, t));
                d.add_col_multiple(j, t, -q);
                s.v.add_col_multiple(j, t, -q);
                if (d(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            bool divisible = true;
            for (std::size_t i = t + 1; i < R && divisible; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        d.add_row_multiple(t, i, 1);
                        s.u.add_row_multiple(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.u.negate_row(t);
        }
        s.invariants.push_back(d(t, t));
    }
done:
    return s;
}

IntegerMatrix kernel_basis(const IntegerMatrix& m) {
    // u * m^T = h; rows of u hitting zero rows of h span the left kernel of m^T.
    HermiteForm hf = hermite_rows(m.transpose());
    const std::size_t r = hf.pivot_cols.size();
    IntegerMatrix k(m.cols(), m.cols() - r);
    for (std::size_t i = r; i < m.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) k(j, i - r) = hf.u(i, j);
    return k;
}

Cokernel cokernel(const IntegerMatrix& m) {
    SmithForm s = smith_normal_form(m);
    Cokernel c;
    const std::size_t r = s.invariants.size();
    for (const auto& x : s.invariants)
        if (x != 1) c.torsion.push_back(x);
    c.free_rank = m.rows() - r;
    // u is unimodular; its inverse lifts the coordinates of the free part.
    HermiteForm inv = hermite_rows(s.u);
    IntegerMatrix uinv = inv.u;  // inv.h is the identity since u is unimodular
    c.free_basis = IntegerMatrix(m.rows(), c.free_rank);
    c.reduction = IntegerMatrix(c.free_rank, m.rows());
    for (std::size_t i = 0; i < c.free_rank; ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) {
            c.free_basis(j, i) = uinv(j, r + i);
            c.reduction(i, j) = s.u(r + i, j);
        }
    return c;
}

std::optional<std::vector<Integer>> solve_integer(const IntegerMatrix& a, const std::vector<Integer>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: size mismatch");
    SmithForm s = smith_normal_form(a);
    std::vector<Integer> ub = s.u.apply(b);
    std::vector<Integer> y(a.cols(), Integer(0));
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < s.invariants.size()) {
            if (ub[i] % s.invariants[i] != 0) return std::nullopt;
            y[i] = ub[i] / s.invariants[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(y);
}

bool same_rational_span(const IntegerMatrix& a, const IntegerMatrix& b) {
    std::size_t ra = rank(a), rb = rank(b);
    return ra == rb && rank(a.hstack(b)) == ra;
}

Integer determinant(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    IntegerMatrix a = m;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

std::size_t lead_of(const std::vector<Integer>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return i;
    return v.size();
}

void axpy(std::vector<Integer>& y, const Integer& a, const std::vector<Integer>& x) {
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] += a * x[i];
}

void axpy(std::map<int, Integer>& y, const Integer& a, const std::map<int, Integer>& x) {
    for (const auto& [k, c] : x) {
        Integer& slot = y[k];
        slot += a * c;
        if (slot == 0) y.erase(k);
    }
}

}  // namespace

void LatticeEchelon::add(std::vector<Integer> v, int tag) {
    if (v.size() != dim_) throw std::invalid_argument("LatticeEchelon: wrong dimension");
    std::map<int, Integer> combo{{tag, Integer(1)}};
    while (true) {
        std::size_t c = lead_of(v);
        if (c == dim_) return;
        auto it = std::find_if(rows_.begin(), rows_.end(), [c](const Row& r) { return r.lead >= c; });
        if (it == rows_.end() || it->lead != c) {
            Row r{std::move(v), std::move(combo), c};
            if (r.v[c] < 0) {
                for (auto& x : r.v) x = -x;
                for (auto& [k, x] : r.combo) x = -x;
            }
            rows_.insert(it, std::move(r));
            return;
        }
        Row& r = *it;
        while (v[c] != 0) {
            if (abs(v[c]) < abs(r.v[c])) {
                std::swap(v, r.v);
                std::swap(combo, r.combo);
            }
            Integer q = floor_div(v[c], r.v[c]);
            axpy(v, -q, r.v);
            axpy(combo, -q, r.combo);
        }
        if (r.v[c] < 0) {
            for (auto& x : r.v) x = -x;
            for (auto& [k, x] : r.combo) x = -x;
        }
    }
}

std::optional<std::map<int, Integer>> LatticeEchelon::express(std::vector<Integer> target) const {
    if (target.size() != dim_) throw std::invalid_argument("LatticeEchelon: wrong dimension");
    std::map<int, Integer> combo;
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.lead; ++i)
            if (target[i] != 0) return std::nullopt;
        if (target[r.lead] % r.v[r.lead] != 0) return std::nullopt;
        Integer q = target[r.lead] / r.v[r.lead];
        axpy(target, -q, r.v);
        axpy(combo, q, r.combo);
    }
    if (lead_of(target) != dim_) return std::nullopt;
    return combo;
}

}  // namespace oddarc
