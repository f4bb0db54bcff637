#include "neron/smith.hpp"

#include <stdexcept>

namespace neron {

IMat IMat::identity(size_t n) {
    IMat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Int(1);
    return m;
}

IMat mat_mul(const IMat& x, const IMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    IMat r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            if (x(i, k).is_zero()) continue;
            for (size_t j = 0; j < y.cols; ++j) {
                if (y(k, j).is_zero()) continue;
                r(i, j) += x(i, k) * y(k, j);
            }
        }
    return r;
}

std::vector<Int> SmithResult::diag() const {
    std::vector<Int> out;
    size_t n = std::min(d.rows, d.cols);
    for (size_t i = 0; i < n; ++i) out.push_back(d(i, i));
    return out;
}

namespace {

void swap_rows(IMat& m, size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}
void swap_cols(IMat& m, size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}
// row[i] += q * row[j]
void add_row(IMat& m, size_t i, size_t j, const Int& q) {
    if (q.is_zero()) return;
    for (size_t c = 0; c < m.cols; ++c) m(i, c) += q * m(j, c);
}
void add_col(IMat& m, size_t i, size_t j, const Int& q) {
    if (q.is_zero()) return;
    for (size_t r = 0; r < m.rows; ++r) m(r, i) += q * m(r, j);
}
void negate_row(IMat& m, size_t i) {
    for (size_t c = 0; c < m.cols; ++c) m(i, c) = -m(i, c);
}

}  // namespace

SmithResult smith_normal_form(IMat m) {
    const size_t rows = m.rows, cols = m.cols;
    IMat u = IMat::identity(rows);
    IMat v = IMat::identity(cols);

    size_t t = 0;
    const size_t tmax = std::min(rows, cols);
    while (t < tmax) {
        // deterministic pivot: smallest |entry| in the submatrix, row-major tie-break
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (m(i, j).is_zero()) continue;
                if (!found || m(i, j).abs() < m(pi, pj).abs()) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        swap_rows(m, t, pi);
        swap_rows(u, t, pi);
        swap_cols(m, t, pj);
        swap_cols(v, t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m(i, t).is_zero()) continue;
                Int q = Int::div_round(m(i, t), m(t, t));
                add_row(m, i, t, -q);
                add_row(u, i, t, -q);
                if (!m(i, t).is_zero()) {
                    // remainder smaller than pivot: swap up and restart
                    swap_rows(m, t, i);
                    swap_rows(u, t, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            for (size_t j = t + 1; j < cols; ++j) {
                if (m(t, j).is_zero()) continue;
                Int q = Int::div_round(m(t, j), m(t, t));
                add_col(m, j, t, -q);
                add_col(v, j, t, -q);
                if (!m(t, j).is_zero()) {
                    swap_cols(m, t, j);
                    swap_cols(v, t, j);
                    clean = false;
                }
            }
        }
        // pivot must divide the rest of the submatrix
        bool divides = true;
        for (size_t i = t + 1; i < rows && divides; ++i)
            for (size_t j = t + 1; j < cols && divides; ++j) {
                if (!(m(i, j) % m(t, t)).is_zero()) {
                    add_row(m, t, i, Int(1));
                    add_row(u, t, i, Int(1));
                    divides = false;
                }
            }
        if (!divides) continue;  // redo this pivot
        if (m(t, t).is_negative()) {
            negate_row(m, t);
            negate_row(u, t);
        }
        ++t;
    }

    SmithResult res;
    res.rank = t;
    res.d = std::move(m);
    res.u = std::move(u);
    res.v = std::move(v);
    return res;
}

AbelianGroup AbelianGroup::from_relations(IMat relations) {
    AbelianGroup g;
    g.n_ = relations.rows;
    g.snf_ = smith_normal_form(std::move(relations));
    for (size_t i = 0; i < g.snf_.rank; ++i) {
        Int d = g.snf_.d(i, i);
        g.all_diag_.push_back(d);
        if (!(d == Int(1))) {
            g.factors_.push_back(d);
            g.factor_index_.push_back(i);
        }
    }
    return g;
}

Int AbelianGroup::order() const {
    if (free_rank() != 0) throw std::logic_error("AbelianGroup: infinite group has no order");
    Int o(1);
    for (const Int& f : factors_) o *= f;
    return o;
}

std::vector<Int> AbelianGroup::project(const std::vector<Int>& v) const {
    if (v.size() != n_) throw std::invalid_argument("AbelianGroup: vector has wrong rank");
    std::vector<Int> out;
    out.reserve(factors_.size() + free_rank());
    // w = U * v; torsion coords reduced mod d_i, 1-factors dropped
    for (size_t idx : factor_index_) {
        Int w;
        for (size_t j = 0; j < n_; ++j) {
            if (!snf_.u(idx, j).is_zero() && !v[j].is_zero()) w += snf_.u(idx, j) * v[j];
        }
        Int r = w % all_diag_[idx];
        if (r.is_negative()) r += all_diag_[idx];
        out.push_back(r);
    }
    for (size_t i = snf_.rank; i < n_; ++i) {
        Int w;
        for (size_t j = 0; j < n_; ++j) {
            if (!snf_.u(i, j).is_zero() && !v[j].is_zero()) w += snf_.u(i, j) * v[j];
        }
        out.push_back(w);
    }
    return out;
}

bool AbelianGroup::class_is_zero(const std::vector<Int>& cls) const {
    for (const Int& c : cls)
        if (!c.is_zero()) return false;
    return true;
}

Int AbelianGroup::order_of(const std::vector<Int>& cls) const {
    if (cls.size() != factors_.size() + free_rank())
        throw std::invalid_argument("AbelianGroup: bad class vector");
    for (size_t i = factors_.size(); i < cls.size(); ++i)
        if (!cls[i].is_zero()) throw std::logic_error("AbelianGroup: class has infinite order");
    Int o(1);
    for (size_t i = 0; i < factors_.size(); ++i) {
        const Int& d = factors_[i];
        Int k = d / gcd(cls[i], d);
        // lcm(o, k)
        o = o / gcd(o, k) * k;
    }
    return o;
}

std::optional<Int> AbelianGroup::solve_multiple(const std::vector<Int>& target,
                                                const std::vector<Int>& value) const {
    if (target.size() != value.size()) throw std::invalid_argument("solve_multiple: size mismatch");
    for (size_t i = factors_.size(); i < target.size(); ++i)
        if (!target[i].is_zero() || !value[i].is_zero())
            throw std::logic_error("solve_multiple: free part not supported");
    // solve k * t_i = c_i (mod d_i) simultaneously by CRT over constraints
    Int mod(1), k(0);  // current solution k modulo mod
    for (size_t i = 0; i < factors_.size(); ++i) {
        const Int& d = factors_[i];
        Xgcd e = xgcd(target[i], d);
        if (!(value[i] % e.g).is_zero()) return std::nullopt;
        Int di = d / e.g;
        Int ki = (e.x * (value[i] / e.g)) % di;
        if (ki.is_negative()) ki += di;
        // merge k (mod mod) with ki (mod di)
        Xgcd m = xgcd(mod, di);
        if (!((ki - k) % m.g).is_zero()) return std::nullopt;
        Int lcm = mod / m.g * di;
        Int step = ((ki - k) / m.g * m.x) % (di / m.g);
        Int merged = (k + mod * step) % lcm;
        if (merged.is_negative()) merged += lcm;
        k = merged;
        mod = lcm;
    }
    return k;
}

Int AbelianGroup::subgroup_order(const std::vector<std::vector<Int>>& classes) const {
    if (free_rank() != 0) throw std::logic_error("subgroup_order: torsion groups only");
    size_t nf = factors_.size();
    IMat rel(nf, nf + classes.size());
    for (size_t i = 0; i < nf; ++i) rel(i, i) = factors_[i];
    for (size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].size() != nf) throw std::invalid_argument("subgroup_order: bad class");
        for (size_t i = 0; i < nf; ++i) rel(i, nf + c) = classes[c][i];
    }
    AbelianGroup quot = AbelianGroup::from_relations(std::move(rel));
    return order() / quot.order();
}

}  // namespace neron
