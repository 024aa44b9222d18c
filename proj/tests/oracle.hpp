#pragma once
// Independent dense oracles for the tests. Nothing here calls the library's
// linear algebra or coboundary code: matrices are plain mpq_class tables and
// the twisted coboundary is rebuilt from the simplex lists.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "novikov/complex.hpp"
#include "novikov/local_system.hpp"
#include "novikov/rational.hpp"
#include "novikov/sparse.hpp"

namespace oracle {

using Dense = std::vector<std::vector<mpq_class>>;  // row-major

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<mpq_class>(c, 0)); }

inline std::size_t rank(Dense m) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

inline Dense multiply(const Dense& a, const Dense& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Dense out = zeros(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    return out;
}

inline mpq_class q(const novikov::Rational& r) { return r.to_mpq(); }

inline Dense from_sparse(const novikov::SparseMatrix& m) {
    Dense out = zeros(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.column(j)) out[e.index][j] = q(e.value);
    return out;
}

inline std::vector<mpq_class> from_sparse(const novikov::SparseVector& v, std::size_t n) {
    std::vector<mpq_class> out(n, 0);
    for (const auto& e : v) out[e.index] = q(e.value);
    return out;
}

/// Weight lookup t(u,v) for u < v.
using Weight = std::function<mpq_class(novikov::Vertex, novikov::Vertex)>;

inline Weight weights_of(const novikov::LocalSystem& s) {
    return [&s](novikov::Vertex u, novikov::Vertex v) { return q(s.weight(u, v)); };
}

inline Weight unit_weight() {
    return [](novikov::Vertex, novikov::Vertex) { return mpq_class(1); };
}

/// Twisted coboundary C^p -> C^{p+1} from the simplex lists.
inline Dense coboundary(const novikov::Complex& c, int p, const Weight& t) {
    const auto& rows = c.simplices(p + 1);
    const auto& cols = c.simplices(p);
    std::map<novikov::Simplex, std::size_t> col_index;
    for (std::size_t j = 0; j < cols.size(); ++j) col_index[cols[j]] = j;
    Dense d = zeros(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& s = rows[i];
        for (std::size_t k = 0; k < s.size(); ++k) {
            novikov::Simplex face = s;
            face.erase(face.begin() + static_cast<long>(k));
            mpq_class coeff = k == 0 ? t(s[0], s[1]) : mpq_class(k % 2 ? -1 : 1);
            d[i][col_index.at(face)] += coeff;
        }
    }
    return d;
}

/// dim H^p = dim C^p - rank d_p - rank d_{p-1}.
inline std::vector<std::size_t> betti(const novikov::Complex& c, const Weight& t) {
    int top = c.dimension();
    std::vector<std::size_t> ranks(top + 1, 0);
    for (int p = 0; p < top; ++p) ranks[p] = rank(coboundary(c, p, t));
    std::vector<std::size_t> out;
    for (int p = 0; p <= top; ++p) out.push_back(c.count(p) - ranks[p] - (p ? ranks[p - 1] : 0));
    return out;
}

/// Relative Betti numbers of (c, member) where member(p, simplex) marks Z.
inline std::vector<std::size_t> relative_betti(const novikov::Complex& c, const Weight& t,
                                               const std::function<bool(const novikov::Simplex&)>& in_z) {
    int top = c.dimension();
    std::vector<std::vector<std::size_t>> keep(top + 1);
    for (int p = 0; p <= top; ++p)
        for (std::size_t i = 0; i < c.count(p); ++i)
            if (!in_z(c.simplex(p, i))) keep[p].push_back(i);
    std::vector<std::size_t> ranks(top + 1, 0);
    for (int p = 0; p < top; ++p) {
        Dense full = coboundary(c, p, t);
        Dense sub = zeros(keep[p + 1].size(), keep[p].size());
        for (std::size_t i = 0; i < keep[p + 1].size(); ++i)
            for (std::size_t j = 0; j < keep[p].size(); ++j) sub[i][j] = full[keep[p + 1][i]][keep[p][j]];
        ranks[p] = rank(sub);
    }
    std::vector<std::size_t> out;
    for (int p = 0; p <= top; ++p) out.push_back(keep[p].size() - ranks[p] - (p ? ranks[p - 1] : 0));
    return out;
}

inline long alternating(const std::vector<std::size_t>& b) {
    long s = 0;
    for (std::size_t k = 0; k < b.size(); ++k) s += (k % 2 ? -1 : 1) * static_cast<long>(b[k]);
    return s;
}

/// Random positive rational with small numerator and denominator.
inline novikov::Rational random_positive(std::mt19937_64& rng, int bound = 7) {
    std::uniform_int_distribution<int> d(1, bound);
    return {d(rng), d(rng)};
}

/// Random valid system: a random gauge of the trivial one times random loop weights.
std::vector<novikov::Rational> random_gauge(std::mt19937_64& rng, std::size_t n);

} // namespace oracle

inline std::vector<novikov::Rational> oracle::random_gauge(std::mt19937_64& rng, std::size_t n) {
    std::vector<novikov::Rational> g;
    for (std::size_t i = 0; i < n; ++i) g.push_back(random_positive(rng));
    return g;
}
