// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include "simplex.hpp"

#include <cassert>
#include <optional>

namespace feqn::detail {

namespace {

// Rows 0..m-1 hold [A | b]; row m holds the reduced costs z_j - c_j and the objective value.
struct Tableau {
    std::vector<Vector> rows;
    std::vector<std::size_t> basis;
    std::size_t width = 0;  // number of variable columns; rhs lives at index `width`

    std::size_t constraints() const { return basis.size(); }
    Vector& objective() { return rows.back(); }

    void pivot(std::size_t r, std::size_t c) {
        const Rational p = rows[r][c];
        for (auto& q : rows[r])
            q /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j <= width; ++j)
                rows[i][j] -= f * rows[r][j];
        }
        basis[r] = c;
    }

    // Returns false when unbounded.
    bool optimize(std::size_t usable_columns) {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < usable_columns; ++j)
                if (objective()[j] < 0) {
                    entering = j;
                    break;
                }
            if (!entering)
                return true;
            std::optional<std::size_t> leaving;
            Rational best;
            for (std::size_t i = 0; i < constraints(); ++i) {
                if (rows[i][*entering] <= 0)
                    continue;
                const Rational ratio = rows[i][width] / rows[i][*entering];
                if (!leaving || ratio < best || (ratio == best && basis[i] < basis[*leaving])) {
                    leaving = i;
                    best = ratio;
                }
            }
            if (!leaving)
                return false;
            pivot(*leaving, *entering);
        }
    }

    void load_objective(const Vector& cost) {
        Vector& z = objective();
        for (std::size_t j = 0; j <= width; ++j)
            z[j] = j < width ? Rational(-cost[j]) : Rational(0);
        for (std::size_t i = 0; i < constraints(); ++i) {
            const Rational& cb = cost[basis[i]];
            if (cb == 0)
                continue;
            for (std::size_t j = 0; j <= width; ++j)
                z[j] += cb * rows[i][j];
        }
    }
};

}  // namespace

LpResult maximize(const Matrix& A, const Vector& b, const Vector& c) {
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    assert(b.size() == m && c.size() == n);

    Tableau t;
    t.width = n + m;
    t.rows.assign(m + 1, zeros(t.width + 1));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int s = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j)
            t.rows[i][j] = s * A(i, j);
        t.rows[i][n + i] = 1;
        t.rows[i][t.width] = s * b[i];
        t.basis[i] = n + i;
    }

    Vector phase1(t.width, Rational(0));
    for (std::size_t j = n; j < t.width; ++j)
        phase1[j] = -1;
    t.load_objective(phase1);
    t.optimize(t.width);

    LpResult result;
    if (t.objective()[t.width] != 0) {
        result.status = LpResult::Status::Infeasible;
        return result;
    }

    // Drive artificials out of the basis; rows where that is impossible are redundant.
    for (std::size_t i = 0; i < t.constraints();) {
        if (t.basis[i] < n) {
            ++i;
            continue;
        }
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < n; ++j)
            if (t.rows[i][j] != 0) {
                col = j;
                break;
            }
        if (col) {
            t.pivot(i, *col);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    Vector phase2(t.width, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
        phase2[j] = c[j];
    t.load_objective(phase2);
    if (!t.optimize(n)) {
        result.status = LpResult::Status::Unbounded;
        return result;
    }

    result.status = LpResult::Status::Optimal;
    result.value = t.objective()[t.width];
    result.x = zeros(n);
    for (std::size_t i = 0; i < t.constraints(); ++i)
        if (t.basis[i] < n)
            result.x[t.basis[i]] = t.rows[i][t.width];
    return result;
}

}  // namespace feqn::detail
