// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "feqn/rational.hpp"

namespace feqn::detail {

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rational value;
    Vector x;
};

// maximize c.x subject to A x = b, x >= 0. Exact two-phase simplex, Bland's rule.
LpResult maximize(const Matrix& A, const Vector& b, const Vector& c);

}  // namespace feqn::detail
