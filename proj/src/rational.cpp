// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#include "feqn/rational.hpp"

#include <algorithm>
#include <cassert>

#include "feqn/error.hpp"

namespace feqn {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::MissingData: return "missing-data";
    case ErrorCode::SizeGuard: return "size-guard";
    case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+'))
        body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error(ErrorCode::Parse, "not an exact rational literal: \"" + std::string(text) +
                                          "\" (expected an integer or p/q)");
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw Error(ErrorCode::Parse, "zero denominator in rational literal \"" + std::string(text) + "\"");
    Rational q(mpz_class(std::string(num), 10), d);
    q.canonicalize();
    if (text.front() == '-')
        q = -q;
    return q;
}

Rational frac(long p, long q) {
    if (q == 0)
        throw Error(ErrorCode::InvalidArgument, "zero denominator");
    Rational r{mpz_class(p), mpz_class(q)};
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(std::span<const Rational> v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += v[i].get_str();
    }
    return out + ")";
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

int sign(const Rational& q) { return sgn(q); }

Vector operator+(const Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

Vector operator-(const Vector& a, const Vector& b) {
    assert(a.size() == b.size());
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

Vector operator*(const Rational& s, const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = s * v[i];
    return out;
}

Vector zeros(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit(std::size_t n, std::size_t axis) {
    Vector v = zeros(n);
    v[axis] = 1;
    return v;
}

bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty())
        return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            throw Error(ErrorCode::InvalidArgument, "matrix rows have different lengths");
        for (std::size_t c = 0; c < m.cols_; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_col(std::size_t c, const Vector& v) {
    assert(v.size() == rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = v[r];
}

Vector Matrix::apply(std::span<const Rational> x) const {
    if (x.size() != cols_)
        throw Error(ErrorCode::InvalidArgument, "matrix has " + std::to_string(cols_) +
                                                    " columns but the point has dimension " +
                                                    std::to_string(x.size()));
    Vector y = zeros(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            y[r] += (*this)(r, c) * x[c];
    return y;
}

bool Matrix::is_zero() const { return feqn::is_zero(data_); }

std::size_t Matrix::rank() const {
    Matrix m = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows_ && m(pivot, c) == 0)
            ++pivot;
        if (pivot == rows_)
            continue;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(m(pivot, j), m(rank, j));
        for (std::size_t r = rank + 1; r < rows_; ++r) {
            if (m(r, c) == 0)
                continue;
            const Rational factor = m(r, c) / m(rank, c);
            for (std::size_t j = c; j < cols_; ++j)
                m(r, j) -= factor * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

Matrix operator*(const Rational& s, const Matrix& m) {
    Matrix out = m;
    for (auto& q : out.data_)
        q *= s;
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorCode::InvalidArgument, "matrix dimensions differ");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
        out.data_[i] -= b.data_[i];
    return out;
}

Bound Bound::parse(std::string_view text) {
    if (text == "inf" || text == "+inf")
        return pos_inf();
    if (text == "-inf")
        return neg_inf();
    return Bound(parse_rational(text));
}

const Rational& Bound::value() const {
    if (!is_finite())
        throw Error(ErrorCode::Internal, "value() called on an infinite bound");
    return value_;
}

Bound Bound::scaled(const Rational& s) const {
    assert(s != 0);
    switch (kind_) {
    case Kind::Finite: return Bound(Rational(value_ * s));
    case Kind::PosInf: return s > 0 ? pos_inf() : neg_inf();
    case Kind::NegInf: return s > 0 ? neg_inf() : pos_inf();
    }
    return *this;
}

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (a.kind_ != b.kind_ || !a.is_finite())
        return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    const int c = cmp(a.value_, b.value_);
    return c <=> 0;
}

Bound operator+(const Bound& a, const Bound& b) {
    if (a.is_finite() && b.is_finite())
        return Bound(Rational(a.value_ + b.value_));
    if (!a.is_finite() && !b.is_finite() && a.kind_ != b.kind_)
        throw Error(ErrorCode::Internal, "sum of opposite infinities");
    return a.is_finite() ? b : a;
}

std::string to_string(const Bound& b) {
    switch (b.kind()) {
    case Bound::Kind::NegInf: return "-inf";
    case Bound::Kind::PosInf: return "inf";
    case Bound::Kind::Finite: return to_string(b.value());
    }
    return {};
}

}  // namespace feqn
