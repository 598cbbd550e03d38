// Copyright (c) feqn contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace feqn {

using Rational = mpq_class;

/// A point of Q^k, or a value in Q^h.
using Vector = std::vector<Rational>;

/// p/q in lowest terms; q must be non-zero.
Rational frac(long p, long q);

/// Parses "p/q" or a signed integer. Decimal and exponent forms are rejected.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(std::span<const Rational> v);

Rational abs(const Rational& q);
int sign(const Rational& q);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& v);
Vector zeros(std::size_t n);
Vector unit(std::size_t n, std::size_t axis);
bool is_zero(std::span<const Rational> v);

/// Dense h x k rational matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix from_rows(const std::vector<Vector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector col(std::size_t c) const;
    void set_col(std::size_t c, const Vector& v);

    Vector apply(std::span<const Rational> x) const;
    bool is_zero() const;
    std::size_t rank() const;

    friend Matrix operator*(const Rational& s, const Matrix& m);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// An element of Q extended by the two infinities.
class Bound {
public:
    enum class Kind { NegInf, Finite, PosInf };

    Bound() = default;
    Bound(Rational value) : kind_(Kind::Finite), value_(std::move(value)) {}
    static Bound neg_inf() { return Bound(Kind::NegInf); }
    static Bound pos_inf() { return Bound(Kind::PosInf); }

    /// Accepts everything parse_rational does plus "inf", "+inf", "-inf".
    static Bound parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    const Rational& value() const;

    /// Multiplication by a non-zero rational; infinities flip with the sign.
    Bound scaled(const Rational& s) const;
    Bound negated() const { return scaled(Rational(-1)); }

    friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);
    friend bool operator==(const Bound& a, const Bound& b) { return (a <=> b) == 0; }

    /// Sum, defined unless the operands are opposite infinities.
    friend Bound operator+(const Bound& a, const Bound& b);

private:
    explicit Bound(Kind k) : kind_(k) {}
    Kind kind_ = Kind::Finite;
    Rational value_;
};

std::string to_string(const Bound& b);

}  // namespace feqn
