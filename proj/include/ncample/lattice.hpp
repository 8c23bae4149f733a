#ifndef NCAMPLE_LATTICE_HPP
#define NCAMPLE_LATTICE_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace ncample {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);
std::string to_string(std::span<const Integer> values);

/// Dense univariate integer polynomial, coefficients lowest degree first.
/// The zero polynomial has no coefficients.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Integer> coefficients);
    UniPoly(std::initializer_list<long> coefficients);

    static UniPoly monomial(std::size_t degree, const Integer& coefficient = 1);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Integer>& coefficients() const { return coeffs_; }
    Integer operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
    const Integer& leading() const { return coeffs_.back(); }

    UniPoly operator+(const UniPoly& other) const;
    UniPoly operator-(const UniPoly& other) const;
    UniPoly operator*(const UniPoly& other) const;
    bool operator==(const UniPoly& other) const = default;

    Integer evaluate(const Integer& x) const;

    /// Division by a monic divisor. Returns the quotient when the remainder is
    /// zero, nothing otherwise.
    std::optional<UniPoly> exact_divide(const UniPoly& monic_divisor) const;

private:
    void trim();
    std::vector<Integer> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const UniPoly& p);

/// Square integer matrix acting on column vectors by left multiplication.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t rho);
    Matrix(std::initializer_list<std::initializer_list<long>> rows);
    static Matrix from_rows(const std::vector<IntVector>& rows);
    static Matrix identity(std::size_t rho);
    static Matrix zero(std::size_t rho) { return Matrix(rho); }

    std::size_t rho() const { return rho_; }

    Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * rho_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * rho_ + c]; }

    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator*(const Matrix& other) const;
    Matrix operator*(const Integer& scalar) const;
    IntVector operator*(std::span<const Integer> v) const;
    bool operator==(const Matrix& other) const = default;

    bool is_zero() const;
    bool is_identity() const;
    Integer trace() const;
    Integer max_abs_entry() const;
    std::vector<IntVector> rows() const;

    /// Block-diagonal sum diag(*this, other).
    Matrix direct_sum(const Matrix& other) const;

private:
    std::size_t rho_ = 0;
    std::vector<Integer> entries_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

IntVector add(std::span<const Integer> a, std::span<const Integer> b);
IntVector subtract(std::span<const Integer> a, std::span<const Integer> b);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);

/// det(xI - m), computed by the Faddeev-LeVerrier recurrence with exact division.
UniPoly char_poly(const Matrix& m);

Integer determinant(const Matrix& m);

/// Non-negative power by repeated squaring.
Matrix power(const Matrix& m, std::uint64_t exponent);

/// Inverse of a unimodular matrix via Cayley-Hamilton. Throws NonInvertible if |det| != 1.
Matrix inverse(const Matrix& m);

/// m^exponent for any sign of exponent; negative exponents require |det| = 1.
Matrix signed_power(const Matrix& m, long exponent);

/// Sum_{j=0}^{n-1} m^j. The empty sum is the zero matrix.
Matrix geometric_sum(const Matrix& m, std::uint64_t n);

/// Smallest k >= 1 with n^k = 0. Throws NotNilpotent.
std::size_t nilpotency_degree(const Matrix& n);

/// Evaluates p at the matrix m (Horner scheme).
Matrix evaluate_at(const UniPoly& p, const Matrix& m);

/// The d-th cyclotomic polynomial.
UniPoly cyclotomic(unsigned d);

unsigned euler_phi(unsigned d);

/// All d with phi(d) <= rho, ascending.
std::vector<unsigned> cyclotomic_candidates(std::size_t rho);

struct QuasiUnipotence {
    bool flag = false;
    /// Lcm of the cyclotomic orders; present iff flag.
    std::optional<std::uint64_t> order;
    /// Cyclotomic orders d found, with multiplicity, ascending.
    std::vector<unsigned> factors;
    UniPoly characteristic;
};

/// Decides whether every eigenvalue of m is a root of unity by exact cyclotomic
/// division of the characteristic polynomial. Throws NonInvertible if |det| != 1.
QuasiUnipotence is_quasi_unipotent(const Matrix& m);

}  // namespace ncample

#endif  // NCAMPLE_LATTICE_HPP
