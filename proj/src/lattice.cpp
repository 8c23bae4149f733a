#include "ncample/lattice.hpp"

#include "ncample/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ncample {

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(std::span<const Integer> values) {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += values[i].get_str();
    }
    return out + ")";
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly::UniPoly(std::initializer_list<long> coefficients) {
    for (long c : coefficients) coeffs_.emplace_back(c);
    trim();
}

UniPoly UniPoly::monomial(std::size_t degree, const Integer& coefficient) {
    std::vector<Integer> c(degree + 1, Integer(0));
    c[degree] = coefficient;
    return UniPoly(std::move(c));
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::operator+(const UniPoly& other) const {
    std::vector<Integer> c(std::max(coeffs_.size(), other.coeffs_.size()), Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (*this)[i] + other[i];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::operator-(const UniPoly& other) const {
    std::vector<Integer> c(std::max(coeffs_.size(), other.coeffs_.size()), Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (*this)[i] - other[i];
    return UniPoly(std::move(c));
}

UniPoly UniPoly::operator*(const UniPoly& other) const {
    if (is_zero() || other.is_zero()) return {};
    std::vector<Integer> c(coeffs_.size() + other.coeffs_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
    return UniPoly(std::move(c));
}

Integer UniPoly::evaluate(const Integer& x) const {
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::optional<UniPoly> UniPoly::exact_divide(const UniPoly& monic_divisor) const {
    if (monic_divisor.is_zero() || monic_divisor.leading() != 1)
        throw std::invalid_argument("exact_divide: divisor must be monic");
    if (is_zero()) return UniPoly{};
    const long dd = monic_divisor.degree();
    if (degree() < dd) return std::nullopt;
    std::vector<Integer> rem = coeffs_;
    std::vector<Integer> quot(static_cast<std::size_t>(degree() - dd + 1), Integer(0));
    for (long k = degree() - dd; k >= 0; --k) {
        const Integer q = rem[static_cast<std::size_t>(k + dd)];
        quot[static_cast<std::size_t>(k)] = q;
        if (q == 0) continue;
        for (long j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k + j)] -= q * monic_divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    return UniPoly(std::move(quot));
}

std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (long k = p.degree(); k >= 0; --k) {
        const Integer& c = p.coefficients()[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        const Integer a = abs(c);
        if (a != 1 || k == 0) os << a;
        if (k >= 1) os << "x";
        if (k >= 2) os << "^" << k;
        first = false;
    }
    return os;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rho) : rho_(rho), entries_(rho * rho, Integer(0)) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) : Matrix(rows.size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != rho_) throw std::invalid_argument("Matrix: rows must form a square");
        std::size_t c = 0;
        for (long v : row) (*this)(r, c++) = v;
        ++r;
    }
}

Matrix Matrix::from_rows(const std::vector<IntVector>& rows) {
    Matrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) throw std::invalid_argument("Matrix: rows must form a square");
        for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::identity(std::size_t rho) {
    Matrix m(rho);
    for (std::size_t i = 0; i < rho; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::operator+(const Matrix& other) const {
    Matrix out(rho_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + other.entries_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
    Matrix out(rho_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - other.entries_[i];
    return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
    Matrix out(rho_);
    for (std::size_t r = 0; r < rho_; ++r)
        for (std::size_t k = 0; k < rho_; ++k) {
            const Integer& a = (*this)(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < rho_; ++c) out(r, c) += a * other(k, c);
        }
    return out;
}

Matrix Matrix::operator*(const Integer& scalar) const {
    Matrix out(rho_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * scalar;
    return out;
}

IntVector Matrix::operator*(std::span<const Integer> v) const {
    if (v.size() != rho_) throw std::invalid_argument("Matrix * vector: length mismatch");
    IntVector out(rho_, Integer(0));
    for (std::size_t r = 0; r < rho_; ++r)
        for (std::size_t c = 0; c < rho_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

bool Matrix::is_identity() const { return *this == identity(rho_); }

Integer Matrix::trace() const {
    Integer t = 0;
    for (std::size_t i = 0; i < rho_; ++i) t += (*this)(i, i);
    return t;
}

Integer Matrix::max_abs_entry() const {
    Integer best = 0;
    for (const auto& e : entries_)
        if (abs(e) > best) best = abs(e);
    return best;
}

std::vector<IntVector> Matrix::rows() const {
    std::vector<IntVector> out(rho_, IntVector(rho_));
    for (std::size_t r = 0; r < rho_; ++r)
        for (std::size_t c = 0; c < rho_; ++c) out[r][c] = (*this)(r, c);
    return out;
}

Matrix Matrix::direct_sum(const Matrix& other) const {
    Matrix out(rho_ + other.rho_);
    for (std::size_t r = 0; r < rho_; ++r)
        for (std::size_t c = 0; c < rho_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < other.rho_; ++r)
        for (std::size_t c = 0; c < other.rho_; ++c) out(rho_ + r, rho_ + c) = other(r, c);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t r = 0; r < m.rho(); ++r) {
        if (r) os << ",";
        os << "[";
        for (std::size_t c = 0; c < m.rho(); ++c) {
            if (c) os << ",";
            os << m(r, c);
        }
        os << "]";
    }
    return os << "]";
}

IntVector add(std::span<const Integer> a, std::span<const Integer> b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: length mismatch");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IntVector subtract(std::span<const Integer> a, std::span<const Integer> b) {
    if (a.size() != b.size()) throw std::invalid_argument("subtract: length mismatch");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Integer out = 0;
    for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
    return out;
}

// ---------------------------------------------------------------- operations

UniPoly char_poly(const Matrix& m) {
    const std::size_t n = m.rho();
    // c[k] is the coefficient of x^k; c[n] = 1.
    std::vector<Integer> c(n + 1, Integer(0));
    c[n] = 1;
    Matrix mk(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk + Matrix::identity(n) * c[n - k + 1];
        const Integer tr = (m * mk).trace();
        if (!mpz_divisible_ui_p(tr.get_mpz_t(), k))
            throw std::logic_error("char_poly: inexact Faddeev-LeVerrier division");
        c[n - k] = -tr / Integer(static_cast<unsigned long>(k));
    }
    return UniPoly(std::move(c));
}

Integer determinant(const Matrix& m) {
    const Integer c0 = char_poly(m)[0];
    return m.rho() % 2 == 0 ? c0 : Integer(-c0);
}

Matrix power(const Matrix& m, std::uint64_t exponent) {
    Matrix result = Matrix::identity(m.rho());
    Matrix base = m;
    while (exponent) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent) base = base * base;
    }
    return result;
}

Matrix inverse(const Matrix& m) {
    const std::size_t n = m.rho();
    const UniPoly p = char_poly(m);
    const Integer c0 = p[0];
    if (abs(c0) != 1) throw NonInvertible();
    // m^{-1} = -(m^{n-1} + c_{n-1} m^{n-2} + ... + c_1 I) / c_0
    Matrix acc(n);
    for (std::size_t k = n; k >= 1; --k) acc = acc * m + Matrix::identity(n) * p[k];
    return acc * Integer(-c0);
}

Matrix signed_power(const Matrix& m, long exponent) {
    if (exponent >= 0) return power(m, static_cast<std::uint64_t>(exponent));
    return power(inverse(m), static_cast<std::uint64_t>(-exponent));
}

Matrix geometric_sum(const Matrix& m, std::uint64_t n) {
    const std::size_t rho = m.rho();
    // Walk the bits of n from the top, maintaining S(k) and m^k.
    Matrix sum(rho);
    Matrix pw = Matrix::identity(rho);
    for (int bit = 63; bit >= 0; --bit) {
        // S(2k) = S(k) + m^k S(k)
        sum = sum + pw * sum;
        pw = pw * pw;
        if ((n >> bit) & 1u) {
            // S(k+1) = I + m S(k)
            sum = Matrix::identity(rho) + m * sum;
            pw = pw * m;
        }
    }
    return sum;
}

std::size_t nilpotency_degree(const Matrix& n) {
    const std::size_t rho = n.rho();
    Matrix pw = n;
    for (std::size_t k = 1; k <= std::max<std::size_t>(rho, 1); ++k) {
        if (pw.is_zero()) return k;
        pw = pw * n;
    }
    throw NotNilpotent();
}

Matrix evaluate_at(const UniPoly& p, const Matrix& m) {
    Matrix acc(m.rho());
    for (long k = p.degree(); k >= 0; --k) acc = acc * m + Matrix::identity(m.rho()) * p[static_cast<std::size_t>(k)];
    return acc;
}

unsigned euler_phi(unsigned d) {
    unsigned result = d;
    unsigned n = d;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

UniPoly cyclotomic(unsigned d) {
    if (d == 0) throw std::invalid_argument("cyclotomic: order must be positive");
    UniPoly p = UniPoly::monomial(d) - UniPoly{1};
    for (unsigned e = 1; e < d; ++e) {
        if (d % e) continue;
        auto q = p.exact_divide(cyclotomic(e));
        if (!q) throw std::logic_error("cyclotomic: inexact division");
        p = *q;
    }
    return p;
}

std::vector<unsigned> cyclotomic_candidates(std::size_t rho) {
    // phi(d) >= sqrt(d / 2), so phi(d) <= rho forces d <= 2 rho^2.
    const unsigned limit = static_cast<unsigned>(std::max<std::size_t>(2, 2 * rho * rho));
    std::vector<unsigned> out;
    for (unsigned d = 1; d <= limit; ++d)
        if (euler_phi(d) <= rho) out.push_back(d);
    return out;
}

QuasiUnipotence is_quasi_unipotent(const Matrix& m) {
    QuasiUnipotence result;
    result.characteristic = char_poly(m);
    const Integer c0 = result.characteristic[0];
    if (abs(c0) != 1) throw NonInvertible();

    UniPoly remaining = result.characteristic;
    for (unsigned d : cyclotomic_candidates(m.rho())) {
        const UniPoly phi = cyclotomic(d);
        while (auto q = remaining.exact_divide(phi)) {
            result.factors.push_back(d);
            remaining = *q;
        }
    }
    if (remaining != UniPoly{1}) return result;

    std::uint64_t r = 1;
    for (unsigned d : result.factors) r = std::lcm(r, static_cast<std::uint64_t>(d));
    const Matrix n = power(m, r) - Matrix::identity(m.rho());
    if (!power(n, m.rho()).is_zero())
        throw std::logic_error("is_quasi_unipotent: m^r - I is not nilpotent");
    result.flag = true;
    result.order = r;
    return result;
}

}  // namespace ncample
