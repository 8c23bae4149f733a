#ifndef NCAMPLE_MULTIPOLY_HPP
#define NCAMPLE_MULTIPOLY_HPP

#include "ncample/lattice.hpp"

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace ncample {

using Exponents = std::vector<unsigned>;

/// Polynomial with rational coefficients in the monomial basis n_1^{k_1}...n_s^{k_s}.
using MonomialTerms = std::map<Exponents, Rational>;

/// Integer-valued polynomial in s variables, stored in the binomial basis
///   p(n) = sum_k c_k * C(n_1, k_1) * ... * C(n_s, k_s)
/// with integer c_k. Zero coefficients are never stored, so two polynomials
/// are equal iff their term maps are equal.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Integer& c);
    /// The basis element c * prod_i C(n_i, k_i).
    static MultiPoly basis(const Exponents& k, const Integer& c = 1);
    /// C(n_i, 1) = n_i.
    static MultiPoly variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponents, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Integer coefficient(const Exponents& k) const;
    Integer constant_term() const { return coefficient(Exponents(nvars_, 0)); }
    /// Total degree; -1 for the zero polynomial.
    long total_degree() const;
    long degree_in(std::size_t var) const;

    void add_term(const Exponents& k, const Integer& c);

    MultiPoly operator+(const MultiPoly& other) const;
    MultiPoly operator-(const MultiPoly& other) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& other) const;
    MultiPoly operator*(const Integer& scalar) const;
    MultiPoly& operator+=(const MultiPoly& other);
    bool operator==(const MultiPoly& other) const = default;

    /// Divides every coefficient by d; throws std::logic_error if inexact.
    MultiPoly exact_divide(const Integer& d) const;

    Integer evaluate(std::span<const Integer> point) const;
    Integer evaluate(std::initializer_list<long> point) const;

    std::string str(const std::string& var = "n") const;

private:
    void check_same_arity(const MultiPoly& other) const;

    std::size_t nvars_ = 0;
    std::map<Exponents, Integer> terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

/// Generalised binomial coefficient C(n, k) for any integer n.
Integer binomial(const Integer& n, unsigned long k);

/// Converts a monomial-basis polynomial. Throws NotIntegerValued when some
/// binomial-basis coefficient is not an integer.
MultiPoly from_monomials(std::size_t nvars, const MonomialTerms& terms);

MonomialTerms to_monomials(const MultiPoly& p);

/// q(n) = p(n + t).
MultiPoly shift(const MultiPoly& p, std::span<const Integer> t);

/// f(n) = sum over 1 <= n_i <= n of p(n_1, ..., n_s), as a one-variable polynomial.
MultiPoly box_sum(const MultiPoly& p);

/// p(q_1, ..., q_rho) where the q_j share a common variable set.
MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> substitutions);

/// C(q, k) as a polynomial.
MultiPoly binomial_of(const MultiPoly& q, unsigned k);

/// t -> p(base + t * direction) as a one-variable polynomial.
MultiPoly restrict_to_ray(const MultiPoly& p, std::span<const Integer> base,
                          std::span<const Integer> direction);

/// Finite-difference interpolation: the unique polynomial of per-variable degree
/// <= degrees[i] through the values of `f` on the box prod [0, degrees[i]].
template <typename F>
MultiPoly interpolate(std::span<const unsigned> degrees, F&& f);

// ---------------------------------------------------------------- positivity

struct Ray {
    IntVector base;
    IntVector direction;
    /// t -> p(base + t * direction).
    MultiPoly restriction;
    /// The restriction is < 0 for every integer t >= threshold (strict witness)
    /// or identically zero (vanishing witness, threshold 0).
    Integer threshold;
    bool vanishing = false;
};

struct PositivityResult {
    enum class Kind { Yes, No, Unknown };
    Kind kind = Kind::Unknown;
    /// Yes: p(n) > 0 for all n >= start.
    IntVector start;
    /// No: refuting ray.
    Ray witness;
    unsigned bound = 0;
};

const char* to_string(PositivityResult::Kind kind);

/// Smallest integer T such that the one-variable polynomial g (in binomial
/// basis) has the sign of its leading coefficient for all t >= T.
Integer sign_threshold(const MultiPoly& g);

/// Certified semi-decision for "p(n) > 0 for all n >= some m0".
///   Yes: shifting by t*(1,...,1) leaves all binomial coefficients >= 0 and the
///        constant term > 0, for the first such t in [0, search_bound].
///   No:  a ray base + t*direction (all direction entries >= 1) along which p is
///        eventually negative, or identically zero.
///   Unknown otherwise.
PositivityResult eventually_positive(const MultiPoly& p, unsigned search_bound);

// ---------------------------------------------------------------- template impl

template <typename F>
MultiPoly interpolate(std::span<const unsigned> degrees, F&& f) {
    const std::size_t s = degrees.size();
    std::size_t total = 1;
    for (unsigned d : degrees) total *= d + 1;
    std::vector<Integer> values(total);
    std::vector<std::size_t> stride(s, 1);
    for (std::size_t i = s; i-- > 1;) stride[i - 1] = stride[i] * (degrees[i] + 1);
    IntVector point(s);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = 0; i < s; ++i) {
            point[i] = static_cast<unsigned long>(rest / stride[i]);
            rest %= stride[i];
        }
        values[idx] = f(std::span<const Integer>(point));
    }
    // Forward differences along each axis turn values into binomial-basis coefficients.
    for (std::size_t axis = 0; axis < s; ++axis) {
        const std::size_t len = degrees[axis] + 1;
        for (std::size_t idx = 0; idx < total; ++idx) {
            if ((idx / stride[axis]) % len != 0) continue;
            for (std::size_t level = 1; level < len; ++level)
                for (std::size_t j = len - 1; j >= level; --j)
                    values[idx + j * stride[axis]] -= values[idx + (j - 1) * stride[axis]];
        }
    }
    MultiPoly out(s);
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (values[idx] == 0) continue;
        Exponents k(s);
        std::size_t rest = idx;
        for (std::size_t i = 0; i < s; ++i) {
            k[i] = static_cast<unsigned>(rest / stride[i]);
            rest %= stride[i];
        }
        out.add_term(k, values[idx]);
    }
    return out;
}

}  // namespace ncample

#endif  // NCAMPLE_MULTIPOLY_HPP
