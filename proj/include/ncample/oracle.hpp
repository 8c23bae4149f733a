#ifndef NCAMPLE_ORACLE_HPP
#define NCAMPLE_ORACLE_HPP

#include "ncample/bimodule.hpp"
#include "ncample/lattice.hpp"
#include "ncample/scheme.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace ncample {

/// [[a, b], [c, d]] acting on the column [x : y].
struct Mobius {
    Rational a = 1, b = 0, c = 0, d = 1;

    Rational det() const { return a * d - b * c; }
    Mobius inverse() const;
    Mobius operator*(const Mobius& other) const;
    bool operator==(const Mobius& other) const = default;
};

/// (p_1, ..., p_d) -> (g_1 p_perm(1), ..., g_d p_perm(d)); perm is 0-based.
struct FactorAutomorphism {
    std::vector<std::size_t> perm;
    std::vector<Mobius> mobius;

    static FactorAutomorphism identity(std::size_t d);
    std::size_t d() const { return perm.size(); }
    FactorAutomorphism inverse() const;
    /// Pullback on Num((P^1)^d): e_k -> e_perm(k).
    Matrix lattice_action() const;
    /// Throws ParseError if perm is not a permutation or some g_k is singular.
    void validate() const;
    bool operator==(const FactorAutomorphism& other) const = default;
};

/// Exponents (e_1, f_1, ..., e_d, f_d) of x_1^e_1 y_1^f_1 ... x_d^e_d y_d^f_d.
using SectionMonomial = std::vector<unsigned>;
using Degree = std::vector<long>;

struct MultiSection {
    Degree degree;
    std::map<SectionMonomial, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const MultiSection& other) const = default;
    MultiSection operator+(const MultiSection& other) const;
    MultiSection operator*(const Rational& c) const;
};

/// Polynomial product; degrees add.
MultiSection operator*(const MultiSection& lhs, const MultiSection& rhs);

/// prod (a_k + 1) if every a_k >= 0, else 0.
std::uint64_t section_space_dim(std::span<const long> degree);

/// Monomial basis in lexicographic exponent order (empty if some a_k < 0).
std::vector<MultiSection> monomial_basis(std::span<const long> degree);

/// x_k -> a x_perm(k) + b y_perm(k), y_k -> c x_perm(k) + d y_perm(k).
MultiSection pullback(const FactorAutomorphism& sigma, const MultiSection& s);

/// a'_perm(k) = a_k.
Degree pullback_degree(const FactorAutomorphism& sigma, std::span<const long> degree);

/// Rank of the span of sections sharing one degree.
std::size_t section_rank(const std::vector<MultiSection>& sections);

struct HomogeneousElement {
    MultiIndex index;
    MultiSection section;
};

/// Twisted multi-homogeneous coordinate ring of (P^1)^d for line bundles O(a_i)
/// and automorphisms sigma_i whose coordinate lifts commute exactly.
class OracleRing {
public:
    OracleRing(std::size_t d, std::vector<Degree> degrees, std::vector<FactorAutomorphism> automorphisms);

    std::size_t d() const { return d_; }
    std::size_t size() const { return degrees_.size(); }
    const Degree& degree(std::size_t i) const { return degrees_[i]; }
    const FactorAutomorphism& automorphism(std::size_t i) const { return autos_[i]; }

    /// Multidegree of B_n, expanded one pullback at a time.
    Degree piece_degree(std::span<const std::uint64_t> n) const;
    std::vector<MultiSection> graded_piece(std::span<const std::uint64_t> n) const;
    /// sigma^n(b) = T_1^n_1 (... T_s^n_s (b)), T_i the pullback by sigma_i.
    MultiSection twist(std::span<const std::uint64_t> n, const MultiSection& b) const;
    /// a . b = a sigma^m(b). Throws DegreeMismatch when an operand is not in its piece.
    HomogeneousElement multiply(const HomogeneousElement& a, const HomogeneousElement& b) const;

    /// Ring on the same data with every sigma_i replaced by its inverse and
    /// a_i by the inverse pullback of a_i.
    OracleRing opposite() const;
    BimoduleSystem shadow() const;

    HomogeneousElement random_element(std::span<const std::uint64_t> n, std::mt19937_64& rng) const;

private:
    std::size_t d_;
    std::vector<Degree> degrees_;
    std::vector<FactorAutomorphism> autos_;
};

/// Numerical model of (P^1)^d.
NumericalScheme p1_power_scheme(std::size_t d);

struct AssociativityReport {
    std::size_t samples = 0;
    std::size_t failures = 0;
    bool ok() const { return failures == 0; }
};

/// Random triples with indices in [0, max_index]^s.
AssociativityReport associativity_check(const OracleRing& ring, unsigned max_index, std::size_t samples,
                                        std::uint64_t seed);

/// tau(a . b) = tau(b) .' tau(a) with tau(a) = sigma'^n(a) on random pairs.
bool opposite_check(const OracleRing& ring, unsigned max_index, std::size_t samples, std::uint64_t seed);

/// phi(a, b, s) for s a section of L_a L_b, landing in L_b L_a.
using CommutationMap = std::function<MultiSection(std::size_t, std::size_t, const MultiSection&)>;

/// Hexagon compatibility of the commutation maps on L_i L_j L_k; canonical
/// (substitution identity) maps when phi is empty. Needs s >= 3.
bool bergman_check(const OracleRing& ring, std::size_t i, std::size_t j, std::size_t k,
                   const CommutationMap& phi = {});

struct HilbertMismatch {
    MultiIndex index;
    std::uint64_t sections = 0;
    Integer chi;
};

struct HilbertMatch {
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::vector<HilbertMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// dim B_n against chi(class(n)) for n in [1, range]^s, where every expanded
/// degree entry is >= 0.
HilbertMatch hilbert_match(const OracleRing& ring, const BimoduleSystem& sys, unsigned range);

}  // namespace ncample

#endif  // NCAMPLE_ORACLE_HPP
