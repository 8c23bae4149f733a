#ifndef NCAMPLE_BIMODULE_HPP
#define NCAMPLE_BIMODULE_HPP

#include "ncample/lattice.hpp"
#include "ncample/multipoly.hpp"
#include "ncample/scheme.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ncample {

/// Exponent tuple (n_1, ..., n_s) indexing the multigraded pieces.
using MultiIndex = std::vector<std::uint64_t>;

/// Numerical shadow of an invertible bimodule L_sigma: the class of L and the
/// matrix of the pullback sigma^* on the numerical lattice.
struct Bimodule {
    DivisorClass divisor;
    Matrix action;
    /// User assertion of the star property the GK computation relies on. Not verified.
    bool star = false;

    bool operator==(const Bimodule& other) const = default;
};

/// A scheme with s >= 1 pairwise commuting bimodules. Commutation is checked
/// on the numerical lattice only:
///   M_i M_j = M_j M_i   and   D_i + M_i D_j = D_j + M_j D_i.
class BimoduleSystem {
public:
    /// Throws NonInvertible(i), MatrixCommutationFail(i, j), ClassCommutationFail(i, j)
    /// (1-based indices) or ParseError on shape violations.
    BimoduleSystem(NumericalScheme scheme, std::vector<Bimodule> bimodules, std::vector<std::string> notes = {});

    const NumericalScheme& scheme() const { return scheme_; }
    const std::vector<Bimodule>& bimodules() const { return bimodules_; }
    const Bimodule& operator[](std::size_t i) const { return bimodules_[i]; }
    std::size_t size() const { return bimodules_.size(); }
    std::size_t rho() const { return scheme_.rho(); }
    /// Provenance remarks carried through constructors (e.g. product lattices).
    const std::vector<std::string>& notes() const { return notes_; }

    bool operator==(const BimoduleSystem& other) const;

private:
    NumericalScheme scheme_;
    std::vector<Bimodule> bimodules_;
    std::vector<std::string> notes_;
};

/// prod_i M_i^{n_i}.
Matrix action_power(const BimoduleSystem& sys, std::span<const std::uint64_t> n);

/// Class of |L_1^{n_1} ... L_s^{n_s}| by the closed form
///   sum_a (prod_{b<a} M_b^{n_b}) (sum_{j<n_a} M_a^j) D_a.
DivisorClass class_at(const BimoduleSystem& sys, std::span<const std::uint64_t> n);
DivisorClass class_at(const BimoduleSystem& sys, std::initializer_list<std::uint64_t> n);

/// The class as a vector of rho polynomials in n_1..n_s, built from
///   M^n = sum_c C(n, c) N^c  and  sum_{j<n} M^j = sum_d C(n, d+1) N^d,  N = M - I.
/// Requires every action unipotent (UnipotentRequired otherwise).
std::vector<MultiPoly> symbolic_class(const BimoduleSystem& sys);

/// (D_i, M_i) -> (M_i^{-1} D_i, M_i^{-1}).
BimoduleSystem dual(const BimoduleSystem& sys);

/// (D_i, M_i) -> (sum_{j<n_i} M_i^j D_i, M_i^{n_i}); all n_i >= 1.
BimoduleSystem veronese(const BimoduleSystem& sys, std::span<const std::uint64_t> n);

/// The single bimodule L_1^{n_1} ... L_s^{n_s}; all n_i >= 1.
BimoduleSystem combined_single(const BimoduleSystem& sys, std::span<const std::uint64_t> n);

/// Bigraded Rees system: the single bimodule duplicated. ArityError unless s = 1.
BimoduleSystem rees(const BimoduleSystem& sys);

/// Tensor product system on X x Y over the direct-sum lattice.
BimoduleSystem product(const BimoduleSystem& x, const BimoduleSystem& y);

inline const char* kDirectSumNote =
    "lattice is the direct-sum sublattice Num(X) + Num(Y); Num(X x Y) may have larger rank";

}  // namespace ncample

#endif  // NCAMPLE_BIMODULE_HPP
