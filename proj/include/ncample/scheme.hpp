#ifndef NCAMPLE_SCHEME_HPP
#define NCAMPLE_SCHEME_HPP

#include "ncample/lattice.hpp"
#include "ncample/multipoly.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ncample {

/// Coordinates of a numerical divisor class in the chosen lattice basis.
struct DivisorClass {
    IntVector coords;

    DivisorClass() = default;
    explicit DivisorClass(IntVector c) : coords(std::move(c)) {}
    DivisorClass(std::initializer_list<long> c) {
        for (long v : c) coords.emplace_back(v);
    }

    std::size_t size() const { return coords.size(); }
    bool operator==(const DivisorClass& other) const = default;
};

std::ostream& operator<<(std::ostream& os, const DivisorClass& c);

/// Radius of the search for a small interior point before the exact fallback.
inline constexpr int kInteriorSearchRadius = 4;

/// Numerical model of a projective scheme. The ample cone is the polyhedral
/// cone { c : A c > 0 } for the row functionals A; all ampleness statements
/// are relative to it.
class NumericalScheme {
public:
    /// Throws ParseError on shape or degree violations and EmptyCone when the
    /// cone has empty interior.
    NumericalScheme(std::string name, std::size_t dim, std::size_t rho, MultiPoly euler,
                    std::vector<IntVector> cone);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    std::size_t rho() const { return rho_; }
    const MultiPoly& euler() const { return euler_; }
    const std::vector<IntVector>& cone() const { return cone_; }
    const DivisorClass& interior_point() const { return interior_; }

    /// Künneth product on the direct-sum lattice.
    NumericalScheme product(const NumericalScheme& other) const;

private:
    std::string name_;
    std::size_t dim_;
    std::size_t rho_;
    MultiPoly euler_;
    std::vector<IntVector> cone_;
    DivisorClass interior_;
};

bool is_ample(const NumericalScheme& scheme, const DivisorClass& c);

Integer euler_at(const NumericalScheme& scheme, const DivisorClass& c);

/// "P1", "P2", "P1xP1", "AbelianSurfaceHyperbolic". Throws ParseError otherwise.
NumericalScheme builtin_scheme(const std::string& name);

std::vector<std::string> builtin_scheme_names();

}  // namespace ncample

#endif  // NCAMPLE_SCHEME_HPP
