#ifndef NCAMPLE_GK_HPP
#define NCAMPLE_GK_HPP

#include "ncample/ampleness.hpp"
#include "ncample/bimodule.hpp"
#include "ncample/multipoly.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ncample {

struct GkBounds {
    std::size_t lower = 0;
    std::size_t upper = 0;
};

/// (dim X + 1, s ((l + 1) dim X + 1)).
GkBounds gk_bounds(const BimoduleSystem& sys);

struct GkCertificate {
    std::size_t gk = 0;
    std::vector<std::uint64_t> veronese_used;
    /// chi(class(q)) on the unipotent Veronese system.
    MultiPoly hilbert;
    /// f(n) = sum of hilbert over the box [1, n]^s.
    MultiPoly box_poly;
    GkBounds bounds;
    std::size_t ell = 0;
    IntVector start;
    /// Every bimodule carries the star assertion. The report is conditional on it.
    bool star_asserted = false;
    std::vector<std::string> warnings;

    bool within_bounds() const { return bounds.lower <= gk && gk <= bounds.upper; }
};

/// Throws NotNCAmple unless the verdict is NCAmple, DegenerateHilbert if chi
/// vanishes identically on the Veronese classes.
GkCertificate gk(const BimoduleSystem& sys, unsigned search_bound = kDefaultSearchBound);

/// chi(class(n)).
Integer hilbert_value(const BimoduleSystem& sys, std::span<const std::uint64_t> n);
Integer hilbert_value(const BimoduleSystem& sys, std::initializer_list<std::uint64_t> n);

}  // namespace ncample

#endif  // NCAMPLE_GK_HPP
