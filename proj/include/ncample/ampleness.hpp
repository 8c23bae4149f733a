#ifndef NCAMPLE_AMPLENESS_HPP
#define NCAMPLE_AMPLENESS_HPP

#include "ncample/bimodule.hpp"
#include "ncample/multipoly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ncample {

inline constexpr unsigned kDefaultSearchBound = 16;

/// l = 2 floor((rho - 1) / 2): the nilpotency bound N^{l+1} = 0 for unipotent
/// automorphism actions on the numerical lattice.
std::size_t ell_for_rho(std::size_t rho);

struct ScreenEntry {
    bool quasi_unipotent = false;
    /// Order r_i with M_i^{r_i} unipotent; present iff quasi_unipotent.
    std::optional<std::uint64_t> order;
    std::vector<unsigned> cyclotomic_factors;
    /// Nilpotency degree of M_i^{r_i} - I.
    std::optional<std::size_t> nilpotency;
    /// (M_i^{r_i} - I)^{l+1} != 0: the action cannot come from an automorphism.
    bool realizability_warning = false;
};

struct Screen {
    std::vector<ScreenEntry> entries;
    bool passed = false;
    /// 1-based index of the first non-quasi-unipotent action.
    std::optional<std::size_t> first_failure;
    /// lcm of all r_i (1 when the screen fails).
    std::uint64_t combined_order = 1;
    std::size_t ell = 0;
    std::vector<std::string> warnings;

    std::vector<std::uint64_t> orders() const;
};

Screen quasi_unipotent_screen(const BimoduleSystem& sys);

/// One residue branch c + r o q crossed with one cone functional.
struct BranchCheck {
    std::vector<std::uint64_t> residue;
    std::size_t functional = 0;
    /// A_k . class(c + r o q) as a polynomial in q.
    MultiPoly polynomial;
    PositivityResult result;
};

/// Refuting ray in the original exponent coordinates: class(base + t*direction)
/// fails functional `functional` for every t >= threshold.
struct AmplenessWitness {
    std::vector<std::uint64_t> residue;
    std::size_t functional = 0;
    IntVector base;
    IntVector direction;
    MultiPoly restriction;
    Integer threshold;
    bool vanishing = false;
};

struct EventualAmpleness {
    PositivityResult::Kind kind = PositivityResult::Kind::Unknown;
    /// Yes: class(n) is ample for every n >= start.
    IntVector start;
    std::optional<AmplenessWitness> witness;
    std::vector<BranchCheck> branches;
    unsigned bound = kDefaultSearchBound;
};

/// Polynomial vector q -> class(c + r o q); the actions M_i^{r_i} must be unipotent.
std::vector<MultiPoly> branch_class(const BimoduleSystem& sys, std::span<const std::uint64_t> residue,
                                    std::span<const std::uint64_t> orders);

/// Eventual cone-ampleness of class(n) via residue decomposition modulo the
/// orders r_i. Throws NotQuasiUnipotent when the screen fails.
EventualAmpleness eventual_ampleness(const BimoduleSystem& sys, unsigned search_bound = kDefaultSearchBound);

struct Verdict {
    enum class Kind { NCAmple, SigmaAmple, QuasiUnipotentFail, EventualAmplenessFail, Undetermined };
    Kind kind = Kind::Undetermined;
    /// NCAmple: m0. SigmaAmple: the single exponent m with class(m) ample.
    IntVector start;
    /// QuasiUnipotentFail: 1-based bimodule index.
    std::size_t failing_index = 0;
    std::optional<AmplenessWitness> witness;
    Screen screen;
    std::optional<EventualAmpleness> eventual;
    unsigned bound = kDefaultSearchBound;
    std::vector<std::string> warnings;

    bool decisive() const { return kind != Kind::Undetermined; }
    bool positive() const { return kind == Kind::NCAmple || kind == Kind::SigmaAmple; }
};

const char* to_string(Verdict::Kind kind);

/// NC-ample iff every action is quasi-unipotent and class(m) is ample for all
/// m >= m0, relative to the declared polyhedral cone.
Verdict nc_ample_verdict(const BimoduleSystem& sys, unsigned search_bound = kDefaultSearchBound);

/// Single bimodule: quasi-unipotent and some class(m), 1 <= m <= bound, ample.
/// When no such m exists the verdict is Undetermined and `eventual` carries
/// the eventual-ampleness result as supplementary evidence. ArityError unless s = 1.
Verdict sigma_ample_verdict(const BimoduleSystem& sys, unsigned search_bound = kDefaultSearchBound);

}  // namespace ncample

#endif  // NCAMPLE_AMPLENESS_HPP
