#ifndef NCAMPLE_TESTS_CORPUS_HPP
#define NCAMPLE_TESTS_CORPUS_HPP

#include "ncample/bimodule.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace corpus {

using ncample::BimoduleSystem;

struct Entry {
    std::string label;
    BimoduleSystem sys;
};

/// Portable draws; std distributions differ between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    long uniform(long lo, long hi) { return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// (P^1)^d for d <= 4, P2 and the hyperbolic abelian surface model.
ncample::NumericalScheme scheme_for(const std::string& name);

/// Systems whose actions preserve the declared cone (factor permutations) or
/// are not quasi-unipotent; rho <= 4, s <= 3, entries in [-3, 3].
std::vector<Entry> geometric_corpus(std::uint64_t seed, std::size_t count);

/// Unipotent actions, including ones that cannot come from automorphisms.
std::vector<Entry> unipotent_corpus(std::uint64_t seed, std::size_t count);

/// NC-ample members of geometric_corpus without realizability warnings.
std::vector<Entry> nc_ample_corpus(std::uint64_t seed, std::size_t count, std::size_t max_s = 3);

}  // namespace corpus

#endif  // NCAMPLE_TESTS_CORPUS_HPP
