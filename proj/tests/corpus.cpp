#include "corpus.hpp"

#include "ncample/ampleness.hpp"
#include "ncample/errors.hpp"

#include <numeric>

namespace corpus {

using namespace ncample;

namespace {

constexpr long kEntryBound = 3;

bool bounded(const Matrix& m) { return m.max_abs_entry() <= kEntryBound; }

bool bounded(const IntVector& v) {
    for (const auto& x : v)
        if (abs(x) > kEntryBound) return false;
    return true;
}

Matrix random_permutation(std::size_t rho, Rng& rng) {
    std::vector<std::size_t> p(rho);
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t i = rho; i > 1; --i) std::swap(p[i - 1], p[rng.index(i)]);
    Matrix m(rho);
    for (std::size_t k = 0; k < rho; ++k) m(p[k], k) = 1;
    return m;
}

IntVector random_vector(std::size_t rho, long lo, long hi, Rng& rng) {
    IntVector v(rho);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

/// s bimodules with actions G^{e_i}. Divisors either come from a common
/// generator, D_i = (I + G + ... + G^{e_i - 1}) E, or are drawn freely and
/// kept only if the class commutation holds.
std::optional<BimoduleSystem> powers_of(const NumericalScheme& scheme, const Matrix& g, std::size_t s,
                                        unsigned max_exponent, long lo, long hi, Rng& rng) {
    const std::size_t rho = scheme.rho();
    std::vector<Bimodule> bimodules;
    const bool from_generator = rng.index(2) == 0;
    const IntVector e = random_vector(rho, lo, hi, rng);
    for (std::size_t i = 0; i < s; ++i) {
        const unsigned k = static_cast<unsigned>(rng.uniform(s == 1 ? 1 : 0, max_exponent));
        const Matrix m = power(g, k);
        IntVector d = from_generator ? geometric_sum(g, k) * std::span<const Integer>(e) : random_vector(rho, lo, hi, rng);
        if (!bounded(m) || !bounded(d)) return std::nullopt;
        bimodules.push_back({DivisorClass(std::move(d)), m, false});
    }
    try {
        return BimoduleSystem(scheme, std::move(bimodules));
    } catch (const CommutationFail&) {
        return std::nullopt;
    }
}

}  // namespace

NumericalScheme scheme_for(const std::string& name) {
    if (name == "P1^3" || name == "P1^4") {
        NumericalScheme out = builtin_scheme("P1");
        const int d = name.back() - '0';
        for (int k = 1; k < d; ++k) out = out.product(builtin_scheme("P1"));
        return out;
    }
    return builtin_scheme(name);
}

std::vector<Entry> geometric_corpus(std::uint64_t seed, std::size_t count) {
    Rng rng(seed);
    const std::vector<std::string> hosts = {"P1", "P2", "P1xP1", "AbelianSurfaceHyperbolic", "P1^3", "P1^4"};
    const std::vector<Matrix> hyperbolic = {Matrix{{2, 1}, {1, 1}}, Matrix{{1, 1}, {1, 2}}, Matrix{{0, 1}, {1, 3}},
                                            Matrix{{3, 1}, {-1, 0}}};
    std::vector<Entry> out;
    while (out.size() < count) {
        const std::size_t kind = rng.index(10);
        std::optional<BimoduleSystem> sys;
        std::string label;
        if (kind < 8) {
            const std::string host = hosts[rng.index(hosts.size())];
            const NumericalScheme scheme = scheme_for(host);
            const std::size_t s = 1 + rng.index(3);
            const Matrix g = random_permutation(scheme.rho(), rng);
            sys = powers_of(scheme, g, s, 3, -1, 3, rng);
            label = "perm/" + host;
        } else {
            const NumericalScheme scheme = builtin_scheme("AbelianSurfaceHyperbolic");
            const Matrix& g = hyperbolic[rng.index(hyperbolic.size())];
            sys = powers_of(scheme, g, 1 + rng.index(2), 1, -2, 3, rng);
            label = "hyperbolic";
        }
        if (!sys) continue;
        label += "/s" + std::to_string(sys->size()) + "#" + std::to_string(out.size());
        out.push_back({std::move(label), std::move(*sys)});
    }
    return out;
}

std::vector<Entry> unipotent_corpus(std::uint64_t seed, std::size_t count) {
    Rng rng(seed);
    const std::vector<std::string> hosts = {"P1", "P1xP1", "P1^3", "P1^4"};
    std::vector<Entry> out;
    while (out.size() < count) {
        const std::string host = hosts[rng.index(hosts.size())];
        const NumericalScheme scheme = scheme_for(host);
        const std::size_t rho = scheme.rho();
        Matrix u = Matrix::identity(rho);
        for (std::size_t i = 0; i < rho; ++i)
            for (std::size_t j = i + 1; j < rho; ++j) u(i, j) = rng.uniform(-2, 2);
        const Matrix p = random_permutation(rho, rng);
        const Matrix g = p * u * inverse(p);
        auto sys = powers_of(scheme, g, 1 + rng.index(3), 2, -3, 3, rng);
        if (!sys) continue;
        out.push_back({"unipotent/" + host + "/s" + std::to_string(sys->size()) + "#" + std::to_string(out.size()),
                       std::move(*sys)});
    }
    return out;
}

std::vector<Entry> nc_ample_corpus(std::uint64_t seed, std::size_t count, std::size_t max_s) {
    std::vector<Entry> out;
    for (std::uint64_t round = 0; out.size() < count; ++round) {
        for (auto& e : geometric_corpus(seed + round, 64)) {
            if (e.sys.size() > max_s) continue;
            const Verdict v = nc_ample_verdict(e.sys);
            if (v.kind != Verdict::Kind::NCAmple || !v.warnings.empty()) continue;
            out.push_back(std::move(e));
            if (out.size() == count) break;
        }
    }
    return out;
}

}  // namespace corpus
