#include "ncample/scheme.hpp"

#include "ncample/errors.hpp"

#include <algorithm>
#include <optional>

namespace ncample {

namespace {

bool strictly_inside(const std::vector<IntVector>& cone, std::span<const Integer> c) {
    for (const auto& row : cone)
        if (dot(row, c) <= 0) return false;
    return true;
}

std::optional<IntVector> find_interior_point(const std::vector<IntVector>& cone, std::size_t rho, int radius) {
    // Cheap candidates first: the all-ones vector and the sum of the functionals.
    IntVector ones(rho, Integer(1));
    if (strictly_inside(cone, ones)) return ones;
    IntVector row_sum(rho, Integer(0));
    for (const auto& row : cone) row_sum = add(row_sum, row);
    if (strictly_inside(cone, row_sum)) return row_sum;

    // Exhaustive search over growing boxes [-r, r]^rho, lexicographic within a shell.
    for (int r = 1; r <= radius; ++r) {
        std::vector<int> idx(rho, -r);
        IntVector point(rho);
        while (true) {
            int norm = 0;
            for (int v : idx) norm = std::max(norm, std::abs(v));
            if (norm == r) {
                for (std::size_t i = 0; i < rho; ++i) point[i] = idx[i];
                if (strictly_inside(cone, point)) return point;
            }
            std::size_t i = rho;
            while (i > 0 && idx[i - 1] == r) idx[--i] = -r;
            if (i == 0) break;
            ++idx[i - 1];
        }
    }
    return std::nullopt;
}

/// Exact feasibility of A x >= 1 by Fourier-Motzkin elimination, then back
/// substitution and clearing denominators.
std::optional<IntVector> solve_interior(const std::vector<IntVector>& cone, std::size_t rho) {
    struct Row {
        std::vector<Rational> a;
        Rational b;
    };
    std::vector<std::vector<Row>> stages(rho + 1);
    for (const auto& r : cone) stages[rho].push_back({std::vector<Rational>(r.begin(), r.end()), Rational(1)});
    for (std::size_t k = rho; k > 0; --k) {
        const std::size_t v = k - 1;
        std::vector<Row> lower, upper;
        for (const auto& row : stages[k]) {
            if (row.a[v] > 0) lower.push_back(row);
            else if (row.a[v] < 0) upper.push_back(row);
            else stages[v].push_back(row);
        }
        for (const auto& l : lower)
            for (const auto& u : upper) {
                const Rational sl = -u.a[v], su = l.a[v];
                Row r{std::vector<Rational>(rho), sl * l.b + su * u.b};
                for (std::size_t i = 0; i < rho; ++i) r.a[i] = sl * l.a[i] + su * u.a[i];
                stages[v].push_back(std::move(r));
            }
    }
    for (const auto& row : stages[0])
        if (row.b > 0) return std::nullopt;

    std::vector<Rational> x(rho, Rational(0));
    for (std::size_t v = 0; v < rho; ++v) {
        std::optional<Rational> lo, hi;
        for (const auto& row : stages[v + 1]) {
            if (row.a[v] == 0) continue;
            Rational rest = row.b;
            for (std::size_t i = 0; i < v; ++i) rest -= row.a[i] * x[i];
            const Rational bound = rest / row.a[v];
            if (row.a[v] > 0) lo = lo ? std::max(*lo, bound) : bound;
            else hi = hi ? std::min(*hi, bound) : bound;
        }
        if (lo && hi) x[v] = (*lo + *hi) / 2;
        else if (lo) x[v] = *lo;
        else if (hi) x[v] = *hi;
    }
    Integer scale = 1;
    for (const auto& q : x) scale = lcm(scale, Integer(q.get_den()));
    IntVector point(rho);
    for (std::size_t i = 0; i < rho; ++i) point[i] = Integer(x[i] * scale);
    return point;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const DivisorClass& c) { return os << to_string(c.coords); }

NumericalScheme::NumericalScheme(std::string name, std::size_t dim, std::size_t rho, MultiPoly euler,
                                 std::vector<IntVector> cone)
    : name_(std::move(name)), dim_(dim), rho_(rho), euler_(std::move(euler)), cone_(std::move(cone)) {
    if (rho_ == 0) throw ParseError("scheme '" + name_ + "': rho must be positive");
    if (euler_.nvars() != rho_)
        throw ParseError("scheme '" + name_ + "': euler polynomial must have rho variables");
    if (euler_.total_degree() > static_cast<long>(dim_))
        throw ParseError("scheme '" + name_ + "': euler polynomial has degree " +
                         std::to_string(euler_.total_degree()) + " > dim " + std::to_string(dim_));
    if (cone_.empty()) throw ParseError("scheme '" + name_ + "': ample cone needs at least one functional");
    for (const auto& row : cone_)
        if (row.size() != rho_) throw ParseError("scheme '" + name_ + "': cone functional has wrong length");
    auto point = find_interior_point(cone_, rho_, kInteriorSearchRadius);
    if (!point) point = solve_interior(cone_, rho_);
    if (!point) throw EmptyCone();
    interior_ = DivisorClass(std::move(*point));
}

NumericalScheme NumericalScheme::product(const NumericalScheme& other) const {
    const std::size_t rho = rho_ + other.rho_;
    // Lift both Euler polynomials to rho variables and multiply.
    MultiPoly left(rho), right(rho);
    for (const auto& [k, c] : euler_.terms()) {
        Exponents e(rho, 0);
        std::copy(k.begin(), k.end(), e.begin());
        left.add_term(e, c);
    }
    for (const auto& [k, c] : other.euler_.terms()) {
        Exponents e(rho, 0);
        std::copy(k.begin(), k.end(), e.begin() + static_cast<long>(rho_));
        right.add_term(e, c);
    }
    std::vector<IntVector> cone;
    for (const auto& row : cone_) {
        IntVector r(rho, Integer(0));
        std::copy(row.begin(), row.end(), r.begin());
        cone.push_back(std::move(r));
    }
    for (const auto& row : other.cone_) {
        IntVector r(rho, Integer(0));
        std::copy(row.begin(), row.end(), r.begin() + static_cast<long>(rho_));
        cone.push_back(std::move(r));
    }
    return NumericalScheme(name_ + "x" + other.name_, dim_ + other.dim_, rho, left * right, std::move(cone));
}

bool is_ample(const NumericalScheme& scheme, const DivisorClass& c) {
    if (c.size() != scheme.rho()) throw std::invalid_argument("is_ample: class length differs from rho");
    return strictly_inside(scheme.cone(), c.coords);
}

Integer euler_at(const NumericalScheme& scheme, const DivisorClass& c) {
    if (c.size() != scheme.rho()) throw std::invalid_argument("euler_at: class length differs from rho");
    return scheme.euler().evaluate(c.coords);
}

std::vector<std::string> builtin_scheme_names() { return {"P1", "P2", "P1xP1", "AbelianSurfaceHyperbolic"}; }

NumericalScheme builtin_scheme(const std::string& name) {
    auto q = [](long num, long den = 1) { return Rational(num, den); };
    if (name == "P1") {
        // chi(O(d)) = d + 1
        return NumericalScheme("P1", 1, 1, from_monomials(1, {{{1}, q(1)}, {{0}, q(1)}}), {{Integer(1)}});
    }
    if (name == "P2") {
        // chi(O(d)) = (d+1)(d+2)/2
        return NumericalScheme("P2", 2, 1,
                               from_monomials(1, {{{2}, q(1, 2)}, {{1}, q(3, 2)}, {{0}, q(1)}}),
                               {{Integer(1)}});
    }
    if (name == "P1xP1") {
        // chi(O(a,b)) = (a+1)(b+1)
        return NumericalScheme(
            "P1xP1", 2, 2,
            from_monomials(2, {{{1, 1}, q(1)}, {{1, 0}, q(1)}, {{0, 1}, q(1)}, {{0, 0}, q(1)}}),
            {{Integer(1), Integer(0)}, {Integer(0), Integer(1)}});
    }
    if (name == "AbelianSurfaceHyperbolic") {
        // chi = D^2 / 2 with D^2 = 2ab
        return NumericalScheme("AbelianSurfaceHyperbolic", 2, 2, from_monomials(2, {{{1, 1}, q(1)}}),
                               {{Integer(1), Integer(0)}, {Integer(0), Integer(1)}});
    }
    throw ParseError("unknown built-in scheme '" + name + "'");
}

}  // namespace ncample
