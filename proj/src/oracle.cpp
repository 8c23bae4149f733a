#include "ncample/oracle.hpp"

#include "ncample/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ncample {

namespace {

std::string degree_str(std::span<const long> a) {
    std::string out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
    return out + ")";
}

/// Coefficients of (p x + q y)^e (r x + t y)^f indexed by the power of x.
std::vector<Rational> binary_form(const Rational& p, const Rational& q, const Rational& r, const Rational& t,
                                  unsigned e, unsigned f) {
    std::vector<Rational> out{Rational(1)};
    auto times_linear = [&out](const Rational& cx, const Rational& cy) {
        std::vector<Rational> next(out.size() + 1, Rational(0));
        for (std::size_t i = 0; i < out.size(); ++i) {
            next[i + 1] += out[i] * cx;
            next[i] += out[i] * cy;
        }
        out = std::move(next);
    };
    for (unsigned i = 0; i < e; ++i) times_linear(p, q);
    for (unsigned i = 0; i < f; ++i) times_linear(r, t);
    return out;
}

std::size_t monomial_position(std::span<const long> degree, const SectionMonomial& m) {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < degree.size(); ++k) pos = pos * static_cast<std::size_t>(degree[k] + 1) + (degree[k] - m[2 * k]);
    return pos;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

std::vector<Rational> coordinates(const MultiSection& s, std::span<const long> degree, std::size_t dim) {
    std::vector<Rational> v(dim, Rational(0));
    for (const auto& [m, c] : s.terms) v[monomial_position(degree, m)] = c;
    return v;
}

/// Linear map L on the space of `degree` with L(src[r]) = tgt[r] for every r.
/// Empty optional when the assignment is inconsistent or src does not span.
std::optional<RationalMatrix> solve_map(const std::vector<MultiSection>& src, const std::vector<MultiSection>& tgt,
                                        std::span<const long> degree) {
    const std::size_t dim = section_space_dim(degree);
    RationalMatrix rows;
    for (std::size_t r = 0; r < src.size(); ++r) {
        if (src[r].degree != Degree(degree.begin(), degree.end()) || tgt[r].degree != src[r].degree)
            return std::nullopt;
        auto row = coordinates(src[r], degree, dim);
        auto t = coordinates(tgt[r], degree, dim);
        row.insert(row.end(), t.begin(), t.end());
        rows.push_back(std::move(row));
    }
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t p = pivot_row;
        while (p < rows.size() && rows[p][col] == 0) ++p;
        if (p == rows.size()) return std::nullopt;
        std::swap(rows[p], rows[pivot_row]);
        const Rational inv = 1 / rows[pivot_row][col];
        for (auto& x : rows[pivot_row]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == 0) continue;
            const Rational f = rows[r][col];
            for (std::size_t c = col; c < 2 * dim; ++c) rows[r][c] -= f * rows[pivot_row][c];
        }
        ++pivot_row;
    }
    for (std::size_t r = dim; r < rows.size(); ++r)
        for (std::size_t c = dim; c < 2 * dim; ++c)
            if (rows[r][c] != 0) return std::nullopt;
    RationalMatrix map(dim);
    for (std::size_t r = 0; r < dim; ++r) map[r].assign(rows[r].begin() + dim, rows[r].end());
    return map;
}

RationalMatrix compose_maps(const RationalMatrix& first, const RationalMatrix& second) {
    const std::size_t n = first.size();
    RationalMatrix out(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (first[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j) out[i][j] += first[i][k] * second[k][j];
    return out;
}

MultiIndex add_index(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

MultiIndex random_index(std::size_t s, unsigned max_index, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> pick(0, max_index);
    MultiIndex n(s);
    for (auto& v : n) v = pick(rng);
    return n;
}

}  // namespace

Mobius Mobius::inverse() const {
    const Rational det_inv = 1 / det();
    return {d * det_inv, -b * det_inv, -c * det_inv, a * det_inv};
}

Mobius Mobius::operator*(const Mobius& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

FactorAutomorphism FactorAutomorphism::identity(std::size_t d) {
    FactorAutomorphism out;
    out.perm.resize(d);
    std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
    out.mobius.assign(d, Mobius{});
    return out;
}

FactorAutomorphism FactorAutomorphism::inverse() const {
    FactorAutomorphism out;
    out.perm.resize(d());
    out.mobius.resize(d());
    for (std::size_t k = 0; k < d(); ++k) out.perm[perm[k]] = k;
    for (std::size_t j = 0; j < d(); ++j) out.mobius[j] = mobius[out.perm[j]].inverse();
    return out;
}

Matrix FactorAutomorphism::lattice_action() const {
    Matrix m(d());
    for (std::size_t k = 0; k < d(); ++k) m(perm[k], k) = 1;
    return m;
}

void FactorAutomorphism::validate() const {
    if (mobius.size() != perm.size()) throw ParseError("automorphism: perm and mobius lengths differ");
    std::vector<bool> seen(perm.size(), false);
    for (auto p : perm) {
        if (p >= perm.size() || seen[p]) throw ParseError("automorphism: perm is not a permutation");
        seen[p] = true;
    }
    for (const auto& g : mobius)
        if (g.det() == 0) throw ParseError("automorphism: singular Mobius matrix");
}

MultiSection MultiSection::operator+(const MultiSection& other) const {
    if (degree != other.degree) throw DegreeMismatch("section sum: degrees " + degree_str(degree) + " and " +
                                                     degree_str(other.degree));
    MultiSection out = *this;
    for (const auto& [m, c] : other.terms) {
        Rational& slot = out.terms[m];
        slot += c;
        if (slot == 0) out.terms.erase(m);
    }
    return out;
}

MultiSection MultiSection::operator*(const Rational& c) const {
    MultiSection out{degree, {}};
    if (c == 0) return out;
    for (const auto& [m, v] : terms) out.terms.emplace(m, v * c);
    return out;
}

MultiSection operator*(const MultiSection& lhs, const MultiSection& rhs) {
    if (lhs.degree.size() != rhs.degree.size()) throw DegreeMismatch("section product: factor counts differ");
    MultiSection out;
    out.degree.resize(lhs.degree.size());
    for (std::size_t k = 0; k < out.degree.size(); ++k) out.degree[k] = lhs.degree[k] + rhs.degree[k];
    for (const auto& [ma, ca] : lhs.terms)
        for (const auto& [mb, cb] : rhs.terms) {
            SectionMonomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            Rational& slot = out.terms[m];
            slot += ca * cb;
            if (slot == 0) out.terms.erase(m);
        }
    return out;
}

std::uint64_t section_space_dim(std::span<const long> degree) {
    std::uint64_t out = 1;
    for (long a : degree) {
        if (a < 0) return 0;
        out *= static_cast<std::uint64_t>(a + 1);
    }
    return out;
}

std::vector<MultiSection> monomial_basis(std::span<const long> degree) {
    std::vector<MultiSection> out;
    if (section_space_dim(degree) == 0) return out;
    const std::size_t d = degree.size();
    std::vector<long> e(degree.begin(), degree.end());  // x-exponents, counting down
    while (true) {
        SectionMonomial m(2 * d);
        for (std::size_t k = 0; k < d; ++k) {
            m[2 * k] = static_cast<unsigned>(e[k]);
            m[2 * k + 1] = static_cast<unsigned>(degree[k] - e[k]);
        }
        out.push_back({Degree(degree.begin(), degree.end()), {{m, Rational(1)}}});
        std::size_t k = d;
        while (k > 0 && e[k - 1] == 0) {
            e[k - 1] = degree[k - 1];
            --k;
        }
        if (k == 0) break;
        --e[k - 1];
    }
    return out;
}

Degree pullback_degree(const FactorAutomorphism& sigma, std::span<const long> degree) {
    Degree out(degree.size(), 0);
    for (std::size_t k = 0; k < degree.size(); ++k) out[sigma.perm[k]] = degree[k];
    return out;
}

MultiSection pullback(const FactorAutomorphism& sigma, const MultiSection& s) {
    const std::size_t d = sigma.d();
    if (s.degree.size() != d) throw DegreeMismatch("pullback: section lives on a different number of factors");
    MultiSection out{pullback_degree(sigma, s.degree), {}};
    for (const auto& [m, c] : s.terms) {
        std::map<SectionMonomial, Rational> acc{{SectionMonomial(2 * d, 0), c}};
        for (std::size_t k = 0; k < d; ++k) {
            const Mobius& g = sigma.mobius[k];
            const auto form = binary_form(g.a, g.b, g.c, g.d, m[2 * k], m[2 * k + 1]);
            const std::size_t target = sigma.perm[k];
            const unsigned total = m[2 * k] + m[2 * k + 1];
            std::map<SectionMonomial, Rational> next;
            for (const auto& [mono, v] : acc)
                for (unsigned xe = 0; xe < form.size(); ++xe) {
                    if (form[xe] == 0) continue;
                    SectionMonomial mm = mono;
                    mm[2 * target] = xe;
                    mm[2 * target + 1] = total - xe;
                    next[mm] += v * form[xe];
                }
            acc = std::move(next);
        }
        for (const auto& [mono, v] : acc) {
            Rational& slot = out.terms[mono];
            slot += v;
            if (slot == 0) out.terms.erase(mono);
        }
    }
    return out;
}

std::size_t section_rank(const std::vector<MultiSection>& sections) {
    if (sections.empty()) return 0;
    const Degree& degree = sections.front().degree;
    const std::size_t dim = section_space_dim(degree);
    RationalMatrix rows;
    for (const auto& s : sections) {
        if (s.degree != degree) throw DegreeMismatch("section_rank: mixed degrees");
        rows.push_back(coordinates(s, degree, dim));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][col] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            const Rational f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < dim; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

OracleRing::OracleRing(std::size_t d, std::vector<Degree> degrees, std::vector<FactorAutomorphism> automorphisms)
    : d_(d), degrees_(std::move(degrees)), autos_(std::move(automorphisms)) {
    if (d_ == 0) throw ParseError("oracle: d must be positive");
    if (degrees_.empty() || degrees_.size() != autos_.size())
        throw ParseError("oracle: need one automorphism per line bundle");
    for (std::size_t i = 0; i < size(); ++i) {
        if (degrees_[i].size() != d_) throw ParseError("oracle: degree " + std::to_string(i + 1) + " has wrong length");
        if (autos_[i].d() != d_) throw ParseError("oracle: automorphism " + std::to_string(i + 1) + " has wrong size");
        autos_[i].validate();
    }
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) {
            const auto& si = autos_[i];
            const auto& sj = autos_[j];
            for (std::size_t k = 0; k < d_; ++k) {
                const bool same_perm = si.perm[sj.perm[k]] == sj.perm[si.perm[k]];
                if (!same_perm || si.mobius[k] * sj.mobius[si.perm[k]] != sj.mobius[k] * si.mobius[sj.perm[k]])
                    throw ParseError("oracle: automorphisms " + std::to_string(i + 1) + " and " +
                                     std::to_string(j + 1) + " do not commute");
            }
        }
}

Degree OracleRing::piece_degree(std::span<const std::uint64_t> n) const {
    if (n.size() != size()) throw ArityError("piece_degree: exponent count differs from s");
    Degree total(d_, 0);
    // Degrees are permuted by the prefix twists sigma_1^n_1 ... sigma_{a-1}^n_{a-1}.
    for (std::size_t a = 0; a < size(); ++a) {
        Degree term(d_, 0);
        Degree current = degrees_[a];
        for (std::uint64_t m = 0; m < n[a]; ++m) {
            for (std::size_t k = 0; k < d_; ++k) term[k] += current[k];
            current = pullback_degree(autos_[a], current);
        }
        for (std::size_t b = a; b-- > 0;)
            for (std::uint64_t m = 0; m < n[b]; ++m) term = pullback_degree(autos_[b], term);
        for (std::size_t k = 0; k < d_; ++k) total[k] += term[k];
    }
    return total;
}

std::vector<MultiSection> OracleRing::graded_piece(std::span<const std::uint64_t> n) const {
    const Degree degree = piece_degree(n);
    return monomial_basis(degree);
}

MultiSection OracleRing::twist(std::span<const std::uint64_t> n, const MultiSection& b) const {
    if (n.size() != size()) throw ArityError("twist: exponent count differs from s");
    MultiSection out = b;
    for (std::size_t a = size(); a-- > 0;)
        for (std::uint64_t m = 0; m < n[a]; ++m) out = pullback(autos_[a], out);
    return out;
}

HomogeneousElement OracleRing::multiply(const HomogeneousElement& a, const HomogeneousElement& b) const {
    for (const auto* x : {&a, &b})
        if (x->section.degree != piece_degree(x->index))
            throw DegreeMismatch("multiply: section of degree " + degree_str(x->section.degree) +
                                 " is not in the piece of degree " + degree_str(piece_degree(x->index)));
    HomogeneousElement out{add_index(a.index, b.index), a.section * twist(a.index, b.section)};
    if (out.section.degree != piece_degree(out.index))
        throw DegreeMismatch("multiply: product landed in degree " + degree_str(out.section.degree));
    return out;
}

OracleRing OracleRing::opposite() const {
    std::vector<Degree> degrees;
    std::vector<FactorAutomorphism> autos;
    for (std::size_t i = 0; i < size(); ++i) {
        autos.push_back(autos_[i].inverse());
        degrees.push_back(pullback_degree(autos.back(), degrees_[i]));
    }
    return OracleRing(d_, std::move(degrees), std::move(autos));
}

BimoduleSystem OracleRing::shadow() const {
    std::vector<Bimodule> bimodules;
    for (std::size_t i = 0; i < size(); ++i) {
        IntVector coords;
        for (long v : degrees_[i]) coords.emplace_back(v);
        bimodules.push_back({DivisorClass(std::move(coords)), autos_[i].lattice_action(), false});
    }
    return BimoduleSystem(p1_power_scheme(d_), std::move(bimodules));
}

HomogeneousElement OracleRing::random_element(std::span<const std::uint64_t> n, std::mt19937_64& rng) const {
    const Degree degree = piece_degree(n);
    MultiSection s{degree, {}};
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (const auto& b : monomial_basis(degree)) {
        const int c = coeff(rng);
        if (c != 0) s = s + b * Rational(c);
    }
    return {MultiIndex(n.begin(), n.end()), std::move(s)};
}

NumericalScheme p1_power_scheme(std::size_t d) {
    if (d == 0) throw ParseError("p1_power_scheme: d must be positive");
    if (d == 2) return builtin_scheme("P1xP1");
    NumericalScheme out = builtin_scheme("P1");
    for (std::size_t k = 1; k < d; ++k) out = out.product(builtin_scheme("P1"));
    return out;
}

AssociativityReport associativity_check(const OracleRing& ring, unsigned max_index, std::size_t samples,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    AssociativityReport report;
    for (std::size_t t = 0; t < samples; ++t) {
        const auto a = ring.random_element(random_index(ring.size(), max_index, rng), rng);
        const auto b = ring.random_element(random_index(ring.size(), max_index, rng), rng);
        const auto c = ring.random_element(random_index(ring.size(), max_index, rng), rng);
        const auto left = ring.multiply(ring.multiply(a, b), c);
        const auto right = ring.multiply(a, ring.multiply(b, c));
        ++report.samples;
        if (left.index != right.index || left.section != right.section) ++report.failures;
    }
    return report;
}

bool opposite_check(const OracleRing& ring, unsigned max_index, std::size_t samples, std::uint64_t seed) {
    const OracleRing op = ring.opposite();
    std::mt19937_64 rng(seed);
    auto tau = [&op](const HomogeneousElement& x) {
        return HomogeneousElement{x.index, op.twist(x.index, x.section)};
    };
    try {
        for (std::size_t t = 0; t < samples; ++t) {
            const auto a = ring.random_element(random_index(ring.size(), max_index, rng), rng);
            const auto b = ring.random_element(random_index(ring.size(), max_index, rng), rng);
            const auto lhs = tau(ring.multiply(a, b));
            const auto rhs = op.multiply(tau(b), tau(a));
            if (lhs.index != rhs.index || lhs.section != rhs.section) return false;
        }
    } catch (const DegreeMismatch&) {
        return false;
    }
    return true;
}

bool bergman_check(const OracleRing& ring, std::size_t i, std::size_t j, std::size_t k, const CommutationMap& phi) {
    if (ring.size() < 3) throw ArityError("bergman_check: needs at least three bimodules");
    for (auto x : {i, j, k})
        if (x >= ring.size()) throw ArityError("bergman_check: index out of range");
    const CommutationMap canonical = [](std::size_t, std::size_t, const MultiSection& s) { return s; };
    const CommutationMap& map = phi ? phi : canonical;

    auto basis_of = [&ring](std::size_t a) { return monomial_basis(ring.degree(a)); };
    auto T = [&ring](std::size_t a, const MultiSection& s) { return pullback(ring.automorphism(a), s); };

    // Sections of L_a L_b L_c are spanned by s T_a(t) T_a(T_b(u)).
    auto word_degree = [&](std::size_t a, std::size_t b, std::size_t c) {
        const Degree db = pullback_degree(ring.automorphism(a), ring.degree(b));
        const Degree dc = pullback_degree(ring.automorphism(a), pullback_degree(ring.automorphism(b), ring.degree(c)));
        Degree out = ring.degree(a);
        for (std::size_t x = 0; x < out.size(); ++x) out[x] += db[x] + dc[x];
        return out;
    };
    const Degree degree = word_degree(i, j, k);
    for (const auto& w : {word_degree(j, i, k), word_degree(j, k, i), word_degree(i, k, j), word_degree(k, i, j),
                          word_degree(k, j, i)})
        if (w != degree) return false;
    if (section_space_dim(degree) == 0) return true;

    // phi_ab (x) 1 : L_a L_b L_c -> L_b L_a L_c.
    auto left_step = [&](std::size_t a, std::size_t b, std::size_t c) {
        std::vector<MultiSection> src, tgt;
        for (const auto& s : basis_of(a))
            for (const auto& t : basis_of(b))
                for (const auto& u : basis_of(c)) {
                    const MultiSection st = s * T(a, t);
                    src.push_back(st * T(a, T(b, u)));
                    tgt.push_back(map(a, b, st) * T(b, T(a, u)));
                }
        return solve_map(src, tgt, degree);
    };
    // 1 (x) phi_bc : L_a L_b L_c -> L_a L_c L_b.
    auto right_step = [&](std::size_t a, std::size_t b, std::size_t c) {
        std::vector<MultiSection> src, tgt;
        for (const auto& s : basis_of(a))
            for (const auto& t : basis_of(b))
                for (const auto& u : basis_of(c)) {
                    const MultiSection tu = t * T(b, u);
                    src.push_back(s * T(a, tu));
                    tgt.push_back(s * T(a, map(b, c, tu)));
                }
        return solve_map(src, tgt, degree);
    };

    const auto l1 = left_step(i, j, k), l2 = right_step(j, i, k), l3 = left_step(j, k, i);
    const auto r1 = right_step(i, j, k), r2 = left_step(i, k, j), r3 = right_step(k, i, j);
    if (!l1 || !l2 || !l3 || !r1 || !r2 || !r3) return false;
    return compose_maps(compose_maps(*l1, *l2), *l3) == compose_maps(compose_maps(*r1, *r2), *r3);
}

HilbertMatch hilbert_match(const OracleRing& ring, const BimoduleSystem& sys, unsigned range) {
    if (ring.size() != sys.size()) throw ArityError("hilbert_match: ring and system have different s");
    HilbertMatch report;
    const std::size_t s = ring.size();
    MultiIndex n(s, 1);
    if (range == 0) return report;
    while (true) {
        const Degree degree = ring.piece_degree(n);
        if (std::all_of(degree.begin(), degree.end(), [](long a) { return a >= 0; })) {
            ++report.checked;
            const std::uint64_t sections = ring.graded_piece(n).size();
            const Integer chi = euler_at(sys.scheme(), class_at(sys, n));
            if (chi != Integer(static_cast<unsigned long>(sections))) report.mismatches.push_back({n, sections, chi});
        } else {
            ++report.skipped;
        }
        std::size_t i = s;
        while (i > 0 && n[i - 1] == range) n[--i] = 1;
        if (i == 0) break;
        ++n[i - 1];
    }
    return report;
}

}  // namespace ncample
