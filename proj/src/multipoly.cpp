#include "ncample/multipoly.hpp"

#include "ncample/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ncample {

namespace {

std::string exponents_str(const Exponents& k) {
    std::string out = "(";
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(k[i]);
    }
    return out + ")";
}

Integer factorial(unsigned n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

/// Stirling numbers of the second kind S(n, j), 0 <= j <= n.
std::vector<Integer> stirling2_row(unsigned n) {
    std::vector<Integer> row{1};
    for (unsigned m = 1; m <= n; ++m) {
        std::vector<Integer> next(m + 1, Integer(0));
        for (unsigned j = 1; j <= m; ++j) {
            next[j] = (j < m ? row[j] * j : Integer(0)) + row[j - 1];
        }
        row = std::move(next);
    }
    return row;
}

/// Signed Stirling numbers of the first kind s(n, j): falling factorial
/// n(n-1)...(n-k+1) = sum_j s(k, j) n^j.
std::vector<Integer> stirling1_row(unsigned n) {
    std::vector<Integer> row{1};
    for (unsigned m = 1; m <= n; ++m) {
        std::vector<Integer> next(m + 1, Integer(0));
        for (unsigned j = 0; j < m; ++j) {
            next[j + 1] += row[j];
            next[j] -= row[j] * (m - 1);
        }
        row = std::move(next);
    }
    return row;
}

/// C(n,a) C(n,b) = sum_{k=max(a,b)}^{a+b} C(k,a) C(a,k-b) C(n,k).
const std::vector<Integer>& product_table(unsigned a, unsigned b) {
    static thread_local std::map<std::pair<unsigned, unsigned>, std::vector<Integer>> cache;
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const unsigned lo = key.first, hi = key.second;
    std::vector<Integer> coeffs(lo + hi + 1, Integer(0));
    for (unsigned k = hi; k <= lo + hi; ++k) coeffs[k] = binomial(k, lo) * binomial(lo, k - hi);
    return cache.emplace(key, std::move(coeffs)).first->second;
}

}  // namespace

Integer binomial(const Integer& n, unsigned long k) {
    Integer out;
    mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
    return out;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::constant(std::size_t nvars, const Integer& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::basis(const Exponents& k, const Integer& c) {
    MultiPoly p(k.size());
    p.add_term(k, c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t i) {
    Exponents k(nvars, 0);
    k.at(i) = 1;
    return basis(k);
}

Integer MultiPoly::coefficient(const Exponents& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Integer(0) : it->second;
}

long MultiPoly::total_degree() const {
    long best = -1;
    for (const auto& [k, c] : terms_) {
        long d = 0;
        for (unsigned e : k) d += e;
        best = std::max(best, d);
    }
    return best;
}

long MultiPoly::degree_in(std::size_t var) const {
    long best = -1;
    for (const auto& [k, c] : terms_) best = std::max(best, static_cast<long>(k.at(var)));
    return best;
}

void MultiPoly::add_term(const Exponents& k, const Integer& c) {
    if (k.size() != nvars_) throw std::invalid_argument("MultiPoly: exponent arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_same_arity(const MultiPoly& other) const {
    if (nvars_ != other.nvars_) throw std::invalid_argument("MultiPoly: variable count mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    check_same_arity(other);
    for (const auto& [k, c] : other.terms_) add_term(k, c);
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
    MultiPoly out = *this;
    out += other;
    return out;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(nvars_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const { return *this + (-other); }

MultiPoly MultiPoly::operator*(const Integer& scalar) const {
    MultiPoly out(nvars_);
    if (scalar == 0) return out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * scalar);
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
    check_same_arity(other);
    MultiPoly out(nvars_);
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : other.terms_) {
            // Expand the product variable by variable.
            std::vector<std::pair<Exponents, Integer>> partial{{Exponents(nvars_, 0), ca * cb}};
            for (std::size_t v = 0; v < nvars_; ++v) {
                const auto& table = product_table(ka[v], kb[v]);
                std::vector<std::pair<Exponents, Integer>> next;
                for (const auto& [k, c] : partial) {
                    for (unsigned e = 0; e < table.size(); ++e) {
                        if (table[e] == 0) continue;
                        Exponents kk = k;
                        kk[v] = e;
                        next.emplace_back(std::move(kk), c * table[e]);
                    }
                }
                partial = std::move(next);
            }
            for (const auto& [k, c] : partial) out.add_term(k, c);
        }
    }
    return out;
}

MultiPoly MultiPoly::exact_divide(const Integer& d) const {
    MultiPoly out(nvars_);
    for (const auto& [k, c] : terms_) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            throw std::logic_error("MultiPoly::exact_divide: coefficient not divisible");
        out.terms_.emplace(k, c / d);
    }
    return out;
}

Integer MultiPoly::evaluate(std::span<const Integer> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("MultiPoly::evaluate: arity mismatch");
    Integer acc = 0;
    for (const auto& [k, c] : terms_) {
        Integer term = c;
        for (std::size_t i = 0; i < nvars_ && term != 0; ++i)
            if (k[i]) term *= binomial(point[i], k[i]);
        acc += term;
    }
    return acc;
}

Integer MultiPoly::evaluate(std::initializer_list<long> point) const {
    IntVector p;
    for (long v : point) p.emplace_back(v);
    return evaluate(std::span<const Integer>(p));
}

std::string MultiPoly::str(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const Integer a = abs(c);
        bool any = false;
        std::ostringstream factors;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (!k[i]) continue;
            if (any) factors << "*";
            factors << "C(" << var << (nvars_ > 1 ? std::to_string(i + 1) : std::string()) << "," << k[i] << ")";
            any = true;
        }
        if (!any) os << a;
        else if (a == 1) os << factors.str();
        else os << a << "*" << factors.str();
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

// ---------------------------------------------------------------- conversions

MultiPoly from_monomials(std::size_t nvars, const MonomialTerms& terms) {
    std::map<Exponents, Rational> acc;
    std::map<unsigned, std::vector<Integer>> rows;  // k -> S(k, j) j!
    auto row = [&](unsigned k) -> const std::vector<Integer>& {
        auto it = rows.find(k);
        if (it != rows.end()) return it->second;
        auto s = stirling2_row(k);
        for (unsigned j = 0; j <= k; ++j) s[j] *= factorial(j);
        return rows.emplace(k, std::move(s)).first->second;
    };
    for (const auto& [k, c] : terms) {
        if (k.size() != nvars) throw ParseError("monomial exponent arity does not match variable count");
        if (c == 0) continue;
        std::vector<std::pair<Exponents, Rational>> partial{{Exponents(nvars, 0), c}};
        for (std::size_t v = 0; v < nvars; ++v) {
            const auto& r = row(k[v]);
            std::vector<std::pair<Exponents, Rational>> next;
            for (const auto& [kk, cc] : partial)
                for (unsigned j = 0; j < r.size(); ++j) {
                    if (r[j] == 0) continue;
                    Exponents e = kk;
                    e[v] = j;
                    next.emplace_back(std::move(e), cc * Rational(r[j]));
                }
            partial = std::move(next);
        }
        for (auto& [e, cc] : partial) acc[e] += cc;
    }
    MultiPoly out(nvars);
    for (auto& [e, c] : acc) {
        c.canonicalize();
        if (c.get_den() != 1) throw NotIntegerValued(exponents_str(e), c.get_str());
        out.add_term(e, c.get_num());
    }
    return out;
}

MonomialTerms to_monomials(const MultiPoly& p) {
    MonomialTerms acc;
    std::map<unsigned, std::vector<Rational>> rows;  // k -> s(k, j) / k!
    auto row = [&](unsigned k) -> const std::vector<Rational>& {
        auto it = rows.find(k);
        if (it != rows.end()) return it->second;
        auto s = stirling1_row(k);
        std::vector<Rational> r(s.size());
        const Integer f = factorial(k);
        for (std::size_t j = 0; j < s.size(); ++j) {
            r[j] = Rational(s[j], f);
            r[j].canonicalize();
        }
        return rows.emplace(k, std::move(r)).first->second;
    };
    const std::size_t nvars = p.nvars();
    for (const auto& [k, c] : p.terms()) {
        std::vector<std::pair<Exponents, Rational>> partial{{Exponents(nvars, 0), Rational(c)}};
        for (std::size_t v = 0; v < nvars; ++v) {
            const auto& r = row(k[v]);
            std::vector<std::pair<Exponents, Rational>> next;
            for (const auto& [kk, cc] : partial)
                for (unsigned j = 0; j < r.size(); ++j) {
                    if (r[j] == 0) continue;
                    Exponents e = kk;
                    e[v] = j;
                    next.emplace_back(std::move(e), cc * r[j]);
                }
            partial = std::move(next);
        }
        for (auto& [e, cc] : partial) acc[e] += cc;
    }
    for (auto it = acc.begin(); it != acc.end();) {
        it->second.canonicalize();
        if (it->second == 0) it = acc.erase(it);
        else ++it;
    }
    return acc;
}

MultiPoly shift(const MultiPoly& p, std::span<const Integer> t) {
    const std::size_t s = p.nvars();
    if (t.size() != s) throw std::invalid_argument("shift: arity mismatch");
    MultiPoly out(s);
    // C(n + t, k) = sum_j C(t, k - j) C(n, j)
    for (const auto& [k, c] : p.terms()) {
        std::vector<std::pair<Exponents, Integer>> partial{{Exponents(s, 0), c}};
        for (std::size_t v = 0; v < s; ++v) {
            std::vector<std::pair<Exponents, Integer>> next;
            for (const auto& [kk, cc] : partial)
                for (unsigned j = 0; j <= k[v]; ++j) {
                    const Integer w = binomial(t[v], k[v] - j);
                    if (w == 0) continue;
                    Exponents e = kk;
                    e[v] = j;
                    next.emplace_back(std::move(e), cc * w);
                }
            partial = std::move(next);
        }
        for (const auto& [e, cc] : partial) out.add_term(e, cc);
    }
    return out;
}

MultiPoly box_sum(const MultiPoly& p) {
    // sum_{m=1}^{n} C(m, k) = C(n+1, k+1) - [k = 0] = C(n, k+1) + C(n, k) - [k = 0]
    auto axis_sum = [](unsigned k) {
        MultiPoly g(1);
        g.add_term({k + 1}, 1);
        g.add_term({k}, 1);
        if (k == 0) g.add_term({0}, -1);
        return g;
    };
    MultiPoly out(1);
    for (const auto& [k, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(1, c);
        for (unsigned e : k) term = term * axis_sum(e);
        out += term;
    }
    if (p.nvars() == 0) return MultiPoly::constant(1, p.constant_term());
    return out;
}

MultiPoly binomial_of(const MultiPoly& q, unsigned k) {
    MultiPoly acc = MultiPoly::constant(q.nvars(), 1);
    for (unsigned j = 1; j <= k; ++j) {
        acc = (acc * (q - MultiPoly::constant(q.nvars(), j - 1))).exact_divide(Integer(j));
    }
    return acc;
}

MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> substitutions) {
    if (substitutions.size() != p.nvars()) throw std::invalid_argument("compose: arity mismatch");
    if (substitutions.empty()) throw std::invalid_argument("compose: no substitutions");
    const std::size_t s = substitutions.front().nvars();
    for (const auto& q : substitutions)
        if (q.nvars() != s) throw std::invalid_argument("compose: substitutions disagree on variables");

    std::vector<std::vector<MultiPoly>> powers(p.nvars());
    for (const auto& [k, c] : p.terms())
        for (std::size_t j = 0; j < k.size(); ++j)
            while (powers[j].size() <= k[j]) powers[j].push_back(binomial_of(substitutions[j], static_cast<unsigned>(powers[j].size())));

    MultiPoly out(s);
    for (const auto& [k, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(s, c);
        for (std::size_t j = 0; j < k.size(); ++j)
            if (k[j]) term = term * powers[j][k[j]];
        out += term;
    }
    return out;
}

MultiPoly restrict_to_ray(const MultiPoly& p, std::span<const Integer> base, std::span<const Integer> direction) {
    if (base.size() != p.nvars() || direction.size() != p.nvars())
        throw std::invalid_argument("restrict_to_ray: arity mismatch");
    const long d = std::max(0L, p.total_degree());
    const unsigned deg[1] = {static_cast<unsigned>(d)};
    IntVector point(p.nvars());
    return interpolate(std::span<const unsigned>(deg), [&](std::span<const Integer> t) {
        for (std::size_t i = 0; i < point.size(); ++i) point[i] = base[i] + t[0] * direction[i];
        return p.evaluate(point);
    });
}

// ---------------------------------------------------------------- positivity

const char* to_string(PositivityResult::Kind kind) {
    switch (kind) {
        case PositivityResult::Kind::Yes: return "Yes";
        case PositivityResult::Kind::No: return "No";
        case PositivityResult::Kind::Unknown: return "Unknown";
    }
    return "?";
}

Integer sign_threshold(const MultiPoly& g) {
    if (g.nvars() != 1) throw std::invalid_argument("sign_threshold: expects one variable");
    const MonomialTerms mono = to_monomials(g);
    if (mono.empty()) return 0;
    const unsigned top = mono.rbegin()->first[0];
    if (top == 0) return 0;
    const Rational lead = abs(mono.rbegin()->second);
    Rational worst = 0;
    for (const auto& [k, c] : mono) {
        if (k[0] == top) continue;
        Rational ratio = abs(c) / lead;
        if (ratio > worst) worst = ratio;
    }
    // Cauchy: every real root has |t| < 1 + worst.
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), worst.get_num_mpz_t(), worst.get_den_mpz_t());
    return fl + 2;
}

PositivityResult eventually_positive(const MultiPoly& p, unsigned search_bound) {
    if (search_bound < 1) throw std::invalid_argument("eventually_positive: search_bound must be >= 1");
    const std::size_t s = p.nvars();
    PositivityResult result;
    result.bound = search_bound;

    IntVector unit(s, Integer(1));
    MultiPoly shifted = p;
    for (unsigned t = 0; t <= search_bound; ++t) {
        if (t > 0) shifted = shift(shifted, unit);
        bool ok = shifted.constant_term() > 0;
        for (const auto& [k, c] : shifted.terms())
            if (c < 0) ok = false;
        if (ok) {
            result.kind = PositivityResult::Kind::Yes;
            result.start = IntVector(s, Integer(t));
            return result;
        }
    }

    // Coarse grid of bases {0, ceil(bound/2), bound}^s, directions {1..bound}^s,
    // both in lexicographic order. Strict witnesses take priority over vanishing ones.
    const std::vector<unsigned> base_levels = {0, (search_bound + 1) / 2, search_bound};
    std::vector<unsigned> levels;
    for (unsigned v : base_levels)
        if (levels.empty() || levels.back() != v) levels.push_back(v);

    std::optional<Ray> vanishing;
    std::vector<std::size_t> bidx(s, 0);
    IntVector base(s), dir(s);
    while (true) {
        for (std::size_t i = 0; i < s; ++i) base[i] = levels[bidx[i]];
        std::vector<unsigned> didx(s, 1);
        while (true) {
            for (std::size_t i = 0; i < s; ++i) dir[i] = didx[i];
            MultiPoly g = restrict_to_ray(p, base, dir);
            const long deg = g.total_degree();
            if (g.is_zero()) {
                if (!vanishing) vanishing = Ray{base, dir, g, Integer(0), true};
            } else if (g.coefficient({static_cast<unsigned>(deg)}) < 0) {
                result.kind = PositivityResult::Kind::No;
                result.witness = Ray{base, dir, g, sign_threshold(g), false};
                return result;
            }
            std::size_t i = s;
            while (i > 0 && didx[i - 1] == search_bound) didx[--i] = 1;
            if (i == 0) break;
            ++didx[i - 1];
        }
        std::size_t i = s;
        while (i > 0 && bidx[i - 1] + 1 == levels.size()) bidx[--i] = 0;
        if (i == 0) break;
        ++bidx[i - 1];
    }
    if (vanishing) {
        result.kind = PositivityResult::Kind::No;
        result.witness = *vanishing;
    }
    return result;
}

}  // namespace ncample
