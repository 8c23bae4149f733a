#include "ncample/bimodule.hpp"

#include "ncample/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncample {

namespace {

void require_positive(std::span<const std::uint64_t> n, std::size_t s, const char* op) {
    if (n.size() != s) throw ArityError(std::string(op) + ": expected " + std::to_string(s) + " exponents");
    for (auto v : n)
        if (v == 0) throw std::invalid_argument(std::string(op) + ": exponents must be positive");
}

/// P(n_b) w where P = sum_c C(n_b, c) N^c, for a polynomial vector w.
std::vector<MultiPoly> apply_unipotent_power(const Matrix& nil, std::size_t nil_degree, std::size_t var,
                                             const std::vector<MultiPoly>& w, std::size_t nvars) {
    const std::size_t rho = nil.rho();
    std::vector<MultiPoly> out(rho, MultiPoly(nvars));
    Matrix npow = Matrix::identity(rho);
    for (std::size_t c = 0; c < nil_degree; ++c) {
        Exponents e(nvars, 0);
        e[var] = static_cast<unsigned>(c);
        const MultiPoly coeff = MultiPoly::basis(e);
        for (std::size_t j = 0; j < rho; ++j) {
            MultiPoly row(nvars);
            for (std::size_t k = 0; k < rho; ++k)
                if (npow(j, k) != 0) row += w[k] * npow(j, k);
            if (!row.is_zero()) out[j] += coeff * row;
        }
        npow = npow * nil;
    }
    return out;
}

}  // namespace

BimoduleSystem::BimoduleSystem(NumericalScheme scheme, std::vector<Bimodule> bimodules, std::vector<std::string> notes)
    : scheme_(std::move(scheme)), bimodules_(std::move(bimodules)), notes_(std::move(notes)) {
    if (bimodules_.empty()) throw ParseError("a bimodule system needs at least one bimodule");
    const std::size_t rho = scheme_.rho();
    for (std::size_t i = 0; i < bimodules_.size(); ++i) {
        const auto& b = bimodules_[i];
        if (b.divisor.size() != rho)
            throw ParseError("bimodule " + std::to_string(i + 1) + ": divisor length differs from rho");
        if (b.action.rho() != rho)
            throw ParseError("bimodule " + std::to_string(i + 1) + ": matrix size differs from rho");
        if (abs(determinant(b.action)) != 1) throw NonInvertible(i + 1);
    }
    for (std::size_t i = 0; i < bimodules_.size(); ++i)
        for (std::size_t j = i + 1; j < bimodules_.size(); ++j) {
            const auto& bi = bimodules_[i];
            const auto& bj = bimodules_[j];
            if (bi.action * bj.action != bj.action * bi.action) throw MatrixCommutationFail(i + 1, j + 1);
            const IntVector lhs = add(bi.divisor.coords, bi.action * std::span<const Integer>(bj.divisor.coords));
            const IntVector rhs = add(bj.divisor.coords, bj.action * std::span<const Integer>(bi.divisor.coords));
            if (lhs != rhs) throw ClassCommutationFail(i + 1, j + 1);
        }
}

bool BimoduleSystem::operator==(const BimoduleSystem& other) const {
    return scheme_.name() == other.scheme_.name() && scheme_.dim() == other.scheme_.dim() &&
           scheme_.euler() == other.scheme_.euler() && scheme_.cone() == other.scheme_.cone() &&
           bimodules_ == other.bimodules_;
}

Matrix action_power(const BimoduleSystem& sys, std::span<const std::uint64_t> n) {
    if (n.size() != sys.size()) throw ArityError("action_power: exponent count differs from s");
    Matrix out = Matrix::identity(sys.rho());
    for (std::size_t a = 0; a < sys.size(); ++a) out = out * power(sys[a].action, n[a]);
    return out;
}

DivisorClass class_at(const BimoduleSystem& sys, std::span<const std::uint64_t> n) {
    if (n.size() != sys.size()) throw ArityError("class_at: exponent count differs from s");
    const std::size_t rho = sys.rho();
    IntVector acc(rho, Integer(0));
    Matrix prefix = Matrix::identity(rho);
    for (std::size_t a = 0; a < sys.size(); ++a) {
        const Matrix& m = sys[a].action;
        const IntVector term = (prefix * geometric_sum(m, n[a])) * std::span<const Integer>(sys[a].divisor.coords);
        acc = add(acc, term);
        prefix = prefix * power(m, n[a]);
    }
    return DivisorClass(std::move(acc));
}

DivisorClass class_at(const BimoduleSystem& sys, std::initializer_list<std::uint64_t> n) {
    return class_at(sys, std::span<const std::uint64_t>(n.begin(), n.size()));
}

std::vector<MultiPoly> symbolic_class(const BimoduleSystem& sys) {
    const std::size_t rho = sys.rho();
    const std::size_t s = sys.size();
    std::vector<Matrix> nil(s);
    std::vector<std::size_t> nil_degree(s);
    for (std::size_t i = 0; i < s; ++i) {
        nil[i] = sys[i].action - Matrix::identity(rho);
        try {
            nil_degree[i] = nilpotency_degree(nil[i]);
        } catch (const NotNilpotent&) {
            throw UnipotentRequired(i + 1);
        }
    }

    std::vector<MultiPoly> total(rho, MultiPoly(s));
    for (std::size_t a = 0; a < s; ++a) {
        // sum_d C(n_a, d+1) N_a^d D_a
        std::vector<MultiPoly> v(rho, MultiPoly(s));
        IntVector nd = sys[a].divisor.coords;
        for (std::size_t d = 0; d < nil_degree[a]; ++d) {
            Exponents e(s, 0);
            e[a] = static_cast<unsigned>(d + 1);
            for (std::size_t j = 0; j < rho; ++j)
                if (nd[j] != 0) v[j].add_term(e, nd[j]);
            nd = nil[a] * std::span<const Integer>(nd);
        }
        for (std::size_t b = a; b-- > 0;) v = apply_unipotent_power(nil[b], nil_degree[b], b, v, s);
        for (std::size_t j = 0; j < rho; ++j) total[j] += v[j];
    }
    return total;
}

BimoduleSystem dual(const BimoduleSystem& sys) {
    std::vector<Bimodule> out;
    for (const auto& b : sys.bimodules()) {
        const Matrix inv = inverse(b.action);
        out.push_back({DivisorClass(inv * std::span<const Integer>(b.divisor.coords)), inv, b.star});
    }
    return BimoduleSystem(sys.scheme(), std::move(out), sys.notes());
}

BimoduleSystem veronese(const BimoduleSystem& sys, std::span<const std::uint64_t> n) {
    require_positive(n, sys.size(), "veronese");
    std::vector<Bimodule> out;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const auto& b = sys[i];
        out.push_back({DivisorClass(geometric_sum(b.action, n[i]) * std::span<const Integer>(b.divisor.coords)),
                       power(b.action, n[i]), b.star});
    }
    return BimoduleSystem(sys.scheme(), std::move(out), sys.notes());
}

BimoduleSystem combined_single(const BimoduleSystem& sys, std::span<const std::uint64_t> n) {
    require_positive(n, sys.size(), "combined_single");
    bool star = true;
    for (const auto& b : sys.bimodules()) star = star && b.star;
    return BimoduleSystem(sys.scheme(), {{class_at(sys, n), action_power(sys, n), star}}, sys.notes());
}

BimoduleSystem rees(const BimoduleSystem& sys) {
    if (sys.size() != 1) throw ArityError("rees: expects a single bimodule, got " + std::to_string(sys.size()));
    return BimoduleSystem(sys.scheme(), {sys[0], sys[0]}, sys.notes());
}

BimoduleSystem product(const BimoduleSystem& x, const BimoduleSystem& y) {
    const std::size_t rx = x.rho(), ry = y.rho();
    std::vector<Bimodule> out;
    for (const auto& b : x.bimodules()) {
        IntVector d = b.divisor.coords;
        d.resize(rx + ry, Integer(0));
        out.push_back({DivisorClass(std::move(d)), b.action.direct_sum(Matrix::identity(ry)), b.star});
    }
    for (const auto& b : y.bimodules()) {
        IntVector d(rx, Integer(0));
        d.insert(d.end(), b.divisor.coords.begin(), b.divisor.coords.end());
        out.push_back({DivisorClass(std::move(d)), Matrix::identity(rx).direct_sum(b.action), b.star});
    }
    std::vector<std::string> notes = x.notes();
    for (const auto& note : y.notes())
        if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
    if (std::find(notes.begin(), notes.end(), kDirectSumNote) == notes.end()) notes.emplace_back(kDirectSumNote);
    return BimoduleSystem(x.scheme().product(y.scheme()), std::move(out), std::move(notes));
}

}  // namespace ncample
