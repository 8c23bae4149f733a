#include "ncample/ampleness.hpp"

#include "ncample/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ncample {

std::size_t ell_for_rho(std::size_t rho) { return rho == 0 ? 0 : 2 * ((rho - 1) / 2); }

std::vector<std::uint64_t> Screen::orders() const {
    std::vector<std::uint64_t> out;
    for (const auto& e : entries) out.push_back(e.order.value_or(0));
    return out;
}

Screen quasi_unipotent_screen(const BimoduleSystem& sys) {
    Screen screen;
    const std::size_t rho = sys.rho();
    screen.ell = ell_for_rho(rho);
    screen.passed = true;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        ScreenEntry entry;
        const QuasiUnipotence qu = is_quasi_unipotent(sys[i].action);
        entry.quasi_unipotent = qu.flag;
        entry.order = qu.order;
        entry.cyclotomic_factors = qu.factors;
        if (qu.flag) {
            const Matrix nil = power(sys[i].action, *qu.order) - Matrix::identity(rho);
            entry.nilpotency = nilpotency_degree(nil);
            if (*entry.nilpotency > screen.ell + 1) {
                entry.realizability_warning = true;
                screen.warnings.push_back("GeometricRealizabilityWarning: bimodule " + std::to_string(i + 1) +
                                          ": (M^" + std::to_string(*qu.order) + " - I)^" +
                                          std::to_string(screen.ell + 1) + " != 0 with l = " +
                                          std::to_string(screen.ell));
            }
            screen.combined_order = std::lcm(screen.combined_order, *qu.order);
        } else if (screen.passed) {
            screen.passed = false;
            screen.first_failure = i + 1;
        }
        screen.entries.push_back(std::move(entry));
    }
    if (!screen.passed) screen.combined_order = 1;
    return screen;
}

std::vector<MultiPoly> branch_class(const BimoduleSystem& sys, std::span<const std::uint64_t> residue,
                                    std::span<const std::uint64_t> orders) {
    const BimoduleSystem powered = veronese(sys, orders);
    const std::vector<MultiPoly> sym = symbolic_class(powered);
    const DivisorClass offset = class_at(sys, residue);
    const Matrix twist = action_power(sys, residue);
    const std::size_t rho = sys.rho(), s = sys.size();
    std::vector<MultiPoly> out(rho, MultiPoly(s));
    for (std::size_t j = 0; j < rho; ++j) {
        out[j] = MultiPoly::constant(s, offset.coords[j]);
        for (std::size_t k = 0; k < rho; ++k)
            if (twist(j, k) != 0) out[j] += sym[k] * twist(j, k);
    }
    return out;
}

EventualAmpleness eventual_ampleness(const BimoduleSystem& sys, unsigned search_bound) {
    const Screen screen = quasi_unipotent_screen(sys);
    if (!screen.passed) throw NotQuasiUnipotent(*screen.first_failure);

    const std::size_t s = sys.size(), rho = sys.rho();
    const std::vector<std::uint64_t> orders = screen.orders();
    const std::vector<MultiPoly> sym = symbolic_class(veronese(sys, orders));
    const auto& cone = sys.scheme().cone();

    EventualAmpleness out;
    out.bound = search_bound;
    bool unknown = false;
    IntVector start(s, Integer(0));

    std::vector<std::uint64_t> residue(s, 0);
    while (true) {
        const DivisorClass offset = class_at(sys, residue);
        const Matrix twist = action_power(sys, residue);
        std::vector<MultiPoly> branch(rho, MultiPoly(s));
        for (std::size_t j = 0; j < rho; ++j) {
            branch[j] = MultiPoly::constant(s, offset.coords[j]);
            for (std::size_t k = 0; k < rho; ++k)
                if (twist(j, k) != 0) branch[j] += sym[k] * twist(j, k);
        }

        IntVector branch_start(s, Integer(0));
        for (std::size_t f = 0; f < cone.size(); ++f) {
            MultiPoly poly(s);
            for (std::size_t j = 0; j < rho; ++j)
                if (cone[f][j] != 0) poly += branch[j] * cone[f][j];
            PositivityResult res = eventually_positive(poly, search_bound);

            if (res.kind == PositivityResult::Kind::No) {
                AmplenessWitness w;
                w.residue = residue;
                w.functional = f;
                w.base.resize(s);
                w.direction.resize(s);
                for (std::size_t i = 0; i < s; ++i) {
                    const Integer r(static_cast<unsigned long>(orders[i]));
                    w.base[i] = Integer(static_cast<unsigned long>(residue[i])) + r * res.witness.base[i];
                    w.direction[i] = r * res.witness.direction[i];
                }
                w.restriction = res.witness.restriction;
                w.threshold = res.witness.threshold;
                w.vanishing = res.witness.vanishing;
                out.branches.push_back({residue, f, std::move(poly), std::move(res)});
                out.kind = PositivityResult::Kind::No;
                out.witness = std::move(w);
                return out;
            }
            if (res.kind == PositivityResult::Kind::Unknown) unknown = true;
            else
                for (std::size_t i = 0; i < s; ++i) branch_start[i] = std::max(branch_start[i], res.start[i]);
            out.branches.push_back({residue, f, std::move(poly), std::move(res)});
        }
        // Every n >= c + r (q0 - 1) + 1 in this branch has q >= q0.
        for (std::size_t i = 0; i < s; ++i) {
            const Integer r(static_cast<unsigned long>(orders[i]));
            Integer m = Integer(static_cast<unsigned long>(residue[i])) + r * (branch_start[i] - 1) + 1;
            if (m < 0) m = 0;
            start[i] = std::max(start[i], m);
        }

        std::size_t i = s;
        while (i > 0 && residue[i - 1] + 1 == orders[i - 1]) residue[--i] = 0;
        if (i == 0) break;
        ++residue[i - 1];
    }
    if (unknown) {
        out.kind = PositivityResult::Kind::Unknown;
    } else {
        out.kind = PositivityResult::Kind::Yes;
        out.start = std::move(start);
    }
    return out;
}

const char* to_string(Verdict::Kind kind) {
    switch (kind) {
        case Verdict::Kind::NCAmple: return "NCAmple";
        case Verdict::Kind::SigmaAmple: return "SigmaAmple";
        case Verdict::Kind::QuasiUnipotentFail: return "QuasiUnipotentFail";
        case Verdict::Kind::EventualAmplenessFail: return "EventualAmplenessFail";
        case Verdict::Kind::Undetermined: return "Undetermined";
    }
    return "?";
}

Verdict nc_ample_verdict(const BimoduleSystem& sys, unsigned search_bound) {
    Verdict v;
    v.bound = search_bound;
    v.screen = quasi_unipotent_screen(sys);
    v.warnings = v.screen.warnings;
    if (!v.screen.passed) {
        v.kind = Verdict::Kind::QuasiUnipotentFail;
        v.failing_index = *v.screen.first_failure;
        return v;
    }
    v.eventual = eventual_ampleness(sys, search_bound);
    switch (v.eventual->kind) {
        case PositivityResult::Kind::Yes:
            v.kind = Verdict::Kind::NCAmple;
            v.start = v.eventual->start;
            break;
        case PositivityResult::Kind::No:
            v.kind = Verdict::Kind::EventualAmplenessFail;
            v.witness = v.eventual->witness;
            break;
        case PositivityResult::Kind::Unknown:
            v.kind = Verdict::Kind::Undetermined;
            break;
    }
    return v;
}

Verdict sigma_ample_verdict(const BimoduleSystem& sys, unsigned search_bound) {
    if (sys.size() != 1)
        throw ArityError("sigma_ample_verdict: expects a single bimodule, got " + std::to_string(sys.size()));
    Verdict v;
    v.bound = search_bound;
    v.screen = quasi_unipotent_screen(sys);
    v.warnings = v.screen.warnings;
    if (!v.screen.passed) {
        v.kind = Verdict::Kind::QuasiUnipotentFail;
        v.failing_index = 1;
        return v;
    }
    for (std::uint64_t m = 1; m <= search_bound; ++m) {
        if (is_ample(sys.scheme(), class_at(sys, {m}))) {
            v.kind = Verdict::Kind::SigmaAmple;
            v.start = {Integer(static_cast<unsigned long>(m))};
            return v;
        }
    }
    v.kind = Verdict::Kind::Undetermined;
    v.eventual = eventual_ampleness(sys, search_bound);
    v.witness = v.eventual->witness;
    return v;
}

}  // namespace ncample
