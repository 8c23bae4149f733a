#include "ncample/gk.hpp"

#include "ncample/errors.hpp"

namespace ncample {

GkBounds gk_bounds(const BimoduleSystem& sys) {
    const std::size_t dim = sys.scheme().dim();
    const std::size_t ell = ell_for_rho(sys.rho());
    return {dim + 1, sys.size() * ((ell + 1) * dim + 1)};
}

GkCertificate gk(const BimoduleSystem& sys, unsigned search_bound) {
    const Verdict verdict = nc_ample_verdict(sys, search_bound);
    if (verdict.kind != Verdict::Kind::NCAmple)
        throw NotNCAmple(std::string("gk: system is not NC-ample (verdict ") + to_string(verdict.kind) + ")");

    GkCertificate cert;
    cert.veronese_used = verdict.screen.orders();
    cert.ell = verdict.screen.ell;
    cert.bounds = gk_bounds(sys);
    cert.start = verdict.start;
    cert.warnings = verdict.warnings;
    cert.star_asserted = true;
    for (const auto& b : sys.bimodules()) cert.star_asserted = cert.star_asserted && b.star;

    const std::vector<MultiPoly> sym = symbolic_class(veronese(sys, cert.veronese_used));
    cert.hilbert = compose(sys.scheme().euler(), sym);
    if (cert.hilbert.is_zero()) throw DegenerateHilbert();
    cert.box_poly = box_sum(cert.hilbert);
    cert.gk = static_cast<std::size_t>(cert.box_poly.total_degree());
    return cert;
}

Integer hilbert_value(const BimoduleSystem& sys, std::span<const std::uint64_t> n) {
    return euler_at(sys.scheme(), class_at(sys, n));
}

Integer hilbert_value(const BimoduleSystem& sys, std::initializer_list<std::uint64_t> n) {
    return hilbert_value(sys, std::span<const std::uint64_t>(n.begin(), n.size()));
}

}  // namespace ncample
