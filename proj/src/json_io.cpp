#include "ncample/json_io.hpp"

#include "ncample/errors.hpp"

#include <fstream>
#include <sstream>

namespace ncample {

namespace {

const Json& member(const Json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("missing member \"") + key + "\"");
    return doc.at(key);
}

std::size_t parse_size(const Json& value, const char* what) {
    if (!value.is_number_integer() || value.get<long long>() < 0)
        throw ParseError(std::string(what) + " must be a nonnegative integer");
    return value.get<std::size_t>();
}

IntVector parse_vector(const Json& value, std::size_t length, const std::string& what) {
    if (!value.is_array() || value.size() != length)
        throw ParseError(what + " must be an array of " + std::to_string(length) + " integers");
    IntVector out;
    for (const auto& x : value) out.push_back(parse_integer(x));
    return out;
}

bool valid_digits(const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

Rational parse_decimal(std::string text) {
    bool negative = false;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        negative = text[0] == '-';
        text.erase(0, 1);
    }
    const auto dot = text.find('.');
    const std::string whole = text.substr(0, dot);
    const std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !valid_digits(whole)) ||
        (dot != std::string::npos && !frac.empty() && !valid_digits(frac)))
        throw ParseError("malformed number \"" + text + "\"");
    Integer num(whole.empty() ? "0" : whole, 10);
    Integer den = 1;
    for (char ch : frac) {
        num = num * 10 + (ch - '0');
        den *= 10;
    }
    Rational out(num, den);
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

}  // namespace

Integer parse_integer(const Json& value) {
    if (value.is_number_integer()) {
        if (value.is_number_unsigned()) return Integer(std::to_string(value.get<unsigned long long>()), 10);
        return Integer(std::to_string(value.get<long long>()), 10);
    }
    if (value.is_string()) {
        const Rational r = parse_rational(value);
        if (r.get_den() != 1) throw ParseError("expected an integer, got \"" + value.get<std::string>() + "\"");
        return r.get_num();
    }
    throw ParseError("expected an integer, got " + value.dump());
}

Rational parse_rational(const Json& value) {
    if (value.is_number_integer()) return Rational(parse_integer(value));
    if (!value.is_string()) throw ParseError("expected a rational string such as \"p/q\", got " + value.dump());
    const std::string text = value.get<std::string>();
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text);
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in \"" + text + "\"");
    return num / den;
}

NumericalScheme load_scheme(const Json& doc) {
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    if (doc.contains("scheme")) {
        const Json& ref = doc.at("scheme");
        if (!ref.is_string()) throw ParseError("\"scheme\" must be a string such as \"builtin:P2\"");
        const std::string text = ref.get<std::string>();
        if (text.rfind("builtin:", 0) != 0) throw ParseError("\"scheme\" must name a built-in: builtin:NAME");
        return builtin_scheme(text.substr(8));
    }
    const Json& name = member(doc, "name");
    if (!name.is_string()) throw ParseError("\"name\" must be a string");
    const std::size_t dim = parse_size(member(doc, "dim"), "dim");
    const std::size_t rho = parse_size(member(doc, "rho"), "rho");
    if (rho == 0) throw ParseError("rho must be positive");

    const Json& euler = member(doc, "euler");
    if (!euler.is_array()) throw ParseError("\"euler\" must be an array of terms");
    MonomialTerms terms;
    for (const auto& term : euler) {
        const Json& exps = member(term, "exponents");
        if (!exps.is_array() || exps.size() != rho)
            throw ParseError("euler term exponents must have length rho = " + std::to_string(rho));
        Exponents e;
        for (const auto& x : exps) e.push_back(static_cast<unsigned>(parse_size(x, "euler exponent")));
        const Rational c = parse_rational(member(term, "coeff"));
        Rational& slot = terms[e];
        slot += c;
        if (slot == 0) terms.erase(e);
    }

    const Json& cone = member(doc, "ample_cone");
    if (!cone.is_array()) throw ParseError("\"ample_cone\" must be an array of functionals");
    std::vector<IntVector> rows;
    for (const auto& row : cone) rows.push_back(parse_vector(row, rho, "ample cone functional"));
    return NumericalScheme(name.get<std::string>(), dim, rho, from_monomials(rho, terms), std::move(rows));
}

NumericalScheme load_scheme_ref(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) return builtin_scheme(ref.substr(8));
    std::ifstream in(ref);
    if (!in) throw ParseError("cannot open scheme file " + ref);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(ref + ": " + e.what());
    }
    return load_scheme(doc);
}

Document load_document(const Json& doc, const std::optional<NumericalScheme>& scheme_override) {
    NumericalScheme scheme = scheme_override ? *scheme_override : load_scheme(doc);
    const std::size_t rho = scheme.rho();

    std::optional<std::size_t> oracle_d;
    std::vector<FactorAutomorphism> autos;
    if (doc.contains("oracle")) {
        const Json& o = doc.at("oracle");
        const std::size_t d = parse_size(member(o, "d"), "oracle d");
        if (d != rho) throw ParseError("oracle d must equal rho for (P^1)^d");
        const Json& list = member(o, "automorphisms");
        if (!list.is_array()) throw ParseError("oracle automorphisms must be an array");
        for (const auto& a : list) {
            FactorAutomorphism f;
            const Json& perm = member(a, "perm");
            if (!perm.is_array() || perm.size() != d) throw ParseError("oracle perm must have length d");
            for (const auto& p : perm) {
                const std::size_t v = parse_size(p, "perm entry");
                if (v == 0) throw ParseError("oracle perm entries are 1-based");
                f.perm.push_back(v - 1);
            }
            if (a.contains("mobius")) {
                const Json& mob = a.at("mobius");
                if (!mob.is_array() || mob.size() != d) throw ParseError("oracle mobius must list d matrices");
                for (const auto& g : mob) {
                    if (!g.is_array() || g.size() != 2 || !g[0].is_array() || !g[1].is_array() || g[0].size() != 2 ||
                        g[1].size() != 2)
                        throw ParseError("oracle mobius entries must be 2x2 matrices");
                    f.mobius.push_back({parse_rational(g[0][0]), parse_rational(g[0][1]), parse_rational(g[1][0]),
                                        parse_rational(g[1][1])});
                }
            } else {
                f.mobius.assign(d, Mobius{});
            }
            f.validate();
            autos.push_back(std::move(f));
        }
        oracle_d = d;
    }

    const Json& list = member(doc, "bimodules");
    if (!list.is_array()) throw ParseError("\"bimodules\" must be an array");
    if (oracle_d && autos.size() != list.size())
        throw ParseError("oracle must list one automorphism per bimodule");
    std::vector<Bimodule> bimodules;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Json& b = list[i];
        const std::string where = "bimodule " + std::to_string(i + 1);
        Bimodule out;
        out.divisor = DivisorClass(parse_vector(member(b, "divisor"), rho, where + " divisor"));
        if (b.contains("matrix")) {
            const Json& m = b.at("matrix");
            if (!m.is_array() || m.size() != rho) throw ParseError(where + ": matrix must have rho rows");
            std::vector<IntVector> rows;
            for (const auto& row : m) rows.push_back(parse_vector(row, rho, where + " matrix row"));
            out.action = Matrix::from_rows(rows);
            if (oracle_d && out.action != autos[i].lattice_action())
                throw ParseError(where + ": matrix disagrees with the oracle permutation");
        } else if (oracle_d) {
            out.action = autos[i].lattice_action();
        } else {
            throw ParseError(where + ": missing member \"matrix\"");
        }
        if (b.contains("star")) {
            if (!b.at("star").is_boolean()) throw ParseError(where + ": \"star\" must be a boolean");
            out.star = b.at("star").get<bool>();
        }
        bimodules.push_back(std::move(out));
    }

    std::vector<std::string> notes;
    if (doc.contains("notes")) {
        for (const auto& n : doc.at("notes")) {
            if (!n.is_string()) throw ParseError("\"notes\" must be strings");
            notes.push_back(n.get<std::string>());
        }
    }

    Document result{BimoduleSystem(std::move(scheme), std::move(bimodules), std::move(notes)), std::nullopt};
    if (oracle_d) {
        std::vector<Degree> degrees;
        for (const auto& b : result.system.bimodules()) {
            Degree deg;
            for (const auto& v : b.divisor.coords) {
                if (!v.fits_slong_p()) throw ParseError("oracle degrees must fit in a machine integer");
                deg.push_back(v.get_si());
            }
            degrees.push_back(std::move(deg));
        }
        result.oracle.emplace(*oracle_d, std::move(degrees), std::move(autos));
    }
    return result;
}

Document load_document_file(const std::string& path, const std::optional<NumericalScheme>& scheme_override) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return load_document(doc, scheme_override);
}

Json integers_to_json(std::span<const Integer> values) {
    Json out = Json::array();
    for (const auto& v : values) {
        if (v.fits_slong_p()) out.push_back(v.get_si());
        else out.push_back(v.get_str());
    }
    return out;
}

Json scheme_to_json(const NumericalScheme& scheme) {
    Json out;
    out["name"] = scheme.name();
    out["dim"] = scheme.dim();
    out["rho"] = scheme.rho();
    Json euler = Json::array();
    for (const auto& [e, c] : to_monomials(scheme.euler())) euler.push_back({{"coeff", to_string(c)}, {"exponents", e}});
    out["euler"] = euler;
    Json cone = Json::array();
    for (const auto& row : scheme.cone()) cone.push_back(integers_to_json(row));
    out["ample_cone"] = cone;
    return out;
}

Json system_to_json(const BimoduleSystem& sys) {
    Json out = scheme_to_json(sys.scheme());
    Json list = Json::array();
    for (const auto& b : sys.bimodules()) {
        Json m = Json::array();
        for (const auto& row : b.action.rows()) m.push_back(integers_to_json(row));
        Json entry{{"divisor", integers_to_json(b.divisor.coords)}, {"matrix", m}};
        if (b.star) entry["star"] = true;
        list.push_back(entry);
    }
    out["bimodules"] = list;
    if (!sys.notes().empty()) out["notes"] = sys.notes();
    return out;
}

}  // namespace ncample
