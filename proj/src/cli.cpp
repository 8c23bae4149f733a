#include "ncample/cli.hpp"

#include "ncample/ampleness.hpp"
#include "ncample/errors.hpp"
#include "ncample/gk.hpp"
#include "ncample/json_io.hpp"
#include "ncample/oracle.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ncample {

namespace {

constexpr const char* kConeNote = "ampleness is relative to the declared polyhedral ample cone";
constexpr const char* kStarNote =
    "no bimodule asserts the star property; the GK value assumes the ring is right noetherian";
constexpr const char* kReesNote =
    "the Rees identity gk + 1 assumes the ring is generated in degree one, which the numerical model cannot check";

struct Options {
    unsigned bound = kDefaultSearchBound;
    bool json = false;
    std::string emit;
    std::uint64_t seed = 1;
    unsigned range = 6;
    std::string scheme;
    std::string at;
    std::string n;
    std::vector<std::string> files;
};

struct Outcome {
    int code = kExitDecisive;
    Json payload = Json::object();
    std::string text;
    std::vector<std::string> warnings;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

MultiIndex parse_index_list(const std::string& text, const char* flag) {
    MultiIndex out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(std::string(flag) + " expects comma-separated nonnegative integers");
        out.push_back(std::stoull(item));
    }
    if (out.empty()) throw ParseError(std::string(flag) + " is empty");
    return out;
}

std::string tuple_str(std::span<const Integer> v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get_str();
    return out + ")";
}

std::string tuple_str(std::span<const std::uint64_t> v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
    return out + ")";
}

Json poly_terms(const MultiPoly& p) {
    Json out = Json::array();
    for (const auto& [e, c] : to_monomials(p)) out.push_back({{"coeff", to_string(c)}, {"exponents", e}});
    return out;
}

Json witness_json(const AmplenessWitness& w) {
    return {{"residue", w.residue},
            {"functional", w.functional + 1},
            {"base", integers_to_json(w.base)},
            {"direction", integers_to_json(w.direction)},
            {"restriction", w.restriction.str("t")},
            {"threshold", w.threshold.get_str()},
            {"vanishing", w.vanishing}};
}

std::string witness_text(const AmplenessWitness& w) {
    std::ostringstream os;
    os << "witness: functional " << w.functional + 1 << " is " << (w.vanishing ? "zero" : "negative")
       << " at class(" << tuple_str(w.base) << " + t*" << tuple_str(w.direction) << ") for all t >= " << w.threshold
       << "\nrestriction: " << w.restriction.str("t") << "\n";
    return os.str();
}

Json screen_json(const Screen& screen) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < screen.entries.size(); ++i) {
        const auto& e = screen.entries[i];
        Json j{{"index", i + 1}, {"quasi_unipotent", e.quasi_unipotent}, {"cyclotomic_factors", e.cyclotomic_factors}};
        j["order"] = e.order ? Json(*e.order) : Json(nullptr);
        j["nilpotency"] = e.nilpotency ? Json(*e.nilpotency) : Json(nullptr);
        j["realizability_warning"] = e.realizability_warning;
        entries.push_back(j);
    }
    return entries;
}

Json verdict_json(const Verdict& v) {
    Json out{{"kind", to_string(v.kind)}, {"bound", v.bound}};
    Json orders = Json::array();
    for (const auto& e : v.screen.entries) orders.push_back(e.order ? Json(*e.order) : Json(nullptr));
    out["orders"] = orders;
    out["ell"] = v.screen.ell;
    out["screen"] = screen_json(v.screen);
    if (v.kind == Verdict::Kind::NCAmple) out["m0"] = integers_to_json(v.start);
    if (v.kind == Verdict::Kind::SigmaAmple) out["m"] = integers_to_json(v.start);
    if (v.kind == Verdict::Kind::QuasiUnipotentFail) out["failing_index"] = v.failing_index;
    if (v.witness) out["witness"] = witness_json(*v.witness);
    if (v.eventual) {
        Json branches = Json::array();
        for (const auto& b : v.eventual->branches)
            branches.push_back({{"residue", b.residue},
                                {"functional", b.functional + 1},
                                {"polynomial", b.polynomial.str("q")},
                                {"result", to_string(b.result.kind)}});
        out["eventual"] = {{"kind", to_string(v.eventual->kind)}, {"branches", branches}};
    }
    out["cone_note"] = kConeNote;
    return out;
}

std::string verdict_text(const Verdict& v) {
    std::ostringstream os;
    os << "kind: " << to_string(v.kind) << "\n";
    os << "orders:";
    for (const auto& e : v.screen.entries) os << " " << (e.order ? std::to_string(*e.order) : "-");
    os << "\n";
    if (v.kind == Verdict::Kind::NCAmple) os << "m0: " << tuple_str(v.start) << "\n";
    if (v.kind == Verdict::Kind::SigmaAmple) os << "m: " << tuple_str(v.start) << "\n";
    if (v.kind == Verdict::Kind::QuasiUnipotentFail)
        os << "bimodule " << v.failing_index << " has an action that is not quasi-unipotent\n";
    if (v.witness) os << witness_text(*v.witness);
    if (v.kind == Verdict::Kind::Undetermined)
        os << "no certificate within search bound " << v.bound << "\n";
    os << "note: " << kConeNote << "\n";
    return os.str();
}

Outcome cmd_validate(const Document& doc) {
    const auto& sys = doc.system;
    Outcome o;
    o.payload = {{"valid", true},
                 {"scheme", sys.scheme().name()},
                 {"dim", sys.scheme().dim()},
                 {"rho", sys.rho()},
                 {"s", sys.size()},
                 {"interior_point", integers_to_json(sys.scheme().interior_point().coords)},
                 {"oracle", doc.oracle.has_value()}};
    std::ostringstream os;
    os << "valid: " << sys.size() << " bimodule(s) on " << sys.scheme().name() << " (dim " << sys.scheme().dim()
       << ", rho " << sys.rho() << ")\n";
    o.text = os.str();
    return o;
}

Outcome cmd_verdict(const Document& doc, const Options& opt) {
    const auto& sys = doc.system;
    const Verdict v = nc_ample_verdict(sys, opt.bound);
    Outcome o;
    o.payload = verdict_json(v);
    o.text = verdict_text(v);
    o.warnings = v.warnings;
    bool decisive = v.decisive();
    if (sys.size() == 1) {
        const Verdict sigma = sigma_ample_verdict(sys, opt.bound);
        o.payload["sigma"] = {{"kind", to_string(sigma.kind)}};
        if (sigma.kind == Verdict::Kind::SigmaAmple) o.payload["sigma"]["m"] = integers_to_json(sigma.start);
        o.text += "sigma-ample check: " + std::string(to_string(sigma.kind));
        if (sigma.kind == Verdict::Kind::SigmaAmple) o.text += " at m = " + sigma.start[0].get_str();
        o.text += "\n";
    }
    o.code = decisive ? kExitDecisive : kExitUndecided;
    return o;
}

Outcome cmd_gk(const Document& doc, const Options& opt) {
    const auto& sys = doc.system;
    const Verdict v = nc_ample_verdict(sys, opt.bound);
    Outcome o;
    o.warnings = v.warnings;
    if (v.kind == Verdict::Kind::Undetermined) {
        o.payload = {{"verdict", verdict_json(v)}};
        o.text = "gk: NC-ampleness undetermined within search bound " + std::to_string(opt.bound) + "\n";
        o.code = kExitUndecided;
        return o;
    }
    if (v.kind != Verdict::Kind::NCAmple)
        throw NotNCAmple(std::string("gk: system is not NC-ample (verdict ") + to_string(v.kind) + ")");
    const GkCertificate cert = gk(sys, opt.bound);
    o.payload = {{"gk", cert.gk},
                 {"bounds", {{"lower", cert.bounds.lower}, {"upper", cert.bounds.upper}}},
                 {"within_bounds", cert.within_bounds()},
                 {"ell", cert.ell},
                 {"veronese_used", cert.veronese_used},
                 {"m0", integers_to_json(cert.start)},
                 {"hilbert", cert.hilbert.str("q")},
                 {"hilbert_terms", poly_terms(cert.hilbert)},
                 {"box_poly", cert.box_poly.str("n")},
                 {"box_poly_terms", poly_terms(cert.box_poly)},
                 {"star_asserted", cert.star_asserted}};
    if (!cert.star_asserted) o.warnings.emplace_back(kStarNote);
    std::ostringstream os;
    os << "gk: " << cert.gk << "\n"
       << "bounds: [" << cert.bounds.lower << ", " << cert.bounds.upper << "]"
       << (cert.within_bounds() ? "" : " (outside)") << "\n"
       << "veronese: " << tuple_str(cert.veronese_used) << "\n"
       << "hilbert: " << cert.hilbert.str("q") << "\n"
       << "box sum: " << cert.box_poly.str("n") << "\n";
    o.text = os.str();
    return o;
}

Outcome cmd_class(const Document& doc, const Options& opt) {
    const auto& sys = doc.system;
    if (opt.at.empty()) throw ParseError("class: --at n1,...,ns is required");
    const MultiIndex n = parse_index_list(opt.at, "--at");
    const DivisorClass c = class_at(sys, n);
    const bool ample = is_ample(sys.scheme(), c);
    const Integer chi = euler_at(sys.scheme(), c);
    Outcome o;
    o.payload = {{"n", n}, {"class", integers_to_json(c.coords)}, {"ample", ample}, {"euler", chi.get_str()}};
    o.text = "class: " + tuple_str(c.coords) + "\nample: " + (ample ? "yes" : "no") + "\neuler: " + chi.get_str() + "\n";
    return o;
}

Outcome emit_system(const BimoduleSystem& sys, const Options& opt, const std::string& label) {
    Outcome o;
    const Json doc = system_to_json(sys);
    o.payload = {{"document", doc}};
    if (!opt.emit.empty()) {
        std::ofstream f(opt.emit);
        if (!f) throw ParseError("cannot write " + opt.emit);
        f << doc.dump(2) << "\n";
        o.payload["emitted"] = opt.emit;
        o.text = label + ": wrote " + opt.emit + "\n";
    } else {
        o.text = doc.dump(2) + "\n";
    }
    for (const auto& note : sys.notes()) o.warnings.push_back(note);
    return o;
}

Outcome cmd_oracle_compare(const Document& doc, const Options& opt) {
    if (!doc.oracle) throw ParseError("oracle compare: the document has no \"oracle\" member");
    const OracleRing& ring = *doc.oracle;
    const HilbertMatch hm = hilbert_match(ring, doc.system, opt.range);
    const AssociativityReport assoc = associativity_check(ring, 3, 200, opt.seed);
    const bool opposite = opposite_check(ring, 3, 200, opt.seed + 1);
    Json bergman = Json::array();
    bool bergman_ok = true;
    for (std::size_t i = 0; i < ring.size(); ++i)
        for (std::size_t j = i + 1; j < ring.size(); ++j)
            for (std::size_t k = j + 1; k < ring.size(); ++k) {
                const bool ok = bergman_check(ring, i, j, k);
                bergman_ok = bergman_ok && ok;
                bergman.push_back({{"triple", {i + 1, j + 1, k + 1}}, {"ok", ok}});
            }
    Json mismatches = Json::array();
    for (const auto& m : hm.mismatches)
        mismatches.push_back({{"n", m.index}, {"sections", m.sections}, {"chi", m.chi.get_str()}});
    Outcome o;
    o.payload = {{"range", opt.range},
                 {"seed", opt.seed},
                 {"hilbert", {{"checked", hm.checked}, {"skipped", hm.skipped}, {"mismatches", mismatches}}},
                 {"associativity", {{"samples", assoc.samples}, {"failures", assoc.failures}}},
                 {"opposite", opposite},
                 {"bergman", bergman}};
    const bool all_ok = hm.ok() && assoc.ok() && opposite && bergman_ok;
    o.payload["ok"] = all_ok;
    std::ostringstream os;
    os << "hilbert: " << hm.checked << " checked, " << hm.skipped << " skipped, " << hm.mismatches.size()
       << " mismatches\n"
       << "associativity: " << assoc.failures << " failures in " << assoc.samples << " samples\n"
       << "opposite: " << (opposite ? "ok" : "FAILED") << "\n";
    if (!bergman.empty()) os << "bergman: " << (bergman_ok ? "ok" : "FAILED") << "\n";
    os << (all_ok ? "oracle agrees with the numerical engine\n" : "oracle DISAGREES with the numerical engine\n");
    o.text = os.str();
    o.code = all_ok ? kExitDecisive : kExitError;
    return o;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical NC-ampleness and GK-dimension engine", "ncample"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&opt](CLI::App* cmd) {
        cmd->add_option("--bound", opt.bound, "search bound for positivity certificates")->check(CLI::PositiveNumber);
        cmd->add_flag("--json", opt.json, "print a JSON run report");
        cmd->add_option("--emit", opt.emit, "write the resulting document or report to a file");
        cmd->add_option("--scheme", opt.scheme, "scheme file or builtin:NAME replacing the document's scheme");
    };
    auto* validate = app.add_subcommand("validate", "check a bimodule system document");
    auto* verdict = app.add_subcommand("verdict", "NC-ampleness verdict");
    auto* gkcmd = app.add_subcommand("gk", "GK-dimension certificate");
    auto* cls = app.add_subcommand("class", "divisor class of a multigraded piece");
    auto* dualcmd = app.add_subcommand("dual", "inverse-data system");
    auto* ver = app.add_subcommand("veronese", "multi-Veronese system");
    auto* reescmd = app.add_subcommand("rees", "bigraded Rees system");
    auto* tensor = app.add_subcommand("tensor", "product system on X x Y");
    auto* oracle = app.add_subcommand("oracle", "exact section-ring oracle on (P^1)^d");
    auto* compare = oracle->add_subcommand("compare", "cross-check the oracle ring against the engine");
    oracle->require_subcommand(1);

    for (auto* cmd : {validate, verdict, gkcmd, cls, dualcmd, ver, reescmd, compare}) {
        add_common(cmd);
        cmd->add_option("file", opt.files, "input document")->required()->expected(1);
    }
    add_common(tensor);
    tensor->add_option("files", opt.files, "two input documents")->required()->expected(2);
    cls->add_option("--at", opt.at, "exponents n1,...,ns");
    ver->add_option("--n", opt.n, "Veronese exponents n1,...,ns")->required();
    compare->add_option("--range", opt.range, "check B_n for n in [1, N]^s")->check(CLI::PositiveNumber);
    compare->add_option("--seed", opt.seed, "seed for random samples");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitError;
    }

    std::string command;
    for (const auto& a : args) command += (command.empty() ? "" : " ") + a;

    const auto started = std::chrono::steady_clock::now();
    Outcome outcome;
    std::string digest_input;
    try {
        std::optional<NumericalScheme> scheme;
        if (!opt.scheme.empty()) {
            scheme = load_scheme_ref(opt.scheme);
            digest_input += opt.scheme.rfind("builtin:", 0) == 0 ? opt.scheme : read_file(opt.scheme);
            digest_input.push_back('\0');
        }
        std::vector<Document> docs;
        for (const auto& f : opt.files) {
            digest_input += read_file(f);
            digest_input.push_back('\0');
            docs.push_back(load_document_file(f, scheme));
        }
        const Document& doc = docs.front();
        if (validate->parsed()) outcome = cmd_validate(doc);
        else if (verdict->parsed()) outcome = cmd_verdict(doc, opt);
        else if (gkcmd->parsed()) outcome = cmd_gk(doc, opt);
        else if (cls->parsed()) outcome = cmd_class(doc, opt);
        else if (dualcmd->parsed()) outcome = emit_system(dual(doc.system), opt, "dual");
        else if (ver->parsed()) outcome = emit_system(veronese(doc.system, parse_index_list(opt.n, "--n")), opt, "veronese");
        else if (reescmd->parsed()) {
            outcome = emit_system(rees(doc.system), opt, "rees");
            outcome.warnings.emplace_back(kReesNote);
        } else if (tensor->parsed()) outcome = emit_system(product(doc.system, docs[1].system), opt, "tensor");
        else outcome = cmd_oracle_compare(doc, opt);
        for (const auto& note : doc.system.notes())
            if (std::find(outcome.warnings.begin(), outcome.warnings.end(), note) == outcome.warnings.end())
                outcome.warnings.push_back(note);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();

    const bool constructor = dualcmd->parsed() || ver->parsed() || reescmd->parsed() || tensor->parsed();
    Json report{{"command", command},
                {"input_digest", sha256_hex(digest_input)},
                {"payload", outcome.payload},
                {"warnings", outcome.warnings},
                {"timing_ms", elapsed}};
    if (opt.json) {
        out << report.dump(2) << "\n";
    } else {
        out << outcome.text;
        for (const auto& w : outcome.warnings) err << "warning: " << w << "\n";
    }
    if (!constructor && !opt.emit.empty()) {
        std::ofstream f(opt.emit);
        if (!f) {
            err << "error: cannot write " << opt.emit << "\n";
            return kExitError;
        }
        f << report.dump(2) << "\n";
    }
    return outcome.code;
}

}  // namespace ncample
