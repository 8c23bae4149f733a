#ifndef NCAMPLE_JSON_IO_HPP
#define NCAMPLE_JSON_IO_HPP

#include "ncample/bimodule.hpp"
#include "ncample/oracle.hpp"
#include "ncample/scheme.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace ncample {

using Json = nlohmann::ordered_json;

/// "p/q", "-3", "0.25" or a JSON integer.
Rational parse_rational(const Json& value);
Integer parse_integer(const Json& value);

/// Inline scheme fields, or "scheme": "builtin:NAME".
NumericalScheme load_scheme(const Json& doc);
/// A file path or "builtin:NAME".
NumericalScheme load_scheme_ref(const std::string& ref);

struct Document {
    BimoduleSystem system;
    std::optional<OracleRing> oracle;
};

/// Bimodule matrices may be omitted when an "oracle" member supplies the
/// automorphisms; when both are present they must agree. `scheme_override`
/// replaces any scheme fields in the document.
Document load_document(const Json& doc, const std::optional<NumericalScheme>& scheme_override = std::nullopt);
Document load_document_file(const std::string& path,
                            const std::optional<NumericalScheme>& scheme_override = std::nullopt);

Json scheme_to_json(const NumericalScheme& scheme);
Json system_to_json(const BimoduleSystem& sys);

Json integers_to_json(std::span<const Integer> values);

}  // namespace ncample

#endif  // NCAMPLE_JSON_IO_HPP
