#pragma once

#include <string>
#include <string_view>

#include "hive/skos.h"

namespace hive {

enum class EncodingFormat { kJsonLd, kSkosRdfXml, kDcXml, kPlainXml };

std::string_view to_string(EncodingFormat format);
/// Throws kInvalidArgument listing the accepted names.
EncodingFormat parse_encoding_format(std::string_view name);
std::string_view content_type(EncodingFormat format);

/// Serializes one concept. Output is deterministic and ends with a newline.
/// Text containing characters XML cannot carry throws kInvalidArgument for
/// the XML formats.
std::string encode_concept(const Concept& concept_value, EncodingFormat format);

/// Inverse of encode_concept for json-ld and plain-xml. The ontology id is
/// not part of either encoding and is taken from the caller. Malformed input
/// throws kDecode; other formats throw kUnsupported.
Concept decode_concept(std::string_view text, EncodingFormat format, std::string_view ontology_id = {});

}  // namespace hive
