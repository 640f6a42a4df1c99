#pragma once

#include "maxmin/instance.hpp"

#include <string>
#include <string_view>

namespace maxmin {

/// Serializes an instance to the document format: a UTF-8 JSON object with
/// fields `agents`, `constraints`, `objectives`, `edges` ({u,v,port_u,port_v}),
/// `a` ({constraint,agent,value}), `c` ({objective,agent,value}), `id_mode`,
/// and optional `delta_i` / `delta_k`. Rationals are "p/q" strings.
/// Deterministic output; decode(encode(inst)) is structurally identical.
std::string encode_instance(const MaxMinInstance& inst);

/// Parses the document format. Unknown fields, duplicate ports, missing or
/// duplicated coefficients, and negative coefficients are ParseErrors with a
/// location.
MaxMinInstance decode_instance(std::string_view text);

}  // namespace maxmin
