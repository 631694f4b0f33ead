#pragma once

// JSON interchange for group parameters and credential batches.
//
// GroupParams file:
//   {
//     "group": {"kind": "curve", "name": ..., "p": ..., "a": ..., "b": ...,
//               "gx": ..., "gy": ..., "q": ...}
//            | {"kind": "toy", "q": ...},
//     "threshold": m,
//     "generator_hex": serialize(P),
//     "verification_point_hex": serialize(Q)
//   }
//
// Credential batch file: JSON array of
//   {"x": decimal, "private_share": decimal, "public_point_hex": hex}
//
// Integers are decimal strings. Points use the encoding of
// algebra::serialize. Loading validates every point and checks
// public_point == private_share·P.

#include <string>
#include <vector>

#include "swarmauth/groupauth/credential.hpp"

namespace swarmauth::groupauth {

std::string group_params_to_json(const GroupParams& params);
GroupParams group_params_from_json(const std::string& text);

std::string credentials_to_json(const std::vector<Credential>& creds);
std::vector<Credential> credentials_from_json(const std::string& text, const GroupParams& params);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace swarmauth::groupauth
