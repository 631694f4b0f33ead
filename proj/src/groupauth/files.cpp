#include "swarmauth/groupauth/files.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swarmauth/error.hpp"

namespace swarmauth::groupauth {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw ConfigError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

mpz_class decimal_field(const json& j, const char* key) {
  mpz_class v;
  const std::string s = string_field(j, key);
  if (s.empty() || v.set_str(s, 10) != 0 || v < 0) {
    throw ConfigError(std::string("field '") + key + "' is not a decimal integer");
  }
  return v;
}

GroupElement point_field(const json& j, const char* key, const Group& g) {
  try {
    return g.deserialize(from_hex(string_field(j, key)));
  } catch (const DecodeError& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

Scalar scalar_field(const json& j, const char* key, const Group& g) {
  const mpz_class v = decimal_field(j, key);
  if (v >= g.order()) throw ConfigError(std::string("field '") + key + "' is not below q");
  return g.scalar(v);
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string group_params_to_json(const GroupParams& params) {
  ordered_json j;
  ordered_json g;
  if (params.group.kind() == algebra::GroupKind::EllipticCurve) {
    const auto& c = *params.group.descriptor().curve();
    g = ordered_json::parse(algebra::curve_params_to_json(c));
    g["kind"] = "curve";
  } else {
    g["kind"] = "toy";
    g["q"] = params.group.order().get_str();
  }
  j["group"] = g;
  j["threshold"] = params.threshold;
  j["generator_hex"] = to_hex(algebra::serialize(params.generator()));
  j["verification_point_hex"] = to_hex(algebra::serialize(params.verification_point));
  return j.dump(2);
}

GroupParams group_params_from_json(const std::string& text) {
  const json j = parse(text);
  const json& gj = field(j, "group");
  const std::string kind = string_field(gj, "kind");
  std::optional<Group> group;
  try {
    if (kind == "curve") {
      group = Group::elliptic(algebra::curve_params_from_json(gj.dump()));
    } else if (kind == "toy") {
      group = Group::toy(decimal_field(gj, "q"));
    } else {
      throw ConfigError("group.kind must be 'curve' or 'toy'");
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid group: ") + e.what());
  }
  const json& m = field(j, "threshold");
  if (!m.is_number_unsigned() || m.get<std::size_t>() == 0) {
    throw ConfigError("threshold must be a positive integer");
  }
  if (point_field(j, "generator_hex", *group) != group->generator()) {
    throw ConfigError("generator_hex does not match the group generator");
  }
  return GroupParams{*group, m.get<std::size_t>(), point_field(j, "verification_point_hex", *group)};
}

std::string credentials_to_json(const std::vector<Credential>& creds) {
  ordered_json arr = ordered_json::array();
  for (const Credential& c : creds) {
    ordered_json e;
    e["x"] = c.index.to_decimal();
    e["private_share"] = c.private_share.to_decimal();
    e["public_point_hex"] = to_hex(algebra::serialize(c.public_point));
    arr.push_back(std::move(e));
  }
  return arr.dump(2);
}

std::vector<Credential> credentials_from_json(const std::string& text, const GroupParams& params) {
  const json j = parse(text);
  if (!j.is_array()) throw ConfigError("credential batch must be a JSON array");
  std::vector<Credential> out;
  for (const json& e : j) {
    Credential c{scalar_field(e, "x", params.group), scalar_field(e, "private_share", params.group),
                 point_field(e, "public_point_hex", params.group)};
    if (c.index.is_zero()) throw ConfigError("credential index 0 is not allowed");
    if (scalar_mult(c.private_share, params.generator()) != c.public_point) {
      throw ConfigError("credential " + c.index.to_decimal() + ": public point does not match share");
    }
    for (const Credential& prev : out) {
      if (prev.index == c.index) throw ConfigError("duplicate credential index " + c.index.to_decimal());
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path);
  out << contents;
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace swarmauth::groupauth
