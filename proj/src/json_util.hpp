// Copyright 2026 the swapscan authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "swapscan/errors.hpp"
#include "swapscan/rational.hpp"

namespace swapscan {

using Json = nlohmann::ordered_json;

inline const Json& require_field(const Json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        raise(Errc::corpus, "bad_schema", where + ": missing field '" + key + "'");
    }
    return *it;
}

inline std::int64_t require_int(const Json& obj, const char* key, const std::string& where) {
    const Json& v = require_field(obj, key, where);
    if (!v.is_number_integer()) {
        raise(Errc::corpus, "bad_schema", where + ": field '" + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

inline std::string require_string(const Json& obj, const char* key, const std::string& where) {
    const Json& v = require_field(obj, key, where);
    if (!v.is_string()) {
        raise(Errc::corpus, "bad_schema", where + ": field '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

inline Json rational_to_json(const Rational& r) {
    return Json{{"num", r.num}, {"den", r.den}};
}

inline Rational rational_from_json(const Json& v, const std::string& where) {
    if (!v.is_object()) {
        raise(Errc::corpus, "bad_schema", where + ": rational must be a {num, den} object");
    }
    return Rational(require_int(v, "num", where), require_int(v, "den", where));
}

inline Json parse_json_line(const std::string& line, const std::string& where) {
    Json parsed = Json::parse(line, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
        raise(Errc::corpus, "bad_schema", where + ": not a JSON object");
    }
    return parsed;
}

inline std::string slurp_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) raise(Errc::io, "io", "cannot open " + file.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void spit_file(const std::filesystem::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io, "io", "cannot write " + file.string());
    out << content;
    if (!out) raise(Errc::io, "io", "write failed for " + file.string());
}

}  // namespace swapscan
