// Copyright 2026 The alphafair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALPHAFAIR_INSTANCE_IO_HPP
#define ALPHAFAIR_INSTANCE_IO_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "alphafair/instance.hpp"

namespace alphafair {

// Instance file schema (JSON, UTF-8):
//   {
//     "links":    [ { "id": <string>, "capacity": <number> }, ... ],
//     "requests": [ { "id": <string>, "weight": <number>,
//                     "route": [ <link id string>, ... ] }, ... ]
//   }
// Numbers are finite decimals; save/load round-trips values exactly.

inline void save_instance(const Instance& inst,
                          const std::filesystem::path& path) {
  nlohmann::ordered_json doc;
  doc["links"] = nlohmann::ordered_json::array();
  for (const Link& l : inst.links()) {
    if (!std::isfinite(l.capacity))
      throw ValidationError("link '" + l.id +
                            "': non-finite capacity cannot be serialized");
    doc["links"].push_back({{"id", l.id}, {"capacity", l.capacity}});
  }
  doc["requests"] = nlohmann::ordered_json::array();
  for (const Request& q : inst.requests())
    doc["requests"].push_back(
        {{"id", q.id}, {"weight", q.weight}, {"route", q.route}});

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& obj,
                                   const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end())
    throw SchemaError(where + ": missing field \"" + name + "\"");
  return *it;
}

inline double number_field(const nlohmann::json& obj, const char* name,
                           const std::string& where) {
  const auto& v = field(obj, name, where);
  if (!v.is_number())
    throw SchemaError(where + ": field \"" + name + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x))
    throw SchemaError(where + ": field \"" + name + "\" must be finite");
  return x;
}

inline std::string string_field(const nlohmann::json& obj, const char* name,
                                const std::string& where) {
  const auto& v = field(obj, name, where);
  if (!v.is_string())
    throw SchemaError(where + ": field \"" + name + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace detail

inline Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw SchemaError(path.string() + ": top level must be an object");

  const auto& jlinks = detail::field(doc, "links", path.string());
  const auto& jrequests = detail::field(doc, "requests", path.string());
  if (!jlinks.is_array()) throw SchemaError(path.string() + ": \"links\" must be an array");
  if (!jrequests.is_array())
    throw SchemaError(path.string() + ": \"requests\" must be an array");

  std::vector<Link> links;
  links.reserve(jlinks.size());
  for (std::size_t i = 0; i < jlinks.size(); ++i) {
    const std::string where = "links[" + std::to_string(i) + "]";
    if (!jlinks[i].is_object()) throw SchemaError(where + ": must be an object");
    links.push_back({detail::string_field(jlinks[i], "id", where),
                     detail::number_field(jlinks[i], "capacity", where)});
  }

  std::vector<Request> requests;
  requests.reserve(jrequests.size());
  for (std::size_t i = 0; i < jrequests.size(); ++i) {
    const std::string where = "requests[" + std::to_string(i) + "]";
    if (!jrequests[i].is_object()) throw SchemaError(where + ": must be an object");
    Request q;
    q.id = detail::string_field(jrequests[i], "id", where);
    q.weight = detail::number_field(jrequests[i], "weight", where);
    const auto& route = detail::field(jrequests[i], "route", where);
    if (!route.is_array())
      throw SchemaError(where + ": field \"route\" must be an array");
    for (const auto& hop : route) {
      if (!hop.is_string())
        throw SchemaError(where + ": route entries must be link id strings");
      q.route.push_back(hop.get<std::string>());
    }
    requests.push_back(std::move(q));
  }
  return build_instance(std::move(links), std::move(requests));
}

}  // namespace alphafair

#endif  // ALPHAFAIR_INSTANCE_IO_HPP
