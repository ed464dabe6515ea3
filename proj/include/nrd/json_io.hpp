// JSON (de)serialization for the core types.  Files carry element and
// variable names; indices never leak into files.

#ifndef NRD_JSON_IO_HPP
#define NRD_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "nrd/relation.hpp"

namespace nrd {

using Json = nlohmann::ordered_json;

Json to_json(const Relation& r);
Json to_json(const RelationPair& p);
Json to_json(const Instance& inst);

Relation relation_from_json(const Json& j);
RelationPair pair_from_json(const Json& j);
Instance instance_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

Relation load_relation(const std::string& path);
RelationPair load_pair(const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace nrd

#endif
