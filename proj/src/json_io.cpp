#include "nrd/json_io.hpp"

#include <fstream>

namespace nrd {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error("parse error: " + what);
}

std::vector<std::string> string_list(const Json& j, const char* field) {
    if (!j.is_array()) fail(std::string(field) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) fail(std::string(field) + " entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<Tuple> tuple_list(const Json& j, const Domain& d, int arity, const char* field) {
    if (!j.is_array()) fail(std::string(field) + " must be an array");
    std::vector<Tuple> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != arity)
            fail(std::string(field) + "[" + std::to_string(i) + "] has wrong arity");
        Tuple t;
        for (const auto& e : row) t.push_back(d.index(e.get<std::string>()));
        out.push_back(std::move(t));
    }
    return out;
}

Json tuples_to_json(const std::vector<Tuple>& ts, const Domain& d) {
    Json arr = Json::array();
    for (const auto& t : ts) {
        Json row = Json::array();
        for (int v : t) row.push_back(d.name(v));
        arr.push_back(std::move(row));
    }
    return arr;
}

}  // namespace

Json to_json(const Relation& r) {
    Json j;
    j["domain"] = r.domain.elements;
    j["arity"] = r.arity;
    j["tuples"] = tuples_to_json(r.tuples, r.domain);
    return j;
}

Json to_json(const RelationPair& p) {
    Json j = to_json(p.s);
    j["scaffold_tuples"] = tuples_to_json(p.t.tuples, p.t.domain);
    return j;
}

Json to_json(const Instance& inst) {
    Json j;
    j["variables"] = inst.variables;
    if (inst.partition) {
        Json blocks = Json::array();
        for (const auto& b : *inst.partition) {
            Json blk = Json::array();
            for (int v : b) blk.push_back(inst.variables[v]);
            blocks.push_back(std::move(blk));
        }
        j["partition"] = std::move(blocks);
    } else {
        j["partition"] = nullptr;
    }
    Json cls = Json::array();
    for (const auto& c : inst.clauses) {
        Json row = Json::array();
        for (int v : c) row.push_back(inst.variables[v]);
        cls.push_back(std::move(row));
    }
    j["clauses"] = std::move(cls);
    return j;
}

Relation relation_from_json(const Json& j) {
    if (!j.contains("domain") || !j.contains("arity") || !j.contains("tuples"))
        fail("relation needs 'domain', 'arity' and 'tuples'");
    Domain d(string_list(j["domain"], "domain"));
    int arity = j["arity"].get<int>();
    return Relation(d, arity, tuple_list(j["tuples"], d, arity, "tuples"));
}

RelationPair pair_from_json(const Json& j) {
    Relation s = relation_from_json(j);
    if (!j.contains("scaffold_tuples")) fail("pair needs 'scaffold_tuples'");
    Relation t(s.domain, s.arity,
               tuple_list(j["scaffold_tuples"], s.domain, s.arity, "scaffold_tuples"));
    return RelationPair(std::move(s), std::move(t));
}

Instance instance_from_json(const Json& j) {
    if (!j.contains("variables") || !j.contains("clauses"))
        fail("instance needs 'variables' and 'clauses'");
    std::vector<std::string> vars = string_list(j["variables"], "variables");
    auto var_index = [&](const std::string& nm, const char* where) -> int {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == nm) return static_cast<int>(i);
        fail(std::string(where) + " references unknown variable '" + nm + "'");
    };
    std::optional<std::vector<std::vector<int>>> part;
    if (j.contains("partition") && !j["partition"].is_null()) {
        std::vector<std::vector<int>> blocks;
        for (const auto& b : j["partition"]) {
            std::vector<int> blk;
            for (const auto& e : b) blk.push_back(var_index(e.get<std::string>(), "partition"));
            blocks.push_back(std::move(blk));
        }
        part = std::move(blocks);
    }
    std::vector<Tuple> clauses;
    for (std::size_t ci = 0; ci < j["clauses"].size(); ++ci) {
        const auto& row = j["clauses"][ci];
        if (!row.is_array()) fail("clauses[" + std::to_string(ci) + "] must be an array");
        Tuple c;
        for (const auto& e : row)
            c.push_back(var_index(e.get<std::string>(),
                                  ("clauses[" + std::to_string(ci) + "]").c_str()));
        clauses.push_back(std::move(c));
    }
    return Instance(std::move(vars), std::move(part), std::move(clauses));
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("parse error in '" + path + "': " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

Relation load_relation(const std::string& path) { return relation_from_json(load_json_file(path)); }
RelationPair load_pair(const std::string& path) { return pair_from_json(load_json_file(path)); }
Instance load_instance(const std::string& path) { return instance_from_json(load_json_file(path)); }

}  // namespace nrd
