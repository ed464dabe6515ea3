// Finite domains, relations over them, promise pairs and CSP instances.
// All types are immutable after construction; internal computation works on
// dense element indices, element names appear only at the I/O boundary.

#ifndef NRD_RELATION_HPP
#define NRD_RELATION_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrd {

using Tuple = std::vector<int>;

struct Domain {
    std::vector<std::string> elements;

    Domain() = default;
    explicit Domain(std::vector<std::string> elems);

    int size() const { return static_cast<int>(elements.size()); }
    int index(const std::string& name) const;  // throws if absent
    const std::string& name(int i) const { return elements.at(i); }

    bool operator==(const Domain& o) const { return elements == o.elements; }
};

// Domain {"0","1",...,"n-1"}.
Domain numeric_domain(int n);

struct Relation {
    Domain domain;
    int arity = 0;
    std::vector<Tuple> tuples;  // sorted, duplicate-free

    Relation() = default;
    Relation(Domain d, int r, std::vector<Tuple> ts);

    bool contains(const Tuple& t) const {
        return std::binary_search(tuples.begin(), tuples.end(), t);
    }
    std::size_t size() const { return tuples.size(); }

    // D^arity \ tuples, same domain.
    Relation complement() const;

    bool operator==(const Relation& o) const {
        return domain == o.domain && arity == o.arity && tuples == o.tuples;
    }
};

// Full relation D^r.
Relation full_relation(const Domain& d, int r);

// Promise pair S subseteq T over one domain.
struct RelationPair {
    Relation s;
    Relation t;

    RelationPair() = default;
    RelationPair(Relation s_, Relation t_);
};

// T~ = D^r \ (T \ S).  Contains S and everything outside T.
Relation complement_tilde(const RelationPair& pair);

struct Instance {
    std::vector<std::string> variables;
    // When present: r disjoint blocks of variable indices, clause position i
    // draws from block i.
    std::optional<std::vector<std::vector<int>>> partition;
    std::vector<Tuple> clauses;  // ordered, duplicate-free, variable indices

    Instance() = default;
    Instance(std::vector<std::string> vars,
             std::optional<std::vector<std::vector<int>>> part,
             std::vector<Tuple> cls);

    int n_variables() const { return static_cast<int>(variables.size()); }
    int n_clauses() const { return static_cast<int>(clauses.size()); }
    int variable_index(const std::string& name) const;
};

// Assignment of a domain value to every variable of an instance.
using Assignment = std::vector<int>;

// Multipartite lift: variables X x [r], clause (y_1..y_r) -> ((y_1,1)..(y_r,r)),
// partition set.  Variable (x,i) is named "<x>@<i>" with i 1-based.
Instance multipartite_lift(const Instance& inst, int arity);

// (S1,T1) (x) (S2,T2) over the product domain; element names "a|b".
RelationPair tensor(const RelationPair& a, const RelationPair& b);
Relation tensor(const Relation& a, const Relation& b);

}  // namespace nrd

#endif
