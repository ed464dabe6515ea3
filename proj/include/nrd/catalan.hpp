// Catalan polymorphisms generated from a Mal'tsev term, Coxeter word
// reduction, and Mal'tsev-embedding exclusion searches with printable,
// independently checkable certificates.

#ifndef NRD_CATALAN_HPP
#define NRD_CATALAN_HPP

#include <cstdint>
#include <optional>
#include <random>

#include "nrd/pattern.hpp"
#include "nrd/relation.hpp"

namespace nrd {

struct MaltsevTerm {
    Domain domain;
    std::vector<int> table;  // ((x * |D|) + y) * |D| + z -> value

    MaltsevTerm() = default;
    MaltsevTerm(Domain d, std::vector<int> t);  // checks phi(x,x,y)=phi(y,x,x)=y

    int eval(int x, int y, int z) const {
        int n = domain.size();
        return table[(x * n + y) * n + z];
    }
};

struct FiniteGroup {
    Domain elements;
    std::vector<std::vector<int>> mult;
    std::vector<int> inverse;
    int identity = 0;

    FiniteGroup() = default;
    FiniteGroup(Domain elems, std::vector<std::vector<int>> m);  // checks group axioms

    int op(int a, int b) const { return mult[a][b]; }
    int alternating_product(const Tuple& args) const;  // x1 * x2^-1 * x3 * ...
};

FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group_3();

// phi(x,y,z) = x * y^-1 * z.
MaltsevTerm group_maltsev(const FiniteGroup& g);
// "Z2", "Z3", "Z4", "Z5", "S3".
MaltsevTerm named_group_maltsev(const std::string& name);
// Uniformly random table over a 3-element domain subject only to the
// Mal'tsev identities.
MaltsevTerm random_maltsev(std::mt19937& rng);

// Memoized evaluation tables for f_1, f_3, ..., f_{2K+1} built level by
// level from the recursive decomposition; the naive term has exponential
// depth, the tables make each level |D|^m work.
class CatalanFamily {
  public:
    explicit CatalanFamily(MaltsevTerm phi, std::string cache_dir = "");

    const MaltsevTerm& source() const { return phi_; }
    int max_m() const { return static_cast<int>(tables_.size()) * 2 - 1; }
    void extend_to(int m);

    // f_m(args); m odd, args over the term's domain.
    int eval(int m, const Tuple& args) const;

  private:
    int eval_range(int m, const Tuple& args, int from) const;

    MaltsevTerm phi_;
    std::string cache_dir_;
    std::vector<std::vector<std::uint8_t>> tables_;  // tables_[i] = f_{2i+1}
};

struct CatalanCounterexample {
    int m = 0;
    int position = 0;  // i with x_i = x_{i+1}
    Tuple input;
};

struct CatalanReport {
    bool ok = false;
    std::optional<CatalanCounterexample> counterexample;
    std::uint64_t checked = 0;
};

// Exhaustively asserts the cancellation law x_i = x_{i+1} =>
// f_m(...) = f_{m-2}(drop i, i+1) for all odd m <= m_max.
CatalanReport verify_catalan(CatalanFamily& fam, int m_max);

// ---- Coxeter words ----

// Iterated cancellation of adjacent equal letters; the free product of
// involutions is confluent, so the result is order-independent.
std::vector<int> coxeter_reduce(const std::vector<int>& word);

struct ReduceTrace {
    std::vector<std::pair<int, int>> cancellations;  // original index pairs, in order
    std::vector<int> survivors;                      // original indices left over
};

ReduceTrace coxeter_reduce_trace(const std::vector<int>& word);

// True iff every row, read as a Coxeter word, reduces to its recorded
// single-letter output.
bool cat_pattern_check(const std::vector<std::vector<int>>& rows, const std::vector<int>& outputs);

// ---- exclusion certificates ----

struct ExclusionCertificate {
    std::string relation_name;
    Relation relation;
    int m = 0;
    std::vector<Tuple> columns;  // m tuples of the relation
    std::vector<std::vector<std::pair<int, int>>> schedules;  // per row
    Tuple output;  // not in the relation
};

// Replays the cancellation schedules; no search involved.
bool verify_exclusion(const ExclusionCertificate& cert);

enum class ExclusionStatus { Found, NoneFound, Capped };

struct ExclusionSearchResult {
    ExclusionStatus status = ExclusionStatus::NoneFound;
    std::optional<ExclusionCertificate> certificate;
    int m_reached = 0;  // largest completed level
};

// Complete bounded search over sequences of m <= m_max tuples (with
// repetition) whose coordinate rows all reduce to one letter with the
// resulting tuple outside R.  First certificate in canonical order wins.
// "NoneFound" is only a statement up to the bound.
ExclusionSearchResult exclusion_search(const Relation& r, int m_max,
                                       std::uint64_t node_cap = 200'000'000,
                                       const std::string& relation_name = "");

// The explicit 3 x (2m-1) matrix excluding CYC*_m, with verified schedules.
ExclusionCertificate build_cyc_exclusion(int m);

// ---- Boolean Bal/Cat tables ----

// f(x) = alternating sum when it lands in {0,1}, undefined otherwise.
PartialFn boolean_bal_table(int m);
// f(x) = the single letter the word reduces to, undefined otherwise.
PartialFn boolean_cat_table(int m);

Json to_json(const ExclusionCertificate& cert);
ExclusionCertificate exclusion_from_json(const Json& j);

}  // namespace nrd

#endif
