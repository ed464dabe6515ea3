// Abelian embeddings via exact integer lattices, concrete finite-group
// embeddings (notably the Pauli group), balancedness, and the DP coset
// embedding check.

#ifndef NRD_EMBEDDING_HPP
#define NRD_EMBEDDING_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>

#include "nrd/catalan.hpp"
#include "nrd/relation.hpp"

namespace nrd {

using BigInt = boost::multiprecision::cpp_int;

// ---- Pauli group ----

// Normal form (-1)^sign X^bx Y^by Z^bz.
struct PauliElem {
    int sign = 0;  // exponent of -1
    int bx = 0, by = 0, bz = 0;

    bool operator==(const PauliElem&) const = default;
};

PauliElem pauli_identity();
PauliElem pauli_x();
PauliElem pauli_y();
PauliElem pauli_z();
PauliElem pauli_mul(const PauliElem& a, const PauliElem& b);
PauliElem pauli_inv(const PauliElem& a);
std::string pauli_name(const PauliElem& e);

// The 16-element group as a generic multiplication table; element order is
// the packed code sign*8 + bx*4 + by*2 + bz.
const FiniteGroup& pauli_group();

// ---- generic coset machinery ----

// Fixed-point closure of the generators under (x,y,z) -> x y^-1 z inside
// G^r, computed as base-point times the subgroup generated by pairwise
// differences.  Tuples are componentwise group elements.
std::vector<Tuple> coset_closure(const FiniteGroup& g, const std::vector<Tuple>& generators,
                                 std::size_t element_cap = 4'000'000);

struct GroupEmbeddingReport {
    bool embeds = false;
    std::vector<Tuple> closure_in_image;  // C intersect eta(D)^r, as D-tuples
    std::vector<Tuple> extras;            // closure elements outside R
};

// Checks sigma(R) = C intersect sigma(D)^r for the map eta : D -> G.
GroupEmbeddingReport verify_group_embedding(const Relation& r, const FiniteGroup& g,
                                            const std::vector<int>& eta);

// ---- Abelian embeddings ----

// Integer lattice with exact membership via Hermite normal form; arbitrary
// precision because determinants blow past machine words quickly.
class IntegerLattice {
  public:
    explicit IntegerLattice(std::vector<std::vector<BigInt>> generators);

    // Coefficients over the original generators, or nullopt when v is not in
    // the lattice.
    std::optional<std::vector<BigInt>> decompose(const std::vector<BigInt>& v) const;

  private:
    int dim_ = 0;
    std::vector<std::vector<BigInt>> basis_;      // echelon rows
    std::vector<std::vector<BigInt>> transform_;  // basis_ = transform_ * generators
    std::vector<int> pivot_col_;
};

std::vector<BigInt> indicator_vector(const Tuple& t, int dsize);

struct AbelianOffender {
    Tuple tuple;                       // in Q cap D^r but not in R
    std::vector<BigInt> combination;   // integer coefficients over R's tuples
};

struct AbelianReport {
    bool embeds = false;
    std::vector<AbelianOffender> offenders;
};

// Decides the embedding into the free Abelian group Z^D: true iff the
// lattice spanned by the indicator vectors meets D^r exactly in R.
AbelianReport abelian_embedding_check(const Relation& r);

// ---- balancedness ----

struct BalancedCounterexample {
    int m = 0;
    std::vector<Tuple> tuples;  // alternating sum lands in {0,1}^r outside R
    Tuple sums;
};

struct BalancedReport {
    bool balanced = false;
    int m_checked = 0;
    std::optional<BalancedCounterexample> counterexample;
};

// Complete search for alternating-sum violations up to m_max (odd); Boolean
// domains only.  Throws when the sequence space outgrows the cap.
BalancedReport balanced_check(const Relation& r, int m_max,
                              std::uint64_t sequence_cap = 50'000'000);

// ---- DP coset embedding ----

struct DpCosetReport {
    bool ok = false;
    std::size_t coset_size = 0;
};

// Checks that the (Z/2)^{q+2}-valued map sigma embeds DP_{p,q} as
// H intersect sigma(D)^{p+p^q} for the explicit coset H.
DpCosetReport verify_dp_coset(int p, int q);

}  // namespace nrd

#endif
