#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brauer/cor.hpp"
#include "brauer/curve.hpp"
#include "brauer/galois.hpp"
#include "brauer/symbols.hpp"
#include "brauer/tangent.hpp"

namespace brauer {

// φ⁻¹∘δ(R) for R over the base of the functions:
//   R = 0 → (1, 1); R = P → (t_Q(P), t_P(P⊕Q)/t_P(Q));
//   R = Q → (t_Q(P⊕Q)/t_Q(P), t_P(Q)); otherwise (t_Q(R), t_P(R)).
KummerPair kummer_delta(const Point& R, const CertifiedFunction& tP, const CertifiedFunction& tQ);

// (a, t_P) ⊗ (b, t_Q), dropping a term whose constant slot is a q-th power.
SymbolTensor epsilon_to_symbols(const KummerPair& pair, const CertifiedFunction& tP, const CertifiedFunction& tQ,
                                const std::string& tag = "k(E)");

// n_Q over L′ with div(n_Q) = Σ σ^i(Q) − q(0) and n_Q^q = N_{L(E)/L′(E)}(t_Q).
// The returned certificate holds t = n_Q (over L′), g unset, exact_identity the
// norm identity.
CertifiedFunction build_nQ(const TorsionBasis& B, const CaseInfo& C, const CertifiedFunction& tQ);

// Points of E(L) given as generators; attested marks them as generating E(L).
struct GroupData {
    std::vector<Point> generators;
    bool attested = false;
};

struct Inflation {
    SymbolTensor generator;      // (l^q, n_Q) over L′(E)
    bool quotient_known = false;
    bool quotient_nontrivial = false;
    bool generator_trivial = false;  // set iff the quotient is nontrivial
    std::vector<Point> quotient_witnesses;  // R ∈ E(k) ∩ qE(L) outside qE(k)
    std::vector<std::string> caveats;
};

// (E(k) ∩ qE(L))/qE(k) from the Mordell–Weil data; caveat when incomplete.
Inflation inflation_generator(const TorsionBasis& B, const CaseInfo& C, const CertifiedFunction& nQ,
                              const MWData& mw_k, const GroupData& EL);

struct CheckResult {
    bool ok = false;
    Elem witness;  // restriction image: b′ ∈ L′ with (a, b) ≡ (b′, 1)
    std::string why;
};

// b ≡ a/σ(a) and σ(a)² ≡ σ²(a)·a modulo q-th powers in L.
CheckResult fixed_set_check(const KummerPair& pair, const TorsionBasis& B, const CaseInfo& C);
// (a, b) ≡ (b′, 1) with b′ ∈ L′^× (Hilbert 90 on σ(a)/a = w^q).
CheckResult restriction_image_check(const KummerPair& pair, const TorsionBasis& B, const CaseInfo& C);

// Two cocycle forms of (a, b) on Gal(F(∛a, ∛b)/F) for a finite field F ∋ ρ.
struct CocycleTables {
    Tower tower;
    std::vector<Automorphism> group;         // identity first
    std::vector<int> i_index, j_index;       // γ(α)/α = ρ^i, γ(β)/β = ρ^j
    std::vector<std::vector<Elem>> weil;     // (γ, τ) ↦ ρ^{−i(γ) j(τ)}
    std::vector<std::vector<Elem>> standard; // (γ, τ) ↦ a if j(γ)+j(τ) ≥ q, else 1
    std::vector<Elem> g;                     // γ ↦ α^{j(γ)}
    bool weil_is_cocycle = false;
    bool standard_is_cocycle = false;
    bool differ_by_dg = false;  // standard = weil · dg at every pair
};

CocycleTables symbol_cocycle_oracle(const Elem& a, const Elem& b, const Elem& rho, int q);
// γ(c(τ, υ))·c(γ, τυ) = c(γτ, υ)·c(γ, τ) at every triple.
bool is_two_cocycle(const Tower& T, const std::vector<Automorphism>& G, const std::vector<std::vector<Elem>>& c);

struct Presentation {
    CaseTag tag = CaseTag::Split;
    std::string decomposition;
    std::vector<SymbolTensor> generators;
    std::vector<SymbolTensor> relations;  // generating set of the relation subgroup
    std::vector<std::string> relation_sources;
    std::vector<KummerPair> relation_pairs;  // class data behind each relation, when it has one
    std::vector<std::string> caveats;
    std::vector<std::string> notes;
    // finite base only: |image δ| and |(k^×/q)²|
    std::optional<size_t> delta_image_size, pair_group_size;
    bool I_trivial = false;  // decided only over finite fields
};

// Throws SymbolLengthExceeded when some tensor is longer than 2(q−1)(q+1).
void check_symbol_lengths(const Presentation& p, int q);

Presentation presentation_split(const TorsionBasis& B, const CertifiedFunction& tP, const CertifiedFunction& tQ,
                                const MWData& mw);
Presentation presentation_coprime(const TorsionBasis& B, const GaloisAction& G, const CertifiedFunction& tP,
                                  const CertifiedFunction& tQ, const MWData& mw_k);
Presentation presentation_q_divides(const TorsionBasis& B, const GaloisAction& G, const CaseInfo& C,
                                    const CertifiedFunction& tP, const CertifiedFunction& tQ,
                                    const CertifiedFunction& nQ, const MWData& mw_k, const GroupData& EL);

// Cor down the tower from levels[from] to levels[to], one cyclic step at a time.
// Returns nullopt (with a reason) when a step is not cyclic of prime degree.
std::optional<SymbolTensor> corestrict_down(const SymbolTensor& t, const Tower& T, int from, int to, int q,
                                            std::string* why = nullptr);

}  // namespace brauer
