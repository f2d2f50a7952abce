#ifndef ADA_SLOTCHECK_HPP
#define ADA_SLOTCHECK_HPP

#include <optional>
#include <string>
#include <vector>

#include "ada/linop.hpp"
#include "ada/univexp.hpp"

namespace ada {

enum class Realm { H, K };

// A slot (P, m, cut): differential polynomial, monomial bound, and the cut
// v(a^ - H) standing in for the unrealized zero a^.  The element a^ itself is
// never materialized; every predicate evaluated here is one that reduces to
// this data (for isolated/ultimate via the normal-or-linear case).
struct SlotData {
    DiffPoly P;
    Mono m;
    CutSpec cut;
    Realm realm = Realm::H;
    Deriv deriv; // accumulated compositional conjugation

    int order() const { return P.order(); }
    int weight() const { return P.weight(); }
};

SlotData make_slot(DiffPoly P, Mono m, CutSpec cut, Realm realm, Deriv deriv = {});

SlotData refine(const SlotData& s, const CElem& a, const Mono& n);
SlotData mult_conj(const SlotData& s, const Mono& n);
SlotData comp_conj(const SlotData& s, const CElem& phi);

// one comparison performed during a predicate evaluation
struct CheckLine {
    std::string name;
    std::string detail;
    bool ok;
};

struct SlotReport {
    bool verdict = false;
    std::string rule; // which reduction was used
    std::optional<CElem> fv;
    int w = -1;
    std::vector<CheckLine> checks;
    std::string note;
};

SlotReport is_steep(const SlotData& s);
SlotReport is_normal(const SlotData& s);
SlotReport is_strictly_normal(const SlotData& s);
// deep relative to an explicit chain of active phi preceq 1
SlotReport is_deep(const SlotData& s, const std::vector<CElem>& phi_chain);

// the canonical default chain (1, x^-1)
std::vector<CElem> default_phi_chain(const CtxPtr& ctx);

// split-normality family --------------------------------------------------

enum class SplitMode { SN2, SN2as, SN2s, RN2, RN2as, RN2s };

struct SplitWitness {
    DiffPoly Q;     // homogeneous degree 1, order r
    DiffPoly R;     // remainder of the decomposition
    Splitting split; // splitting of L_Q over K
};

SlotReport verify_split_normal(const SlotData& s, const SplitWitness& w, SplitMode mode);

// repulsion ----------------------------------------------------------------

bool is_repulsive(const CElem& f);
bool is_attractive(const CElem& f);
bool is_gamma_repulsive(const CElem& f, const ValVec& gamma); // gamma > 0
bool is_cut_repulsive(const CElem& f, const CutSpec& cut, int levels);
// smallest integer c > 0 with Re g - c m^dagger > 0; needs v(Re g) >= psi(v m)
Rat make_repulsive_witness(const CElem& g, const Mono& m);

// isolated / ultimate --------------------------------------------------------

enum class Pinned { Isolated, Ultimate };

// uctx/witness enable the kernel route for order >= 2
SlotReport is_isolated_or_ultimate(const SlotData& s, Pinned which,
                                   const UPtr& uctx = nullptr,
                                   const std::optional<Splitting>& witness = std::nullopt);

} // namespace ada

#endif
