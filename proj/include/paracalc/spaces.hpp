#ifndef PARACALC_SPACES_HPP
#define PARACALC_SPACES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace paracalc {

enum class Scale { B, F };
enum class Status { Bounded, Unbounded, Open };

/** Parameters (s, p, q) of a smoothness space on the anisotropy with total
 *  weight |M| = mtot.  p, q range over (0, inf]; the F scale needs p < inf. */
struct SpaceParam {
    Scale scale = Scale::B;
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    double mtot = 1.0;

    double ip() const;  // 1/p, zero for p = inf
    double iq() const;
    double h() const;  // |M|/p

    static SpaceParam make(Scale scale, double s, double p, double q, double mtot);
};

struct Verdict {
    Status status = Status::Open;
    std::vector<std::string> rules;
};

struct Condition {
    std::string id;
    bool applicable = false;
    bool holds = true;  // vacuously true when not applicable
};

struct NotBounded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** min+(a, b) = min(a, b, a+b). */
double min_plus(double a, double b);

struct DerivedExponents {
    double p = 0.0;       // 1/p = 1/p0 + 1/p1
    double q = 0.0;       // max(q0 [s0 = s1], q1)
    double p_star1 = 0.0; // left endpoint of the top edge
};

/** Requires nothing of the order; factors are sorted so s0 >= s1 internally. */
DerivedExponents derived_exponents(const SpaceParam& A0, const SpaceParam& A1);

/** The necessary conditions (1)-(7) and the applicable primed rules for
 *  boundedness of multiplication A0 x A1 -> A2.  Not-applicable rules are
 *  reported with applicable = false and holds = true. */
std::vector<Condition> necessary_conditions(const SpaceParam& A0, const SpaceParam& A1,
                                            const SpaceParam& A2);

/** Does the pair admit any receiving space at all. */
Verdict domain_check(const SpaceParam& A0, const SpaceParam& A1);

enum class Member { yes, no, open };

/** Receiving-space region of a Bounded pair.  Factors are stored with
 *  s0 >= s1; geometry is the top edge s2 = s1 with |M|/p2 in (|M|/p*1, cap],
 *  the diagonal s2 - |M|/p2 = min+(a, b) and the interior between them. */
class ReceivingRegion {
public:
    ReceivingRegion(SpaceParam A0, SpaceParam A1, bool isotropic);

    const SpaceParam& a0() const { return A0_; }
    const SpaceParam& a1() const { return A1_; }
    bool isotropic() const { return iso_; }

    double s2_max() const { return A1_.s; }
    double h_sum() const { return hp_; }
    double h_star() const { return hstar_; }
    double h_cap() const { return cap_; }
    double diag() const { return D_; }
    double q_min() const { return qe_; }
    bool generic() const { return generic_; }
    const std::vector<std::string>& open_flags() const { return open_flags_; }

    Member member(const SpaceParam& A2, std::vector<std::string>* why = nullptr) const;

private:
    SpaceParam A0_, A1_;  // ordered, s0 >= s1
    bool iso_ = false;
    double ip0_ = 0, ip1_ = 0, h0_ = 0, h1_ = 0, a_ = 0, b_ = 0;
    double hp_ = 0, hstar_ = 0, D_ = 0, qe_ = 0, cap_ = 0;
    bool generic_ = false, sum0_ = false, sumM_ = false;
    std::vector<std::string> open_flags_;

    friend class RegionEval;
};

ReceivingRegion receiving_region(const SpaceParam& A0, const SpaceParam& A1,
                                 bool isotropic = false);

/** Full-space embedding A into B. */
Verdict embedding_check(const SpaceParam& A, const SpaceParam& B, bool isotropic = false);

/** A embedded into L_inf. */
Verdict linf_embedding_check(const SpaceParam& A, bool isotropic = false);

/** Embedding on a bounded domain (integral exponents may decrease). */
Verdict bounded_domain_embedding_check(const SpaceParam& A, const SpaceParam& B,
                                       bool isotropic = false);

struct AuditReport {
    std::size_t samples = 0;
    std::size_t accepted = 0;  // member(A2) == yes
    std::size_t violations = 0;
    std::vector<std::string> notes;
};

/** Samples candidate receivers of the claimed region and verifies every
 *  accepted member against necessary conditions (3)-(6) and the primed rules.
 *  corrupt = true widens the q2 acceptance (negative-control fixture). */
AuditReport consistency_audit(const SpaceParam& A0, const SpaceParam& A1, std::size_t nsamples,
                              std::uint64_t seed, bool isotropic = false, bool corrupt = false);

}  // namespace paracalc

#endif
