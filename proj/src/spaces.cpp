#include "paracalc/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "paracalc/util.hpp"

namespace paracalc {

namespace {

// Three-valued certainty, ordered No < Open < Yes.
enum class Tri { No = 0, Open = 1, Yes = 2 };

Tri t_and(Tri x, Tri y) { return static_cast<Tri>(std::min(static_cast<int>(x), static_cast<int>(y))); }
Tri t_or(Tri x, Tri y) { return static_cast<Tri>(std::max(static_cast<int>(x), static_cast<int>(y))); }
Tri t_of(bool b) { return b ? Tri::Yes : Tri::No; }

bool geq_tol(double x, double y) { return leq_tol(y, x); }

void check_same_weight(const SpaceParam& x, const SpaceParam& y) {
    if (!approx_eq(x.mtot, y.mtot))
        throw std::invalid_argument("space parameters carry different weight totals");
}

/** Embedding into L_inf as a three-valued answer. */
Tri tri_linf(const SpaceParam& A, bool iso) {
    const double h = A.h();
    if (A.s > h + kParamTol) return Tri::Yes;
    if (A.s < h - kParamTol) return Tri::No;
    if (A.scale == Scale::B) return t_of(A.q <= 1.0 + kParamTol);
    if (iso) return t_of(A.p <= 1.0 + kParamTol);
    if (A.p < 1.0 - kParamTol) return Tri::Yes;
    if (approx_eq(A.p, 1.0)) return A.q <= 1.0 + kParamTol ? Tri::Yes : Tri::Open;
    return Tri::No;
}

}  // namespace

double SpaceParam::ip() const { return std::isinf(p) ? 0.0 : 1.0 / p; }
double SpaceParam::iq() const { return std::isinf(q) ? 0.0 : 1.0 / q; }
double SpaceParam::h() const { return mtot * ip(); }

SpaceParam SpaceParam::make(Scale scale, double s, double p, double q, double mtot) {
    if (!(p > 0.0)) throw std::invalid_argument("space: p must be positive");
    if (!(q > 0.0)) throw std::invalid_argument("space: q must be positive");
    if (!(mtot > 0.0)) throw std::invalid_argument("space: weight total must be positive");
    if (scale == Scale::F && std::isinf(p))
        throw std::invalid_argument("space: the F scale requires p < inf");
    if (!std::isfinite(s)) throw std::invalid_argument("space: s must be finite");
    return SpaceParam{scale, s, p, q, mtot};
}

double min_plus(double a, double b) { return std::min({a, b, a + b}); }

namespace {

double hstar_of(double h1, double a, double b) {
    return h1 + neg_part(a) + pos_part(b - pos_part(a));
}

}  // namespace

DerivedExponents derived_exponents(const SpaceParam& A0in, const SpaceParam& A1in) {
    check_same_weight(A0in, A1in);
    const SpaceParam& A0 = A0in.s >= A1in.s ? A0in : A1in;
    const SpaceParam& A1 = A0in.s >= A1in.s ? A1in : A0in;
    const double mtot = A0.mtot;
    DerivedExponents d;
    double ips = A0.ip() + A1.ip();
    d.p = ips > kParamTol ? 1.0 / ips : INFINITY;
    d.q = approx_eq(A0.s, A1.s) ? std::max(A0.q, A1.q) : A1.q;
    double hs = hstar_of(A1.h(), A0.s - A0.h(), A1.s - A1.h());
    d.p_star1 = hs > kParamTol ? mtot / hs : INFINITY;
    return d;
}

std::vector<Condition> necessary_conditions(const SpaceParam& A0, const SpaceParam& A1,
                                            const SpaceParam& A2) {
    check_same_weight(A0, A1);
    check_same_weight(A0, A2);
    const double mtot = A0.mtot;
    const double h0 = A0.h(), h1 = A1.h(), h2 = A2.h();
    const double a0 = A0.s - h0, a1 = A1.s - h1;
    std::vector<Condition> out;
    auto add = [&](std::string id, bool applicable, bool holds) {
        out.push_back({std::move(id), applicable, applicable ? holds : true});
    };

    add("(1)", true, geq_tol(A0.s + A1.s, mtot * (A0.ip() + A1.ip() - 1.0)));
    add("(2)", true, geq_tol(A0.s + A1.s, 0.0));
    add("(3)", true, leq_tol(A2.s, std::min(A0.s, A1.s)));
    add("(4)", true, leq_tol(A2.ip(), A0.ip() + A1.ip()));
    add("(5)", true, leq_tol(A2.s - h2, std::min(a0, a1)));
    add("(6)", true, leq_tol(A2.s - h2, a0 + a1));

    // (7): on the shifted diagonal of one factor with the other factor at the
    // L_inf borderline, its sum (B) or integral (F) exponent must be <= 1.
    {
        bool app = false, holds = true;
        auto orient = [&](const SpaceParam& X, const SpaceParam& Y) {
            // hypothesis: s2 - h2 == sY - hY and sX == hX
            if (approx_eq(A2.s - h2, Y.s - Y.h()) && approx_eq(X.s, X.h())) {
                app = true;
                holds = holds && ((X.scale == Scale::B ? X.q : X.p) <= 1.0 + kParamTol);
            }
        };
        orient(A0, A1);
        orient(A1, A0);
        add("(7)", app, holds);
    }

    // (1'): borderline of (1) with the positive part active.
    {
        bool app = approx_eq(A0.s + A1.s, mtot * (A0.ip() + A1.ip() - 1.0)) &&
                   geq_tol(A0.ip() + A1.ip(), 1.0);
        bool holds = true;
        if (app) {
            if (A0.scale == Scale::B && A1.scale == Scale::B)
                holds = geq_tol(A0.iq() + A1.iq(), 1.0);
            else if (A0.scale == Scale::B && A1.scale == Scale::F)
                holds = geq_tol(A0.iq() + A1.ip(), 1.0);
            else if (A0.scale == Scale::F && A1.scale == Scale::B)
                holds = geq_tol(A0.ip() + A1.iq(), 1.0);
            else
                app = false;  // FF: no sum-exponent constraint on this borderline
        }
        add("(1')", app, holds);
    }
    {
        bool app = approx_eq(A0.s + A1.s, 0.0);
        add("(2')", app, !app || geq_tol(A0.iq() + A1.iq(), 1.0));
    }
    {
        bool app = false, holds = true;
        for (const SpaceParam* X : {&A0, &A1})
            if (approx_eq(A2.s, X->s)) {
                app = true;
                holds = holds && geq_tol(A2.q, X->q);
            }
        add("(3')", app, holds);
    }
    {
        bool app = false, holds = true;
        for (const SpaceParam* X : {&A0, &A1})
            if (X->scale == Scale::B && A2.scale == Scale::B &&
                approx_eq(A2.s - h2, X->s - X->h())) {
                app = true;
                holds = holds && geq_tol(A2.q, X->q);
            }
        add("(5')", app, holds);
    }
    {
        bool app = A0.scale == Scale::B && A1.scale == Scale::B && A2.scale == Scale::B &&
                   approx_eq(A2.s - h2, a0 + a1);
        add("(6')", app, !app || leq_tol(A2.iq(), A0.iq() + A1.iq()));
    }
    return out;
}

Verdict domain_check(const SpaceParam& A0, const SpaceParam& A1) {
    check_same_weight(A0, A1);
    const double mtot = A0.mtot;
    const double gap = A0.s + A1.s - mtot * pos_part(A0.ip() + A1.ip() - 1.0);
    if (gap > kParamTol) return {Status::Bounded, {"Eq4.2-generic"}};
    if (gap < -kParamTol) {
        std::vector<std::string> rules;
        if (!geq_tol(A0.s + A1.s, mtot * (A0.ip() + A1.ip() - 1.0))) rules.push_back("ncss-(1)");
        if (!geq_tol(A0.s + A1.s, 0.0)) rules.push_back("ncss-(2)");
        return {Status::Unbounded, rules};
    }
    // Borderline.
    if (approx_eq(A0.s, 0.0) && approx_eq(A1.s, 0.0))
        return {Status::Open, {"Remark6.2-open"}};

    const bool sum0 = approx_eq(A0.s + A1.s, 0.0);
    const bool sumM = approx_eq(A0.s + A1.s, mtot * (A0.ip() + A1.ip() - 1.0)) &&
                      geq_tol(A0.ip() + A1.ip(), 1.0);
    std::vector<std::string> failed, passed;
    if (sum0) {
        if (geq_tol(A0.iq() + A1.iq(), 1.0))
            passed.push_back("ncss-(2')");
        else
            failed.push_back("ncss-(2')");
    }
    if (sumM) {
        bool app = true, holds = true;
        if (A0.scale == Scale::B && A1.scale == Scale::B)
            holds = geq_tol(A0.iq() + A1.iq(), 1.0);
        else if (A0.scale == Scale::B && A1.scale == Scale::F)
            holds = geq_tol(A0.iq() + A1.ip(), 1.0);
        else if (A0.scale == Scale::F && A1.scale == Scale::B)
            holds = geq_tol(A0.ip() + A1.iq(), 1.0);
        else
            app = false;
        if (app) (holds ? passed : failed).push_back("ncss-(1')");
    }
    if (!failed.empty()) return {Status::Unbounded, failed};

    const bool bb = A0.scale == Scale::B && A1.scale == Scale::B;
    const bool ff = A0.scale == Scale::F && A1.scale == Scale::F;
    std::string tag;
    if (sum0)
        tag = ff ? "Thm6.3" : (bb ? "Thm6.7" : "borderline-BF-characterization");
    else
        tag = ff ? "Thm6.4" : (bb ? "Thm6.8" : "borderline-BF-characterization");
    passed.insert(passed.begin(), tag);
    return {Status::Bounded, passed};
}

// ---------------------------------------------------------------------------
// Receiving region.

ReceivingRegion::ReceivingRegion(SpaceParam A0, SpaceParam A1, bool isotropic)
    : A0_(A0.s >= A1.s ? A0 : A1), A1_(A0.s >= A1.s ? A1 : A0), iso_(isotropic) {
    check_same_weight(A0_, A1_);
    Verdict dom = domain_check(A0_, A1_);
    if (dom.status != Status::Bounded)
        throw NotBounded("pair admits no receiving space (domain_check not Bounded)");
    const double mtot = A0_.mtot;
    ip0_ = A0_.ip();
    ip1_ = A1_.ip();
    h0_ = A0_.h();
    h1_ = A1_.h();
    a_ = A0_.s - h0_;
    b_ = A1_.s - h1_;
    hp_ = h0_ + h1_;
    hstar_ = hstar_of(h1_, a_, b_);
    D_ = min_plus(a_, b_);
    qe_ = approx_eq(A0_.s, A1_.s) ? std::max(A0_.q, A1_.q) : A1_.q;
    const double gap = A0_.s + A1_.s - mtot * pos_part(ip0_ + ip1_ - 1.0);
    generic_ = gap > kParamTol;
    sum0_ = !generic_ && approx_eq(A0_.s + A1_.s, 0.0);
    sumM_ = !generic_ && approx_eq(A0_.s + A1_.s, mtot * (ip0_ + ip1_ - 1.0)) &&
            geq_tol(ip0_ + ip1_, 1.0) && A0_.s + A1_.s > kParamTol;
    cap_ = sumM_ ? mtot : hp_;

    const bool bb = A0_.scale == Scale::B && A1_.scale == Scale::B;
    if (bb) {
        for (int j = 0; j < 2; ++j) {
            const SpaceParam& X = j == 0 ? A0_ : A1_;
            if (X.s > kParamTol && X.s < X.h() - kParamTol) {
                double tj = mtot / (X.h() - X.s);
                if (!iso_ && tj > 2.0 + kParamTol)
                    open_flags_.push_back("Remark6.4-vertex-q" + std::to_string(j));
            }
        }
    }
    if (sumM_) open_flags_.push_back("Thm6.4/6.8-pstar-optimality");
}

namespace {

/** Per-rule side conditions at the left endpoint / on the diagonal edge. */
class RegionEvalCtx {
public:
    const ReceivingRegion& R;
    explicit RegionEvalCtx(const ReceivingRegion& r) : R(r) {}

    const SpaceParam& A0() const { return R.a0(); }
    const SpaceParam& A1() const { return R.a1(); }
    bool iso() const { return R.isotropic(); }
    double a() const { return A0().s - A0().h(); }
    double b() const { return A1().s - A1().h(); }
    double qe() const { return R.q_min(); }
    double qmax() const { return std::max(A0().q, A1().q); }

    Tri guard(int j) const {
        const SpaceParam& X = j == 0 ? A0() : A1();
        double gap = X.h() - X.s;
        if (!(gap > kParamTol)) return Tri::No;  // t_j undefined here
        double tj = X.mtot / gap;
        if (X.q < tj - kParamTol) return Tri::Yes;
        if (approx_eq(X.q, tj)) return (tj <= 2.0 + kParamTol || iso()) ? Tri::Yes : Tri::Open;
        return iso() ? Tri::No : Tri::Open;
    }

    /** Conditions for including the top-edge left endpoint, FF factors. */
    Tri ff_endpoint() const {
        Tri c14;
        if (b() > a() + kParamTol)
            c14 = Tri::Yes;  // (1a)
        else if (approx_eq(a(), 0.0) && approx_eq(b(), 0.0))
            c14 = tri_linf(A1(), iso());  // (1b) borderline
        else
            c14 = Tri::Yes;  // (1b)
        Tri branchA = t_and(tri_linf(A0(), iso()), c14);

        Tri branchB = Tri::No;
        if (A0().s > kParamTol && leq_tol(A0().s, A0().h())) {
            Tri e0_if_line = approx_eq(A0().s, A0().h()) ? tri_linf(A0(), iso()) : Tri::Yes;
            if (A1().s > A1().h() + kParamTol)
                branchB = Tri::Yes;  // (2a)
            else if (A1().s < A1().h() - kParamTol)
                branchB = e0_if_line;  // (2b)
            else
                branchB = t_and(tri_linf(A1(), iso()), e0_if_line);  // (2c)
        }
        return t_or(branchA, branchB);
    }

    /** Conditions for the top-edge left endpoint with BB factors and a
     *  receiving sum exponent o. */
    Tri bb_endpoint(double o) const {
        const double s0 = A0().s, s1 = A1().s, h0 = A0().h(), h1 = A1().h();
        Tri E0 = tri_linf(A0(), iso()), E1 = tri_linf(A1(), iso());
        Tri branchA = Tri::No;
        if (E0 != Tri::No) {
            Tri c = Tri::No;
            if (geq_tol(b(), a())) {  // (1a)
                Tri t = t_of(geq_tol(o, qmax()));
                if (approx_eq(s1, h1)) t = t_and(t, E1);
                c = t_or(c, t);
            }
            if (geq_tol(b(), 0.0) && b() < a() - kParamTol)  // (1b)
                c = t_or(c, t_of(geq_tol(o, qe())));
            if (b() < a() - kParamTol && s1 > kParamTol && s1 < h1 - kParamTol) {  // (1c)
                Tri t = t_of(geq_tol(o, qe()));
                if (approx_eq(s1, s0) && approx_eq(s0, h0)) t = t_and(t, guard(1));
                c = t_or(c, t);
            }
            if (b() < a() - kParamTol && leq_tol(s1, 0.0) && s1 < h1 - kParamTol)  // (1d)
                c = t_or(c, t_of(geq_tol(o, A1().q)));
            branchA = t_and(E0, c);
        }
        Tri branchB = Tri::No;
        if (s0 > kParamTol && leq_tol(s0, h0)) {
            Tri c = Tri::No;
            if (s1 > h1 + kParamTol)  // (2a)
                c = t_or(c, t_of(geq_tol(o, qmax())));
            if (approx_eq(s1, h1) && s0 < h0 - kParamTol)  // (2b)
                c = t_or(c, t_and(t_and(E1, t_of(geq_tol(o, qmax()))), guard(0)));
            if (s1 > kParamTol && s1 < h1 - kParamTol && s0 < h0 - kParamTol) {
                if (s0 > s1 + kParamTol)  // (2c)
                    c = t_or(c, t_and(t_of(geq_tol(o, A1().q)), guard(0)));
                else if (approx_eq(s0, s1))  // (2d)
                    c = t_or(c, t_and(t_of(geq_tol(o, qmax())), t_and(guard(0), guard(1))));
            }
            if (leq_tol(s1, 0.0) && s1 < h1 - kParamTol && s0 < h0 - kParamTol)  // (2e)
                c = t_or(c, t_and(t_of(geq_tol(o, A1().q)), guard(0)));
            branchB = c;
        }
        return t_or(branchA, branchB);
    }

    /** Conditions on the diagonal edge with BB factors (sum exponent o). */
    Tri bb_diagonal(double o) const {
        const double s0 = A0().s, s1 = A1().s, h0 = A0().h(), h1 = A1().h();
        Tri E0 = tri_linf(A0(), iso()), E1 = tri_linf(A1(), iso());
        Tri branchA = Tri::No;
        if (E0 != Tri::No) {
            Tri c = Tri::No;
            if (b() > a() + kParamTol)  // (1a)
                c = t_or(c, t_of(geq_tol(o, A0().q)));
            if (approx_eq(a(), b())) {  // (1b)
                Tri t = t_of(geq_tol(o, qmax()));
                if (approx_eq(s1, h1)) t = t_and(t, E1);
                c = t_or(c, t);
            }
            if (b() < a() - kParamTol)  // (1c)
                c = t_or(c, t_of(geq_tol(o, A1().q)));
            branchA = t_and(E0, c);
        }
        Tri branchB = Tri::No;
        if (s0 > kParamTol && leq_tol(s0, h0)) {
            Tri c = Tri::No;
            if (s1 > h1 + kParamTol)  // (2a)
                c = t_or(c, t_of(geq_tol(o, A0().q)));
            if (approx_eq(s1, h1) && s0 < h0 - kParamTol)  // (2b)
                c = t_or(c, t_and(E1, t_of(geq_tol(o, A0().q))));
            if (s1 < h1 - kParamTol && s0 < h0 - kParamTol) {  // (2c)
                double harmonic_iq = A0().iq() + A1().iq();
                double oin = std::isinf(o) ? 0.0 : 1.0 / o;
                c = t_or(c, t_of(leq_tol(oin, harmonic_iq)));
            }
            branchB = c;
        }
        return t_or(branchA, branchB);
    }
};

}  // namespace

Member ReceivingRegion::member(const SpaceParam& A2, std::vector<std::string>* why) const {
    check_same_weight(A0_, A2);
    auto note = [&](const std::string& id) {
        if (why) why->push_back(id);
    };
    auto fail = [&](const std::string& id) {
        note(id);
        return Member::no;
    };
    const double s1 = A1_.s;
    const double s2 = A2.s, h2 = A2.h(), q2 = A2.q;

    // Necessary screens (the product conditions evaluated at A2).
    if (s2 > s1 + kParamTol) return fail("(3)");
    if (h2 > hp_ + kParamTol) return fail("(4)");
    if (s2 - h2 > D_ + kParamTol) return fail(approx_eq(D_, a_ + b_) && D_ < std::min(a_, b_) ? "(6)" : "(5)");
    if (approx_eq(s2 - h2, b_) && approx_eq(A0_.s, h0_) &&
        !((A0_.scale == Scale::B ? A0_.q : A0_.p) <= 1.0 + kParamTol))
        return fail("(7)");
    if (approx_eq(s2 - h2, a_) && approx_eq(A1_.s, h1_) &&
        !((A1_.scale == Scale::B ? A1_.q : A1_.p) <= 1.0 + kParamTol))
        return fail("(7)");
    if (approx_eq(s2, A0_.s) && !geq_tol(q2, A0_.q)) return fail("(3')");
    if (approx_eq(s2, A1_.s) && !geq_tol(q2, A1_.q)) return fail("(3')");
    if (A0_.scale == Scale::B && A2.scale == Scale::B && approx_eq(s2 - h2, a_) &&
        !geq_tol(q2, A0_.q))
        return fail("(5')");
    if (A1_.scale == Scale::B && A2.scale == Scale::B && approx_eq(s2 - h2, b_) &&
        !geq_tol(q2, A1_.q))
        return fail("(5')");
    if (A0_.scale == Scale::B && A1_.scale == Scale::B && A2.scale == Scale::B &&
        approx_eq(s2 - h2, a_ + b_) && !leq_tol(A2.iq(), A0_.iq() + A1_.iq()))
        return fail("(6')");

    auto open_with = [&](const std::string& id) {
        note(id);
        return Member::open;
    };
    auto yes_with = [&](const std::string& id) {
        note(id);
        return Member::yes;
    };

    // On the positive borderline with s1 >= 0 only receivers below smoothness
    // zero are certified (Sobolev shifts of the s1 < 0 statement).
    if (sumM_ && A1_.s > -kParamTol && !(s2 < -kParamTol))
        return open_with("borderline-nonnegative-s1");
    if (h2 > cap_ + kParamTol) return open_with("beyond-L1-reach");

    const bool top = approx_eq(s2, s1);
    const bool on_diag = approx_eq(s2 - h2, D_);
    const bool endpoint = top && approx_eq(h2, hstar_);
    const bool bb = A0_.scale == Scale::B && A1_.scale == Scale::B;
    const bool ff = A0_.scale == Scale::F && A1_.scale == Scale::F;

    if (!top && !on_diag) return yes_with("interior");
    if (!bb && !ff) return open_with("mixed-pair-edge");

    RegionEvalCtx ctx(*this);

    if (top && !endpoint) {
        // interior of the top edge; q2 >= qe is already ensured by (3').
        if ((bb && A2.scale == Scale::B) || (ff && A2.scale == Scale::F))
            return yes_with(bb ? "Thm6.5-edge" : "Thm6.1-edge");
        if (bb)  // F receiver via the scale sandwich
            return (leq_tol(qe_, A2.p) && leq_tol(qe_, q2)) ? yes_with("Thm6.5+Eq1.19''")
                                                            : open_with("cross-scale-edge");
        return (leq_tol(A2.p, q2)) ? yes_with("Thm6.1+Eq1.19''") : open_with("cross-scale-edge");
    }

    if (endpoint) {
        if (generic_) {
            if (ff) {
                Tri suff = ctx.ff_endpoint();
                if (A2.scale == Scale::F) {
                    if (suff == Tri::Yes) return yes_with("Thm6.1-endpoint");
                    if (suff == Tri::No) return fail("Thm6.1-endpoint-converse");
                    return open_with("Remark-embd-open");
                }
                if (suff == Tri::Yes && leq_tol(A2.p, q2)) return yes_with("Thm6.1+Eq1.19''");
                if (suff == Tri::No) return fail("Thm6.1-endpoint-converse");
                return open_with("cross-scale-endpoint");
            }
            // BB
            double o = A2.scale == Scale::B ? q2 : std::min(A2.p, q2);
            Tri suff = ctx.bb_endpoint(o);
            if (suff == Tri::Yes)
                return yes_with(A2.scale == Scale::B ? "Thm6.5-endpoint" : "Thm6.5+Eq1.19''");
            if (suff == Tri::Open) return open_with("Remark6.4-open");
            return A2.scale == Scale::B ? fail("Thm6.5-endpoint-converse")
                                        : open_with("cross-scale-endpoint");
        }
        if (sum0_) {
            if (ff) {
                // s = s0 = -s1 > 0
                Tri base;
                bool alt_binf = false;  // only the o = inf B space is certified
                if (A0_.s > h0_ + kParamTol)
                    base = Tri::Yes;
                else if (A0_.s < h0_ - kParamTol) {
                    if (ip0_ + ip1_ < 1.0 - kParamTol)
                        base = Tri::Yes;
                    else {
                        base = Tri::Open;
                        alt_binf = true;
                    }
                } else
                    base = Tri::Open;
                if (A2.scale == Scale::F) {
                    if (base == Tri::Yes) return yes_with("Thm6.3-endpoint");
                    return open_with("Thm6.3-endpoint-open");
                }
                if (base == Tri::Yes)
                    return leq_tol(A2.p, q2) ? yes_with("Thm6.3+Eq1.19''")
                                             : open_with("cross-scale-endpoint");
                if (alt_binf && std::isinf(q2)) return yes_with("Thm6.3-Binf");
                return open_with("Thm6.3-endpoint-open");
            }
            // BB, Thm 6.7 pattern
            double pd = (ip0_ + ip1_) > kParamTol ? 1.0 / (ip0_ + ip1_) : INFINITY;
            double o = A2.scale == Scale::B ? q2 : std::min(A2.p, q2);
            Tri E0 = tri_linf(A0_, iso_);
            auto o_clause = [&]() -> Tri {
                if (approx_eq(pd, 1.0)) return t_of(std::isinf(o));
                double req = std::max(A1_.q, pd);
                bool relaxed = pd >= 2.0 - kParamTol || iso_;
                if (o > req + kParamTol) return Tri::Yes;
                if (approx_eq(o, req)) return relaxed ? Tri::Yes : Tri::Open;
                return Tri::Open;  // sum-exponent optimality unsettled
            };
            Tri branchA = Tri::No;
            if (E0 != Tri::No) {
                if (A0_.s > h0_ + kParamTol)
                    branchA = E0;  // o >= q1 is already ensured
                else
                    branchA = t_and(E0, o_clause());
            }
            Tri branchB = Tri::No;
            if (A0_.s > kParamTol && A0_.s < h0_ - kParamTol)
                branchB = t_and(ctx.guard(0), o_clause());
            Tri suff = t_or(branchA, branchB);
            if (suff == Tri::Yes)
                return yes_with(A2.scale == Scale::B ? "Thm6.7-endpoint" : "Thm6.7+Eq1.19''");
            if (suff == Tri::No && iso_) return fail("Remark6.4-iso");
            return open_with("Thm6.7-endpoint-open");
        }
        // sumM, s1 < 0 (the s1 >= 0 part is filtered earlier)
        Tri E0 = tri_linf(A0_, iso_);
        bool need_inf;
        Tri grant;
        if (A0_.s > h0_ + kParamTol) {
            grant = E0;
            need_inf = false;
        } else if (approx_eq(A0_.s, h0_)) {
            grant = E0;
            need_inf = true;
        } else if (A0_.s > kParamTol) {
            grant = ctx.guard(0);
            need_inf = true;
        } else {
            grant = Tri::No;
            need_inf = true;
        }
        std::string tag = ff ? "Thm6.4" : "Thm6.8";
        if (grant == Tri::Yes) {
            if (!need_inf) {
                if (A2.scale == (ff ? Scale::F : Scale::B)) return yes_with(tag + "-endpoint");
                if (ff) return leq_tol(A2.p, q2) ? yes_with(tag + "+Eq1.19''")
                                                 : open_with("cross-scale-endpoint");
                return leq_tol(qe_, std::min(A2.p, q2)) ? yes_with(tag + "+Eq1.19''")
                                                        : open_with("cross-scale-endpoint");
            }
            if (A2.scale == Scale::B && std::isinf(q2)) return yes_with(tag + "-Binf");
            return open_with(tag + "-endpoint-open");
        }
        if (grant == Tri::No && iso_ && A0_.s > kParamTol && A0_.s < h0_ - kParamTol)
            return fail("Remark6.4-iso");
        return open_with(tag + "-endpoint-open");
    }

    // Diagonal edge with s2 < s1.
    if (generic_) {
        if (ff) {
            if (h2 <= kParamTol)  // p2 = inf is only reachable as B with o = inf
                return (A2.scale == Scale::B && std::isinf(q2)) ? yes_with("Thm6.2+Eq1.20")
                                                                : open_with("diag-pinf");
            Tri suff = ctx.ff_endpoint();  // Thm 6.2 reuses the endpoint conditions
            if (A2.scale == Scale::F) {
                if (suff == Tri::Yes) return yes_with("Thm6.2-diag");
                if (suff == Tri::No) return fail("Thm6.2-diag-converse");
                return open_with("Remark-embd-open");
            }
            if (suff == Tri::Yes && leq_tol(A2.p, q2)) return yes_with("Thm6.2+Eq1.19''");
            if (suff == Tri::No) return fail("Thm6.2-diag-converse");
            return open_with("cross-scale-diag");
        }
        double o = A2.scale == Scale::B ? q2 : std::min(A2.p, q2);
        Tri suff = ctx.bb_diagonal(o);
        if (suff == Tri::Yes)
            return yes_with(A2.scale == Scale::B ? "Thm6.6-diag" : "Thm6.6+Eq1.19''");
        if (suff == Tri::Open) return open_with("Remark6.4-open");
        return A2.scale == Scale::B ? fail("Thm6.6-diag-converse") : open_with("cross-scale-diag");
    }
    // Borderline diagonals: shift the endpoint grant along the diagonal.
    if (sum0_) {
        if (ff) {
            bool full = A0_.s > h0_ + kParamTol ||
                        (A0_.s < h0_ - kParamTol && ip0_ + ip1_ < 1.0 - kParamTol);
            bool alt_binf = A0_.s < h0_ - kParamTol && approx_eq(ip0_ + ip1_, 1.0);
            if (full) {
                if (A2.scale == Scale::F) return yes_with("Thm6.3+Eq1.20'");
                return leq_tol(A2.p, q2) ? yes_with("Thm6.3+Eq1.19''") : open_with("cross-scale-diag");
            }
            if (alt_binf && A2.scale == Scale::B && std::isinf(q2)) return yes_with("Thm6.3-Binf");
            return open_with("Thm6.3-diag-open");
        }
        double o = A2.scale == Scale::B ? q2 : std::min(A2.p, q2);
        double pd = (ip0_ + ip1_) > kParamTol ? 1.0 / (ip0_ + ip1_) : INFINITY;
        Tri E0 = tri_linf(A0_, iso_);
        Tri grant = Tri::No;
        if (A0_.s > h0_ + kParamTol)
            grant = t_and(E0, t_of(geq_tol(o, A1_.q)));
        else if (approx_eq(A0_.s, h0_) || (A0_.s > kParamTol && A0_.s < h0_ - kParamTol)) {
            Tri head = approx_eq(A0_.s, h0_) ? E0 : ctx.guard(0);
            Tri oc;
            if (approx_eq(pd, 1.0))
                oc = t_of(std::isinf(o));
            else {
                double req = std::max(A1_.q, pd);
                bool relaxed = pd >= 2.0 - kParamTol || iso_;
                oc = o > req + kParamTol ? Tri::Yes
                                         : (approx_eq(o, req) && relaxed ? Tri::Yes : Tri::Open);
            }
            grant = t_and(head, oc);
        }
        if (grant == Tri::Yes) return yes_with("Thm6.7-diag");
        if (grant == Tri::No && iso_ && A0_.s > kParamTol && A0_.s < h0_ - kParamTol)
            return fail("Remark6.4-iso");
        return open_with("Thm6.7-diag-open");
    }
    // sumM diagonal (s1 < 0 here)
    {
        std::string tag = ff ? "Thm6.4" : "Thm6.8";
        Tri E0 = tri_linf(A0_, iso_);
        if (A0_.s > h0_ + kParamTol && E0 == Tri::Yes) {
            if (ff) {
                if (A2.scale == Scale::F) return yes_with(tag + "-diag");
                return leq_tol(A2.p, q2) ? yes_with(tag + "+Eq1.19''") : open_with("cross-scale-diag");
            }
            if (A2.scale == Scale::B && geq_tol(q2, A1_.q)) return yes_with(tag + "-diag");
            if (A2.scale == Scale::F && leq_tol(A1_.q, std::min(A2.p, q2)))
                return yes_with(tag + "+Eq1.19''");
            return open_with("cross-scale-diag");
        }
        Tri head = approx_eq(A0_.s, h0_) ? E0
                                         : (A0_.s > kParamTol ? ctx.guard(0) : Tri::No);
        if (head == Tri::Yes && A2.scale == Scale::B && std::isinf(q2))
            return yes_with(tag + "-Binf-diag");
        if (head == Tri::No && iso_ && A0_.s > kParamTol && A0_.s < h0_ - kParamTol)
            return fail("Remark6.4-iso");
        return open_with(tag + "-diag-open");
    }
}

ReceivingRegion receiving_region(const SpaceParam& A0, const SpaceParam& A1, bool isotropic) {
    return ReceivingRegion(A0, A1, isotropic);
}

// ---------------------------------------------------------------------------
// Embeddings.

Verdict linf_embedding_check(const SpaceParam& A, bool isotropic) {
    const double h = A.h();
    if (A.s > h + kParamTol) return {Status::Bounded, {"Eq1.22/1.23-supercritical"}};
    if (A.s < h - kParamTol) return {Status::Unbounded, {"Remark4.4-subcritical"}};
    if (A.scale == Scale::B) {
        if (A.q <= 1.0 + kParamTol) return {Status::Bounded, {"Eq1.22-borderline"}};
        return {Status::Unbounded, {"Remark4.4-q>1"}};
    }
    if (isotropic) {
        if (A.p <= 1.0 + kParamTol) return {Status::Bounded, {"Eq1.23-borderline-iso"}};
        return {Status::Unbounded, {"Remark4.4-p>1"}};
    }
    if (A.p < 1.0 - kParamTol) return {Status::Bounded, {"Eq1.23-borderline"}};
    if (approx_eq(A.p, 1.0)) {
        if (A.q <= 1.0 + kParamTol) return {Status::Bounded, {"Eq1.23-borderline"}};
        return {Status::Open, {"Remark4.4-open"}};
    }
    return {Status::Unbounded, {"Remark4.4-p>1"}};
}

Verdict embedding_check(const SpaceParam& A, const SpaceParam& B, bool isotropic) {
    check_same_weight(A, B);
    const double nA = A.s - A.h(), nB = B.s - B.h();
    if (B.ip() > A.ip() + kParamTol)
        return {Status::Unbounded, {"integral-exponent-decrease"}};
    if (B.s > A.s + kParamTol) return {Status::Unbounded, {"smoothness-increase"}};
    if (nB > nA + kParamTol) return {Status::Unbounded, {"sobolev-number"}};

    const bool same_p = approx_eq(A.ip(), B.ip());
    if (A.scale == B.scale) {
        if (same_p) {
            if (approx_eq(A.s, B.s))
                return leq_tol(A.q, B.q) ? Verdict{Status::Bounded, {"Eq1.19"}}
                                         : Verdict{Status::Unbounded, {"Eq1.19-converse"}};
            return {Status::Bounded, {"Eq1.19'"}};
        }
        if (approx_eq(nA, nB)) {
            if (A.scale == Scale::F) return {Status::Bounded, {"Eq1.20'"}};
            return leq_tol(A.q, B.q) ? Verdict{Status::Bounded, {"Eq1.20"}}
                                     : Verdict{Status::Unbounded, {"Eq1.20-converse"}};
        }
        return {Status::Bounded, {"Eq1.20+Eq1.19'"}};
    }
    // Cross-scale.
    const bool strict_inside = nB < nA - kParamTol && B.s < A.s - kParamTol;
    if (A.scale == Scale::B) {  // B -> F
        if (same_p) {
            if (approx_eq(A.s, B.s)) {
                if (leq_tol(A.q, std::min(B.p, B.q))) return {Status::Bounded, {"Eq1.19''"}};
                if (A.q > B.q + kParamTol) return {Status::Unbounded, {"Eq1.19''-converse"}};
                return {Status::Open, {"Remark-embd-open"}};
            }
            return {Status::Bounded, {"Eq1.19'+Eq1.19''"}};
        }
        if (strict_inside) return {Status::Bounded, {"Eq1.20+Eq1.19''"}};
        // Sobolev line, p decreasing target exponent: Franke-Jawerth territory
        if (A.q < B.p - kParamTol) return {Status::Bounded, {"Eq1.21"}};
        if (approx_eq(A.q, B.p)) {
            if (isotropic) return {Status::Bounded, {"Eq1.21-iso"}};
            return leq_tol(B.p, B.q) ? Verdict{Status::Bounded, {"Eq1.21"}}
                                     : Verdict{Status::Open, {"Remark-embd-open"}};
        }
        return isotropic ? Verdict{Status::Unbounded, {"Eq1.21-converse"}}
                         : Verdict{Status::Open, {"Remark-embd-open"}};
    }
    // F -> B
    if (same_p) {
        if (approx_eq(A.s, B.s)) {
            if (geq_tol(B.q, std::max(A.p, A.q))) return {Status::Bounded, {"Eq1.19''"}};
            if (B.q < A.q - kParamTol) return {Status::Unbounded, {"Eq1.19''-converse"}};
            return {Status::Open, {"Remark-embd-open"}};
        }
        return {Status::Bounded, {"Eq1.19'+Eq1.19''"}};
    }
    if (strict_inside) return {Status::Bounded, {"Eq1.20+Eq1.19''"}};
    if (B.q > A.p + kParamTol) return {Status::Bounded, {"Eq1.21"}};
    if (approx_eq(B.q, A.p)) {
        if (isotropic) return {Status::Bounded, {"Eq1.21-iso"}};
        return leq_tol(A.q, A.p) ? Verdict{Status::Bounded, {"Eq1.21"}}
                                 : Verdict{Status::Open, {"Remark-embd-open"}};
    }
    return isotropic ? Verdict{Status::Unbounded, {"Eq1.21-converse"}}
                     : Verdict{Status::Open, {"Remark-embd-open"}};
}

Verdict bounded_domain_embedding_check(const SpaceParam& A, const SpaceParam& B, bool) {
    check_same_weight(A, B);
    if (A.s < B.s - kParamTol) return {Status::Unbounded, {"smoothness-increase"}};
    const double nA = A.s - A.h(), nB = B.s - B.h();
    if (nA < nB - kParamTol) return {Status::Open, {"domain-sobolev-gap"}};

    const bool on_s_line = approx_eq(A.s, B.s);
    const bool on_sob_line = approx_eq(nA, nB);
    if (A.scale == B.scale) {
        bool need_q = A.scale == Scale::B ? (on_s_line || on_sob_line) : on_s_line;
        if (!need_q || leq_tol(A.q, B.q))
            return {Status::Bounded, {A.scale == Scale::B ? "Eq4.5.7" : "Eq4.5.6"}};
        return {Status::Open, {"domain-sum-exponent"}};
    }
    if (!on_s_line) return {Status::Bounded, {"Eq4.5.6+Eq1.19''"}};
    if (A.scale == Scale::B) {
        return leq_tol(A.q, std::min(B.p, B.q)) ? Verdict{Status::Bounded, {"Eq4.5.7+Eq1.19''"}}
                                                : Verdict{Status::Open, {"domain-sum-exponent"}};
    }
    return geq_tol(B.q, std::max(A.p, A.q)) ? Verdict{Status::Bounded, {"Eq4.5.6+Eq1.19''"}}
                                            : Verdict{Status::Open, {"domain-sum-exponent"}};
}

// ---------------------------------------------------------------------------
// Audit.

AuditReport consistency_audit(const SpaceParam& A0, const SpaceParam& A1, std::size_t nsamples,
                              std::uint64_t seed, bool isotropic, bool corrupt) {
    ReceivingRegion region = receiving_region(A0, A1, isotropic);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    const double mtot = region.a0().mtot;
    const double s1 = region.s2_max();
    const double hstar = region.h_star(), cap = region.h_cap(), D = region.diag();
    const double qe = region.q_min();

    AuditReport rep;
    std::vector<double> qpool = {0.5, 1.0, 2.0, 8.0, INFINITY};
    if (std::isfinite(qe)) {
        qpool.push_back(qe);
        qpool.push_back(2.0 * qe);
    }

    for (std::size_t i = 0; i < nsamples; ++i) {
        double s2, h2;
        switch (i % 4) {
            case 0: {  // top edge, occasionally the exact endpoints
                s2 = s1;
                double r = uni(rng);
                if (r < 0.2)
                    h2 = hstar;
                else if (r > 0.8)
                    h2 = cap;
                else
                    h2 = hstar + uni(rng) * (cap - hstar);
                break;
            }
            case 1: {  // diagonal edge
                s2 = s1 - 0.01 - 2.0 * uni(rng);
                h2 = s2 - D;
                if (h2 < 0.0) h2 = 0.0;
                break;
            }
            case 2:  // interior-biased
                s2 = s1 - 0.01 - 2.0 * uni(rng);
                h2 = uni(rng) * cap;
                break;
            default:  // wide scatter, mostly outside
                s2 = s1 + 2.0 - 4.0 * uni(rng);
                h2 = uni(rng) * (cap + 1.0);
                break;
        }
        Scale sc2 = uni(rng) < 0.5 && h2 > kParamTol ? Scale::F : Scale::B;
        double p2 = h2 > kParamTol ? mtot / h2 : INFINITY;
        double q2 = qpool[static_cast<std::size_t>(uni(rng) * qpool.size()) % qpool.size()];
        SpaceParam A2 = SpaceParam::make(sc2, s2, p2, q2, mtot);

        ++rep.samples;
        bool accepted = region.member(A2) == Member::yes;
        if (!accepted && corrupt && std::isfinite(q2)) {
            SpaceParam wide = A2;
            wide.q = 8.0 * q2;
            accepted = region.member(wide) == Member::yes;  // fixture: q2 bound widened
        }
        if (!accepted) continue;
        ++rep.accepted;
        for (const Condition& c : necessary_conditions(region.a0(), region.a1(), A2)) {
            if (c.id == "(1)" || c.id == "(2)" || c.id == "(1')" || c.id == "(2')") continue;
            if (c.applicable && !c.holds) {
                ++rep.violations;
                if (rep.notes.size() < 32) {
                    std::ostringstream os;
                    os.precision(6);
                    os << c.id << " violated at s2=" << s2 << " h2=" << h2 << " q2=" << q2
                       << " scale=" << (sc2 == Scale::B ? "B" : "F");
                    rep.notes.push_back(os.str());
                }
            }
        }
    }
    return rep;
}

}  // namespace paracalc
