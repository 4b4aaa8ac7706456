#pragma once

#include <map>
#include <string>
#include <vector>

#include "rampr/polynomial.hpp"

namespace rampr {

enum class Status { PR, NotPR, RamseyPR, NotRamseyPR, OpenInPaper };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::PR: return "PR";
    case Status::NotPR: return "NotPR";
    case Status::RamseyPR: return "RamseyPR";
    case Status::NotRamseyPR: return "NotRamseyPR";
    case Status::OpenInPaper: return "OpenInPaper";
    }
    return "?";
}

struct Verdict {
    Status status;
    std::string reason;   // human-readable, names the result applied
    std::string citation; // anchor into the theorem registry
};

/// Compiled registry of the results the classifiers rely on. Verdicts and
/// corpus entries carry these anchors so reports stay auditable.
inline const std::map<std::string, std::string>& theorem_registry() {
    static const std::map<std::string, std::string> reg = {
        {"rado.single-equation",
         "Rado: c1*x1+...+ck*xk = 0 is partition regular iff some nonempty subset of the "
         "coefficients sums to zero."},
        {"rado.three-term", "Rado: ax+by=cz is partition regular iff a=c, b=c, or a+b=c."},
        {"schur", "Schur: x+y=z is partition regular."},
        {"vanderwaerden", "van der Waerden: 3-term arithmetic progressions are partition regular."},
        {"classify.monomial",
         "a*x^n + P(y) = Q(z) (P,Q without constant term) has Ramsey-pair solutions exactly "
         "when it is an integer multiple of x+y=z or of -x+y=z."},
        {"ramsey.sum-difference",
         "x+y=z and -x+y=z are Ramsey partition regular in (x,y),z."},
        {"ramsey.product-ratio", "xy=z and y=zx are Ramsey partition regular in (x,y),z."},
        {"classify.moreira-triple",
         "a*x^k1 + b*y^k2 = c*z^k3 is Ramsey partition regular in (x,y)|z iff k3 = 1."},
        {"classify.two-variable",
         "No two-variable polynomial equation is Ramsey partition regular; equivalent infinite "
         "points solve P(x,y)=0 only when (x-y) divides P."},
        {"classify.gensumprod",
         "n*x+m*y can agree with k*x^r*y^s on a Ramsey pair with r,s >= 1 only when r=s=1 and "
         "one of n,m is 0 with the other positive."},
        {"classify.gensumprod-shapes",
         "With integer exponents, agreement on a Ramsey pair forces (r,s) in "
         "{(1,1),(0,1),(1,0),(-1,1)}; the (0,1) and (1,0) shapes reduce to scalar equations."},
        {"open.gensumprod-inverse", "The shape (r,s)=(-1,1) is open."},
        {"pairwise-sum-product",
         "Hindman: no finite coloring admits an infinite H with all pairwise sums and products "
         "monochromatic; (x+y=z) & (x*y=t) is not Ramsey partition regular in (x,y)|z,t."},
        {"no-ramsey-3ap",
         "x,y,z cannot form a 3-term arithmetic progression in any order with (x,y) a Ramsey "
         "pair: no Ramsey version of van der Waerden."},
        {"exp.product",
         "(x^y=z) & (x*y=t) is not Ramsey partition regular in (x,y)|z,t: the iterated "
         "base-2 logarithms of x^y and x*y live at different depths."},
        {"exp.symmetric", "(x^y=z) & (y^x=t) is not Ramsey partition regular in (x,y)|z,t."},
        {"exp.shift", "(x*2^y=z) & (x+y=t) is not Ramsey partition regular in (x,y)|z,t."},
        {"exp.gap",
         "If n -> f(n+1)-f(n) is finite-to-one then g(x)+f(y)=f(z) is not Ramsey partition "
         "regular in (x,y)|z; e.g. x+2^y=2^z."},
        {"sandwich.polynomial",
         "For P,Q of equal degree d>1 with positive leading coefficients and c=lc(P)/lc(Q), "
         "some n has Q(c^(1/d)*b-n) <= P(b) <= Q(c^(1/d)*b+n) for all b."},
        {"asymmetric.witness",
         "If a=c and b differs, every finite coloring has monochromatic x,y,z with ax+by=cz "
         "and x>Ny; the mirrored form y>Nx fails."},
        {"bpr.additive-schur", "Blocks x,y,z|t: additive Schur plus a free product value."},
        {"bpr.multiplicative-schur",
         "Blocks x,y,t|z: multiplicative Schur plus a free sum value."},
        {"bpr.moreira", "Moreira: x, x+y, x*y (blocks x,z,t|y) is block partition regular."},
        {"ramsey.additive-idempotent",
         "(x,y),z|t holds via additively idempotent ultrafilters."},
        {"ramsey.multiplicative-idempotent",
         "(x,y),t|z holds via multiplicatively idempotent ultrafilters."},
        {"ramsey.tensor-construction",
         "(x,z),y|t and (x,t),y|z hold via explicit tensor-triple constructions."},
        {"ramsey.exponent-shift",
         "(x,t)|y|z and (x,z)|y|t hold via explicit Ramsey-pair constructions "
         "(powers of two, differences)."},
        {"ramsey.square-obstruction",
         "(z,t)|x|y fails: x+y=z and xy=t force z^2 > t, against Ramsey-pair growth."},
        {"trivial", "Immediate."},
        {"open.never-considered", "Not treated in the source results; experimental data only."},
        {"open.problem", "Open problem."},
    };
    return reg;
}

inline const std::string& citation_text(const std::string& anchor) {
    const auto& reg = theorem_registry();
    auto it = reg.find(anchor);
    if (it == reg.end())
        throw std::domain_error("dangling citation anchor: " + anchor);
    return it->second;
}

/// ax+by=cz over the positive integers.
inline Verdict rado_three(long long a, long long b, long long c) {
    if (a < 1 || b < 1 || c < 1)
        throw std::domain_error("rado_three: coefficients must be positive");
    if (a == c || b == c || a + b == c) {
        std::string why = a + b == c ? "a+b=c" : (a == c ? "a=c" : "b=c");
        return {Status::PR, "ax+by=cz with " + why, "rado.three-term"};
    }
    return {Status::NotPR, "none of a=c, b=c, a+b=c holds", "rado.three-term"};
}

/// Single-equation columns condition: sum(c_i x_i) = 0 is partition regular
/// iff some nonempty subset of the coefficients sums to zero.
inline Verdict rado_columns(const std::vector<long long>& coeffs) {
    if (coeffs.empty()) throw std::domain_error("rado_columns: empty coefficient list");
    if (coeffs.size() > 30) throw std::domain_error("rado_columns: coefficient list too long");
    for (long long c : coeffs)
        if (c == 0) throw std::domain_error("rado_columns: zero coefficient");
    for (uint64_t mask = 1; mask < (1ull << coeffs.size()); ++mask) {
        long long sum = 0;
        for (size_t i = 0; i < coeffs.size(); ++i)
            if (mask & (1ull << i)) sum += coeffs[i];
        if (sum == 0)
            return {Status::PR, "a nonempty zero-sum subset of coefficients exists",
                    "rado.single-equation"};
    }
    return {Status::NotPR, "no nonempty subset of coefficients sums to zero",
            "rado.single-equation"};
}

/// a*x^n + P(y) = Q(z), Ramsey partition regularity in (x,y),z. Purely
/// syntactic on coefficients: the only positive cases are the integer
/// multiples of x+y=z and of -x+y=z.
inline Verdict classify_axn(long long a, uint32_t n, const IntPoly& P, const IntPoly& Q) {
    if (a < 1) throw std::domain_error("classify_axn: a must be positive");
    if (n < 1) throw std::domain_error("classify_axn: n must be positive");
    if (P.is_zero() || Q.is_zero())
        throw std::domain_error("classify_axn: P and Q must be nonzero");
    if (!P.coeff(0).is_zero() || !Q.coeff(0).is_zero())
        throw std::domain_error("classify_axn: P and Q must have zero constant term");

    BigInt A(a);
    IntPoly aY = IntPoly::x().scaled(A);
    if (n == 1 && P == aY && Q == aY)
        return {Status::RamseyPR, "integer multiple of x+y=z", "classify.monomial"};
    if (n == 1 && P == -aY && Q == -aY)
        return {Status::RamseyPR, "integer multiple of -x+y=z", "classify.monomial"};
    return {Status::NotRamseyPR,
            "a*x^n+P(y)-Q(z) is not a multiple of x+y-z or x-y+z", "classify.monomial"};
}

/// a*x^k1 + b*y^k2 = c*z^k3, Ramsey partition regularity in (x,y)|z.
inline Verdict classify_moreira(long long a, long long b, long long c,
                                long long k1, long long k2, long long k3) {
    if (a < 1 || b < 1 || c < 1 || k1 < 1 || k2 < 1 || k3 < 1)
        throw std::domain_error("classify_moreira: all parameters must be positive");
    if (k3 == 1)
        return {Status::RamseyPR, "k3 = 1: z = (a*x^k1+b*y^k2)/c closes over a divisible pair",
                "classify.moreira-triple"};
    return {Status::NotRamseyPR, "k3 > 1: the forced root collides with the pair",
            "classify.moreira-triple"};
}

/// Two-variable polynomial equations are never Ramsey partition regular. The
/// verdict records whether (x-y) divides P, the condition for solvability at
/// equivalent infinite points.
inline Verdict classify_two_var(const BiPoly& P) {
    if (P.is_zero()) throw std::domain_error("classify_two_var: zero polynomial");
    bool divisible = P.rem_x_minus_y().is_zero();
    std::string note = divisible
        ? "(x-y) divides P: solvable at equivalent infinite points, but a Ramsey pair has x<y"
        : "(x-y) does not divide P: no equivalent infinite solutions at all";
    return {Status::NotRamseyPR, note, "classify.two-variable"};
}

/// n*x + m*y versus k*x^r*y^s on a Ramsey pair. Requires n+m != 0.
inline Verdict classify_gensumprod(long long n, long long m, long long k,
                                   long long r, long long s) {
    if (n + m == 0) throw std::domain_error("classify_gensumprod: requires n+m != 0");
    if (k < 1) throw std::domain_error("classify_gensumprod: k must be positive");

    if (r == 1 && s == 1) {
        if ((n == 0 && m > 0) || (m == 0 && n > 0))
            return {Status::RamseyPR,
                    "r=s=1 with one of n,m zero and the other positive: witnessable via a "
                    "divisible multiplicative idempotent",
                    "classify.gensumprod"};
        return {Status::NotRamseyPR,
                "r=s=1 with n,m both nonzero: pairwise sum-product obstruction",
                "classify.gensumprod"};
    }
    if (r == -1 && s == 1)
        return {Status::OpenInPaper, "shape (r,s)=(-1,1) is open", "open.gensumprod-inverse"};
    // For the scalar shapes, m=-n is already excluded by the n+m != 0
    // precondition, so only the identity multiples survive.
    if (r == 0 && s == 1) {
        if (m == k && (n == 0 || n == m))
            return {Status::RamseyPR, "n*x+m*y ~ k*y with m=k and n in {0,m}",
                    "classify.gensumprod-shapes"};
        return {Status::NotRamseyPR, "n*x+m*y ~ k*y forces m=k and n in {0,m}",
                "classify.gensumprod-shapes"};
    }
    if (r == 1 && s == 0) {
        if (n == k && (m == 0 || m == n))
            return {Status::RamseyPR, "n*x+m*y ~ k*x with n=k and m in {0,n}",
                    "classify.gensumprod-shapes"};
        return {Status::NotRamseyPR, "n*x+m*y ~ k*x forces n=k and m in {0,n}",
                "classify.gensumprod-shapes"};
    }
    if (r >= 1 && s >= 1)
        return {Status::NotRamseyPR, "log application forces s=1 and the digit argument r=1",
                "classify.gensumprod"};
    return {Status::NotRamseyPR, "shape (r,s) outside {(1,1),(0,1),(1,0),(-1,1)}",
            "classify.gensumprod-shapes"};
}

} // namespace rampr
