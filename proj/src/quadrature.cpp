#include "xijensen/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace xij {

namespace {

struct NotConverged {};

// One tanh-sinh node pair at parameter v = i*h > 0, mapped to [a, b].
//
// With y = (pi/2) sinh v and q = e^{-y}:
//   1 - tanh y = 2 q^2 / (1 + q^2),   sech^2 y = 4 q^2 / (1 + q^2)^2,
// so node offsets from the endpoints and the weight stay accurate
// arbitrarily close to the endpoints.
struct NodePair {
    Real off;    // (b-a)/2 * (1 - tanh y): distance of the pair's nodes
                 // from their respective endpoints
    Real weight; // (pi/2) cosh v * sech^2 y, without the h or jacobian factor
};

NodePair make_pair(const Real& v, const Real& half_width, long prec) {
    NodePair n;
    Real s = exp(v, prec);                         // e^v
    Real cosv = mul_2si(add(s, inv(s, prec)), -1); // cosh v
    Real sinv = sub(s, cosv);                      // sinh v = e^v - cosh v
    Real halfpi = mul_2si(pi_enclosure(prec), -1);
    Real y = mul(halfpi, sinv);
    Real q = exp(neg(y), prec);
    Real q2 = mul(q, q);
    Real denom = add(Real::exact(1L, prec), q2);
    n.off = mul(half_width, div(mul_2si(q2, 1), denom));
    Real sech2 = div(mul_2si(q2, 2), mul(denom, denom));
    n.weight = mul(halfpi, mul(cosv, sech2));
    return n;
}

struct LevelSums {
    Real sum;     // h * sum of w*f over all nodes of the level
    Real end_mag; // |w*f| at the outermost nodes (truncation telltale)
};

class TanhSinhState {
  public:
    TanhSinhState(const DecayingIntegrand& f, double lower, const Real& T,
                  long prec, long vscale_16ths)
        : f_(f), prec_(prec), vmax_16ths_(vscale_16ths) {
        a_ = Real::from_double(lower, prec);
        half_width_ = mul_2si(sub(T, a_), -1);
        center_ = add(a_, half_width_);
    }

    LevelSums full_level(int m) {
        LevelSums out{eval_center(), Real::exact(0L, prec_)};
        long n = 1L << m;
        for (long i = 1; i <= n; ++i)
            out.sum = add(out.sum, eval_pair(i, m, &out.end_mag));
        out.sum = mul(out.sum, step(m));
        return out;
    }

    // S_m = S_{m-1}/2 + h_m * (odd-index nodes of level m)
    LevelSums refine_level(int m, const LevelSums& prev) {
        LevelSums out{Real::exact(0L, prec_), Real::exact(0L, prec_)};
        long n = 1L << m;
        for (long i = 1; i <= n; i += 2)
            out.sum = add(out.sum, eval_pair(i, m, &out.end_mag));
        out.sum = add(mul_2si(prev.sum, -1), mul(out.sum, step(m)));
        return out;
    }

    Real jacobian() const { return half_width_; }

    Real step(int m) const {
        return mul_2si(Real::exact(vmax_16ths_, prec_), -4 - m); // exact
    }

  private:
    Real eval_center() {
        QuadNode node{center_, half_width_};
        Real fx = f_.eval(node, prec_);
        check(fx);
        return mul(fx, mul_2si(pi_enclosure(prec_), -1));
    }

    Real eval_pair(long i, int m, Real* end_mag) {
        Real v = mul_2si(Real::exact(vmax_16ths_ * i, prec_), -4 - m);
        NodePair np = make_pair(v, half_width_, prec_);
        QuadNode right;
        right.offset = sub(mul_2si(half_width_, 1), np.off);
        right.t = add(a_, right.offset);
        QuadNode left;
        left.offset = np.off;
        left.t = add(a_, np.off);
        Real fr = f_.eval(right, prec_);
        Real fl = f_.eval(left, prec_);
        check(fr);
        check(fl);
        Real term = mul(np.weight, add(fr, fl));
        if (i >= (1L << m) - 1)
            *end_mag = hull(*end_mag, abs(term));
        return term;
    }

    static void check(const Real& fx) {
        if (fx.is_nan())
            throw DomainError("integrand returned an invalid enclosure");
    }

    const DecayingIntegrand& f_;
    long prec_;
    long vmax_16ths_;
    Real a_;
    Real half_width_;
    Real center_;
};

// radius <= target * |mid|, decided conservatively
bool meets_rel_target(const Real& x, double target) {
    mpfr_t scale;
    mpfr_init2(scale, 64);
    mpfr_abs(scale, x.mid(), MPFR_RNDD);
    mpfr_mul_d(scale, scale, target, MPFR_RNDD);
    bool ok = mpfr_cmp(x.rad(), scale) <= 0 ||
              (mpfr_zero_p(x.rad()) && mpfr_zero_p(scale));
    mpfr_clear(scale);
    return ok;
}

Real integrate_once(const DecayingIntegrand& f, const QuadratureSpec& spec,
                    long bits) {
    const long prec = bits + 32;
    const double target = spec.target_rel_error;

    // v truncation: (pi/2) e^V > (bits + 16) ln 2
    double V = std::log(2.0 * (static_cast<double>(bits) + 16.0) * 0.6931 /
                        3.14159) +
               0.7;
    long v16 = static_cast<long>(std::ceil(V * 16.0)) + 1;

    double t0 = f.suggested_cutoff(bits);
    if (!std::isfinite(t0) || t0 < spec.lower_limit + 16.0)
        t0 = spec.lower_limit + 16.0;
    Real T = Real::from_double(t0, prec);

    const int m_lo = 6, m_hi = 15;
    for (int round = 0; round < 12; ++round) {
        Real tail = f.tail_bound(T, prec);
        TanhSinhState st(f, spec.lower_limit, T, prec, v16);
        LevelSums cur = st.full_level(m_lo);
        Real prev_sum = cur.sum;
        for (int m = m_lo + 1; m <= m_hi; ++m) {
            cur = st.refine_level(m, cur);
            Real disc = mul(abs(sub(cur.sum, prev_sum)), st.jacobian());
            prev_sum = cur.sum;
            if (m < 9)
                continue;

            Real result = mul(cur.sum, st.jacobian());
            Real endcap =
                mul(mul(cur.end_mag, st.step(m)), st.jacobian());
            Real without_tail = result;
            without_tail.inflate(disc);
            without_tail.inflate(mul_2si(endcap, 2));
            result = without_tail;
            result.inflate(tail);

            if (meets_rel_target(result, target))
                return result;

            // Tail-limited: discretization already fine but the cutoff's
            // tail mass dominates the radius; grow T instead of refining.
            if (meets_rel_target(without_tail, target * 0.5))
                break;
        }
        Real grown = add(mul(T, Real::from_double(1.6, prec)),
                         Real::exact(8L, prec));
        // If the discretization never settled, growing T will not help.
        Real tail2 = f.tail_bound(T, prec);
        bool tail_limited = !certainly_less(
            tail2, mul(abs(mul(cur.sum, st.jacobian())),
                       Real::from_double(target * 0.25, prec)));
        if (!tail_limited)
            throw NotConverged{};
        T = grown;
    }
    throw NotConverged{};
}

} // namespace

Real integrate_decaying(const DecayingIntegrand& f, const QuadratureSpec& spec,
                        const PrecCtx& ctx) {
    spec.validate();
    PrecCtx c = ctx;
    while (true) {
        try {
            return integrate_once(f, spec, c.bits);
        } catch (const NotConverged&) {
            if (c.at_ceiling())
                throw PrecisionExhausted(
                    "integrate_decaying: target relative error not met at " +
                    std::to_string(c.bits) + " bits");
            c = c.escalated();
        }
    }
}

} // namespace xij
