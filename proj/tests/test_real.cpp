#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "xijensen/real.hpp"

using namespace xij;

TEST_CASE("exact constructors carry zero radius") {
    Real a = Real::exact(17L, 128);
    CHECK(a.is_exact());
    CHECK(a.sign_certified() == 1);
    Real b = Real::exact(mpz_class("123456789123456789123456789"), 128);
    CHECK(b.is_exact());
    Real c = Real::of_rational(mpq_class(1, 3), 128);
    CHECK(!c.is_exact()); // 1/3 is not dyadic
    CHECK(c.rel_radius_below(120));
}

TEST_CASE("add/sub/mul/div enclose the rational result") {
    Real third = Real::of_rational(mpq_class(1, 3), 256);
    Real sixth = Real::of_rational(mpq_class(1, 6), 256);
    Real sum = add(third, sixth);
    Real half = Real::of_rational(mpq_class(1, 2), 256);
    CHECK(overlaps(sum, half));
    CHECK(contains(sum, Real::of_rational(mpq_class(1, 2), 400)));

    Real prod = mul(third, Real::exact(3L, 256));
    CHECK(overlaps(prod, Real::exact(1L, 256)));

    Real q = div(Real::exact(1L, 256), third);
    CHECK(overlaps(q, Real::exact(3L, 256)));
}

TEST_CASE("division by straddling enclosure is a domain error") {
    Real z = Real::from_double(0.0, 128);
    z.inflate_2exp(-10);
    CHECK(z.sign_certified() == 0);
    CHECK_THROWS_AS(div(Real::exact(1L, 128), z), DomainError);
}

TEST_CASE("sign certification") {
    Real x = Real::parse("1e-30", 256);
    CHECK(x.sign_certified() == 1);
    x.inflate_2exp(-60); // radius ~ 8.7e-19 swamps 1e-30
    CHECK(x.sign_certified() == 0);
    Real y = Real::parse("-4.25", 128);
    CHECK(y.sign_certified() == -1);
}

TEST_CASE("sqrt and elementary functions honor domains") {
    Real four = Real::exact(4L, 192);
    CHECK(overlaps(sqrt(four), Real::exact(2L, 192)));
    Real negish = Real::from_double(-0.5, 128);
    CHECK_THROWS_AS(sqrt(negish), DomainError);
    CHECK_THROWS_AS(log(negish), DomainError);

    Real tiny = Real::from_double(0.0, 192);
    tiny.inflate_2exp(-80);
    Real s = sqrt_nonneg(tiny); // allowed: clamps at zero
    CHECK(s.sign_certified() == 0);
    CHECK(s.abs_radius_below(-39));

    Real e1 = exp(Real::exact(1L, 256));
    Real eref = Real::parse("2.718281828459045235360287471352662497757", 256);
    CHECK(certainly_less(abs(sub(e1, eref)), Real::parse("1e-38", 256)));
    Real l = log(e1);
    CHECK(overlaps(l, Real::exact(1L, 256)));
}

TEST_CASE("pow_ui covers sign cases") {
    Real m2 = Real::exact(-2L, 128);
    CHECK(overlaps(pow_ui(m2, 3), Real::exact(-8L, 128)));
    CHECK(overlaps(pow_ui(m2, 4), Real::exact(16L, 128)));
    Real strad = Real::from_double(0.0, 128);
    strad.inflate_2exp(1); // [-2, 2]
    Real p = pow_ui(strad, 2);
    CHECK(p.sign_certified() == 0);
    bool top_in = contains(p, Real::exact(4L, 400)) ||
                  overlaps(p, Real::exact(4L, 128));
    CHECK(top_in);
    CHECK(overlaps(p, Real::exact(0L, 128)));
}

TEST_CASE("pi enclosure is tight") {
    Real p = pi_enclosure(256);
    CHECK(p.rel_radius_below(250));
    Real pref = Real::parse(
        "3.14159265358979323846264338327950288419716939937510582", 300);
    CHECK(certainly_less(abs(sub(p, pref)), Real::parse("1e-52", 300)));
}

TEST_CASE("decimal round trip") {
    Real x = div(pi_enclosure(256), Real::exact(7L, 256));
    std::string m = x.midpoint_decimal();
    std::string r = x.radius_decimal();
    Real back = Real::parse(m, r, 256);
    CHECK(contains(back, x));
}

namespace {

// Random expression trees evaluated at two precisions: the high-precision
// enclosure must be contained in the low-precision one.
Real eval_tree(std::mt19937_64& rng, int depth, long prec,
               std::vector<int>* script, size_t* pos) {
    auto next_op = [&](int mod) {
        if (*pos < script->size())
            return (*script)[(*pos)++] % mod;
        int v = static_cast<int>(rng() % 1000);
        script->push_back(v);
        ++(*pos);
        return v % mod;
    };
    if (depth == 0) {
        int v = next_op(2001) - 1000;
        return Real::of_rational(mpq_class(v, 7), prec);
    }
    int op = next_op(6);
    Real a = eval_tree(rng, depth - 1, prec, script, pos);
    Real b = eval_tree(rng, depth - 1, prec, script, pos);
    switch (op) {
    case 0: return add(a, b);
    case 1: return sub(a, b);
    case 2: return mul(a, b);
    case 3: return exp(div_si(sub(a, b), 4096));
    case 4: return mul_2si(add(a, b), -3);
    default: {
        Real d = add(mul(a, a), Real::exact(1L, prec)); // certified positive
        return div(b, d);
    }
    }
}

} // namespace

TEST_CASE("enclosure soundness on random expression trees") {
    std::mt19937_64 rng(20240817);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<int> script;
        size_t pos = 0;
        Real lo = eval_tree(rng, 4, 96, &script, &pos);
        pos = 0;
        Real hi = eval_tree(rng, 4, 384, &script, &pos);
        CAPTURE(iter);
        REQUIRE(contains(lo, hi));
    }
}
